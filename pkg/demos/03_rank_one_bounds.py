# coding: utf-8

# # Rank-one fading: bounds and the high-SNR expansion
#
# With R all-ones the pre-log is 1 - 1/N. A Gaussian-input lower bound and a
# duality upper bound both approach the same expansion as SNR grows, up to a
# gap that vanishes as the input-norm floor rho0 increases.

# In[1]:

import numpy as np

from noncoh_cap import bounds as bd
from noncoh_cap import asymptotics as asy


# In[2]:

n = 3
print(f"{'dB':>4} {'lower':>10} {'upper':>10} {'asymptote':>10} {'up-lo':>9}")
for db in range(0, 81, 10):
    snr = bd.db_to_snr(db)
    lo = bd.rank_one_lower_bound(n, snr).nats_per_use
    up = bd.rank_one_upper_bound(n, snr).nats_per_use   # rho0 = sqrt(snr)
    print(f"{db:>4} {lo:10.5f} {up:10.5f} {asy.rank_one_asymptote(n, snr):10.5f} {up - lo:9.2e}")


# The asymptotic gap between the bounds depends only on N and rho0.

# In[3]:

for rho0 in (0.0, 1.0, 10.0, 1e2, 1e4):
    print(f"rho0={rho0:<8g} gap={bd.duality_gap(n, rho0):.3e}")


# The slope of the lower bound against log SNR recovers the pre-log.

# In[4]:

for n in (2, 4, 8):
    x = np.log(bd.db_to_snr(np.arange(60.0, 81.0)))
    y = [bd.rank_one_lower_bound(n, np.exp(v)).nats_per_use for v in x]
    print(f"n={n}: slope {np.polyfit(x, y, 1)[0]:.5f}, prelog {asy.prelog(n, 1):.5f}")


# The analytic upper bound can be cross-checked by simulating the duality
# expectation for a concrete input: here the sphere input ||x||^2 = Nρ.

# In[5]:

from noncoh_cap import channel as ch

snr = 1000.0
est = bd.mc_duality_upper_bound(bd.sphere_input(2, snr), ch.make_rank_one_corr(2),
                                bd.OutputDensityParams.for_snr(2, snr),
                                bd.BoundConfig(mc_samples=100_000, seed=0))
print(f"MC duality {est.value:.5f} ± {est.stderr:.1e}")
print(f"lower      {bd.rank_one_lower_bound(2, snr).nats_per_use:.5f}")
print(f"upper      {bd.rank_one_upper_bound(2, snr, 2 * snr).nats_per_use:.5f}  (rho0 = 2ρ)")
