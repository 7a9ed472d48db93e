# coding: utf-8

# # Full-rank fading: double-logarithmic growth
#
# When R is invertible the pre-log is zero and capacity grows like
# log log ρ. Correlation shifts the constant by -mean(log λ).

# In[1]:

import math

from noncoh_cap import asymptotics as asy
from noncoh_cap import bounds as bd
from noncoh_cap import channel as ch


# In[2]:

for snr in (1e2, 1e6, 1e12, 1e24):
    print(f"rho={snr:<8g} iid asymptote {asy.full_rank_iid_asymptote(snr):.5f}")


# A correlated example: eigenvalues (1.5, 0.5).

# In[3]:

r = ch.corr_from_matrix([[1, 0.5], [0.5, 1]])
shift = asy.full_rank_corr_asymptote(1e6, r) - asy.full_rank_iid_asymptote(1e6)
print(f"shift {shift:.6f}  vs  -mean(log eig) {-0.5 * math.log(0.75):.6f}")


# The memoryless (N = 1) duality bound uses a Gamma output law with shape
# α = 1 / (1 + log(1+ρ)). It sits above the iid expansion and its excess
# falls towards one nat, but only slowly.

# In[4]:

for snr in (1e1, 1e4, 1e10, 1e12, 1e50, 1e300):
    ub = bd.memoryless_upper_bound(snr)
    excess = ub.nats_per_use - asy.full_rank_iid_asymptote(snr)
    print(f"rho={snr:<8g} alpha={ub.alpha:.4f} U={ub.nats_per_use:8.4f} U - asymptote={excess:.4f}")
