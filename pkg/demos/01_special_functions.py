# coding: utf-8

# # The function g(a)
#
# g(a) = E[log(a + |z|^2)] for a standard complex Gaussian z. Its closed form
# e^a Γ(0, a) + log a shows up in every rank-one upper bound, so we start by
# checking it against quadrature and simulation.

# In[1]:

import math

import numpy as np
from scipy import integrate

from noncoh_cap import euler_gamma, g_lemma, gamma_upper0
from noncoh_cap.montecarlo import mc_g


# At a = 0 the expectation is E[log|z|^2] = -γ.

# In[2]:

print("g(0)     =", g_lemma(0.0))
print("-gamma   =", -euler_gamma())
print("g(1e-8)  =", g_lemma(1e-8))


# Γ(0, a) switches from a power series to a continued fraction at a = 1.
# The two branches agree there to machine precision.

# In[3]:

for a in (1e-8, 0.5, 1.0, 1.0 + 1e-12, 3.0, 40.0):
    print(f"a={a:<14g} Gamma(0,a)={gamma_upper0(a):.15g}")


# Compare with direct quadrature of ∫ e^{-v} log(a+v) dv.

# In[4]:

def g_quad(a):
    f = lambda v: math.exp(-v) * math.log(a + v)
    return integrate.quad(f, 0, 1, points=[a] if a < 1 else None)[0] + \
        integrate.quad(f, 1, math.inf)[0]


grid = np.logspace(-6, 2, 9)
errs = [abs(g_lemma(a) - g_quad(a)) for a in grid]
for a, e in zip(grid, errs):
    print(f"a={a:<10.3g} g={g_lemma(a): .12f}  |g - quad|={e:.1e}")


# And against a Monte-Carlo average, which also shows g(a) ≈ log a + 1/a
# for large a.

# In[5]:

for a in (1.0, 100.0):
    est = mc_g(a, 200_000, seed=1)
    print(f"a={a:g}: closed form {g_lemma(a):.5f}, MC {est.value:.5f} ± {est.stderr:.1e}")
print("log 100 + 1/100 =", math.log(100) + 0.01)
