# coding: utf-8

# # Correlation models
#
# The fading vector h ~ CN(0, R) has a unit-diagonal covariance R of rank Q.
# Three models are built in: all-ones (rank one), identity, and circulant
# built from a power-delay profile.

# In[1]:

import numpy as np

from noncoh_cap import channel as ch


# In[2]:

models = {
    "rank_one": ch.make_rank_one_corr(4),
    "iid": ch.make_iid_corr(4),
    "circulant (3,1)": ch.make_circulant_corr(4, (3, 1)),
    "circulant (2,1,1)": ch.make_circulant_corr(4, (2, 1, 1)),
}
for name, r in models.items():
    print(f"{name:<18} Q={r.rank_q}  eigvals={np.round(r.eigvals, 4)}")


# Circulant eigenvalues are the DFT of the first row, so two taps on four
# symbols leave two zero eigenvalues.

# In[3]:

print(np.round(models["circulant (3,1)"].entries.real, 3))


# Empirical covariance of sampled fading converges to R.

# In[4]:

rng = np.random.default_rng(0)
for name, r in models.items():
    h = ch.sample_fading(r, rng, 100_000)
    emp = h.T @ h.conj() / h.shape[0]
    print(f"{name:<18} ||R_hat - R||_F = {np.linalg.norm(emp - r.entries):.4f}")


# Given the input x, y = diag(h) x + w is Gaussian with covariance
# I + diag(x) R diag(x)^H. The conditional entropy h(y|x) is
# log det(πe Σ(x)); simulation agrees.

# In[5]:

from noncoh_cap.montecarlo import mc_cond_entropy

x = np.array([1.0, 2.0, -1j, 0.5])
r = models["circulant (3,1)"]
exact = 4 * np.log(np.pi * np.e) + ch.cond_logdet(x, r)
est = mc_cond_entropy(x, r, 100_000, seed=2)
print(f"h(y|x): exact {exact:.5f}, MC {est.value:.5f} ± {est.stderr:.1e}")


# A correlation matrix can also be given directly; it is validated for
# Hermitian symmetry, unit diagonal and positive semidefiniteness.

# In[6]:

r = ch.corr_from_matrix([[1, 0.5], [0.5, 1]])
print("eigvals", r.eigvals, "rank", r.rank_q)
try:
    ch.corr_from_matrix([[1, 2], [2, 1]])
except ValueError as exc:
    print("rejected:", exc)
