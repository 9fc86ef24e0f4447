# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Coherence of X versus the Gram 1-norm of a tight complement
#
# For unit vectors X in dimension d and any (n/k)-tight Y in dimension
# k = n - d with XY* = 0, mu(X) >= n / (||Y*Y||_1 - n). The certificate below
# rebuilds Y and evaluates every inequality along the way.

# %%
import numpy as np

from linepack import certify, frames

x = frames.VectorConfiguration([[1, 0, 2**-0.5], [0, 1, 2**-0.5]], "real")
cert = certify.lemma_certificate(x)
for step in cert.chain:
    print(f"{step.name:<17} left={step.left:.6f} right={step.right:.6f} slack={step.slack:.2e}")
print("mu =", cert.mu, " floor from witness =", cert.floor_witness, " floor from theorem =", cert.floor_theorem)

# %% [markdown]
# An equiangular tight frame and its Naimark complement meet every
# sufficient condition for optimality.

# %%
simplex = frames.construct_simplex_etf(6)
y = frames.naimark_complement(simplex)
diag = certify.diagnose_lemma_equality(simplex, y)
for c in diag.conditions:
    print(f"{c.name:<28} holds={c.holds} margin={c.margin:.2e}")

# %% [markdown]
# Random configurations: the chain always closes.

# %%
rng = np.random.default_rng(0)
valid = [certify.lemma_certificate(frames.VectorConfiguration.random(4, 7, "complex", rng)).valid for _ in range(20)]
print(all(valid))
