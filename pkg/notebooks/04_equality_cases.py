# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Frames that meet the Gram bounds with equality
#
# A SIC in C^k is an equiangular tight frame of k^2 vectors. It meets the
# Welch-type Gram bound, and stacked copies of it meet the Bukh-Cox one.

# %%
from linepack import certify, frames, lp

sic = frames.construct_sic(2)
print(certify.welch_equality_check(sic))

for k in (2, 3):
    for m in (1, 2, 3):
        y = frames.concat_copies(frames.construct_sic(k), m)
        diag = certify.diagnose_theorem3_equality(y)
        n = m * k * k
        print(f"k={k} m={m}: ||Y*Y||_1={diag.extras['one_norm']:.6f}  bound={lp.gram_one_norm_bound_bc(k, n):.6f}  all={diag.all_hold}")

# %% [markdown]
# The bracket on gamma(k, n) closes whenever such a witness exists.

# %%
for k, n in [(2, 4), (2, 8), (3, 9), (3, 7), (4, 10)]:
    lo, hi = lp.gamma_interval(k, n, "complex")
    print(f"k={k} n={n}: {lo:.6f} <= gamma <= {hi:.6f}")
