# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # The quadratic LP and its tangency triple
#
# f(x) = c0 + c1 Q1(x) + c2 Q2(x) must dominate sqrt(x) on [0, 1]. Forcing f to
# touch sqrt(x) at x* and at 1 gives a triple whose c0 is also what the
# discretized LP finds.

# %%
from linepack import lp

for field in ("complex", "real"):
    for k in (1, 2, 3, 5, 10):
        t = lp.tangency_solve(k, field)
        m = lp.minimize_c0(k, field)
        print(f"{field:<7} k={k:2d}  tangency c0={t.c0:.9f}  LP c0={m.c0:.9f}  c2={t.c2:+.6f}")

# %% [markdown]
# The closed-form third coefficient as usually printed is positive, which the
# LP forbids; the tangency system gives its negative.

# %%
printed = lp.printed_triple(2)
t = lp.tangency_solve(2, "complex")
print("printed c2:", printed[2], " tangency c2:", t.c2)
cert = lp.verify_feasible(t.c0, t.c1, printed[2], 2, "complex")
for c in cert.checked_constraints:
    print(f"{c.name:<16} satisfied={c.satisfied} margin={c.margin:+.3e}")
