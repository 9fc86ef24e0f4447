# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Coherence lower bounds for lines in R^6
#
# Four lower bounds compete as n grows. For a handful of n just above d the
# Bukh-Cox bound is the largest; further out the Welch, orthoplex and
# Levenshtein bounds take over.

# %%
from linepack import bounds, ingest
from linepack.cli import figure_rows, render_csv

d = 6
for n in range(7, 13):
    r = bounds.bound_report(d, n, "real")
    print(f"n={n:2d}  best={r.best:.6f}  ({r.achiever})  welch={r.welch:.6f}  bukh_cox={r.bukh_cox:.6f}")

# %% [markdown]
# The same table with the coherence of the bundled packings, as CSV.

# %%
rows = figure_rows(d, 7, 40, "real", ingest.bundled_packings_dir())
print(render_csv(rows))

# %% [markdown]
# Every bound sits below the measured coherence.

# %%
gaps = [r.packing_coherence - r.best_bound for r in rows if r.packing_coherence is not None]
print(f"smallest gap between packing and best bound: {min(gaps):.3e}")

# %%
try:
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    ns = [r.n for r in rows]
    fig, ax = plt.subplots(figsize=(8, 4))
    for name, color in [("bukh_cox", "green"), ("welch", "blue"), ("orthoplex", "pink"), ("levenshtein", "red")]:
        pts = [(r.n, getattr(r, name)) for r in rows if getattr(r, name) is not None]
        ax.plot(*zip(*pts), color=color, label=name)
    pts = [(r.n, r.packing_coherence) for r in rows if r.packing_coherence is not None]
    ax.plot(*zip(*pts), "k.", label="packings")
    ax.set_xlabel("n")
    ax.set_ylabel("coherence")
    ax.legend()
    fig.savefig("bounds_R6.png", dpi=120)
