# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Packing files
#
# Files are plain lists of scalars; vectors are stored consecutively.
# Slightly off-norm columns (published tables carry ~8 digits) are rescaled.

# %%
from linepack import ingest

rec = ingest.parse_packing(b"1 0 0 1 0.70710678 0.70710678", d=2, n=3)
print(rec.layout, rec.renormalized, ingest.packing_coherence(rec))
print(ingest.serialize_packing(rec).decode())

# %% [markdown]
# Bundled packings and their coherence.

# %%
for path in sorted(ingest.bundled_packings_dir().glob("real-d6-*.txt"), key=lambda p: int(p.stem.split("n")[-1])):
    r = ingest.load_packing(path)
    print(f"{path.name:<18} coherence={ingest.packing_coherence(r):.9f}")

# %% [markdown]
# Remote tables are fetched once and cached by content hash:
#
#     LINEPACK_DB_URL=https://example.org/tables \
#         linepack fetch 'pack.{d}.{n}.txt' --d 6 --n-min 5 --n-max 40 --out-dir packings/
#     linepack figure --d 6 --n-min 5 --n-max 40 --packings packings/ --out fig.csv
