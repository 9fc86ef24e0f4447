"""Regenerate the packings bundled in src/linepack/data/packings.

Small explicit constructions are written directly, and the 36 lines of the
E6 root system give the R^6 packing for n = 36. The other R^6 packings for
n = 8..40 come from a local minimax search (random restarts followed by SLSQP
on  min t  s.t.  t^2 >= <x_i,x_j>^2, |x_i| = 1), after which a subset pass
replaces packing n by the best n-subset of packing n+1 whenever that is
better. They are good packings, not certified optimal ones; published tables
can replace them via ``linepack fetch``.

    python tools/make_fixtures.py [--n-min 8] [--n-max 40] [--restarts 12] [--prune-only]
"""

from __future__ import annotations

import argparse
import itertools
from pathlib import Path

import numpy as np
from scipy.optimize import minimize

from linepack import frames
from linepack.ingest import load_packing, packing_filename, serialize_packing

OUT = Path(__file__).resolve().parents[1] / "src" / "linepack" / "data" / "packings"


def _smooth_start(d, n, rng, p=20):
    x0 = rng.standard_normal((d, n))
    x0 /= np.linalg.norm(x0, axis=0)

    def obj(v):
        x = v.reshape(d, n)
        nrm = np.linalg.norm(x, axis=0)
        z = x / nrm
        g = z.T @ z
        np.fill_diagonal(g, 0.0)
        return np.log(np.sum(g ** (2 * p))) / (2 * p)

    res = minimize(obj, x0.ravel(), method="L-BFGS-B", options={"maxiter": 3000})
    x = res.x.reshape(d, n)
    return x / np.linalg.norm(x, axis=0)


def _polish(x):
    d, n = x.shape
    iu = np.triu_indices(n, 1)
    g = x.T @ x
    v0 = np.concatenate([x.ravel(), [np.abs(g[iu]).max()]])

    def pair(v):
        y = v[:-1].reshape(d, n)
        gg = y.T @ y
        return v[-1] ** 2 - gg[iu] ** 2

    def pair_jac(v):
        y = v[:-1].reshape(d, n)
        gg = y.T @ y
        m = len(iu[0])
        jac = np.zeros((m, d * n + 1))
        for r, (i, j) in enumerate(zip(*iu)):
            gij = gg[i, j]
            jy = np.zeros((d, n))
            jy[:, i] = -2 * gij * y[:, j]
            jy[:, j] = -2 * gij * y[:, i]
            jac[r, :-1] = jy.ravel()
            jac[r, -1] = 2 * v[-1]
        return jac

    def unit(v):
        y = v[:-1].reshape(d, n)
        return np.sum(y * y, axis=0) - 1.0

    def unit_jac(v):
        y = v[:-1].reshape(d, n)
        jac = np.zeros((n, d * n + 1))
        for j in range(n):
            jy = np.zeros((d, n))
            jy[:, j] = 2 * y[:, j]
            jac[j, :-1] = jy.ravel()
        return jac

    grad = np.zeros(d * n + 1)
    grad[-1] = 1.0
    res = minimize(
        lambda v: v[-1],
        v0,
        jac=lambda v: grad,
        method="SLSQP",
        constraints=[
            {"type": "ineq", "fun": pair, "jac": pair_jac},
            {"type": "eq", "fun": unit, "jac": unit_jac},
        ],
        options={"maxiter": 500, "ftol": 1e-15},
    )
    y = res.x[:-1].reshape(d, n)
    return y / np.linalg.norm(y, axis=0)


def best_packing(d, n, restarts, seed):
    rng = np.random.default_rng(seed)
    best, best_mu = None, np.inf
    for _ in range(restarts):
        x = _polish(_smooth_start(d, n, rng))
        g = np.abs(x.T @ x)
        np.fill_diagonal(g, 0)
        if g.max() < best_mu:
            best, best_mu = x, g.max()
    return best, best_mu


def _coherence(x):
    g = np.abs(x.T @ x)
    np.fill_diagonal(g, 0)
    return g.max()


def _drop_one(x):
    """Best sub-packing with one column removed."""
    cands = [np.delete(x, j, axis=1) for j in range(x.shape[1])]
    return min(cands, key=_coherence)


def prune(d, n_lo, n_hi):
    """Replace packing n by a subset of packing n+1 when that is better.

    Coherence cannot go up when a vector is removed, so the stored values
    become non-decreasing in n.
    """
    for n in range(n_hi - 1, n_lo - 1, -1):
        big = load_packing(OUT / packing_filename(d, n + 1), d, n + 1).configuration.matrix().real
        cur = load_packing(OUT / packing_filename(d, n), d, n).configuration.matrix().real
        sub = _drop_one(big)
        if _coherence(sub) < _coherence(cur) - 1e-12:
            write(frames.VectorConfiguration(sub, "real"), packing_filename(d, n))
            print(f"n={n:2d}  {_coherence(cur):.9f} -> {_coherence(sub):.9f} (subset of n={n + 1})", flush=True)


def e6_lines():
    """The 36 lines through the E6 roots, as a 6 x 36 unit-norm array.

    E6 is the part of the E8 root system orthogonal to an A2 pair a, b.
    """
    roots = []
    for i, j in itertools.combinations(range(8), 2):
        for si, sj in itertools.product((1, -1), repeat=2):
            v = np.zeros(8)
            v[i], v[j] = si, sj
            roots.append(v)
    for signs in itertools.product((0.5, -0.5), repeat=8):
        if sum(t < 0 for t in signs) % 2 == 0:
            roots.append(np.array(signs))
    roots = np.array(roots)
    a = roots[0]
    b = next(r for r in roots if abs(r @ a + 1) < 1e-9)
    e6 = roots[(np.abs(roots @ a) < 1e-9) & (np.abs(roots @ b) < 1e-9)]
    q, _ = np.linalg.qr(np.column_stack([a, b, np.eye(8)]))
    pts = e6 @ q[:, 2:8]
    lines = []
    for v in pts:
        if not any(abs(abs(v @ w) - 2) < 1e-9 for w in lines):
            lines.append(v)
    return np.array(lines).T / np.sqrt(2)


def write(config, name):
    (OUT / name).write_bytes(serialize_packing(config))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-min", type=int, default=8, help="first n for the R^6 search; n < 8 writes explicit ones too")
    ap.add_argument("--n-max", type=int, default=40)
    ap.add_argument("--restarts", type=int, default=12)
    ap.add_argument("--prune-only", action="store_true", help="skip the search, only run the subset pass")
    args = ap.parse_args()
    OUT.mkdir(parents=True, exist_ok=True)
    d = 6
    if args.n_max >= 36:
        # beats any local search result at n = 36
        write(frames.VectorConfiguration(e6_lines(), "real"), packing_filename(d, 36))
    if args.prune_only:
        prune(d, 8, args.n_max)
        return
    if args.n_min <= 8:
        write_explicit(d)
    for n in range(max(args.n_min, 8), args.n_max + 1):
        if n == 36:
            continue
        x, mu = best_packing(d, n, args.restarts, seed=n)
        write(frames.VectorConfiguration(x, "real"), packing_filename(d, n))
        print(f"n={n:2d}  coherence={mu:.9f}", flush=True)
    prune(d, 8, args.n_max)


def write_explicit(d):
    s3 = np.sqrt(3) / 2
    write(frames.VectorConfiguration([[1, -0.5, -0.5], [0, s3, -s3]], "real"), "real-d2-n3.txt")
    r = 1 / np.sqrt(2)
    write(frames.VectorConfiguration([[1, 0, r], [0, 1, r]], "real"), "real-d2-n3-skew.txt")
    write(frames.orthonormal_basis(4), "real-d4-n4.txt")
    write(frames.construct_sic(2), "complex-d2-n4.txt")
    write(frames.concat_copies(frames.construct_sic(2), 2), "complex-d2-n8.txt")
    write(frames.construct_sic(3), "complex-d3-n9.txt")

    for n in (5, 6):
        write(frames.VectorConfiguration(np.eye(d)[:, :n], "real"), packing_filename(d, n))
    write(frames.construct_simplex_etf(d), packing_filename(d, 7))


if __name__ == "__main__":
    main()
