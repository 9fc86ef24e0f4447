"""Numerical certificates for the coherence/Gram-norm duality and its equality cases.

``lemma_certificate`` replays, on a concrete configuration X, the chain

    0 = (X*X Y*Y)_ii  ->  ||y_i||^2 <= sum_j |<x_i,x_j>| |<y_i,y_j>|
      <= mu(X) sum_j |<y_i,y_j>|  ->  n <= mu(X) (||Y*Y||_1 - n)

with Y a tight complement of X, and records the slack of every step.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field as dc_field

import numpy as np

from linepack import frames, lp
from linepack.errors import NotTight, ShapeMismatch
from linepack.frames import VectorConfiguration

CHAIN_TOL = 1e-8
SGN_DEAD_ZONE = 1e-12


@dataclass(frozen=True)
class ChainStep:
    name: str
    left: float
    right: float
    slack: float

    @property
    def passed(self) -> bool:
        return self.slack >= -CHAIN_TOL


@dataclass(frozen=True)
class LemmaCertificate:
    n: int
    d: int
    k: int
    mu: float
    gamma_witness: float
    gamma_upper: float
    floor_witness: float
    floor_theorem: float
    chain: tuple[ChainStep, ...]
    valid: bool

    def step(self, name: str) -> ChainStep:
        for s in self.chain:
            if s.name == name:
                return s
        raise KeyError(name)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["chain"] = [asdict(s) | {"passed": s.passed} for s in self.chain]
        return out


@dataclass(frozen=True)
class Condition:
    name: str
    holds: bool
    margin: float
    note: str = ""


@dataclass(frozen=True)
class EqualityDiagnosis:
    kind: str
    tolerance: float
    conditions: tuple[Condition, ...]
    skipped_pairs: tuple[tuple[int, int], ...] = ()
    extras: dict = dc_field(default_factory=dict)

    def __getitem__(self, name: str) -> Condition:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def all_hold(self) -> bool:
        return all(c.holds for c in self.conditions)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "tolerance": self.tolerance,
            "all_hold": self.all_hold,
            "conditions": [asdict(c) for c in self.conditions],
            "skipped_pairs": [list(p) for p in self.skipped_pairs],
            **self.extras,
        }


def gamma_upper_bound(k: int, n: int, field: str) -> float:
    """Smaller of the Welch-type and Bukh-Cox-type bounds on ||Y*Y||_1 over T(k, n)."""
    return min(lp.gram_one_norm_bound_welch(k, n), lp.gram_one_norm_bound_bc(k, n, field))


def _require_unit_norm(X: VectorConfiguration, tol: float = 1e-6) -> None:
    dev = np.max(np.abs(X.column_norms - 1.0))
    if dev > tol:
        raise ValueError(f"configuration is not unit norm (max deviation {dev:.3e})")


def lemma_certificate(X: VectorConfiguration) -> LemmaCertificate:
    """Build a tight complement Y of X and check every step of the coherence floor."""
    _require_unit_norm(X)
    Y = frames.orthogonal_tight_complement(X)
    d, n = X.shape
    k = n - d
    gx = X.gram()
    gy = Y.gram()
    ax, ay = np.abs(gx), np.abs(gy)
    off = ~np.eye(n, dtype=bool)
    mu = float(ax[off].max())
    norms_sq = np.real(np.diag(gy))

    # (X*X Y*Y)_ii split into ||y_i||^2 plus the off-diagonal sum
    cross = np.where(off, gx * gy.T, 0).sum(axis=1)
    residual = np.abs(norms_sq + cross)
    tri_right = np.where(off, ax * ay, 0).sum(axis=1)
    row_y = np.where(off, ay, 0).sum(axis=1)
    coh_right = mu * row_y

    one_norm = float(ay.sum())
    trace = float(norms_sq.sum())
    gamma_upper = gamma_upper_bound(k, n, X.field)
    floor_witness = n / (one_norm - n)
    floor_theorem = lp.lemma_coherence_floor(n, gamma_upper)

    chain = (
        ChainStep("diag-identity", float(residual.max()), 0.0, -float(residual.max())),
        ChainStep(
            "triangle",
            float(norms_sq.sum()),
            float(tri_right.sum()),
            float((tri_right - norms_sq).min()),
        ),
        ChainStep(
            "coherence-factor",
            float(tri_right.sum()),
            float(coh_right.sum()),
            float((coh_right - tri_right).min()),
        ),
        ChainStep("trace-sum", trace, mu * (one_norm - trace), mu * (one_norm - trace) - trace),
        ChainStep("witness-floor", floor_witness, mu, mu - floor_witness),
        ChainStep("theorem-floor", floor_theorem, floor_witness, floor_witness - floor_theorem),
    )
    return LemmaCertificate(
        n=n,
        d=d,
        k=k,
        mu=mu,
        gamma_witness=one_norm,
        gamma_upper=gamma_upper,
        floor_witness=floor_witness,
        floor_theorem=floor_theorem,
        chain=chain,
        valid=all(s.passed for s in chain),
    )


def _sgn(z: np.ndarray) -> np.ndarray:
    return z / np.abs(z)


def diagnose_lemma_equality(
    X: VectorConfiguration,
    Y: VectorConfiguration,
    tol: float = 1e-9,
    gamma_upper: float | None = None,
) -> EqualityDiagnosis:
    """Evaluate the sufficient conditions for X to be an optimal packing.

    Conditions: X equiangular; (i) gap between ``gamma_upper`` and ||Y*Y||_1;
    (ii) ||XY*||_F; (iii) sgn<x_i,x_j> = -sgn<y_i,y_j> with sgn z = z/|z|.
    Pairs where either product has modulus below 1e-12 are skipped and listed.
    """
    d, n = X.shape
    k, n_y = Y.shape
    if n_y != n or d + k != n:
        raise ShapeMismatch(f"cannot pair X ({d}x{n}) with Y ({k}x{n_y}); need d + k = n")
    if gamma_upper is None:
        gamma_upper = gamma_upper_bound(k, n, X.field)
    gx, gy = X.gram(), Y.gram()
    i, j = np.triu_indices(n, k=1)
    px, py = gx[i, j], gy[i, j]
    keep = (np.abs(px) >= SGN_DEAD_ZONE) & (np.abs(py) >= SGN_DEAD_ZONE)
    skipped = tuple((int(a), int(b)) for a, b in zip(i[~keep], j[~keep]))
    sign_margin = float(np.abs(_sgn(px[keep]) + _sgn(py[keep])).max(initial=0.0))

    moduli = np.abs(px)
    spread = float(moduli.max() - moduli.min()) if moduli.size else 0.0
    gap = max(gamma_upper - frames.gram_one_norm(Y), 0.0)
    cross = float(np.linalg.norm(X.matrix() @ Y.matrix().conj().T))
    conditions = (
        Condition("equiangular", spread <= tol, spread),
        Condition(
            "(i) witness optimality gap",
            gap <= tol,
            gap,
            "gap to the best known upper bound on gamma(k, n), not to gamma itself",
        ),
        Condition("(ii) XY* = 0", cross <= tol, cross),
        Condition("(iii) sign flip", sign_margin <= tol, sign_margin, "sgn z = z/|z|"),
    )
    return EqualityDiagnosis("lemma", tol, conditions, skipped, {"gamma_upper": gamma_upper})


def diagnose_theorem3_equality(Y: VectorConfiguration, tol: float = 1e-9) -> EqualityDiagnosis:
    """Check the four equality conditions of the Bukh-Cox Gram bound for a tight Y."""
    tight, res = frames.is_tight(Y, tol)
    if not tight:
        raise NotTight(res)
    k, n = Y.shape
    y = Y.matrix()
    norms = np.linalg.norm(y, axis=0)
    if np.any(norms == 0):
        raise ValueError("Y has a zero column")
    z = y / norms
    gz = z.conj().T @ z
    gyz = y.conj().T @ z  # <y_i, z_j>
    gzy = z.conj().T @ y  # <z_i, y_j>
    overlap = np.abs(gz)
    sq = overlap**2

    sol = lp.tangency_solve(k, Y.field)
    polys = lp.q_polys(k, Y.field)
    weights = np.outer(norms, norms)

    m1 = float(np.abs(np.abs(gyz) - np.abs(gzy)).max())
    m2 = float(np.abs(polys.f(sq, *sol.coefficients) - overlap).max())
    m3 = float(abs((polys.q2(sq) * weights).sum()))
    m4 = float(np.abs(norms - 1.0).max())
    one_norm = float(np.abs(y.conj().T @ y).sum())
    bound = lp.gram_one_norm_bound_bc(k, n, Y.field)
    conditions = (
        Condition("1 |<y_i,z_j>| = |<z_i,y_j>|", m1 <= tol, m1, "implemented as printed"),
        Condition("2 f(|<z_i,z_j>|^2) = |<z_i,z_j>|", m2 <= tol, m2),
        Condition("3 Q2 kernel sum = 0", m3 <= tol, m3),
        Condition("4 unit norms", m4 <= tol, m4),
    )
    return EqualityDiagnosis(
        "theorem3", tol, conditions, extras={"one_norm": one_norm, "bound": bound}
    )


@dataclass(frozen=True)
class WelchEqualityResult:
    equal: bool
    etf: bool
    norm_gap: float
    equiangular_spread: float
    norm_deviation: float

    @property
    def agree(self) -> bool:
        return self.equal == self.etf

    def to_dict(self) -> dict:
        return asdict(self) | {"agree": self.agree}


def welch_equality_check(Y: VectorConfiguration, tol: float = 1e-7) -> WelchEqualityResult:
    """Compare ||Y*Y||_1 with the Welch-type Gram bound and test whether Y is an ETF.

    Both verdicts are returned; for a tight Y they should coincide.
    """
    tight, res = frames.is_tight(Y, tol)
    if not tight:
        raise NotTight(res)
    k, n = Y.shape
    gap = lp.gram_one_norm_bound_welch(k, n) - frames.gram_one_norm(Y)
    dev = float(np.abs(Y.column_norms - 1.0).max())
    spread = frames.is_equiangular(Y, tol)[1] if n >= 2 else 0.0
    etf = dev <= tol and spread <= tol
    return WelchEqualityResult(abs(gap) <= tol, etf, float(gap), float(spread), dev)
