"""The quadratic linear program behind the Bukh-Cox Gram bound.

For an (n/k)-tight frame Y in dimension k the entrywise 1-norm of Y*Y is at
most c0 * n^2 whenever (c0, c1, c2) satisfies

    f(x) = c0 + c1 Q1(x) + c2 Q2(x) >= sqrt(x)   on [0, 1],
    0 <= c1 <= k c0,   c2 <= 0,

where Q1, Q2 are the degree-1 and degree-2 zonal polynomials of the
projective space (complex or real). This module builds those polynomials,
solves the tangency system that produces the closed-form triple, certifies
feasibility on a grid, and solves the discretized LP directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache

import numpy as np

from linepack import frames
from linepack.errors import (
    ConvergenceFailure,
    DimensionError,
    DomainError,
    InfeasibleTriple,
    SingularSystem,
)
from linepack.frames import Field, check_field

DEFAULT_GRID = 4097
VERIFY_GRID = 32769
SLACK_TOL = 1e-9
BOX_TOL = 1e-12


@dataclass(frozen=True)
class PolynomialTriple:
    """Q0 = 1, Q1 = x - 1/k and Q2 = x^2 - a x + b for one field and dimension."""

    field: Field
    k: int
    q1_shift: float
    q2_linear: float
    q2_constant: float

    def q0(self, x):
        return np.ones_like(np.asarray(x, dtype=float))

    def q1(self, x):
        return np.asarray(x, dtype=float) - self.q1_shift

    def q2(self, x):
        x = np.asarray(x, dtype=float)
        return x * x - self.q2_linear * x + self.q2_constant

    def q2_prime(self, x):
        return 2.0 * np.asarray(x, dtype=float) - self.q2_linear

    def f(self, x, c0: float, c1: float, c2: float):
        """Evaluate c0 Q0 + c1 Q1 + c2 Q2."""
        return c0 + c1 * self.q1(x) + c2 * self.q2(x)

    def f_prime(self, x, c0: float, c1: float, c2: float):
        return c1 + c2 * self.q2_prime(x)

    def coefficients(self) -> dict[str, list[float]]:
        """Monomial coefficients (constant first) of Q0, Q1, Q2."""
        return {
            "Q0": [1.0],
            "Q1": [-self.q1_shift, 1.0],
            "Q2": [self.q2_constant, -self.q2_linear, 1.0],
        }


def _check_k(k: int) -> int:
    if int(k) != k or k < 1:
        raise DimensionError(f"k must be a positive integer, got {k!r}")
    return int(k)


def q_polys(k: int, field: Field = "complex") -> PolynomialTriple:
    k = _check_k(k)
    if check_field(field) == "complex":
        return PolynomialTriple(field, k, 1.0 / k, 4.0 / (k + 2), 2.0 / ((k + 1) * (k + 2)))
    return PolynomialTriple(field, k, 1.0 / k, 6.0 / (k + 4), 3.0 / ((k + 2) * (k + 4)))


def tangency_abscissa(k: int, field: Field = "complex") -> float:
    """Squared overlap of a maximal equiangular set: 1/(k+1) complex, 1/(k+2) real."""
    k = _check_k(k)
    return 1.0 / (k + 1) if check_field(field) == "complex" else 1.0 / (k + 2)


@dataclass(frozen=True)
class Constraint:
    name: str
    satisfied: bool
    margin: float


@dataclass(frozen=True)
class FeasibilityCertificate:
    grid_size: int
    min_slack: float
    argmin_x: float
    checked_constraints: tuple[Constraint, ...]
    grid_min: float = 0.0
    grid_max: float = 1.0

    @property
    def passed(self) -> bool:
        return all(c.satisfied for c in self.checked_constraints)

    def to_dict(self) -> dict:
        return {
            "grid_size": self.grid_size,
            "min_slack": self.min_slack,
            "argmin_x": self.argmin_x,
            "passed": self.passed,
            "checked_constraints": [
                {"name": c.name, "satisfied": c.satisfied, "margin": c.margin}
                for c in self.checked_constraints
            ],
        }


@dataclass(frozen=True)
class LPSolution:
    field: Field
    k: int
    c0: float
    c1: float
    c2: float
    x_star: float
    source: str
    feasibility: FeasibilityCertificate
    rounds: int = dc_field(default=0)

    @property
    def coefficients(self) -> tuple[float, float, float]:
        return (self.c0, self.c1, self.c2)

    def to_dict(self) -> dict:
        return {
            "field": self.field,
            "k": self.k,
            "c0": self.c0,
            "c1": self.c1,
            "c2": self.c2,
            "x_star": self.x_star,
            "source": self.source,
            "feasibility": self.feasibility.to_dict(),
        }


def chebyshev_grid(grid_size: int, extra=()) -> np.ndarray:
    """Chebyshev-Lobatto points on [0, 1] merged with ``extra`` points, sorted."""
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    j = np.arange(grid_size)
    pts = 0.5 * (1.0 - np.cos(np.pi * j / (grid_size - 1)))
    pts[0], pts[-1] = 0.0, 1.0
    pts = np.concatenate([pts, np.asarray(list(extra), dtype=float), [0.0, 1.0]])
    return np.unique(np.clip(pts, 0.0, 1.0))


def verify_feasible(
    c0: float,
    c1: float,
    c2: float,
    k: int,
    field: Field = "complex",
    grid_size: int = DEFAULT_GRID,
    x_star: float | None = None,
) -> FeasibilityCertificate:
    """Check the box constraints exactly and f >= sqrt on a Chebyshev grid.

    The grid always contains 0, 1 and the tangency abscissa (or ``x_star``).
    Failures are reported in the certificate, never raised.
    """
    if grid_size < 3:
        raise ValueError("grid_size must be at least 3")
    polys = q_polys(k, field)
    if x_star is None:
        x_star = tangency_abscissa(k, field)
    x = chebyshev_grid(grid_size, extra=(x_star,))
    slack = polys.f(x, c0, c1, c2) - np.sqrt(x)
    i = int(np.argmin(slack))
    min_slack = float(slack[i])
    box = [
        ("c1 >= 0", c1),
        ("c1 <= k*c0", k * c0 - c1),
        ("c2 <= 0", -c2),
    ]
    checked = [Constraint(name, margin >= -BOX_TOL, float(margin)) for name, margin in box]
    checked.append(Constraint("f(x) >= sqrt(x)", min_slack >= -SLACK_TOL, min_slack))
    return FeasibilityCertificate(
        grid_size=int(x.size),
        min_slack=min_slack,
        argmin_x=float(x[i]),
        checked_constraints=tuple(checked),
        grid_min=float(x[0]),
        grid_max=float(x[-1]),
    )


@lru_cache(maxsize=None)
def tangency_solve(k: int, field: Field = "complex", grid_size: int = DEFAULT_GRID) -> LPSolution:
    """Solve f(x*) = sqrt(x*), f(1) = 1, f'(x*) = 1/(2 sqrt(x*)) for (c0, c1, c2).

    The result is memoized per (k, field, grid_size); the returned object is
    immutable.
    """
    k = _check_k(k)
    polys = q_polys(k, check_field(field))
    xs = tangency_abscissa(k, field)
    a = np.array(
        [
            [1.0, float(polys.q1(xs)), float(polys.q2(xs))],
            [1.0, float(polys.q1(1.0)), float(polys.q2(1.0))],
            [0.0, 1.0, float(polys.q2_prime(xs))],
        ]
    )
    rhs = np.array([math.sqrt(xs), 1.0, 0.5 / math.sqrt(xs)])
    if np.linalg.cond(a) > 1e12:
        raise SingularSystem(f"tangency system for k={k} ({field}) is singular")
    c0, c1, c2 = (float(v) for v in np.linalg.solve(a, rhs))
    cert = verify_feasible(c0, c1, c2, k, field, grid_size, x_star=xs)
    if not cert.passed:
        raise InfeasibleTriple(cert)
    return LPSolution(field, k, c0, c1, c2, xs, "tangency", cert)


def printed_triple(k: int) -> tuple[float, float, float]:
    """The closed-form complex triple exactly as it is usually printed.

    The third entry carries the opposite sign of the true tangency solution
    (it is positive, so it violates c2 <= 0); see ``tangency_solve``.
    """
    r = math.sqrt(1 + k)
    c0 = (1 + (k - 1) * r) / k**2
    c1 = r * (-4 + k**2 + 4 * r) / (2 * k * (2 + k))
    c2 = (-(2 + 4 * k + 2 * k**2) + r * (2 + 3 * k + k**2)) / (2 * k**2)
    return c0, c1, c2


# -- discretized LP --------------------------------------------------------


def _dual_simplex(a: np.ndarray, b: np.ndarray, basis: list[int], max_iter: int = 1000):
    """Minimize c[0] subject to a @ c >= b by the dual simplex method.

    ``basis`` must index three rows whose dual multipliers for the objective
    e0 are nonnegative. Returns the optimal vertex and final basis.
    """
    e0 = np.array([1.0, 0.0, 0.0])
    basis = list(basis)
    for _ in range(max_iter):
        ab = a[basis]
        c = np.linalg.solve(ab, b[basis])
        lam = np.linalg.solve(ab.T, e0)
        slack = a @ c - b
        r = int(np.argmin(slack))
        if slack[r] >= -1e-13 * max(1.0, abs(b[r])):
            return c, basis, lam
        u = np.linalg.solve(ab.T, a[r])
        pos = u > 1e-14
        if not np.any(pos):
            raise ConvergenceFailure("discretized LP is infeasible")
        ratios = np.full(3, np.inf)
        ratios[pos] = np.maximum(lam[pos], 0.0) / u[pos]
        p = int(np.argmin(ratios))
        basis[p] = r
    raise ConvergenceFailure(f"dual simplex did not terminate in {max_iter} iterations")


def _solve_discrete(polys: PolynomialTriple, x: np.ndarray, big: float = 1e6):
    k = polys.k
    rows = [np.column_stack([np.ones_like(x), polys.q1(x), polys.q2(x)])]
    rhs = [np.sqrt(x)]
    # box constraints, then two artificial bounds that make the start dual feasible
    rows.append(np.array([[0.0, 1.0, 0.0], [k, -1.0, 0.0], [0.0, 0.0, -1.0]]))
    rhs.append(np.zeros(3))
    rows.append(np.array([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]))
    rhs.append(np.array([-big, -big]))
    a = np.vstack(rows)
    b = np.concatenate(rhs)
    m = x.size
    start = [m + 3, m, m + 4]
    c, basis, lam = _dual_simplex(a, b, start)
    if any(i >= m + 3 and lam[j] > 1e-12 for j, i in enumerate(basis)):
        raise ConvergenceFailure("discretized LP is unbounded")
    active = [float(x[i]) for i in basis if i < m]
    return c, active


def minimize_c0(
    k: int,
    field: Field = "complex",
    grid_size: int = DEFAULT_GRID,
    max_rounds: int = 3,
) -> LPSolution:
    """Minimize c0 over the LP discretized on a Chebyshev grid.

    The optimum is re-checked on a grid eight times finer; violated fine-grid
    points are added to the constraint set and the LP re-solved, at most
    ``max_rounds`` times.
    """
    k = _check_k(k)
    if grid_size < 65:
        raise ValueError("grid_size must be at least 65")
    polys = q_polys(k, check_field(field))
    xs = tangency_abscissa(k, field)
    x = chebyshev_grid(grid_size, extra=(xs,))
    fine = chebyshev_grid(8 * (grid_size - 1) + 1, extra=(xs,))
    for rounds in range(max_rounds + 1):
        (c0, c1, c2), active = _solve_discrete(polys, x)
        slack = polys.f(fine, c0, c1, c2) - np.sqrt(fine)
        bad = slack < -SLACK_TOL
        if not np.any(bad):
            break
        if rounds == max_rounds:
            raise ConvergenceFailure(
                f"fine-grid slack {slack.min():.3e} after {max_rounds} refinement rounds"
            )
        x = np.union1d(x, fine[bad])
    interior = [p for p in active if 0.0 < p < 1.0]
    if interior:
        x_star = min(interior, key=lambda p: abs(p - xs))
    else:
        x_star = float(fine[np.argmin(slack)])
    cert = verify_feasible(c0, c1, c2, k, field, fine.size, x_star=x_star)
    return LPSolution(field, k, float(c0), float(c1), float(c2), x_star, "minimized", cert, rounds)


# -- Gram 1-norm bounds ----------------------------------------------------


def _check_kn(k: int, n: int) -> None:
    if k < 1 or n < k:
        raise DimensionError(f"need n >= k >= 1, got k={k}, n={n}")


def gram_one_norm_bound_welch(k: int, n: int) -> float:
    """n + sqrt(n (n-1) (n^2/k - n)): the Cauchy-Schwarz bound on ||Y*Y||_1."""
    _check_kn(k, n)
    return n + math.sqrt(max(n * (n - 1) * (n * n / k - n), 0.0))


def gram_one_norm_bound_bc(k: int, n: int, field: Field = "complex") -> float:
    """c0 n^2 with the tangency c0; closed form n^2 (1 + (k-1) sqrt(1+k)) / k^2 for C."""
    _check_kn(k, n)
    if check_field(field) == "complex":
        return n * n * (1 + (k - 1) * math.sqrt(1 + k)) / k**2
    return tangency_solve(k, "real").c0 * n * n


def lemma_coherence_floor(n: int, gamma_upper: float) -> float:
    """n / (gamma_upper - n): the coherence floor from an upper bound on gamma(k, n)."""
    if gamma_upper <= n:
        raise DomainError(f"gamma_upper must exceed n={n}, got {gamma_upper}")
    return n / (gamma_upper - n)


def _witnesses(k: int, n: int, field: Field, seed: int):
    if field == "complex" and k in (2, 3) and n % (k * k) == 0:
        yield "sic-copies", frames.concat_copies(frames.construct_sic(k), n // (k * k))
    if k == 1:
        yield "ones", frames.VectorConfiguration(np.ones((1, n)), field=field)
    if n % (k + 1) == 0:
        yield "simplex-copies", frames.concat_copies(frames.construct_simplex_etf(k, field), n // (k + 1))
    if n % k == 0:
        yield "orthonormal-copies", frames.concat_copies(frames.orthonormal_basis(k, field), n // k)
    if n > k:
        rng = np.random.default_rng(seed)
        x = frames.VectorConfiguration.random(n - k, n, field, rng)
        yield "random-complement", frames.orthogonal_tight_complement(x)


def gamma_interval(k: int, n: int, field: Field = "complex", seed: int = 0) -> tuple[float, float]:
    """Bracket gamma(k, n) = max ||Y*Y||_1 over Y in T(k, n).

    The upper end is the smaller of the two Gram bounds; the lower end is the
    best built-in witness frame.
    """
    _check_kn(k, n)
    check_field(field)
    upper = min(gram_one_norm_bound_welch(k, n), gram_one_norm_bound_bc(k, n, field))
    lower = max(frames.gram_one_norm(y) for _, y in _witnesses(k, n, field, seed))
    return lower, upper
