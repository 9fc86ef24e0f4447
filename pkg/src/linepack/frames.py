"""Vector configurations, Gram statistics, and frame constructions.

A configuration is a d x n matrix whose columns are the vectors x_1, ..., x_n.
Entries are always stored as complex128; a ``field`` tag records whether the
configuration is meant to live in R^d or C^d. The tag only affects which
bounds and polynomials apply downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Literal

import numpy as np

from linepack.errors import DimensionError, NotTight, RankDeficient, Unsupported

Field = Literal["real", "complex"]
FIELDS: tuple[str, ...] = ("real", "complex")

TOL_UNIT = 1e-8
RANK_TOL = 1e-10
TIGHT_TOL = 1e-8


def check_field(field: str) -> str:
    if field not in FIELDS:
        raise ValueError(f"field must be 'real' or 'complex', got {field!r}")
    return field


@dataclass(frozen=True, eq=False)
class VectorConfiguration:
    """A d x n array of scalars, read column by column.

    Parameters
    ----------
    entries : array_like
        Matrix of shape ``(d, n)``. Column ``j`` is the vector ``x_j``.
    field : {"real", "complex"}
        Scalar field the configuration belongs to. Real configurations must
        have vanishing imaginary parts.
    tol_unit : float
        Tolerance used by :attr:`unit_norm`.
    """

    entries: np.ndarray
    field: Field = "complex"
    tol_unit: float = dc_field(default=TOL_UNIT)

    def __post_init__(self):
        check_field(self.field)
        arr = np.array(self.entries, dtype=np.complex128, copy=True)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise DimensionError(f"entries must be a non-empty d x n matrix, got shape {arr.shape}")
        if self.field == "real":
            if np.max(np.abs(arr.imag), initial=0.0) > 1e-12 * max(1.0, np.max(np.abs(arr))):
                raise ValueError("real configuration has non-zero imaginary parts")
            arr = arr.real.astype(np.complex128)
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @classmethod
    def from_columns(cls, columns, field: Field = "complex", **kwargs) -> VectorConfiguration:
        """Build a configuration from a sequence of vectors."""
        cols = [np.asarray(c, dtype=np.complex128).ravel() for c in columns]
        return cls(np.column_stack(cols), field=field, **kwargs)

    @classmethod
    def random(
        cls,
        d: int,
        n: int,
        field: Field = "complex",
        rng: np.random.Generator | None = None,
    ) -> VectorConfiguration:
        """Return n independent uniformly random unit vectors in dimension d."""
        rng = rng if rng is not None else np.random.default_rng()
        z = rng.standard_normal((d, n))
        if check_field(field) == "complex":
            z = z + 1j * rng.standard_normal((d, n))
        return cls(z / np.linalg.norm(z, axis=0), field=field)

    @property
    def d(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def matrix(self) -> np.ndarray:
        """Working copy of the entries: float64 for real, complex128 otherwise."""
        if self.field == "real":
            return self.entries.real.copy()
        return self.entries.copy()

    @property
    def column_norms(self) -> np.ndarray:
        return np.linalg.norm(self.entries, axis=0)

    @property
    def unit_norm(self) -> bool:
        return bool(np.all(np.abs(self.column_norms - 1.0) <= self.tol_unit))

    def normalized(self) -> VectorConfiguration:
        """Columns rescaled to unit norm (zero columns are rejected)."""
        norms = self.column_norms
        if np.any(norms == 0):
            raise ValueError("cannot normalize a zero column")
        return VectorConfiguration(self.entries / norms, field=self.field, tol_unit=self.tol_unit)

    def gram(self) -> np.ndarray:
        """The n x n Gram matrix X*X, entry (i, j) = <x_j, x_i> conjugate-linear in i."""
        x = self.matrix()
        return x.conj().T @ x

    def frame_operator(self) -> np.ndarray:
        """The d x d matrix XX*."""
        x = self.matrix()
        return x @ x.conj().T

    def __repr__(self) -> str:
        return f"VectorConfiguration(d={self.d}, n={self.n}, field={self.field!r})"


@dataclass(frozen=True)
class GramReport:
    gram: np.ndarray
    coherence: float
    one_norm: float
    tightness_residual: float
    equiangular_spread: float
    trace: float


def _offdiag_moduli(gram: np.ndarray) -> np.ndarray:
    iu = np.triu_indices(gram.shape[0], k=1)
    return np.abs(gram[iu])


def tightness_residual(X: VectorConfiguration) -> float:
    """Frobenius distance between XX* and (n/d) I."""
    return float(np.linalg.norm(X.frame_operator() - (X.n / X.d) * np.eye(X.d)))


def gram_report(X: VectorConfiguration) -> GramReport:
    """Gram matrix of ``X`` together with the statistics derived from it.

    Coherence is the largest off-diagonal modulus (0 for a single vector),
    ``one_norm`` is the entrywise 1-norm of the Gram matrix.
    """
    gram = X.gram()
    off = _offdiag_moduli(gram)
    if off.size:
        coherence = float(off.max())
        spread = float(off.max() - off.min())
    else:
        coherence = 0.0
        spread = 0.0
    gram.setflags(write=False)
    return GramReport(
        gram=gram,
        coherence=coherence,
        one_norm=float(np.abs(gram).sum()),
        tightness_residual=tightness_residual(X),
        equiangular_spread=spread,
        trace=float(np.trace(gram).real),
    )


def coherence(X: VectorConfiguration) -> float:
    return gram_report(X).coherence


def gram_one_norm(X: VectorConfiguration) -> float:
    """Entrywise 1-norm of X*X."""
    return float(np.abs(X.gram()).sum())


def is_tight(X: VectorConfiguration, tol: float = TIGHT_TOL) -> tuple[bool, float]:
    """Test whether XX* = (n/d) I, returning the verdict and the residual."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    res = tightness_residual(X)
    return res <= tol, res


def is_equiangular(X: VectorConfiguration, tol: float = 1e-8) -> tuple[bool, float]:
    """Test whether all off-diagonal Gram moduli agree, returning the spread."""
    if X.n < 2:
        raise DimensionError("equiangularity needs at least two vectors")
    off = _offdiag_moduli(X.gram())
    spread = float(off.max() - off.min())
    return spread <= tol, spread


def is_etf(X: VectorConfiguration, tol: float = 1e-8) -> bool:
    """Equiangular and tight at tolerance ``tol``."""
    return is_tight(X, tol)[0] and is_equiangular(X, tol)[0]


def orthogonal_tight_complement(X: VectorConfiguration, rank_tol: float = RANK_TOL) -> VectorConfiguration:
    """A Y in T(n-d, n) with XY* = 0.

    The rows of Y are an orthonormal basis of the orthogonal complement of the
    row space of X, scaled by sqrt(n/k). Y is determined up to a k x k unitary
    acting on the left.
    """
    d, n = X.shape
    if n <= d:
        raise DimensionError(f"need n > d for a complement, got d={d}, n={n}")
    x = X.matrix()
    _, s, vh = np.linalg.svd(x, full_matrices=True)
    if s[-1] <= rank_tol:
        raise RankDeficient(s[-1])
    k = n - d
    y = np.sqrt(n / k) * vh[d:]
    return VectorConfiguration(y, field=X.field)


def naimark_complement(X: VectorConfiguration, tol: float = TIGHT_TOL) -> VectorConfiguration:
    """The unit-norm tight frame Y in dimension n-d with Y*Y = (n/k)(I - (d/n) X*X)."""
    d, n = X.shape
    if n <= d:
        raise DimensionError(f"need n > d for a Naimark complement, got d={d}, n={n}")
    tight, res = is_tight(X, tol)
    if not tight:
        raise NotTight(res)
    if not np.all(np.abs(X.column_norms - 1.0) <= tol):
        raise ValueError("Naimark complement requires unit-norm columns")
    k = n - d
    projector = np.eye(n) - (d / n) * X.gram()
    if X.field == "real":
        projector = projector.real
    projector = 0.5 * (projector + projector.conj().T)
    w, v = np.linalg.eigh(projector)
    # eigh sorts ascending; the top k eigenvalues are 1.
    top = v[:, n - k:]
    y = np.sqrt(n / k) * top.conj().T
    return VectorConfiguration(y, field=X.field)


def construct_simplex_etf(d: int, field: Field = "real") -> VectorConfiguration:
    """d+1 unit vectors in dimension d with pairwise |<x_i, x_j>| = 1/d.

    The standard basis of R^(d+1) is centred and then written in an
    orthonormal basis of the hyperplane orthogonal to (1, ..., 1).
    """
    if d < 1:
        raise DimensionError("d must be positive")
    n = d + 1
    centred = np.eye(n) - np.full((n, n), 1.0 / n)
    # Orthonormal basis of the sum-zero hyperplane from the SVD of the centring projector.
    u, _, _ = np.linalg.svd(centred)
    basis = u[:, :d]
    coords = basis.T @ centred
    coords /= np.linalg.norm(coords, axis=0)
    return VectorConfiguration(coords, field=check_field(field))


def construct_sic(k: int) -> VectorConfiguration:
    """A SIC of k^2 unit vectors in C^k for k = 2 (tetrahedral) or k = 3 (Hesse)."""
    omega = np.exp(2j * np.pi / 3)
    if k == 2:
        cols = [np.array([1.0, 0.0])]
        cols += [np.array([1 / np.sqrt(3), np.sqrt(2 / 3) * omega**a]) for a in range(3)]
    elif k == 3:
        cols = []
        for a in range(3):
            w = omega**a
            cols.append(np.array([0, 1, -w]) / np.sqrt(2))
            cols.append(np.array([-w, 0, 1]) / np.sqrt(2))
            cols.append(np.array([1, -w, 0]) / np.sqrt(2))
    else:
        raise Unsupported(k)
    return VectorConfiguration.from_columns(cols, field="complex")


def concat_copies(Z: VectorConfiguration, m: int) -> VectorConfiguration:
    """[Z | Z | ... | Z] with m blocks."""
    if m < 1:
        raise ValueError("m must be at least 1")
    return VectorConfiguration(np.tile(Z.entries, (1, m)), field=Z.field, tol_unit=Z.tol_unit)


def orthonormal_basis(d: int, field: Field = "real") -> VectorConfiguration:
    return VectorConfiguration(np.eye(d), field=field)
