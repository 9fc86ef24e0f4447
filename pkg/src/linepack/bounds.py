"""Lower bounds on the coherence of n lines in dimension d."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from linepack import lp
from linepack.errors import DimensionError
from linepack.frames import Field, check_field

#: Tie-break order used when several bounds attain the maximum.
BOUND_ORDER = ("bukh_cox", "welch", "levenshtein", "orthoplex")
TIE_TOL = 1e-12


def _check_dn(d: int, n: int) -> None:
    if d < 1 or n <= d:
        raise DimensionError(f"need n > d >= 1, got d={d}, n={n}")


def welch_bound(d: int, n: int) -> float:
    """sqrt((n-d) / (d(n-1))), valid over either field."""
    _check_dn(d, n)
    return math.sqrt((n - d) / (d * (n - 1)))


def bukh_cox_bound(d: int, n: int, field: Field = "complex") -> float:
    """Bukh-Cox coherence bound.

    Over C this is the closed form
    (n-d)^2 / (n + (n^2 - nd - n) sqrt(1+n-d) - (n-d)^2). Over R no closed form
    is used: the bound is n / (c0 n^2 - n) with c0 from the real tangency
    triple for k = n - d.
    """
    _check_dn(d, n)
    if check_field(field) == "complex":
        k = n - d
        return k * k / (n + (n * n - n * d - n) * math.sqrt(1 + k) - k * k)
    c0 = lp.tangency_solve(n - d, "real").c0
    return n / (c0 * n * n - n)


def orthoplex_bound(d: int, n: int, field: Field = "real", strict: bool = True) -> float | None:
    """1/sqrt(d) once n passes d(d+1)/2 (real) or d^2 (complex); None otherwise.

    ``strict=False`` switches the threshold test from ``n > t`` to ``n >= t``.
    """
    _check_dn(d, n)
    threshold = d * (d + 1) // 2 if check_field(field) == "real" else d * d
    applies = n > threshold if strict else n >= threshold
    return 1.0 / math.sqrt(d) if applies else None


def levenshtein_bound(d: int, n: int, field: Field = "real") -> float | None:
    """Levenshtein's second-degree bound; None when its right side is not positive."""
    _check_dn(d, n)
    if check_field(field) == "real":
        sq = (3 * n - d * d - 2 * d) / ((n - d) * (d + 2))
    else:
        sq = (2 * n - d * d - d) / ((n - d) * (d + 1))
    return math.sqrt(sq) if sq > 0 else None


def gerzon_max(d: int, field: Field = "complex") -> int:
    """Largest possible number of equiangular lines: d^2 over C, d(d+1)/2 over R."""
    if d < 1:
        raise DimensionError("d must be positive")
    return d * d if check_field(field) == "complex" else d * (d + 1) // 2


@dataclass(frozen=True)
class BoundReport:
    d: int
    n: int
    field: str
    welch: float | None
    bukh_cox: float
    orthoplex: float | None
    levenshtein: float | None
    best: float
    achiever: str

    def applicable(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in BOUND_ORDER if getattr(self, name) is not None}

    def to_dict(self) -> dict:
        return asdict(self)


def bound_report(d: int, n: int, field: Field = "real", orthoplex_strict: bool = True) -> BoundReport:
    values = {
        "bukh_cox": bukh_cox_bound(d, n, field),
        "welch": welch_bound(d, n),
        "levenshtein": levenshtein_bound(d, n, field),
        "orthoplex": orthoplex_bound(d, n, field, strict=orthoplex_strict),
    }
    best = max(v for v in values.values() if v is not None)
    achiever = next(
        name
        for name in BOUND_ORDER
        if values[name] is not None and values[name] >= best - TIE_TOL * max(1.0, best)
    )
    return BoundReport(d=d, n=n, field=field, best=best, achiever=achiever, **values)
