"""Exception types raised across linepack."""

from __future__ import annotations


class LinepackError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(LinepackError, ValueError):
    """Raised when (d, n) or (k, n) fall outside an operation's domain."""


class DomainError(LinepackError, ValueError):
    """Raised when a scalar argument is outside the domain of a formula."""


class RankDeficient(LinepackError):
    def __init__(self, sigma_min: float):
        self.sigma_min = float(sigma_min)
        super().__init__(f"configuration is rank deficient (smallest singular value {sigma_min:.3e})")


class NotTight(LinepackError):
    def __init__(self, residual: float):
        self.residual = float(residual)
        super().__init__(f"configuration is not a tight frame (residual {residual:.3e})")


class Unsupported(LinepackError):
    def __init__(self, k: int):
        self.k = k
        super().__init__(f"no built-in SIC construction for k={k}; only k in (2, 3)")


class ShapeMismatch(LinepackError, ValueError):
    """Raised when two configurations cannot be paired."""


class SingularSystem(LinepackError):
    """Raised when the 3x3 tangency system cannot be solved reliably."""


class InfeasibleTriple(LinepackError):
    def __init__(self, certificate):
        self.certificate = certificate
        super().__init__(
            f"coefficient triple is infeasible (min slack {certificate.min_slack:.3e})"
        )


class ConvergenceFailure(LinepackError):
    """Raised when LP grid refinement does not converge."""


class PackingFormatError(LinepackError, ValueError):
    """Base class for packing-file parse failures."""


class ParseError(PackingFormatError):
    def __init__(self, line: int, token: str = ""):
        self.line = line
        self.token = token
        super().__init__(f"malformed scalar {token!r} on line {line}")


class TokenCountMismatch(PackingFormatError):
    def __init__(self, expected: int, got: int):
        self.expected = expected
        self.got = got
        super().__init__(f"expected {expected} scalars, got {got}")


class NormViolation(PackingFormatError):
    def __init__(self, j: int, norm: float):
        self.j = j
        self.norm = float(norm)
        super().__init__(f"column {j} has norm {norm:.9g}, not within 1e-6 of 1")


class NetworkError(LinepackError):
    def __init__(self, status: int | None, url: str = ""):
        self.status = status
        self.url = url
        super().__init__(f"fetch of {url!r} failed with status {status}")
