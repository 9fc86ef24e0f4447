import numpy as np
import pytest

from linepack.frames import VectorConfiguration

S3 = np.sqrt(3) / 2
R2 = 1 / np.sqrt(2)


def mercedes_frame() -> VectorConfiguration:
    return VectorConfiguration([[1, -0.5, -0.5], [0, S3, -S3]], field="real")


def skew_frame() -> VectorConfiguration:
    """(1,0), (0,1), (1,1)/sqrt(2)."""
    return VectorConfiguration([[1, 0, R2], [0, 1, R2]], field="real")


def brute_gram(X: VectorConfiguration) -> list[list[complex]]:
    cols = [[complex(v) for v in X.entries[:, j]] for j in range(X.n)]
    return [[sum(a.conjugate() * b for a, b in zip(ci, cj)) for cj in cols] for ci in cols]


def random_unitary(k, rng, field="complex"):
    z = rng.standard_normal((k, k))
    if field == "complex":
        z = z + 1j * rng.standard_normal((k, k))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def mercedes():
    return mercedes_frame()


@pytest.fixture
def skew():
    return skew_frame()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
