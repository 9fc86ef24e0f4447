import math

import mpmath
import numpy as np
import pytest
from scipy.optimize import linprog

from linepack import frames, lp
from linepack.errors import DimensionError, DomainError


def mp_tangency(k, field):
    """Tangency triple at 50 digits, written independently of linepack.lp."""
    mpmath.mp.dps = 50
    k = mpmath.mpf(k)
    if field == "complex":
        xs, a, b = 1 / (k + 1), 4 / (k + 2), 2 / ((k + 1) * (k + 2))
    else:
        xs, a, b = 1 / (k + 2), 6 / (k + 4), 3 / ((k + 2) * (k + 4))
    m = mpmath.matrix(
        [
            [1, xs - 1 / k, xs**2 - a * xs + b],
            [1, 1 - 1 / k, 1 - a + b],
            [0, 1, 2 * xs - a],
        ]
    )
    rhs = mpmath.matrix([mpmath.sqrt(xs), 1, 1 / (2 * mpmath.sqrt(xs))])
    return [float(v) for v in mpmath.lu_solve(m, rhs)]


def linprog_c0(k, field, x):
    """Discretized LP solved by HiGHS."""
    p = lp.q_polys(k, field)
    a_ub = -np.column_stack([np.ones_like(x), p.q1(x), p.q2(x)])
    b_ub = -np.sqrt(x)
    a_ub = np.vstack([a_ub, [[-k, 1.0, 0.0]]])
    b_ub = np.append(b_ub, 0.0)
    res = linprog([1, 0, 0], A_ub=a_ub, b_ub=b_ub, bounds=[(None, None), (0, None), (None, 0)], method="highs")
    assert res.success
    return res.x


def test_q_polys_examples():
    c = lp.q_polys(2, "complex")
    assert c.coefficients()["Q2"] == pytest.approx([1 / 6, -1.0, 1.0])
    r = lp.q_polys(2, "real")
    assert r.coefficients()["Q2"] == pytest.approx([1 / 8, -1.0, 1.0])
    for k in range(1, 60):
        for field in ("real", "complex"):
            assert abs(lp.q_polys(k, field).q1(1 / k)) <= 1e-15


def test_q_polys_f_evaluation():
    p = lp.q_polys(3, "complex")
    x = np.linspace(0, 1, 7)
    assert np.allclose(p.f(x, 2.0, 0.5, -1.0), 2 + 0.5 * (x - 1 / 3) - (x * x - 0.8 * x + 0.1))


def test_q_polys_rejects_bad_k():
    with pytest.raises(DimensionError):
        lp.q_polys(0)


def test_tangency_complex_k2():
    s = lp.tangency_solve(2, "complex")
    assert s.coefficients == pytest.approx((0.6830127, 0.75, -0.3480762), abs=1e-7)
    assert s.c0 == pytest.approx((1 + math.sqrt(3)) / 4, abs=1e-15)
    assert s.x_star == pytest.approx(1 / 3)
    assert s.source == "tangency"
    assert s.feasibility.passed


def test_tangency_real_k2():
    s = lp.tangency_solve(2, "real")
    assert s.coefficients == pytest.approx((2 / 3, 7 / 9, -4 / 9), abs=1e-12)
    assert s.x_star == 0.25


def test_tangency_real_k3_against_mpmath():
    s = lp.tangency_solve(3, "real")
    oracle = mp_tangency(3, "real")
    assert s.coefficients == pytest.approx(oracle, abs=1e-13)
    assert s.coefficients == pytest.approx((0.5393447, 0.8740048, -0.5338138), abs=1e-7)


@pytest.mark.parametrize("field", ["real", "complex"])
def test_tangency_residuals_and_oracle(field):
    for k in range(1, 51):
        s = lp.tangency_solve(k, field)
        p = lp.q_polys(k, field)
        xs = s.x_star
        assert abs(p.f(xs, *s.coefficients) - math.sqrt(xs)) <= 1e-10
        assert abs(p.f(1.0, *s.coefficients) - 1.0) <= 1e-10
        assert abs(p.f_prime(xs, *s.coefficients) - 0.5 / math.sqrt(xs)) <= 1e-9
        assert s.coefficients == pytest.approx(mp_tangency(k, field), abs=1e-11)
        assert 0 <= s.c1 <= k * s.c0 and s.c2 <= 1e-12
        assert s.feasibility.min_slack >= -1e-9


def test_tangency_k1_has_c0_one():
    for field in ("real", "complex"):
        assert lp.tangency_solve(1, field).c0 == pytest.approx(1.0, abs=1e-14)


def test_printed_formulas():
    for k in range(1, 51):
        s = lp.tangency_solve(k, "complex")
        c0, c1, c2 = lp.printed_triple(k)
        assert s.c0 == pytest.approx(c0, abs=1e-9)
        assert s.c1 == pytest.approx(c1, abs=1e-9)
        assert s.c2 == pytest.approx(-c2, abs=1e-9)
        assert c2 > 0
        r = math.sqrt(k + 1)
        assert c2 == pytest.approx((k + 1) ** 1.5 * (r - 1) ** 2 / (2 * k * k), rel=1e-12)


def test_verify_feasible_examples():
    s = lp.tangency_solve(2, "complex")
    cert = lp.verify_feasible(*s.coefficients, 2, "complex", 4097)
    assert cert.passed
    assert abs(cert.min_slack) < 1e-12
    # slack vanishes at both touching points, x* = 1/3 and x = 1
    assert min(abs(cert.argmin_x - 1 / 3), abs(cert.argmin_x - 1)) < 1e-3
    p = lp.q_polys(2, "complex")
    assert abs(p.f(1 / 3, *s.coefficients) - math.sqrt(1 / 3)) < 1e-15
    assert cert.grid_min == 0.0 and cert.grid_max == 1.0

    printed = lp.printed_triple(2)
    bad = lp.verify_feasible(s.c0, s.c1, printed[2], 2, "complex", 4097)
    assert not bad.passed
    by_name = {c.name: c for c in bad.checked_constraints}
    assert not by_name["c2 <= 0"].satisfied

    for k in (1, 4, 30):
        assert lp.verify_feasible(1.0, 0.0, 0.0, k, "complex", 129).passed


def test_verify_feasible_grid_contains_xstar():
    x = lp.chebyshev_grid(65, extra=(0.3,))
    assert 0.3 in x and x[0] == 0.0 and x[-1] == 1.0
    with pytest.raises(ValueError):
        lp.verify_feasible(1, 0, 0, 2, "complex", 2)


@pytest.mark.parametrize("field", ["real", "complex"])
@pytest.mark.parametrize("k", [1, 2, 3, 7, 20])
def test_minimize_c0_matches_linprog(k, field):
    sol = lp.minimize_c0(k, field, 257)
    x = lp.chebyshev_grid(257, extra=(lp.tangency_abscissa(k, field),))
    oracle = linprog_c0(k, field, x)
    # refinement only adds constraints, so the refined optimum can only be larger
    assert sol.c0 >= oracle[0] - 1e-9
    assert sol.c0 == pytest.approx(oracle[0], abs=1e-6)


def test_minimize_c0_examples():
    assert lp.minimize_c0(2, "complex", 4097).c0 == pytest.approx(0.6830127, abs=1e-6)
    assert lp.minimize_c0(1, "complex").c0 == pytest.approx(1.0, abs=1e-6)
    assert lp.minimize_c0(2, "real").c0 == pytest.approx(2 / 3, abs=1e-6)


@pytest.mark.parametrize("field", ["real", "complex"])
def test_minimize_c0_brackets_tangency(field):
    for k in (1, 2, 3, 5, 8, 13, 21, 34, 50):
        opt = lp.minimize_c0(k, field, 4097)
        tan = lp.tangency_solve(k, field)
        assert opt.c0 <= tan.c0 + 1e-9
        assert opt.c0 >= tan.c0 - 1e-6
        assert opt.feasibility.min_slack >= -1e-9
        assert 0 <= opt.c1 <= k * opt.c0 + 1e-12 and opt.c2 <= 1e-12


def test_minimize_c0_rejects_small_grid():
    with pytest.raises(ValueError):
        lp.minimize_c0(2, "complex", 33)


def test_gram_bound_welch():
    assert lp.gram_one_norm_bound_welch(2, 4) == pytest.approx(4 + 4 * math.sqrt(3))
    assert lp.gram_one_norm_bound_welch(5, 5) == 5
    assert lp.gram_one_norm_bound_welch(1, 2) == pytest.approx(4)
    with pytest.raises(DimensionError):
        lp.gram_one_norm_bound_welch(3, 2)


def test_gram_bound_bc():
    assert lp.gram_one_norm_bound_bc(2, 8) == pytest.approx(16 * (1 + math.sqrt(3)), abs=1e-12)
    assert lp.gram_one_norm_bound_bc(3, 9) == pytest.approx(45.0, abs=1e-12)
    for n in (1, 2, 7):
        assert lp.gram_one_norm_bound_bc(1, n) == pytest.approx(n * n)
    for k in range(1, 30):
        for field in ("real", "complex"):
            n = k + 5
            assert lp.gram_one_norm_bound_bc(k, n, field) == pytest.approx(
                lp.tangency_solve(k, field).c0 * n * n, rel=1e-12
            )
    with pytest.raises(DimensionError):
        lp.gram_one_norm_bound_bc(4, 3)


def test_lemma_coherence_floor():
    assert lp.lemma_coherence_floor(8, 16 * (1 + math.sqrt(3))) == pytest.approx(0.2240092, abs=1e-7)
    assert lp.lemma_coherence_floor(3, 9) == pytest.approx(0.5)
    with pytest.raises(DomainError):
        lp.lemma_coherence_floor(5, 5)
    assert lp.lemma_coherence_floor(5, 10) > lp.lemma_coherence_floor(5, 11)


def test_gamma_interval_examples():
    lo, hi = lp.gamma_interval(2, 8, "complex")
    assert lo == pytest.approx(16 * (1 + math.sqrt(3)), abs=1e-9)
    assert hi == pytest.approx(lo, abs=1e-9)
    assert lp.gamma_interval(3, 3) == pytest.approx((3.0, 3.0))
    lo, hi = lp.gamma_interval(2, 4, "complex")
    assert lo == pytest.approx(4 + 4 * math.sqrt(3), abs=1e-9) and hi == pytest.approx(lo, abs=1e-9)


@pytest.mark.parametrize("field", ["real", "complex"])
def test_gamma_interval_ordered(field):
    for k in range(1, 7):
        for n in range(k, k + 12):
            lo, hi = lp.gamma_interval(k, n, field)
            assert lo <= hi + 1e-9


def test_bc_vs_welch_gram_bounds():
    for d in range(1, 21):
        threshold = 0.5 + math.sqrt(1 + 4 * d) / 2
        for k in range(1, 40):
            n = d + k
            bc = lp.gram_one_norm_bound_bc(k, n)
            w = lp.gram_one_norm_bound_welch(k, n)
            if k == 1:
                assert bc == pytest.approx(w, rel=1e-12)
            elif k < threshold:
                assert bc < w
            else:
                assert w <= bc * (1 + 1e-12)


@pytest.mark.parametrize("field", ["real", "complex"])
def test_q2_kernel_positive(field):
    rng = np.random.default_rng(2024 if field == "real" else 2025)
    worst = np.inf
    for _ in range(100):
        k = int(rng.integers(1, 7))
        n = int(rng.integers(1, 31))
        z = frames.VectorConfiguration.random(k, n, field, rng).matrix()
        w = rng.random(n)
        sq = np.abs(z.conj().T @ z) ** 2
        total = w @ lp.q_polys(k, field).q2(sq) @ w
        worst = min(worst, total / w.sum() ** 2)
    assert worst >= -1e-9


def test_l1_identity_on_tight_frames():
    rng = np.random.default_rng(7)
    for _ in range(40):
        d = int(rng.integers(1, 6))
        n = d + int(rng.integers(1, 8))
        field = "complex" if rng.random() < 0.5 else "real"
        y = frames.orthogonal_tight_complement(frames.VectorConfiguration.random(d, n, field, rng))
        k = n - d
        ym = y.matrix()
        norms = np.linalg.norm(ym, axis=0)
        z = ym / norms
        q1 = lp.q_polys(k, field).q1(np.abs(z.conj().T @ z) ** 2)
        lhs = norms @ q1 @ norms
        s = norms.sum() ** 2
        assert lhs <= (n * n - s) / k + 1e-8


def test_tangency_memo_concurrent():
    from concurrent.futures import ThreadPoolExecutor

    ks = [k for k in range(60, 80) for _ in range(4)]
    with ThreadPoolExecutor(8) as pool:
        results = list(pool.map(lambda k: lp.tangency_solve(k, "real"), ks))
    for k, sol in zip(ks, results):
        assert sol == lp.tangency_solve(k, "real")
