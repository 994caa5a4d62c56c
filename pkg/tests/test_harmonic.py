"""Sawtooth approximation, discrepancy bound, and the small integral lemmas."""

import itertools
import math

import numpy as np
import pytest

from digitseq import (
    BeattyLine,
    beatty_floor_range,
    build_vaaler_approx,
    erdos_turan_bound,
    exact_discrepancy,
    fejer_majorant,
    min_kernel_integral_check,
    range_extension_check,
    sawtooth,
    vaaler_psi_h,
)


def test_sawtooth_values_and_periodicity():
    assert sawtooth(0.0) == -0.5
    assert sawtooth(0.75) == pytest.approx(0.25)
    assert sawtooth(-0.25) == pytest.approx(0.25)
    xs = np.linspace(-3, 3, 601)
    assert np.allclose(sawtooth(xs), sawtooth(xs + 7.0))
    assert np.all(sawtooth(xs) >= -0.5) and np.all(sawtooth(xs) < 0.5)


def test_vaaler_coefficient_endpoint():
    approx = build_vaaler_approx(1)
    assert approx.coefficients[0] == pytest.approx(0.5)  # pi/4 * cot(pi/2) + 1/2


def test_vaaler_coefficients_in_unit_interval():
    for degree in (1, 3, 10, 64, 200):
        a = build_vaaler_approx(degree).coefficients
        assert np.all(a >= 0.0) and np.all(a <= 1.0)


def test_vaaler_defining_inequality_on_grid():
    ts = np.arange(10_000) / 10_000
    for degree in (1, 5, 10, 50, 200):
        approx = build_vaaler_approx(degree)
        err = np.abs(sawtooth(ts) - vaaler_psi_h(approx, ts))
        kappa = fejer_majorant(degree, ts)
        assert np.max(err - kappa) <= 1e-12
        assert np.min(kappa) >= -1e-12


def test_vaaler_build_gate_rejects_broken_coefficients():
    approx = build_vaaler_approx(8)
    bad = type(approx)(degree=8, coefficients=approx.coefficients * 0.2)
    ts = np.arange(2048) / 2048
    err = np.abs(sawtooth(ts) - vaaler_psi_h(bad, ts))
    assert np.max(err - fejer_majorant(8, ts)) > 1e-3  # the gate has teeth


def test_psi_h_symmetry_points():
    approx = build_vaaler_approx(9)
    assert vaaler_psi_h(approx, 0.0) == pytest.approx(0.0, abs=1e-14)
    assert vaaler_psi_h(approx, 0.5) == pytest.approx(0.0, abs=1e-12)
    one = build_vaaler_approx(1)
    assert vaaler_psi_h(one, 0.25) == pytest.approx(-0.5 / math.pi)


def test_fejer_majorant_values():
    for degree in (1, 7, 33):
        assert fejer_majorant(degree, 0.0) == pytest.approx(0.5)
    assert fejer_majorant(1, 0.5) == pytest.approx(0.0, abs=1e-15)
    # integral over a period keeps only the constant term
    ts = (np.arange(20_000) + 0.5) / 20_000
    for degree in (3, 12):
        integral = float(np.mean(fejer_majorant(degree, ts)))
        assert integral == pytest.approx(1 / (2 * degree + 2), rel=1e-6)
    # weighted-sum form agrees with the squared-magnitude form
    h = np.arange(-12, 13)
    w = 1 - np.abs(h) / 13
    for t in (0.1, 0.37, 0.925):
        direct = np.sum(w * np.exp(2j * np.pi * h * t)).real / 26
        assert fejer_majorant(12, t) == pytest.approx(direct, abs=1e-12)


def _brute_discrepancy(pts):
    pts = sorted(pts)
    n = len(pts)
    best = 0.0
    for r, s in itertools.product(pts, repeat=2):
        if r <= s:
            cnt = sum(1 for p in pts if r <= p <= s)
            best = max(best, cnt / n - (s - r))
    ys = [0.0] + pts + [1.0]
    for i, j in itertools.combinations(range(len(ys)), 2):
        cnt = sum(1 for p in pts if ys[i] < p < ys[j])
        best = max(best, (ys[j] - ys[i]) - cnt / n)
    return best


def test_exact_discrepancy_matches_brute_force():
    rng = np.random.default_rng(14)
    for trial in range(300):
        n = int(rng.integers(1, 28))
        if trial % 3 == 0:
            pts = rng.random(n)
        elif trial % 3 == 1:
            pts = np.clip(rng.normal(0.5, 0.07, n) % 1.0, 0.0, 0.999999)
        else:
            pts = (np.round(rng.random(n) * 8) / 8) % 1.0
        assert exact_discrepancy(pts) == pytest.approx(_brute_discrepancy(list(pts)), abs=1e-12)


def test_exact_discrepancy_edge_cases():
    assert exact_discrepancy([0.0]) == pytest.approx(1.0)
    grid = np.arange(100) / 100
    assert exact_discrepancy(grid) == pytest.approx(1 / 100)
    with pytest.raises(ValueError):
        exact_discrepancy([])
    with pytest.raises(ValueError):
        exact_discrepancy([1.0])


def test_erdos_turan_examples():
    n = 256
    grid = np.arange(n) / n
    bound = erdos_turan_bound(grid, n)
    assert exact_discrepancy(grid) == pytest.approx(1 / n)
    assert 1 / n <= bound
    # degenerate cluster: discrepancy 1, bound stays >= 1 - 1/(H+1)
    pts = np.full(50, 0.37)
    assert exact_discrepancy(pts) == pytest.approx(1.0)
    assert erdos_turan_bound(pts, 30) >= 1 - 1 / 31
    # golden-ratio orbit
    golden = (5 ** 0.5 - 1) / 2
    orbit = (np.arange(1, 10_001) * golden) % 1.0
    assert exact_discrepancy(orbit) <= erdos_turan_bound(orbit, 100)


def test_erdos_turan_dominates_on_random_suites():
    rng = np.random.default_rng(15)
    for trial in range(300):
        kind = trial % 3
        n = int(rng.integers(2, 800))
        if kind == 0:
            pts = rng.random(n)
        elif kind == 1:
            pts = rng.normal(rng.random(), 0.04, n) % 1.0
        else:
            line = BeattyLine(1.0 + 9 * rng.random(), 10 * rng.random())
            pts = (beatty_floor_range(line, 1, n) * ((5 ** 0.5 - 1) / 2)) % 1.0
        pts = np.clip(pts, 0.0, np.nextafter(1.0, 0.0))
        degree = int(rng.integers(1, 80))
        assert exact_discrepancy(pts) <= erdos_turan_bound(pts, degree) + 1e-12


def test_min_kernel_integral():
    integral, bound = min_kernel_integral_check(0.0, 1.0, 2.0)
    assert integral == pytest.approx(2.0)
    assert bound == pytest.approx(4.0 * (1 + math.log(2)))
    integral, bound = min_kernel_integral_check(3.3, 3.3, 10.0)
    assert integral == 0.0 <= bound
    integral, bound = min_kernel_integral_check(0.0, 10.0, 1e3)
    assert integral < bound
    rng = np.random.default_rng(16)
    for _ in range(200):
        a = float(rng.uniform(-20, 20))
        b = a + float(rng.uniform(0, 30))
        cap = float(rng.uniform(2, 1e5))
        integral, bound = min_kernel_integral_check(a, b, cap)
        assert 0.0 <= integral <= bound
    with pytest.raises(ValueError):
        min_kernel_integral_check(0, 1, 1.5)


def test_min_kernel_antiderivative_against_quadrature():
    xi = (np.arange(2_000_000) + 0.5) / 2_000_000
    for cap in (2.0, 37.5, 900.0):
        num = float(np.mean(np.minimum(cap, 1.0 / np.minimum(xi, 1 - xi))))
        closed, _ = min_kernel_integral_check(0.0, 1.0, cap)
        assert closed == pytest.approx(num, rel=1e-4)


def test_range_extension_cases():
    rng = np.random.default_rng(17)
    coefs = rng.normal(size=100) + 1j * rng.normal(size=100)
    lhs, rhs = range_extension_check(coefs, 0, 40, 100)
    assert lhs <= rhs + 1e-6
    lhs_full, rhs_full = range_extension_check(coefs, 0, 100, 100)
    assert lhs_full == pytest.approx(abs(coefs.sum()))
    assert lhs_full <= rhs_full + 1e-6
    lhs0, rhs0 = range_extension_check(np.zeros(50, dtype=complex), 0, 20, 50)
    assert lhs0 == 0.0 and rhs0 == pytest.approx(0.0, abs=1e-12)
    for _ in range(25):
        n = int(rng.integers(2, 120))
        y = float(rng.uniform(1, n))
        coefs = rng.normal(size=n) + 1j * rng.normal(size=n)
        lhs, rhs = range_extension_check(coefs, 0, y, n)
        assert lhs <= rhs + 1e-6 * max(1.0, rhs)
