"""Experiment driver: trivial identities, conservation, determinism, and
the recorded desk-scale regression anchors."""

import math
from fractions import Fraction

import numpy as np
import pytest

from digitseq import (
    PHI_FUNCTIONS,
    PSSpec,
    PowerGrowth,
    audit_theorem1,
    beatty_substitution_integral,
    corollary1_exponent_audit,
    joint_residue_experiment,
    substitution_deviation,
    thue_morse_sign_array,
    tm_density_experiment,
    window_l1_integral,
    zeckendorf_residue_experiment,
)
from digitseq.experiments import resolve_phi

F32 = PowerGrowth(Fraction(3, 2))
F1310 = PowerGrowth(Fraction(13, 10))


def test_resolve_phi():
    assert resolve_phi("one").name == "one"
    assert resolve_phi(PHI_FUNCTIONS["thue-morse"]).name == "thue-morse"
    phi = resolve_phi("digit-exp:3:1/3")
    vals = phi(np.array([1, 3, 4]))  # s_3 = 1, 1, 2
    assert vals[0] == pytest.approx(np.exp(2j * np.pi / 3))
    assert vals[2] == pytest.approx(np.exp(4j * np.pi / 3))
    with pytest.raises(ValueError):
        resolve_phi("nope")


def test_deviation_zero_function():
    rep = substitution_deviation("zero", F32, 64)
    assert rep.lhs_per_A == 0.0 and rep.sum1 == 0 and rep.sum2 == 0


def test_deviation_one_regression_anchor():
    rep = substitution_deviation("one", F32, 1000)
    # recorded during development; the two sums agree to O(1/A)
    assert rep.lhs_per_A == pytest.approx(2.5651258915786457e-06, rel=1e-9)
    assert rep.sum1 == pytest.approx(1000.0)


def test_deviation_one_stays_bounded_across_doublings():
    vals = [substitution_deviation("one", F1310, 1 << k).lhs_per_A for k in range(8, 15)]
    assert max(vals) < 0.01


def test_deviation_is_deterministic_across_threads():
    a = substitution_deviation("thue-morse", F1310, 3000, threads=1)
    b = substitution_deviation("thue-morse", F1310, 3000, threads=4)
    assert a.sum1 == b.sum1 and a.sum2 == b.sum2 and a.lhs_per_A == b.lhs_per_A


def test_window_integral_unit_window_is_one():
    est = window_l1_integral("one", F32, 64, 1.0, theta_grid=8, x_samples=4)
    assert est.value == 1.0


def test_window_integral_bounds_and_refinement():
    est = window_l1_integral("one", F32, 64, 16.0, theta_grid=16, x_samples=4)
    assert 0 < est.value <= 1.0
    assert est.refinement_delta >= 0
    # refinement deltas shrink along the shipped config chain
    deltas = [window_l1_integral("thue-morse", F32, 256, 32.0,
                                 theta_grid=g, x_samples=s).refinement_delta
              for g, s in ((8, 4), (16, 8), (32, 16))]
    assert deltas[0] > deltas[1] > deltas[2]


def test_beatty_integral_trivial_and_trend():
    est = beatty_substitution_integral("zero", F32, 256, 64, alpha_grid=8, beta_samples=4)
    assert est.value == 0.0
    est = beatty_substitution_integral("one", F32, 1 << 12, 128, alpha_grid=8, beta_samples=4)
    alpha_min = float(F32.df(1 << 12))
    assert est.value <= (1 + 1 / alpha_min) * 2 / 128
    vals = [beatty_substitution_integral("thue-morse", F32, 1 << 14, k,
                                         alpha_grid=12, beta_samples=6).value
            for k in (16, 64, 256, 1024)]
    assert vals[0] > vals[-1]  # decreasing trend in the window length


def test_audit_theorem1_zero_and_one():
    rep = audit_theorem1("zero", F32, 1 << 12, 64.0, theta_grid=8, x_samples=4)
    assert rep.ratio == 0.0
    rep = audit_theorem1("one", F32, 1 << 12, 64.0, theta_grid=8, x_samples=4)
    assert np.isfinite(rep.ratio) and rep.ratio >= 0
    assert rep.bracket == pytest.approx(rep.taylor_term + rep.expsum_term)


def test_tm_density_small_and_flags():
    rep = tm_density_experiment(PSSpec.from_decimal("1.3"), 1, checkpoints=1)
    assert rep.checkpoints[0].m == 1 and rep.checkpoints[0].partial_sum == -1
    rep = tm_density_experiment(PSSpec(3, 2), 64, checkpoints=3)
    assert rep.outside_proven_range
    rep = tm_density_experiment(PSSpec.from_decimal("1.3"), 64, checkpoints=3)
    assert not rep.outside_proven_range
    with pytest.raises(ValueError):
        tm_density_experiment(PSSpec(5, 2), 64)  # c >= 2


def test_tm_density_checkpoint_consistency():
    n = 5000
    rep = tm_density_experiment(PSSpec.from_decimal("1.3"), n, checkpoints=5)
    from digitseq import ps_block
    floors = ps_block(1, n, PSSpec.from_decimal("1.3"))
    signs = thue_morse_sign_array(floors)
    cums = np.cumsum(signs)
    for cp in rep.checkpoints:
        assert cp.partial_sum == int(cums[cp.m - 1])
        assert cp.plus_density == pytest.approx((cp.m + cp.partial_sum) / (2 * cp.m))


def test_tm_partial_sum_identity_even_blocks():
    # the signed count over [0, 2K) vanishes for every K
    signs = thue_morse_sign_array(np.arange(200_000))
    cums = np.cumsum(signs)
    assert np.all(cums[1::2] == 0)


def test_joint_residue_trivial_and_conservation():
    spec = PSSpec.from_decimal("1.05")
    rep = joint_residue_experiment(spec, 2, 3, 1, 1, 0, 0, 777)
    assert rep.counts[(0, 0)] == 777 and rep.expected == 777
    rep = joint_residue_experiment(spec, 2, 3, 3, 5, 1, 2, 0)
    assert sum(rep.counts.values()) == 0 and rep.target_count == 0
    rep = joint_residue_experiment(spec, 2, 3, 3, 5, 1, 2, 20_000)
    assert sum(rep.counts.values()) == 20_000
    assert rep.expected == pytest.approx(20_000 / 15)


def test_joint_residue_hypothesis_signals():
    spec = PSSpec.from_decimal("1.05")
    with pytest.raises(ValueError, match=r"gcd\(q1, q2\)"):
        joint_residue_experiment(spec, 2, 4, 1, 1, 0, 0, 10)
    with pytest.warns(UserWarning, match=r"gcd\(m1, q1 - 1\)"):
        joint_residue_experiment(spec, 3, 2, 2, 1, 0, 0, 10)


def test_joint_residue_deterministic_across_threads():
    spec = PSSpec.from_decimal("1.05")
    a = joint_residue_experiment(spec, 2, 3, 3, 5, 1, 2, 300_000, threads=1)
    b = joint_residue_experiment(spec, 2, 3, 3, 5, 1, 2, 300_000, threads=8)
    assert a.counts == b.counts


def test_zeckendorf_residue_trivial_and_conservation():
    spec = PSSpec.from_decimal("1.25")
    rep = zeckendorf_residue_experiment(spec, 1, 0, 555)
    assert rep.counts[(0,)] == 555
    rep = zeckendorf_residue_experiment(spec, 4, 2, 50_000)
    assert sum(rep.counts.values()) == 50_000
    assert rep.target == (2,)
    with pytest.raises(ValueError):
        zeckendorf_residue_experiment(spec, 0, 0, 10)


def test_exponent_audit_cases():
    rep = corollary1_exponent_audit(Fraction(4076, 10000), Fraction(71, 50))
    assert rep.validity and rep.eta_max > 0 and rep.reference < 0
    rep = corollary1_exponent_audit(Fraction(8, 9), Fraction(18, 17))
    assert rep.eta_max == 0 and not rep.validity
    # reference stays below eta_max on a c-grid up to 1.42 when a < 0.4076
    for c100 in range(101, 143):
        rep = corollary1_exponent_audit(Fraction(4076, 10000), Fraction(c100, 100))
        assert rep.reference < rep.eta_max
    with pytest.raises(ValueError):
        corollary1_exponent_audit(Fraction(3, 2), Fraction(11, 10))
    with pytest.raises(ValueError):
        corollary1_exponent_audit(Fraction(1, 2), Fraction(5, 2))


def test_exponent_boundary_collapse():
    rep = corollary1_exponent_audit(1, Fraction(101, 100))
    assert 0 < rep.eta_max < Fraction(1, 100)
