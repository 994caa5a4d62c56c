"""End-to-end measurable experiments.

The substitution-rule deviation, the two sup-integral estimates from the
main inequality, the inequality audit itself, and the three application
experiments (Thue-Morse density, joint two-base digit residues, Zeckendorf
residues), plus the pure exponent arithmetic of the corollary.

All experiments are deterministic: sampling grids are fixed (no RNG), index
ranges are partitioned into fixed-size chunks whatever the worker count,
and floating partial results are combined in chunk order with compensated
summation, so reports are bit-identical run to run.
"""

from __future__ import annotations

import math
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .digits import (
    digit_sum_array,
    thue_morse_sign_array,
    zeckendorf_digit_sum_array,
)
from .expsums import window_exp_sum
from .sequences import (
    BeattyLine,
    GrowthFunction,
    PSSpec,
    beatty_floor_range,
    ps_block_chunks,
)

__all__ = [
    "ArithmeticFunction",
    "PHI_FUNCTIONS",
    "resolve_phi",
    "DeviationReport",
    "IntegralEstimate",
    "Theorem1Audit",
    "TmDensityCheckpoint",
    "TmDensityReport",
    "ResidueCountReport",
    "ExponentAudit",
    "substitution_deviation",
    "window_l1_integral",
    "beatty_substitution_integral",
    "audit_theorem1",
    "tm_density_experiment",
    "joint_residue_experiment",
    "zeckendorf_residue_experiment",
    "corollary1_exponent_audit",
]

_CHUNK = 1 << 17  # fixed partition size; independent of the worker count


@dataclass(frozen=True)
class ArithmeticFunction:
    """Named arithmetic function bounded by 1, vectorised over int64 arrays."""

    name: str
    func: Callable[[np.ndarray], np.ndarray]

    def __call__(self, m: np.ndarray) -> np.ndarray:
        return self.func(m)


def _phi_digit_exp(q: int, alpha: float) -> Callable[[np.ndarray], np.ndarray]:
    def func(m: np.ndarray) -> np.ndarray:
        return np.exp(2j * np.pi * ((alpha * digit_sum_array(m, q)) % 1.0))
    return func


PHI_FUNCTIONS: dict[str, ArithmeticFunction] = {
    "one": ArithmeticFunction("one", lambda m: np.ones(np.shape(m))),
    "zero": ArithmeticFunction("zero", lambda m: np.zeros(np.shape(m))),
    "thue-morse": ArithmeticFunction(
        "thue-morse", lambda m: thue_morse_sign_array(m).astype(np.float64)),
}


def resolve_phi(phi) -> ArithmeticFunction:
    """Accept a registry name, an ArithmeticFunction, or a bare callable."""
    if isinstance(phi, ArithmeticFunction):
        return phi
    if isinstance(phi, str):
        if phi in PHI_FUNCTIONS:
            return PHI_FUNCTIONS[phi]
        if phi.startswith("digit-exp:"):
            _, q, alpha = phi.split(":")
            return ArithmeticFunction(phi, _phi_digit_exp(int(q), float(Fraction(alpha))))
        raise ValueError(f"unknown arithmetic function '{phi}'")
    return ArithmeticFunction(getattr(phi, "__name__", "phi"), phi)


def _chunk_ranges(lo: int, hi: int, size: int = _CHUNK) -> list[tuple[int, int]]:
    """Inclusive index ranges of fixed size (the last may be short)."""
    return [(a, min(a + size - 1, hi)) for a in range(lo, hi + 1, size)]


def _map_ordered(func, items: Sequence, threads: int) -> list:
    if threads <= 1 or len(items) <= 1:
        return [func(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))


def _kahan(values: Iterable[complex]) -> complex:
    total = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    for v in values:
        y = v - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


@dataclass(frozen=True)
class DeviationReport:
    """Normalized substitution-rule deviation at scale A: both competing
    sums evaluated exactly, difference divided by A."""

    A: int
    lhs_per_A: float
    sum1: complex
    sum2: complex
    runtime: float
    phi_name: str
    f_label: str


def substitution_deviation(phi, f: GrowthFunction, A: int, threads: int = 1) -> DeviationReport:
    """|sum_{A<n<=2A} phi(floor(f(n))) - sum_{f(A)<m<=f(2A)} phi(m) (f^-1)'(m)| / A."""
    phi = resolve_phi(phi)
    if A < 2:
        raise ValueError("needs A >= 2")
    m_hi = f.floor_exact(2 * A)
    if m_hi > 1 << 40:
        raise ValueError("f(2A) beyond the experiment resource guard")
    start = time.perf_counter()

    def part_floors(rng: tuple[int, int]) -> complex:
        parts = [complex(np.sum(np.asarray(phi(arr), dtype=np.complex128)))
                 for arr in f.floor_block(rng[0], rng[1])]
        return _kahan(parts)

    def part_weighted(rng: tuple[int, int]) -> complex:
        m = np.arange(rng[0], rng[1] + 1, dtype=np.int64)
        w = np.asarray(f.df_inv(m.astype(np.float64)), dtype=np.float64)
        return complex(np.sum(np.asarray(phi(m), dtype=np.complex128) * w))

    sum1 = _kahan(_map_ordered(part_floors, _chunk_ranges(A + 1, 2 * A), threads))
    m_lo = f.floor_exact(A)
    sum2 = _kahan(_map_ordered(part_weighted, _chunk_ranges(m_lo + 1, m_hi), threads)) \
        if m_hi > m_lo else 0j
    return DeviationReport(A=A, lhs_per_A=abs(sum1 - sum2) / A, sum1=sum1, sum2=sum2,
                           runtime=time.perf_counter() - start,
                           phi_name=phi.name, f_label=f.label())


@dataclass(frozen=True)
class IntegralEstimate:
    """Sampled sup-integral estimate.  The sup over a continuum is sampled
    (stratified grid plus adversarial points near the range ends), so the
    value is lower-bound flavoured; refinement_delta is the change under
    doubling both grids and is always reported."""

    value: float
    grid_size: int
    sup_sample_count: int
    refinement_delta: float


def _sup_points(lo: float, hi: float, count: int, margin: float) -> list[float]:
    base = [lo + (hi - lo) * (i + 0.5) / count for i in range(count)]
    adversarial = [lo + (hi - lo) * 1e-6, hi - (hi - lo) * 1e-6, hi,
                   max(lo + (hi - lo) * 1e-6, hi - margin)]
    return sorted({p for p in base + adversarial if lo < p <= hi})


def window_l1_integral(phi, f: GrowthFunction, A: int, z: float,
                       theta_grid: int = 64, x_samples: int = 8) -> IntegralEstimate:
    """Integral over theta of the sup over window starts x in (f(A), f(2A)]
    of |sum_{x<m<=x+z} phi(m) e(m theta)| / z."""
    phi = resolve_phi(phi)
    if z < 1:
        raise ValueError("needs z >= 1")
    if theta_grid < 2 or x_samples < 2:
        raise ValueError("grids must be >= 2")
    lo, hi = float(f.f(A)), float(f.f(2 * A))

    def estimate(grid: int, samples: int) -> float:
        xs = _sup_points(lo, hi, samples, z)
        vals = []
        for t in range(grid):
            theta = t / grid
            best = max(abs(window_exp_sum(phi, xx, z, theta).value) for xx in xs)
            vals.append(best / z)
        return math.fsum(vals) / grid

    value = estimate(theta_grid, x_samples)
    refined = estimate(2 * theta_grid, 2 * x_samples)
    return IntegralEstimate(value=value, grid_size=theta_grid,
                            sup_sample_count=len(_sup_points(lo, hi, x_samples, z)),
                            refinement_delta=abs(refined - value))


def beatty_substitution_integral(phi, f: GrowthFunction, A: int, K: int,
                                 alpha_grid: int = 32,
                                 beta_samples: int = 8) -> IntegralEstimate:
    """Average over slopes alpha in [f'(A), f'(2A)] of the sup over
    intercepts beta in (f(A), f(2A)] of
    |sum_{0<n<=K} phi(floor(n alpha + beta)) - (1/alpha) sum_{beta<m<=beta+K alpha} phi(m)| / K."""
    phi = resolve_phi(phi)
    if K < 1:
        raise ValueError("needs K >= 1")
    if alpha_grid < 2 or beta_samples < 2:
        raise ValueError("grids must be >= 2")
    a_lo, a_hi = float(f.df(A)), float(f.df(2 * A))
    f_lo, f_hi = float(f.f(A)), float(f.f(2 * A))

    def integrand(alpha: float, beta: float) -> float:
        line = BeattyLine(alpha=alpha, beta=beta)
        hit = beatty_floor_range(line, 1, K)
        s1 = complex(np.sum(np.asarray(phi(hit), dtype=np.complex128)))
        m_lo = math.floor(beta) + 1
        m_hi = math.floor(beta + K * alpha)
        s2 = 0j
        if m_hi >= m_lo:
            m = np.arange(m_lo, m_hi + 1, dtype=np.int64)
            s2 = complex(np.sum(np.asarray(phi(m), dtype=np.complex128)))
        return abs(s1 - s2 / alpha) / K

    def estimate(grid: int, samples: int) -> float:
        alphas = np.linspace(a_lo, a_hi, grid)
        betas = _sup_points(f_lo, f_hi, samples, K * a_hi)
        weights = np.ones(grid)
        weights[0] = weights[-1] = 0.5  # trapezoid average in alpha
        vals = [max(integrand(float(al), b) for b in betas) for al in alphas]
        return float(np.dot(weights, vals) / weights.sum())

    value = estimate(alpha_grid, beta_samples)
    refined = estimate(2 * alpha_grid, 2 * beta_samples)
    return IntegralEstimate(value=value, grid_size=alpha_grid,
                            sup_sample_count=len(_sup_points(f_lo, f_hi, beta_samples, K * a_hi)),
                            refinement_delta=abs(refined - value))


@dataclass(frozen=True)
class Theorem1Audit:
    """Deviation against the main-inequality bracket.  The inequality's
    constant is unspecified, so the meaningful check is the stability of
    ratio = lhs_per_A / bracket across scale doublings."""

    A: int
    z: float
    lhs_per_A: float
    j_value: float
    j_refinement_delta: float
    taylor_term: float
    expsum_term: float
    bracket: float
    ratio: float
    phi_name: str
    f_label: str


def audit_theorem1(phi, f: GrowthFunction, A: int, z: float,
                   theta_grid: int = 64, x_samples: int = 8,
                   threads: int = 1) -> Theorem1Audit:
    phi = resolve_phi(phi)
    dev = substitution_deviation(phi, f, A, threads=threads)
    j_est = window_l1_integral(phi, f, A, z, theta_grid=theta_grid, x_samples=x_samples)
    d2, d1 = float(f.d2f(A)), float(f.df(A))
    taylor_term = d2 / d1 ** 2 * z ** 2
    expsum_term = d1 * math.log(A) ** 3 * j_est.value
    bracket = taylor_term + expsum_term
    return Theorem1Audit(A=A, z=z, lhs_per_A=dev.lhs_per_A, j_value=j_est.value,
                         j_refinement_delta=j_est.refinement_delta,
                         taylor_term=taylor_term, expsum_term=expsum_term,
                         bracket=bracket, ratio=dev.lhs_per_A / bracket if bracket else 0.0,
                         phi_name=phi.name, f_label=f.label())


@dataclass(frozen=True)
class TmDensityCheckpoint:
    m: int
    partial_sum: int
    abs_mean: float
    plus_density: float


@dataclass(frozen=True)
class TmDensityReport:
    c_num: int
    c_den: int
    n: int
    checkpoints: tuple[TmDensityCheckpoint, ...]
    decay_slope: float
    outside_proven_range: bool


def tm_density_experiment(spec: PSSpec, n: int, checkpoints: int = 12,
                          threads: int = 1) -> TmDensityReport:
    """Thue-Morse partial sums over floor(n^c) at geometric checkpoints,
    with the +1 density and a fitted log-log decay slope."""
    if not 1 < spec.c_float < 2:
        raise ValueError("density experiment needs 1 < c < 2")
    if n < 1:
        raise ValueError("needs n >= 1")
    if n > 1 << 27:
        raise ValueError("n beyond the experiment resource guard")
    if checkpoints < 1:
        raise ValueError("needs checkpoints >= 1")
    marks = sorted({max(1, n >> k) for k in range(checkpoints)})
    boundaries = sorted({0, n, *marks, *range(0, n, _CHUNK)})
    ranges = [(boundaries[i] + 1, boundaries[i + 1]) for i in range(len(boundaries) - 1)]

    def part(rng: tuple[int, int]) -> int:
        total = 0
        for arr in ps_block_chunks(rng[0], rng[1], spec):
            total += int(np.sum(thue_morse_sign_array(arr)))
        return total

    partials = _map_ordered(part, ranges, threads)
    rows = []
    running = 0
    mark_iter = iter(marks)
    mark = next(mark_iter)
    for rng, p in zip(ranges, partials):
        running += p
        if mark is not None and rng[1] == mark:
            rows.append(TmDensityCheckpoint(
                m=mark, partial_sum=running, abs_mean=abs(running) / mark,
                plus_density=(mark + running) / (2.0 * mark)))
            mark = next(mark_iter, None)
    logs = [(math.log2(r.m), math.log2(r.abs_mean)) for r in rows if r.abs_mean > 0]
    slope = float("nan")
    if len(logs) >= 2:
        xs, ys = zip(*logs)
        slope = float(np.polyfit(xs, ys, 1)[0])
    return TmDensityReport(c_num=spec.c_num, c_den=spec.c_den, n=n,
                           checkpoints=tuple(rows), decay_slope=slope,
                           outside_proven_range=spec.c_float > 1.42)


@dataclass(frozen=True)
class ResidueCountReport:
    """Exact residue-cell counts with the equidistribution reference value.
    The tolerance judgements made on these numbers are desk-scale artifact
    targets, not the asymptotic statements themselves."""

    x: int
    moduli: tuple[int, ...]
    target: tuple[int, ...]
    counts: dict[tuple[int, ...], int]
    expected: float
    max_abs_deviation: float
    normalized_deviation: float
    target_count: int


def _residue_report(x: int, moduli: tuple[int, ...], target: tuple[int, ...],
                    table: np.ndarray) -> ResidueCountReport:
    cells = list(np.ndindex(*moduli))
    counts = {cell: int(table[cell]) for cell in cells}
    expected = x / math.prod(moduli)
    max_dev = max((abs(c - expected) for c in counts.values()), default=0.0)
    return ResidueCountReport(
        x=x, moduli=moduli, target=target, counts=counts, expected=expected,
        max_abs_deviation=max_dev,
        normalized_deviation=max_dev / x if x else 0.0,
        target_count=counts.get(target, 0))


def joint_residue_experiment(spec: PSSpec, q1: int, q2: int, m1: int, m2: int,
                             l1: int, l2: int, x: int,
                             threads: int = 1) -> ResidueCountReport:
    """Exact counts of n <= x by the pair (s_q1(floor(n^c)) mod m1,
    s_q2(floor(n^c)) mod m2).  Coprime bases are a hard requirement; the
    digit-sum/modulus coprimality hypotheses only affect the asymptotic
    guarantee, so their violation is a warning, not a failure."""
    if math.gcd(q1, q2) != 1:
        raise ValueError(f"hypothesis gcd(q1, q2) = 1 fails: gcd = {math.gcd(q1, q2)}")
    if min(q1, q2) < 2 or min(m1, m2) < 1 or x < 0:
        raise ValueError("needs q1, q2 >= 2, m1, m2 >= 1, x >= 0")
    for name, (u, v) in (("(m1, q1 - 1)", (m1, q1 - 1)), ("(m2, q2 - 1)", (m2, q2 - 1))):
        if math.gcd(u, v) != 1:
            warnings.warn(f"hypothesis gcd{name} = 1 fails (gcd = {math.gcd(u, v)}); "
                          "equidistribution is no longer guaranteed", UserWarning,
                          stacklevel=2)
    table = np.zeros(m1 * m2, dtype=np.int64)
    if x >= 1:
        def part(rng: tuple[int, int]) -> np.ndarray:
            acc = np.zeros(m1 * m2, dtype=np.int64)
            for arr in ps_block_chunks(rng[0], rng[1], spec):
                r1 = digit_sum_array(arr, q1) % m1
                r2 = digit_sum_array(arr, q2) % m2
                acc += np.bincount(r1 * m2 + r2, minlength=m1 * m2)
            return acc
        for acc in _map_ordered(part, _chunk_ranges(1, x), threads):
            table += acc
    return _residue_report(x, (m1, m2), (l1 % m1, l2 % m2), table.reshape(m1, m2))


def zeckendorf_residue_experiment(spec: PSSpec, m: int, a: int, x: int,
                                  threads: int = 1) -> ResidueCountReport:
    """Exact counts of n <= x by s_Z(floor(n^c)) mod m."""
    if m < 1:
        raise ValueError("needs m >= 1")
    if x < 0:
        raise ValueError("needs x >= 0")
    if x > 1 << 27:
        raise ValueError("x beyond the experiment resource guard")
    table = np.zeros(m, dtype=np.int64)
    if x >= 1:
        def part(rng: tuple[int, int]) -> np.ndarray:
            acc = np.zeros(m, dtype=np.int64)
            for arr in ps_block_chunks(rng[0], rng[1], spec):
                acc += np.bincount(zeckendorf_digit_sum_array(arr) % m, minlength=m)
            return acc
        for acc in _map_ordered(part, _chunk_ranges(1, x), threads):
            table += acc
    return _residue_report(x, (m,), (a % m,), table)


@dataclass(frozen=True)
class ExponentAudit:
    """Exact exponent arithmetic for the substitution-rule corollary:
    eta_max = (2 - (a+1) c) / (3 - a) against the reference (7 - 5c)/9."""

    a: Fraction
    c: Fraction
    eta_max: Fraction
    reference: Fraction
    validity: bool


def corollary1_exponent_audit(a, c) -> ExponentAudit:
    a = Fraction(a)
    c = Fraction(c)
    if not 0 < a <= 1:
        raise ValueError("needs 0 < a <= 1")
    if not 1 < c < 2:
        raise ValueError("needs 1 < c < 2")
    eta_max = (2 - (a + 1) * c) / (3 - a)
    reference = (7 - 5 * c) / 9
    validity = eta_max > max(Fraction(0), reference)
    return ExponentAudit(a=a, c=c, eta_max=eta_max, reference=reference, validity=validity)
