"""Randomized and exhaustive audit sweeps used by the command-line surface.

Each audit replays a proven inequality over a deterministic (seeded or
exhaustive) configuration sweep and reports per-configuration rows plus a
violation count, so a nonzero count can map to a failing exit status.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .expsums import digit_fourier_table
from .harmonic import build_vaaler_approx, erdos_turan_bound, exact_discrepancy, \
    fejer_majorant, sawtooth, vaaler_psi_h
from .sequences import BeattyLine, beatty_floor_range

__all__ = [
    "FourierAuditRow",
    "VaalerAuditRow",
    "EtAuditRow",
    "fourier_bound_audit",
    "vaaler_audit",
    "et_audit",
]


@dataclass(frozen=True)
class FourierAuditRow:
    q: int
    level: int
    alpha: float
    max_abs_coeff: float
    uniform_bound: float
    parseval_error: float
    violations: int


def fourier_bound_audit(q_list: tuple[int, ...], level_max: int,
                        alpha_grid: int) -> list[FourierAuditRow]:
    """Exhaustive check of the uniform coefficient bound and Parseval over
    all h, for every base, level <= level_max and a uniform alpha grid."""
    if level_max < 0 or alpha_grid < 1:
        raise ValueError("needs level_max >= 0 and alpha_grid >= 1")
    rows = []
    for q in q_list:
        for level in range(level_max + 1):
            for i in range(alpha_grid):
                alpha = i / alpha_grid
                table = digit_fourier_table(q, level, alpha)
                rows.append(FourierAuditRow(
                    q=q, level=level, alpha=alpha,
                    max_abs_coeff=float(np.max(np.abs(table.coefficients))),
                    uniform_bound=table.uniform_bound(),
                    parseval_error=table.parseval_error(),
                    violations=table.bound_violations()))
    return rows


@dataclass(frozen=True)
class VaalerAuditRow:
    degree: int
    grid: int
    max_excess: float  # max of |psi - psi_H| - kappa_H over the grid
    min_kappa: float
    coeff_min: float
    coeff_max: float


def vaaler_audit(degrees: tuple[int, ...], grid: int = 10000) -> list[VaalerAuditRow]:
    """Grid check of the defining sawtooth inequality and of the majorant's
    nonnegativity for each requested degree."""
    if grid < 2:
        raise ValueError("needs grid >= 2")
    rows = []
    ts = np.arange(grid, dtype=np.float64) / grid
    for degree in degrees:
        approx = build_vaaler_approx(degree)
        err = np.abs(sawtooth(ts) - vaaler_psi_h(approx, ts))
        kappa = fejer_majorant(degree, ts)
        rows.append(VaalerAuditRow(
            degree=degree, grid=grid,
            max_excess=float(np.max(err - kappa)),
            min_kappa=float(np.min(kappa)),
            coeff_min=float(np.min(approx.coefficients)),
            coeff_max=float(np.max(approx.coefficients))))
    return rows


@dataclass(frozen=True)
class EtAuditRow:
    index: int
    kind: str
    n_points: int
    degree: int
    discrepancy: float
    bound: float
    ok: bool


def et_audit(sets: int = 1000, degree: int = 64, seed: int = 0,
             max_points: int = 2000) -> list[EtAuditRow]:
    """Exact discrepancy against the constant-1 bound on seeded point sets:
    uniform draws, clustered draws, and Beatty-line fractional orbits."""
    if sets < 1 or degree < 1 or max_points < 2:
        raise ValueError("needs sets >= 1, degree >= 1, max_points >= 2")
    rng = np.random.default_rng(seed)
    rows = []
    kinds = ("uniform", "clustered", "beatty")
    for i in range(sets):
        kind = kinds[i % 3]
        n = int(rng.integers(2, max_points))
        if kind == "uniform":
            pts = rng.random(n)
        elif kind == "clustered":
            centre = rng.random()
            pts = (rng.normal(centre, 0.05, n)) % 1.0
        else:
            alpha = 1.0 + 9.0 * rng.random()
            beta = rng.uniform(0.0, 10.0)
            line = BeattyLine(alpha, beta)
            hits = beatty_floor_range(line, 1, n)
            pts = (hits * (0.5 * (5 ** 0.5) - 0.5)) % 1.0
        pts = np.clip(pts, 0.0, np.nextafter(1.0, 0.0))
        disc = exact_discrepancy(pts)
        bound = erdos_turan_bound(pts, degree)
        rows.append(EtAuditRow(index=i, kind=kind, n_points=n, degree=degree,
                               discrepancy=disc, bound=bound, ok=disc <= bound + 1e-12))
    return rows
