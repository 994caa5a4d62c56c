"""Exact integer digit arithmetic.

Base-q digit sums and their truncated periodic variants, the Thue-Morse
sign, Fibonacci/Zeckendorf machinery, and the two interval-decomposition
procedures (dyadic and Fibonacci-length blocks) used by the exponential-sum
kernels.  Everything here is pure integer arithmetic and stateless; the
Fibonacci table is an append-only cache.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

__all__ = [
    "TruncatedDigitSpec",
    "ZeckendorfRepr",
    "DecompositionSegment",
    "digit_sum",
    "digit_sum_array",
    "truncated_digit_sum",
    "truncated_digit_sum_array",
    "thue_morse_sign",
    "thue_morse_sign_array",
    "fibonacci",
    "fibonacci_index_below",
    "zeckendorf",
    "zeckendorf_digit_sum",
    "zeckendorf_digit_sum_array",
    "dyadic_decompose",
    "zeckendorf_decompose",
    "count_carry_mismatches",
]


def digit_sum(n: int, q: int) -> int:
    """Sum of the base-q digits of n.  Exact for arbitrary-precision n >= 0."""
    if q < 2:
        raise ValueError(f"digit base must be >= 2, got {q}")
    if n < 0:
        raise ValueError(f"digit_sum needs n >= 0, got {n}")
    total = 0
    while n:
        n, r = divmod(n, q)
        total += r
    return total


_POP_M1 = np.uint64(0x5555555555555555)
_POP_M2 = np.uint64(0x3333333333333333)
_POP_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_POP_H01 = np.uint64(0x0101010101010101)


def _popcount_u64(v: np.ndarray) -> np.ndarray:
    v = v.astype(np.uint64)
    v = v - ((v >> np.uint64(1)) & _POP_M1)
    v = (v & _POP_M2) + ((v >> np.uint64(2)) & _POP_M2)
    v = (v + (v >> np.uint64(4))) & _POP_M4
    return ((v * _POP_H01) >> np.uint64(56)).astype(np.int64)


def digit_sum_array(values: np.ndarray, q: int) -> np.ndarray:
    """Vectorised digit_sum over a nonnegative int64 array."""
    if q < 2:
        raise ValueError(f"digit base must be >= 2, got {q}")
    v = np.array(values, dtype=np.int64, copy=True)
    if v.size and int(v.min()) < 0:
        raise ValueError("digit_sum_array needs nonnegative values")
    if q == 2:
        return _popcount_u64(v)
    out = np.zeros_like(v)
    while v.any():
        out += v % q
        v //= q
    return out


@dataclass(frozen=True)
class TruncatedDigitSpec:
    """Base q and truncation level; s_{q,level} sums the lowest `level`
    digits and extends q^level-periodically to all integers."""

    q: int
    level: int

    def __post_init__(self):
        if self.q < 2:
            raise ValueError(f"digit base must be >= 2, got {self.q}")
        if self.level < 0:
            raise ValueError(f"truncation level must be >= 0, got {self.level}")

    @property
    def period(self) -> int:
        return self.q ** self.level


def truncated_digit_sum(n: int, spec: TruncatedDigitSpec) -> int:
    """Digit sum of the lowest `level` base-q digits; periodic extension
    (floored modulus) handles negative n."""
    return digit_sum(n % spec.period, spec.q)


def truncated_digit_sum_array(values: np.ndarray, spec: TruncatedDigitSpec) -> np.ndarray:
    period = spec.period
    if period > 2**62:
        raise ValueError("period exceeds the vectorised integer range")
    v = np.asarray(values, dtype=np.int64) % np.int64(period)
    return digit_sum_array(v, spec.q)


def thue_morse_sign(n: int) -> int:
    """(-1)**s_2(n): +1 on even binary digit sums, -1 on odd."""
    if n < 0:
        raise ValueError(f"thue_morse_sign needs n >= 0, got {n}")
    return 1 - 2 * (int(n).bit_count() & 1)


def thue_morse_sign_array(values: np.ndarray) -> np.ndarray:
    v = np.asarray(values, dtype=np.int64)
    return 1 - 2 * (_popcount_u64(v) & 1)


# Fibonacci table: F_0 = 0, F_1 = 1, append-only (read-only once extended).
_FIB: list[int] = [0, 1]


def fibonacci(k: int) -> int:
    """Exact k-th Fibonacci number (F_0 = 0, F_1 = 1)."""
    if k < 0:
        raise ValueError(f"fibonacci needs k >= 0, got {k}")
    while len(_FIB) <= k:
        _FIB.append(_FIB[-1] + _FIB[-2])
    return _FIB[k]


def fibonacci_index_below(n: int) -> int:
    """Largest k with F_k <= n, for n >= 1.  Resolves the F_1 = F_2 tie
    upward so Zeckendorf indices start at 2."""
    if n < 1:
        raise ValueError("needs n >= 1")
    while _FIB[-1] <= n:
        _FIB.append(_FIB[-1] + _FIB[-2])
    return bisect_right(_FIB, n) - 1


@dataclass(frozen=True)
class ZeckendorfRepr:
    """Strictly increasing, non-consecutive Fibonacci indices (all >= 2).
    The empty tuple represents 0."""

    indices: tuple[int, ...]

    def __post_init__(self):
        prev = 0
        for i in self.indices:
            if i < 2:
                raise ValueError(f"Zeckendorf indices start at 2, got {i}")
            if i <= prev + 1:
                raise ValueError(f"indices must be non-consecutive increasing, got {self.indices}")
            prev = i

    def value(self) -> int:
        return sum(fibonacci(i) for i in self.indices)

    def digit(self, i: int) -> int:
        return 1 if i in self.indices else 0

    def __len__(self) -> int:
        return len(self.indices)


def zeckendorf(n: int) -> ZeckendorfRepr:
    """Greedy (largest F_k first) Zeckendorf representation of n >= 0.
    Greedy descent is the unique valid non-consecutive representation."""
    if n < 0:
        raise ValueError(f"zeckendorf needs n >= 0, got {n}")
    indices = []
    rem = n
    while rem:
        k = fibonacci_index_below(rem)
        indices.append(k)
        rem -= _FIB[k]
    return ZeckendorfRepr(tuple(reversed(indices)))


def zeckendorf_digit_sum(n: int) -> int:
    """Number of summands in the Zeckendorf representation (s_Z; 0 at 0)."""
    if n < 0:
        raise ValueError(f"zeckendorf_digit_sum needs n >= 0, got {n}")
    count = 0
    rem = n
    while rem:
        rem -= _FIB[fibonacci_index_below(rem)]
        count += 1
    return count


def zeckendorf_digit_sum_array(values: np.ndarray) -> np.ndarray:
    """Vectorised s_Z via top-down greedy subtraction.  After subtracting
    F_k the remainder is < F_{k-1}, so non-consecutiveness is automatic."""
    v = np.array(values, dtype=np.int64, copy=True)
    if v.size == 0:
        return np.zeros(0, dtype=np.int64)
    if int(v.min()) < 0:
        raise ValueError("zeckendorf_digit_sum_array needs nonnegative values")
    out = np.zeros_like(v)
    top = int(v.max())
    if top == 0:
        return out
    kmax = fibonacci_index_below(top)
    for k in range(kmax, 1, -1):
        f = np.int64(fibonacci(k))
        mask = v >= f
        if mask.any():
            v[mask] -= f
            out[mask] += 1
    return out


@dataclass(frozen=True)
class DecompositionSegment:
    """Half-open block [offset, offset + length) where length is 2**scale
    in dyadic mode and F_scale in Zeckendorf mode."""

    offset: int
    scale: int


def dyadic_decompose(a: int, b: int) -> list[DecompositionSegment]:
    """Partition [a, b) into aligned dyadic blocks [m*2^j, (m+1)*2^j),
    at most two blocks per scale (one from each side)."""
    if a < 0 or b < a:
        raise ValueError(f"need 0 <= a <= b, got ({a}, {b})")
    left: list[DecompositionSegment] = []
    right: list[DecompositionSegment] = []
    j = 0
    while a < b:
        step = 1 << j
        if a & step:
            left.append(DecompositionSegment(a, j))
            a += step
        if b & step:
            b -= step
            right.append(DecompositionSegment(b, j))
        j += 1
    return left + right[::-1]


def _zeck_ascend(a: int, k_top: int) -> list[DecompositionSegment]:
    # Cover [a, F_{k_top}); each block [a, a + F_{k-1}) where k is the
    # lowest set index of a, so the offset has zero digits below the scale.
    if a == 0:
        return [DecompositionSegment(0, k_top)]
    segs = []
    target = fibonacci(k_top)
    while a < target:
        k = min(zeckendorf(a).indices)
        segs.append(DecompositionSegment(a, k - 1))
        a += fibonacci(k - 1)
    return segs


def _zeck_descend(b: int, k_top: int) -> list[DecompositionSegment]:
    # Cover [F_{k_top}, b); one block per representation index below k_top.
    idx = sorted(zeckendorf(b).indices, reverse=True)
    assert idx and idx[0] == k_top
    segs = []
    running = fibonacci(k_top)
    for j in idx[1:]:
        segs.append(DecompositionSegment(running, j))
        running += fibonacci(j)
    return segs


def zeckendorf_decompose(a: int, b: int) -> list[DecompositionSegment]:
    """Partition [a, b) into blocks [A, A + F_j) whose offsets have zero
    Zeckendorf digits at indices <= j, at most two blocks per scale.  On
    each block s_Z(n) = s_Z(A) + s_Z(n - A)."""
    if a < 0 or b < a:
        raise ValueError(f"need 0 <= a <= b, got ({a}, {b})")
    if a == b:
        return []
    da = set(zeckendorf(a).indices)
    db = set(zeckendorf(b).indices)
    k_top = max(da ^ db)  # highest differing digit; b > a forces it set in b
    common = sum(fibonacci(i) for i in da if i > k_top)
    segs = _zeck_ascend(a - common, k_top) + _zeck_descend(b - common, k_top)
    if common:
        segs = [DecompositionSegment(s.offset + common, s.scale) for s in segs]
    return segs


def count_carry_mismatches(x: int, y: int, r: int, spec: TruncatedDigitSpec) -> int:
    """Exact count of n in [x, y) where the shift-by-r digit-sum increment
    differs between the full and the truncated digit sum, i.e. where the
    carry of n + r propagates past the lowest `level` digits."""
    if y <= x:
        return 0
    if x < 0 or x + r < 0:
        raise ValueError("interval and shifted interval must stay in the nonnegative integers")
    period = spec.period
    count = 0
    if y + abs(r) < 2**62 and period < 2**62 and y - x <= 10**7:
        n = np.arange(x, y, dtype=np.int64)
        full = digit_sum_array(n + r, spec.q) - digit_sum_array(n, spec.q)
        trunc = truncated_digit_sum_array(n + r, spec) - truncated_digit_sum_array(n, spec)
        count = int(np.count_nonzero(full != trunc))
    else:
        for n in range(x, y):
            full = digit_sum(n + r, spec.q) - digit_sum(n, spec.q)
            trunc = truncated_digit_sum(n + r, spec) - truncated_digit_sum(n, spec)
            if full != trunc:
                count += 1
    bound = (y - x) * abs(r) / period + abs(r)
    assert count <= bound + 1e-9, "carry-mismatch count exceeded its proven bound"
    return count
