"""Digit arithmetic: examples, independent oracles, and the decomposition
side conditions."""

import math
from functools import lru_cache

import numpy as np
import pytest

from digitseq import (
    DecompositionSegment,
    TruncatedDigitSpec,
    ZeckendorfRepr,
    count_carry_mismatches,
    digit_sum,
    digit_sum_array,
    dyadic_decompose,
    fibonacci,
    thue_morse_sign,
    thue_morse_sign_array,
    truncated_digit_sum,
    zeckendorf,
    zeckendorf_decompose,
    zeckendorf_digit_sum,
    zeckendorf_digit_sum_array,
)


def test_digit_sum_examples():
    assert digit_sum(0, 2) == 0
    assert digit_sum(7, 2) == 3
    assert digit_sum(1234, 10) == 10


def test_digit_sum_validation():
    with pytest.raises(ValueError):
        digit_sum(5, 1)
    with pytest.raises(ValueError):
        digit_sum(-1, 2)


def test_digit_sum_huge_integer():
    n = 10 ** 50 - 1  # fifty nines
    assert digit_sum(n, 10) == 9 * 50


def test_binary_parity_matches_xor_fold():
    # independent oracle: iterated bit-xor of the binary digits
    n = np.arange(1 << 20, dtype=np.int64)
    xor_parity = np.zeros_like(n)
    for k in range(20):
        xor_parity ^= (n >> k) & 1
    assert np.array_equal(digit_sum_array(n, 2) & 1, xor_parity)


def test_digit_sum_array_matches_scalar():
    rng = np.random.default_rng(0)
    vals = rng.integers(0, 10 ** 12, size=500)
    for q in (2, 3, 7, 10):
        arr = digit_sum_array(vals, q)
        assert all(int(arr[i]) == digit_sum(int(v), q) for i, v in enumerate(vals))


def test_truncated_examples():
    assert truncated_digit_sum(7, TruncatedDigitSpec(2, 2)) == 2
    assert truncated_digit_sum(12345, TruncatedDigitSpec(7, 0)) == 0
    assert truncated_digit_sum(-1, TruncatedDigitSpec(2, 3)) == 3


def test_truncated_equals_full_below_period():
    for q, level in ((2, 10), (3, 6), (10, 3)):
        spec = TruncatedDigitSpec(q, level)
        for n in range(0, spec.period, 7):
            assert truncated_digit_sum(n, spec) == digit_sum(n, q)


def test_thue_morse_examples_and_recurrences():
    assert thue_morse_sign(0) == 1
    assert thue_morse_sign(1) == -1
    assert thue_morse_sign(3) == 1
    for m in range(10_000):
        assert thue_morse_sign(2 * m) == thue_morse_sign(m)
        assert thue_morse_sign(2 * m + 1) == -thue_morse_sign(2 * m)
    n = np.arange(10_000)
    assert np.array_equal(thue_morse_sign_array(n),
                          np.array([thue_morse_sign(int(v)) for v in n]))


def test_fibonacci_values():
    assert fibonacci(0) == 0
    assert fibonacci(1) == 1
    assert fibonacci(2) == 1
    assert fibonacci(10) == 55
    for k in range(2, 90):
        assert fibonacci(k) == fibonacci(k - 1) + fibonacci(k - 2)


def test_zeckendorf_examples():
    assert zeckendorf(0).indices == ()
    assert zeckendorf(1).indices == (2,)
    assert zeckendorf(100).indices == (4, 6, 11)  # 3 + 8 + 89
    assert zeckendorf(100).value() == 100
    for k in range(2, 30):
        assert zeckendorf(fibonacci(k)).indices == (k,)
        assert zeckendorf_digit_sum(fibonacci(k)) == 1
    assert zeckendorf_digit_sum(0) == 0
    assert zeckendorf_digit_sum(100) == 3


def test_zeckendorf_repr_validation():
    with pytest.raises(ValueError):
        ZeckendorfRepr((2, 3))  # consecutive
    with pytest.raises(ValueError):
        ZeckendorfRepr((1,))  # index below 2


def test_zeckendorf_reconstruction_and_validity():
    for n in range(100_000):
        rep = zeckendorf(n)  # __post_init__ enforces non-consecutiveness
        assert rep.value() == n


def test_zeckendorf_reconstruction_bulk_million():
    # vectorised greedy replay: track the chosen Fibonacci mass and forbid
    # consecutive picks, for every n below 10^6
    n = np.arange(1_000_000, dtype=np.int64)
    rem = n.copy()
    recon = np.zeros_like(n)
    prev_mask = np.zeros(len(n), dtype=bool)
    kmax = 29  # F_29 = 832040 <= 10^6 - 1 < F_30
    assert fibonacci(kmax) <= len(n) - 1 < fibonacci(kmax + 1)
    for k in range(kmax, 1, -1):
        f = np.int64(fibonacci(k))
        mask = rem >= f
        assert not np.any(mask & prev_mask), "consecutive Fibonacci picks"
        rem[mask] -= f
        recon[mask] += f
        prev_mask = mask
    assert np.array_equal(recon, n)
    assert not rem.any()


@lru_cache(maxsize=None)
def _count_representations(i: int, rem: int) -> int:
    # number of non-consecutive subsets of {F_2..F_i} summing to rem
    if rem == 0:
        return 1
    if i < 2 or rem < 0:
        return 0
    return _count_representations(i - 1, rem) + _count_representations(i - 2, rem - fibonacci(i))


def test_zeckendorf_uniqueness_backtracking():
    top = 20  # F_20 = 6765 < 10^4 < F_21
    assert fibonacci(top) < 10 ** 4 < fibonacci(top + 1)
    for n in range(1, 10 ** 4):
        assert _count_representations(top, n) == 1


def test_zeckendorf_digit_sum_array_matches_scalar():
    rng = np.random.default_rng(1)
    vals = rng.integers(0, 10 ** 9, size=2000)
    arr = zeckendorf_digit_sum_array(vals)
    assert all(int(arr[i]) == zeckendorf_digit_sum(int(v)) for i, v in enumerate(vals))


def test_dyadic_examples():
    assert dyadic_decompose(0, 8) == [DecompositionSegment(0, 3)]
    assert dyadic_decompose(3, 5) == [DecompositionSegment(3, 0), DecompositionSegment(4, 0)]
    assert dyadic_decompose(5, 5) == []


def test_zeckendorf_decompose_examples():
    for k in (2, 5, 10, 20):
        assert zeckendorf_decompose(0, fibonacci(k)) == [DecompositionSegment(0, k)]
    assert zeckendorf_decompose(17, 17) == []


def _check_dyadic(a, b, segs):
    pos = a
    per_scale = {}
    for s in segs:
        assert s.offset == pos
        assert s.offset % (1 << s.scale) == 0
        per_scale[s.scale] = per_scale.get(s.scale, 0) + 1
        pos += 1 << s.scale
    assert pos == b
    assert all(v <= 2 for v in per_scale.values())


def _check_zeck(a, b, segs, sample_shift=False):
    pos = a
    per_scale = {}
    for s in segs:
        assert s.offset == pos
        idx = zeckendorf(s.offset).indices
        assert not idx or min(idx) > s.scale  # zero digits at 2..scale
        per_scale[s.scale] = per_scale.get(s.scale, 0) + 1
        pos += fibonacci(s.scale)
    assert pos == b
    assert all(v <= 2 for v in per_scale.values())
    if sample_shift:
        for s in segs[:6]:
            base = zeckendorf_digit_sum(s.offset)
            length = fibonacci(s.scale)
            for u in {0, length // 2, length - 1}:
                assert zeckendorf_digit_sum(s.offset + u) == base + zeckendorf_digit_sum(u)


def test_decomposition_properties_random():
    rng = np.random.default_rng(2)
    for trial in range(10_000):
        a = int(rng.integers(0, 10 ** 7))
        b = a + int(rng.integers(0, 10 ** 6))
        _check_dyadic(a, b, dyadic_decompose(a, b))
        _check_zeck(a, b, zeckendorf_decompose(a, b), sample_shift=(trial % 50 == 0))


def _enumerate_zeck_partitions(pos, b, used, acc, out):
    # backtracking oracle: every partition into admissible Fibonacci blocks
    if pos == b:
        out.append(tuple(acc))
        return
    idx = zeckendorf(pos).indices
    min_idx = min(idx) if idx else 10 ** 9
    scale = 1
    while fibonacci(scale) + pos <= b:
        if scale < min_idx and used.get(scale, 0) < 2:
            used[scale] = used.get(scale, 0) + 1
            acc.append(DecompositionSegment(pos, scale))
            _enumerate_zeck_partitions(pos + fibonacci(scale), b, used, acc, out)
            acc.pop()
            used[scale] -= 1
        scale += 1


def test_zeckendorf_decompose_is_an_enumerated_partition():
    for a, b in ((4, 12), (0, 11), (7, 25), (30, 55)):
        found: list = []
        _enumerate_zeck_partitions(a, b, {}, [], found)
        assert found, "oracle found no valid decomposition"
        assert tuple(zeckendorf_decompose(a, b)) in set(found)


def test_carry_mismatch_examples():
    spec = TruncatedDigitSpec(2, 3)
    assert count_carry_mismatches(5, 200, 0, spec) == 0
    for q, level, r in ((2, 4, 3), (3, 3, 5), (10, 2, 7)):
        s = TruncatedDigitSpec(q, level)
        assert count_carry_mismatches(0, s.period - r, r, s) == 0
    # frozen from exhaustive evaluation over [0, 64)
    assert count_carry_mismatches(0, 64, 1, spec) == 6


def test_carry_mismatch_shift_out_of_domain():
    with pytest.raises(ValueError):
        count_carry_mismatches(0, 10, -1, TruncatedDigitSpec(2, 2))


def test_carry_mismatch_brute_force_and_bound():
    rng = np.random.default_rng(3)
    for _ in range(1000):
        q = int(rng.choice([2, 3, 5, 10]))
        level = int(rng.integers(0, 7))
        spec = TruncatedDigitSpec(q, level)
        x = int(rng.integers(0, 10 ** 6))
        y = x + int(rng.integers(0, 400))
        r = int(rng.integers(-50, 51))
        if x + r < 0:
            r = -x
        got = count_carry_mismatches(x, y, r, spec)
        brute = 0
        for n in range(x, y):
            full = digit_sum(n + r, q) - digit_sum(n, q)
            trunc = truncated_digit_sum(n + r, spec) - truncated_digit_sum(n, spec)
            brute += full != trunc
        assert got == brute
        assert got <= (y - x) * abs(r) / spec.period + abs(r) + 1e-9
