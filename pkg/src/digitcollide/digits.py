"""Exact base-q digit machinery on arbitrary-precision integers.

Digit vectors are plain lists, least-significant digit first, with no
trailing zeros; zero is the empty list.  Scans dispatch to the int64
kernels when every intermediate value fits below 2**63 and fall back to
big-integer loops otherwise, so callers never see an overflow.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple

import numpy as np

from . import _kernels

SCAN_CHUNK = 1 << 18


class RunProfile(NamedTuple):
    max_run: int
    one_block_count: int


def _check_base(q) -> None:
    if not isinstance(q, int) or q < 2:
        raise ValueError(f"invalid base: need an integer >= 2, got {q!r}")


def _check_nonneg(n, name: str = "n") -> None:
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"{name} must be a nonnegative integer, got {n!r}")


def to_digits(n: int, q: int) -> list[int]:
    """Base-q expansion of n, least-significant first; canonical (no
    trailing zeros, zero is [])."""
    _check_base(q)
    _check_nonneg(n)
    digits = []
    while n:
        n, d = divmod(n, q)
        digits.append(d)
    return digits


def from_digits(digits, q: int) -> int:
    """Reassemble sum(digits[j] * q**j); inverse of to_digits."""
    _check_base(q)
    n = 0
    for d in reversed(digits):
        if not 0 <= d < q:
            raise ValueError(f"digit {d!r} out of range for base {q}")
        n = n * q + d
    return n


def digit_sum(n: int, q: int) -> int:
    """Sum of the base-q digits of n (equivalently, the least number of
    powers of q summing to n)."""
    _check_base(q)
    _check_nonneg(n)
    if q == 2:
        return n.bit_count()
    s = 0
    while n:
        n, d = divmod(n, q)
        s += d
    return s


def digit_at(n: int, q: int, j: int) -> int:
    """The j-th base-q digit of n; 0 beyond the expansion."""
    _check_base(q)
    _check_nonneg(n)
    _check_nonneg(j, "j")
    if q == 2:
        return (n >> j) & 1
    return (n // q**j) % q


def block_extract(n: int, a: int, b: int) -> int:
    """The integer formed by binary digits a..b-1 of n (so < 2**(b-a))."""
    _check_nonneg(n)
    _check_nonneg(a, "a")
    if a > b:
        raise ValueError(f"invalid interval: a={a} > b={b}")
    return (n >> a) & ((1 << (b - a)) - 1)


def run_profile(m: int) -> RunProfile:
    """Longest run of equal bits and number of maximal 1-blocks of m >= 1."""
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"run_profile undefined for {m!r}; need m >= 1")
    one_block_count = (m & ~(m >> 1)).bit_count()
    ones = 0
    x = m
    while x:
        x &= x >> 1
        ones += 1
    z = ~m & ((1 << (m.bit_length() - 1)) - 1)
    zeros = 0
    while z:
        z &= z >> 1
        zeros += 1
    return RunProfile(max(ones, zeros), one_block_count)


def is_prime(p: int) -> bool:
    if not isinstance(p, int) or p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def valuation(n: int, p: int) -> int:
    """Largest e with p**e dividing n, for n >= 1 and prime p."""
    if not is_prime(p):
        raise ValueError(f"valuation needs a prime base, got {p!r}")
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"valuation undefined for {n!r}; need n >= 1")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def _digit_sums_block_big(lo: int, hi: int, multiplier: int):
    s2 = np.empty(hi - lo, dtype=np.int64)
    s3 = np.empty(hi - lo, dtype=np.int64)
    for i in range(hi - lo):
        n = lo + i
        s2[i] = (n * multiplier).bit_count()
        s = 0
        v = n
        while v:
            v, d = divmod(v, 3)
            s += d
        s3[i] = s
    return s2, s3


def digit_sums_block(lo: int, hi: int, multiplier: int = 1):
    """(s_2(multiplier*n), s_3(n)) for n in [lo, hi) as int64 arrays.

    Values identical to pointwise digit_sum calls; the int64 kernel is
    used whenever multiplier*(hi-1) stays below 2**63.
    """
    _check_nonneg(lo, "lo")
    if hi < lo:
        raise ValueError(f"invalid range [{lo}, {hi})")
    if multiplier < 1:
        raise ValueError(f"multiplier must be >= 1, got {multiplier!r}")
    if hi == lo:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    if multiplier * (hi - 1) <= _kernels.I64_MAX:
        return _kernels.digit_sums_range(lo, hi, multiplier)
    return _digit_sums_block_big(lo, hi, multiplier)


def scan_digit_sums(lo: int, hi: int, multiplier: int = 1,
                    chunk: int = SCAN_CHUNK) -> Iterator[tuple[int, int, int]]:
    """Stream (n, s_2(multiplier*n), s_3(n)) for n in [lo, hi), ascending."""
    for a in range(lo, hi, chunk):
        b = min(a + chunk, hi)
        s2, s3 = digit_sums_block(a, b, multiplier)
        for i in range(b - a):
            yield a + i, int(s2[i]), int(s3[i])
