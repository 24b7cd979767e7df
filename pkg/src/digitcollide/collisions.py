"""Searches around generalized digit-sum collisions a*s_2(n) = b*s_3(n).

Scans report n = 0 whenever the equation holds there (0 = 0); callers
wanting positive integers filter downstream.
"""

from __future__ import annotations

import math
import random
from typing import Iterator, NamedTuple, Optional

import numpy as np

from .digits import SCAN_CHUNK, digit_sum, digit_sums_block

DHL_SLOPE = 0.1457205
SEARCH_PREFIX_SCAN = 4096


class CollisionRecord(NamedTuple):
    n: int
    s2: int
    s3: int


class EnumerationResult(NamedTuple):
    witnesses: list[int]
    complete: bool


def scan_collisions(lo: int, hi: int, a: int = 1, b: int = 1,
                    chunk: int = SCAN_CHUNK) -> Iterator[CollisionRecord]:
    """All n in [lo, hi) with a*s_2(n) = b*s_3(n), ascending."""
    if a < 1 or b < 1:
        raise ValueError(f"weights must be >= 1, got a={a!r}, b={b!r}")
    for start in range(lo, hi, chunk):
        stop = min(start + chunk, hi)
        s2, s3 = digit_sums_block(start, stop)
        hits = np.nonzero(a * s2 == b * s3)[0]
        for i in hits:
            yield CollisionRecord(start + int(i), int(s2[i]), int(s3[i]))


def pair_witness_enumerate(k1: int, k2: int, bound: int,
                           budget: int = 10**7) -> EnumerationResult:
    """All n <= bound with s_2(n) = k1 and s_3(n) = k2, by depth-first
    enumeration of the k1 one-bit positions, pruned by magnitude.

    Complete within bound unless the step budget runs out, in which case
    the partial witness list is returned flagged incomplete.
    """
    if k1 < 0 or k2 < 0:
        raise ValueError("digit-sum targets must be nonnegative")
    if bound < 1 or budget < 1:
        raise ValueError("bound and budget must be >= 1")
    if k1 == 0:
        return EnumerationResult([0] if k2 == 0 else [], True)
    witnesses: list[int] = []
    steps = 0
    top = bound.bit_length() - 1

    def dfs(pos: int, remaining: int, value: int) -> bool:
        nonlocal steps
        steps += 1
        if steps > budget:
            return False
        if remaining == 0:
            if digit_sum(value, 3) == k2:
                witnesses.append(value)
            return True
        # positions below pos must host `remaining` distinct bits
        for p in range(pos, remaining - 2, -1):
            nxt = value + (1 << p)
            if nxt + ((1 << (remaining - 1)) - 1) > bound:
                continue
            if not dfs(p - 1, remaining - 1, nxt):
                return False
        return True

    complete = dfs(top, k1, 0)
    witnesses.sort()
    return EnumerationResult(witnesses, complete)


def pair_witness_search(k1: int, k2: int, budget: int,
                        seed: int = 0) -> Optional[int]:
    """One n with s_2(n) = k1 and s_3(n) = k2, or None within budget.

    After a short ascending prefix scan, candidates are drawn by centering:
    pick the rarefaction exponent K that aligns the expected binary digit
    sum of 3**K * n with k1 when n is composed of k2 ternary units, then
    sample such n and test.  Exhausting the budget is a legal outcome; the
    guarantee behind the search is only asymptotic.
    """
    if k1 < 1 or k2 < 1:
        raise ValueError("pair search needs k1, k2 >= 1")
    if budget < 1:
        raise ValueError("budget must be >= 1")
    used = 0
    for n in range(1, SEARCH_PREFIX_SCAN + 1):
        used += 1
        if digit_sum(n, 2) == k1 and digit_sum(n, 3) == k2:
            return n
        if used >= budget:
            return None

    rng = random.Random(seed)
    k_center = max(0, round((2 * k1 * math.log(2) - k2 * math.log(3)) / math.log(3)))
    window = max(k2 + 4, 8)
    while used < budget:
        used += 1
        k_exp = max(0, k_center + rng.randint(-1, 1))
        twos = rng.randint(0, k2 // 2)
        parts = [2] * twos + [1] * (k2 - 2 * twos)
        positions = rng.sample(range(window), len(parts))
        n = sum(d * 3**p for d, p in zip(parts, positions))
        m = n * 3**k_exp
        if digit_sum(m, 2) == k1:
            return m
    return None


def ratio_approach(rho: float, eps: float, budget: int,
                   chunk: int = SCAN_CHUNK) -> Optional[int]:
    """Smallest n in [1, budget] with |s_2(n)/s_3(n) - rho| < eps, or None."""
    if rho <= 0 or eps <= 0:
        raise ValueError("rho and eps must be positive")
    if budget < 1:
        raise ValueError("budget must be >= 1")
    for start in range(1, budget + 1, chunk):
        stop = min(start + chunk, budget + 1)
        s2, s3 = digit_sums_block(start, stop)
        hits = np.nonzero(np.abs(s2 - rho * s3) < eps * s3)[0]
        if hits.size:
            return start + int(hits[0])
    return None


class GapStatistics(NamedTuple):
    count: int
    mean: float
    min: float
    max: float
    histogram: dict[int, int]
    dhl_fraction: float
    c: float


def gap_constant() -> float:
    """c = 1/log 3 - 1/log 4, the typical slope of (s_3 - s_2)(n) / log n."""
    return 1.0 / math.log(3) - 1.0 / math.log(4)


def gap_statistics(lo: int, hi: int, chunk: int = SCAN_CHUNK) -> GapStatistics:
    """Residuals s_3(n) - s_2(n) - c*log(n) over [lo, hi), lo >= 2.

    The histogram buckets residuals by integer floor; dhl_fraction is the
    share of n with |s_3(n) - s_2(n)| <= 0.1457205 * log(n).
    """
    if lo < 2:
        raise ValueError(f"gap statistics need lo >= 2, got {lo!r}")
    if hi <= lo:
        raise ValueError(f"invalid range [{lo}, {hi})")
    c = gap_constant()
    total = 0.0
    rmin = math.inf
    rmax = -math.inf
    hist: dict[int, int] = {}
    dhl_hits = 0
    count = 0
    for start in range(lo, hi, chunk):
        stop = min(start + chunk, hi)
        s2, s3 = digit_sums_block(start, stop)
        logs = np.log(np.arange(start, stop, dtype=np.float64))
        resid = s3 - s2 - c * logs
        total += float(resid.sum())
        rmin = min(rmin, float(resid.min()))
        rmax = max(rmax, float(resid.max()))
        dhl_hits += int((np.abs(s3 - s2) <= DHL_SLOPE * logs).sum())
        bins, cnts = np.unique(np.floor(resid).astype(np.int64), return_counts=True)
        for bin_, cnt in zip(bins, cnts):
            hist[int(bin_)] = hist.get(int(bin_), 0) + int(cnt)
        count += stop - start
    return GapStatistics(count, total / count, rmin, rmax,
                         dict(sorted(hist.items())), dhl_hits / count, c)
