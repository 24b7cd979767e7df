"""Joint digit-sum statistics against the product-Gaussian prediction.

The empirical object is the exact count of n < N with
s_2(3**K * n) = k1 and s_3(n) = k2; its predicted per-n density is the
product of two Gaussian factors centered at log_2(N*3**K)/2 and log_3 N.
Also houses the digit-constraint densities, the phase sums with their
1/(2||2a||) bound, star discrepancy, and normalized truncated moments.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from . import _kernels
from .digits import SCAN_CHUNK, digit_sums_block

DEFAULT_ETA = 0.3

_PARITIES = (0, 1, "both")


def _check_parity(parity) -> None:
    if parity not in _PARITIES:
        raise ValueError(f"parity must be 0, 1 or 'both', got {parity!r}")


@dataclass
class JointHistogram:
    """Counts of (s_2(3**K n), s_3(n)) over n < N in one parity class."""

    N: int
    K: int
    parity: object
    counts: dict[tuple[int, int], int] = field(default_factory=dict)

    def total(self) -> int:
        return sum(self.counts.values())

    def marginal(self, axis: int) -> dict[int, int]:
        out: dict[int, int] = {}
        for (k1, k2), c in self.counts.items():
            k = (k1, k2)[axis]
            out[k] = out.get(k, 0) + c
        return dict(sorted(out.items()))

    def csv_rows(self):
        for (k1, k2) in sorted(self.counts):
            yield k1, k2, self.counts[(k1, k2)]

    def as_dict(self) -> dict:
        return {
            "N": self.N,
            "K": self.K,
            "parity": self.parity,
            "counts": [[k1, k2, c] for (k1, k2), c in sorted(self.counts.items())],
        }


def joint_histogram(N: int, K: int, parity="both",
                    chunk: int = SCAN_CHUNK) -> JointHistogram:
    """Exact joint counts via the digit-sum scan with multiplier 3**K."""
    if N < 1 or K < 0:
        raise ValueError(f"need N >= 1 and K >= 0, got N={N!r}, K={K!r}")
    _check_parity(parity)
    counts: dict[tuple[int, int], int] = {}
    mult = 3**K
    for start in range(0, N, chunk):
        stop = min(start + chunk, N)
        s2, s3 = digit_sums_block(start, stop, mult)
        if parity != "both":
            keep = (np.arange(start, stop) & 1) == parity
            s2, s3 = s2[keep], s3[keep]
        if s2.size == 0:
            continue
        packed = s2 * 10000 + s3
        vals, cnts = np.unique(packed, return_counts=True)
        for v, c in zip(vals, cnts):
            key = (int(v) // 10000, int(v) % 10000)
            counts[key] = counts.get(key, 0) + int(c)
    return JointHistogram(N, K, parity, counts)


def deltas(N: int, K: int, k1: int, k2: int) -> tuple[float, float]:
    """Offsets of (k1, k2) from the two distribution centers."""
    return (k1 - 0.5 * math.log2(N * 3**K),
            k2 - math.log(N) / math.log(3))


def llt_prediction(N: int, K: int, k1: int, k2: int) -> float:
    """Predicted per-n density of the cell (k1, k2): the product of a
    Gaussian in k1 (mean log_2(N*3**K)/2, variance log_2(N*3**K)/4) and
    a Gaussian in k2 (mean log_3 N, variance 2*log_3(N)/3)."""
    if N < 2:
        raise ValueError(f"prediction undefined for N={N!r}; need N >= 2")
    if K < 0:
        raise ValueError(f"need K >= 0, got {K!r}")
    l1 = math.log2(N * 3**K)
    l2 = math.log(N) / math.log(3)
    d1, d2 = deltas(N, K, k1, k2)
    f1 = math.exp(-d1 * d1 / (0.5 * l1)) / math.sqrt(2 * math.pi * 0.25 * l1)
    f2 = math.exp(-d2 * d2 / (4.0 / 3.0 * l2)) / math.sqrt(2 * math.pi * (2.0 / 3.0) * l2)
    return f1 * f2


class CellComparison(NamedTuple):
    k1: int
    k2: int
    empirical: float
    predicted: float
    abs_err: float
    rel_err: float


@dataclass
class LltComparison:
    """Per-cell empirical vs predicted densities plus window summaries.

    worst_rel_err: largest |empirical - predicted| over the well-populated
    cells (predicted at least half the central density), measured relative
    to the central density, so that window-edge cells cannot dominate via
    their small denominators.  worst_cell_rel_err: the same maximum with
    each deviation divided by the cell's own prediction instead.  No
    pass/fail is attached; the underlying statement is asymptotic.
    """

    N: int
    K: int
    central_cell: tuple[int, int]
    central_predicted: float
    cells: list[CellComparison]
    worst_rel_err: float
    worst_cell_rel_err: float

    def as_dict(self) -> dict:
        return {
            "N": self.N,
            "K": self.K,
            "central_cell": list(self.central_cell),
            "central_predicted": self.central_predicted,
            "worst_rel_err": self.worst_rel_err,
            "worst_cell_rel_err": self.worst_cell_rel_err,
            "cells": [c._asdict() for c in self.cells],
        }


def central_cell(N: int, K: int) -> tuple[int, int]:
    return (round(0.5 * math.log2(N * 3**K)),
            round(math.log(N) / math.log(3)))


def compare_llt(N: int, K: int, window=None,
                histogram: Optional[JointHistogram] = None) -> LltComparison:
    """Compare empirical cell frequencies with the predicted densities.

    window defaults to the 5x5 block around the central cell; pass any
    iterable of (k1, k2) pairs to override.  A precomputed histogram for
    the same (N, K, both parities) may be supplied to avoid rescanning.
    """
    if histogram is None:
        histogram = joint_histogram(N, K, "both")
    if window is None:
        c1, c2 = central_cell(N, K)
        window = [(k1, k2) for k1 in range(c1 - 2, c1 + 3)
                  for k2 in range(c2 - 2, c2 + 3)]
    else:
        window = list(window)
    if not window:
        raise ValueError("empty comparison window")
    c1, c2 = central_cell(N, K)
    central = llt_prediction(N, K, c1, c2)
    cells = []
    worst_rel = 0.0
    worst_cell_rel = 0.0
    for k1, k2 in window:
        pred = llt_prediction(N, K, k1, k2)
        emp = histogram.counts.get((k1, k2), 0) / N
        abs_err = abs(emp - pred)
        cells.append(CellComparison(k1, k2, emp, pred, abs_err, abs_err / pred))
        if pred >= 0.5 * central:
            worst_rel = max(worst_rel, abs_err / central)
            worst_cell_rel = max(worst_cell_rel, abs_err / pred)
    return LltComparison(N, K, (c1, c2), central, cells, worst_rel, worst_cell_rel)


class ConstraintCount(NamedTuple):
    count: int
    expected: float
    empirical: float
    deviation: float
    mid_range_ok: bool


def _dedupe_constraints(constraints, values, what):
    seen: dict[int, int] = {}
    for idx, val in constraints:
        if idx < 0:
            raise ValueError(f"{what} index must be >= 0, got {idx!r}")
        if val not in values:
            raise ValueError(f"invalid {what} digit {val!r}; allowed {values}")
        if idx in seen and seen[idx] != val:
            raise ValueError(f"contradictory duplicate {what} constraints at index {idx}")
        seen[idx] = val
    return sorted(seen.items())


def digit_constraint_count(N: int, K: int, parity: int,
                           base2=(), base3=(),
                           eta: float = DEFAULT_ETA,
                           chunk: int = SCAN_CHUNK) -> ConstraintCount:
    """Count n < N, n = parity mod 2, with prescribed binary digits of
    3**K * n and ternary digits of n.

    base2 is a sequence of (bit index, digit in {0,1}) on 3**K * n; base3
    a sequence of (trit index, digit in {0,1,2}) on n.  The empirical
    per-parity frequency count/(N/2) is compared against
    2**-d1 * 3**-d2.  Indices outside the middle of the expansions (the
    [L**eta, L - L**eta] band) only warn: the density statement is
    guaranteed there, not refuted elsewhere.
    """
    if N < 2 or K < 0:
        raise ValueError(f"need N >= 2 and K >= 0, got N={N!r}, K={K!r}")
    if parity not in (0, 1):
        raise ValueError(f"parity must be 0 or 1, got {parity!r}")
    b2 = _dedupe_constraints(base2, (0, 1), "base-2")
    b3 = _dedupe_constraints(base3, (0, 1, 2), "base-3")
    n1 = math.floor(math.log2(N * 3**K))
    n2 = math.floor(math.log(N) / math.log(3))
    mid_ok = all(n1**eta <= k <= n1 - n1**eta for k, _ in b2) and \
        all(n2**eta <= l <= n2 - n2**eta for l, _ in b3)
    if not mid_ok:
        warnings.warn("constraint index outside the mid-range band; the "
                      "density statement is not guaranteed there", stacklevel=2)
    mult = 3**K
    count = 0
    for start in range(0, N, chunk):
        stop = min(start + chunk, N)
        n = np.arange(start, stop, dtype=np.int64)
        keep = (n & 1) == parity
        m = n * mult
        for k, bval in b2:
            keep &= ((m >> k) & 1) == bval
        for l, cval in b3:
            keep &= (n // 3**l) % 3 == cval
        count += int(keep.sum())
    expected_freq = 2.0 ** -len(b2) * 3.0 ** -len(b3)
    empirical = count / (N / 2)
    return ConstraintCount(count, (N / 2) * expected_freq, empirical,
                           empirical - expected_freq, mid_ok)


class ExpSumResult(NamedTuple):
    value: complex
    alpha: Fraction
    alpha_distance: float
    bound: Optional[float]
    within_bound: Optional[bool]


def _phase_fraction(K: int, base2_pairs, base3_pairs) -> Fraction:
    alpha = Fraction(0)
    for k, h in base2_pairs:
        if k < 0:
            raise ValueError(f"bit index must be >= 0, got {k!r}")
        if h % 2 == 0:
            raise ValueError(f"base-2 coefficient must be odd, got {h!r}")
        alpha += Fraction(h, 2 ** (k + 1))
    alpha *= 3**K
    for l, r in base3_pairs:
        if l < 0:
            raise ValueError(f"trit index must be >= 0, got {l!r}")
        if r % 3 == 0:
            raise ValueError(f"base-3 coefficient must not be divisible by 3, got {r!r}")
        alpha += Fraction(r, 3 ** (l + 1))
    return alpha


def alpha_distance(K: int, base2_pairs=(), base3_pairs=()) -> float:
    """||2*alpha||: exact distance of twice the phase to the nearest integer."""
    two_alpha = 2 * _phase_fraction(K, base2_pairs, base3_pairs)
    frac = two_alpha - math.floor(two_alpha)
    return float(min(frac, 1 - frac))


def exp_sum(N: int, K: int, parity: int, base2_pairs=(), base3_pairs=(),
            chunk: int = SCAN_CHUNK) -> ExpSumResult:
    """S = sum of e(alpha*n) over n < N, n = parity mod 2, by direct
    summation, where alpha = 3**K * sum h_j/2**(k_j+1) + sum r_j/3**(l_j+1).

    The result carries ||2*alpha|| (computed in exact rational arithmetic)
    and the bound |S| <= 1/(2*||2*alpha||), flagged inapplicable when
    ||2*alpha|| = 0.
    """
    if N < 1:
        raise ValueError(f"need N >= 1, got {N!r}")
    if parity not in (0, 1):
        raise ValueError(f"parity must be 0 or 1, got {parity!r}")
    alpha = _phase_fraction(K, base2_pairs, base3_pairs)
    alpha_frac = alpha - math.floor(alpha)
    af = float(alpha_frac)
    total = 0j
    for start in range(parity, N, chunk):
        n = np.arange(start, min(start + chunk, N), dtype=np.int64)
        n = n[(n & 1) == parity]
        phases = np.exp(2j * np.pi * ((af * n) % 1.0))
        total += complex(phases.sum())
    dist = alpha_distance(K, base2_pairs, base3_pairs)
    if dist == 0.0:
        return ExpSumResult(total, alpha, 0.0, None, None)
    bound = 1.0 / (2.0 * dist)
    return ExpSumResult(total, alpha, dist, bound, abs(total) <= bound + 1e-6)


def star_discrepancy(points) -> float:
    """Exact star discrepancy of a finite point set in [0, 1)."""
    pts = sorted(float(x) for x in points)
    n = len(pts)
    if n == 0:
        raise ValueError("star discrepancy undefined for an empty point set")
    if pts[0] < 0.0 or pts[-1] >= 1.0:
        raise ValueError("points must lie in [0, 1)")
    worst = 0.0
    for j, x in enumerate(pts, start=1):
        worst = max(worst, j / n - x, x - (j - 1) / n)
    return worst


class MomentComparison(NamedTuple):
    empirical: float
    gaussian: float


def gaussian_moment(d: int) -> float:
    """Standard normal moment: (d-1)!! for even d, 0 for odd d."""
    if d < 0:
        raise ValueError(f"moment order must be >= 0, got {d!r}")
    if d % 2 == 1:
        return 0.0
    out = 1.0
    for k in range(d - 1, 1, -2):
        out *= k
    return out


def joint_moments(N: int, K: int, parity, d1: int, d2: int,
                  eta: float = DEFAULT_ETA,
                  chunk: int = SCAN_CHUNK) -> MomentComparison:
    """Normalized truncated joint moment of the digit-sum pair.

    Digit positions are truncated to the middle band [L**eta, L - L**eta]
    of each expansion; the truncated sums are centered at half resp. one
    unit per kept position and normalized by sqrt(log_2(N*3**K)/4) and
    sqrt(2*log_3(N)/3).  Compared against the product of standard normal
    moments.
    """
    if N < 2 or K < 0:
        raise ValueError(f"need N >= 2 and K >= 0, got N={N!r}, K={K!r}")
    _check_parity(parity)
    if not 0 < eta < 0.5:
        raise ValueError(f"eta must lie in (0, 1/2), got {eta!r}")
    if not (0 <= d1 <= 8 and 0 <= d2 <= 8):
        raise ValueError("moment orders up to 8 are supported")
    mult = 3**K
    n1 = math.floor(math.log2(N * mult))
    n2 = math.floor(math.log(N) / math.log(3))
    lo1, hi1 = math.ceil(n1**eta), math.floor(n1 - n1**eta)
    lo2, hi2 = math.ceil(n2**eta), math.floor(n2 - n2**eta)
    if hi1 < lo1 or hi2 < lo2:
        raise ValueError("truncation window is empty; N too small for this eta")
    len1 = hi1 - lo1 + 1
    len2 = hi2 - lo2 + 1
    norm1 = math.sqrt(0.25 * math.log2(N * mult))
    norm2 = math.sqrt((2.0 / 3.0) * math.log(N) / math.log(3))
    total = 0.0
    kept = 0
    p3lo = 3**lo2
    p3len = 3**len2
    for start in range(0, N, chunk):
        stop = min(start + chunk, N)
        w2, w3 = _window_sums(start, stop, mult, lo1, len1, p3lo, p3len)
        if parity != "both":
            keep = (np.arange(start, stop) & 1) == parity
            w2, w3 = w2[keep], w3[keep]
        x1 = (w2 - 0.5 * len1) / norm1
        x2 = (w3 - 1.0 * len2) / norm2
        total += float((x1**d1 * x2**d2).sum())
        kept += w2.shape[0]
    return MomentComparison(total / kept, gaussian_moment(d1) * gaussian_moment(d2))


def _window_sums(lo, hi, mult, b2lo, b2len, p3lo, p3len):
    if mult * (hi - 1) <= _kernels.I64_MAX:
        return _kernels.window_sums_range(lo, hi, mult, b2lo, b2len, p3lo, p3len)
    w2 = np.empty(hi - lo, dtype=np.int64)
    w3 = np.empty(hi - lo, dtype=np.int64)
    mask = (1 << b2len) - 1
    for i in range(hi - lo):
        n = lo + i
        w2[i] = ((n * mult >> b2lo) & mask).bit_count()
        v = (n // p3lo) % p3len
        s = 0
        while v:
            v, d = divmod(v, 3)
            s += d
        w3[i] = s
    return w2, w3
