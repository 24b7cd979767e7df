"""Shift correlations of the binary digit sum, exact and empirical.

gamma(t, theta) is the Cesaro mean of e(theta*s_2(n) - theta*s_2(n+t)).
The exact evaluator runs a carry recursion on the binary digits of t and
is release-gated by agreement with the brute-force finite average (see
tests); the brute force itself tallies the integer differences
s_2(n) - s_2(n+t) exactly and applies the complex phases only to the
final, at most 129-term, weighted sum.
"""

from __future__ import annotations

import cmath
import math
from typing import NamedTuple

import numpy as np

from . import _kernels
from .digits import run_profile
from .errors import BudgetExceeded

GOWERS_TERM_BUDGET = 10**9


def unit_phase(x: float) -> complex:
    """e(x) = exp(2*pi*i*x)."""
    return cmath.exp(2j * math.pi * x)


def theta_norm(theta: float) -> float:
    """Distance of theta to the nearest integer, in [0, 1/2]."""
    f = theta - math.floor(theta)
    return min(f, 1.0 - f)


def gamma_exact(t: int, theta: float) -> complex:
    """Exact limit correlation via the carry pair recursion.

    With G(t) = (gamma_t, gamma_{t+1}): appending a 0 to t keeps gamma_t,
    and the odd step mixes neighbours,
    gamma_{2t+1} = (e(-theta)*gamma_t + e(theta)*gamma_{t+1}) / 2;
    gamma_1 solves its own odd-step equation, giving
    gamma_1 = e(-theta) / (2 - e(theta)).
    """
    if not isinstance(t, int) or t < 0:
        raise ValueError(f"t must be a nonnegative integer, got {t!r}")
    ep = unit_phase(theta)
    em = unit_phase(-theta)
    lo = 1.0 + 0j
    hi = em / (2.0 - ep)
    if t == 0:
        return lo
    for bit in bin(t)[2:]:
        odd = 0.5 * (em * lo + ep * hi)
        if bit == "1":
            lo, hi = odd, hi
        else:
            lo, hi = lo, odd
    return lo


def gamma_bruteforce(t: int, theta: float, m: int) -> complex:
    """Finite average (1/m) * sum_{n<m} e(theta*(s_2(n) - s_2(n+t))).

    The integer differences are tallied exactly; truncation error
    relative to the limit is O(t/m).
    """
    if not isinstance(t, int) or t < 0:
        raise ValueError(f"t must be a nonnegative integer, got {t!r}")
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"sample count must be >= 1, got {m!r}")
    if m + t > _kernels.I64_MAX:
        raise ValueError("m + t exceeds the int64 scan range")
    counts = np.zeros(129, dtype=np.int64)
    chunk = 1 << 20
    for a in range(0, m, chunk):
        counts = _kernels.diff_counts(a, min(a + chunk, m), t, counts)
    ks = np.nonzero(counts)[0]
    total = 0j
    for k in ks:
        total += int(counts[k]) * unit_phase(theta * (int(k) - 64))
    return total / m


class TailCheck(NamedTuple):
    bound: float
    value_modulus: float
    passed: bool


def gamma_tail_check(t: int, theta: float) -> TailCheck:
    """Check |gamma(t, theta)| against the block-count tail bound.

    A shift with B maximal blocks of 1-bits admits the bound
    (1 - ||theta||^2 / 2) ** floor((B-1)/2).
    """
    if not isinstance(t, int) or t < 1:
        raise ValueError(f"tail check undefined for {t!r}; need t >= 1")
    blocks = run_profile(t).one_block_count
    m = (blocks - 1) // 2
    nrm = theta_norm(theta)
    bound = (1.0 - nrm * nrm / 2.0) ** m
    value = abs(gamma_exact(t, theta))
    return TailCheck(bound, value, value <= bound + 1e-9)


def _digit_sum_table(q: int, mu: int) -> np.ndarray:
    size = q**mu
    table = np.zeros(size, dtype=np.int64)
    x = np.arange(size, dtype=np.int64)
    while x.any():
        table += x % q
        x //= q
    return table


def gowers_correlation(q: int, order: int, theta: float, mu: int,
                       budget: int = GOWERS_TERM_BUDGET) -> complex:
    """Gowers-type box average of e(theta * s_q) on Z / q**mu Z.

    Averages the alternating product over all n and all shift tuples
    r in [0, q**mu)^order, digit sums taken mod q**mu (wraparound).
    Raises BudgetExceeded when q**((order+1)*mu) exceeds the term budget.
    """
    if not isinstance(q, int) or q < 2:
        raise ValueError(f"invalid base: need an integer >= 2, got {q!r}")
    if not isinstance(order, int) or order < 1:
        raise ValueError(f"order must be >= 1, got {order!r}")
    if not isinstance(mu, int) or mu < 1:
        raise ValueError(f"mu must be >= 1, got {mu!r}")
    terms = q**((order + 1) * mu)
    if terms > budget:
        raise BudgetExceeded(
            f"q**((order+1)*mu) = {terms} exceeds the {budget}-term budget")
    table = _digit_sum_table(q, mu)
    half = (1 << order) * mu * (q - 1)
    counts = np.zeros(2 * half + 1, dtype=np.int64)
    counts = _kernels.gowers_counts(table, order, counts)
    ks = np.nonzero(counts)[0]
    total = 0j
    for k in ks:
        total += int(counts[k]) * unit_phase(theta * (int(k) - half))
    return total / terms
