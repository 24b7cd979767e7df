"""Factorial and Catalan valuations through digit sums.

v_2(n!) = n - s_2(n) and v_3(n!) = (n - s_3(n))/2, so the last
significant base-12 digit of n! is computable without ever forming the
factorial: strip the 2s and 3s with two multiplicative recursions mod 4
and mod 3, CRT back together, and reinsert the leftover prime powers.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict
from typing import Iterator, NamedTuple

import numpy as np

from . import _kernels
from .digits import SCAN_CHUNK, digit_sum, is_prime

UNIT_DIGITS_12 = frozenset({1, 5, 7, 11})


def legendre_valuation(n: int, p: int) -> int:
    """v_p(n!) = (n - s_p(n)) / (p - 1), exactly."""
    if not is_prime(p):
        raise ValueError(f"need a prime base, got {p!r}")
    if n < 0:
        raise ValueError(f"need n >= 0, got {n!r}")
    return (n - digit_sum(n, p)) // (p - 1)


def _stripped_factorial_mod4(n: int) -> int:
    """(n! / 2**v_2(n!)) mod 4: odd residues below each halving level
    multiply to 3**floor((level+1)/4) mod 4."""
    r = 1
    while n > 1:
        if (n + 1) // 4 & 1:
            r = r * 3 % 4
        n //= 2
    return r


def _stripped_factorial_mod3(n: int) -> int:
    """(n! / 3**v_3(n!)) mod 3: full blocks {1,2} contribute 2 each."""
    r = 1
    while n > 1:
        r = r * pow(2, n // 3, 3) % 3
        if n % 3 == 2:
            r = r * 2 % 3
        n //= 3
    return r


def _crt_4_3(r4: int, r3: int) -> int:
    for x in range(12):
        if x % 4 == r4 and x % 3 == r3:
            return x
    raise AssertionError("unreachable")


@dataclass
class FactorialProfile:
    n: int
    nu2: int
    nu3: int
    nu12: int
    last12: int

    def as_dict(self) -> dict:
        return asdict(self)


def factorial_profile(n: int) -> FactorialProfile:
    """Valuations of n! at 2, 3 and 12, and its lowest nonzero base-12
    digit, computed by modular recursion (n! is never formed)."""
    if n < 0:
        raise ValueError(f"need n >= 0, got {n!r}")
    nu2 = legendre_valuation(n, 2)
    nu3 = legendre_valuation(n, 3)
    nu12 = min(nu2 // 2, nu3)
    e2 = nu2 - 2 * nu12
    e3 = nu3 - nu12
    core4 = _stripped_factorial_mod4(n)
    core3 = _stripped_factorial_mod3(n)
    # undo the 3s mod 4 and the 2s mod 3 (both self-inverse factors)
    m4 = core4 * pow(3, nu3 % 2, 4) % 4
    m3 = core3 * pow(2, nu2 % 2, 3) % 3
    m12 = _crt_4_3(m4, m3)
    last12 = pow(2, e2, 12) * pow(3, e3, 12) * m12 % 12
    return FactorialProfile(n, nu2, nu3, nu12, last12)


def last12_direct(n: int) -> int:
    """Reference path: lowest nonzero base-12 digit of n! via the full
    big-integer factorial.  Cross-check band only; O(n**2) bits."""
    f = 1
    for i in range(2, n + 1):
        f *= i
    nu12 = min((n - digit_sum(n, 2)) // 2, (n - digit_sum(n, 3)) // 2)
    return f // 12**nu12 % 12


class EquivalenceCheck(NamedTuple):
    collision: bool
    valuation_eq: bool
    exact_div: bool
    digit_in_set: bool
    all_agree: bool


def equivalence_check(n: int) -> EquivalenceCheck:
    """The four equivalent faces of a (2,3)-collision at n:
    s_2(n) = s_3(n); v_2(n!) = 2 v_3(n!); n! exactly divisible by a
    power of 12; last significant base-12 digit of n! a unit mod 12."""
    profile = factorial_profile(n)
    collision = digit_sum(n, 2) == digit_sum(n, 3)
    valuation_eq = profile.nu2 == 2 * profile.nu3
    exact_div = (profile.nu2 - 2 * profile.nu12 == 0
                 and profile.nu3 - profile.nu12 == 0)
    digit_in_set = profile.last12 in UNIT_DIGITS_12
    flags = (collision, valuation_eq, exact_div, digit_in_set)
    return EquivalenceCheck(*flags, all_agree=len(set(flags)) == 1)


def catalan_valuation(n: int, p: int) -> int:
    """v_p of the n-th Catalan number via carry counts of n + n in base p
    minus v_p(n + 1); never forms the number itself."""
    if not is_prime(p):
        raise ValueError(f"need a prime base, got {p!r}")
    if n < 0:
        raise ValueError(f"need n >= 0, got {n!r}")
    carries = (2 * digit_sum(n, p) - digit_sum(2 * n, p)) // (p - 1)
    succ = n + 1
    v = 0
    while succ % p == 0:
        succ //= p
        v += 1
    return carries - v


class CatalanRecord(NamedTuple):
    n: int
    nu2: int
    nu3: int


def catalan_collision_scan(lo: int, hi: int, a: int = 1, b: int = 1,
                           require_positive: bool = False,
                           chunk: int = SCAN_CHUNK) -> Iterator[CatalanRecord]:
    """All n in [lo, hi) with a*v_2(C_n) = b*v_3(C_n), ascending;
    require_positive drops the degenerate v_2 = v_3 = 0 solutions."""
    if a < 1 or b < 1:
        raise ValueError(f"weights must be >= 1, got a={a!r}, b={b!r}")
    if lo < 0 or hi < lo:
        raise ValueError(f"invalid range [{lo}, {hi})")
    for start in range(lo, hi, chunk):
        stop = min(start + chunk, hi)
        if 2 * (stop - 1) <= _kernels.I64_MAX:
            nu2, nu3 = _kernels.catalan_vals_range(start, stop)
        else:
            nu2 = np.array([catalan_valuation(n, 2) for n in range(start, stop)])
            nu3 = np.array([catalan_valuation(n, 3) for n in range(start, stop)])
        mask = a * nu2 == b * nu3
        if require_positive:
            mask &= nu2 + nu3 > 0
        for i in np.nonzero(mask)[0]:
            yield CatalanRecord(start + int(i), int(nu2[i]), int(nu3[i]))
