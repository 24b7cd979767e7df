"""Effective Diophantine calculators: the linear-forms-in-logs bound, the
two-power gap probe, run-length suprema of M * 3**K, and the constructive
multiplier search that writes a prescribed bit block into A * 3**K.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, asdict
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from . import _kernels
from .digits import block_extract, run_profile
from .errors import BudgetExceeded, ConstructionFailed

RUN_SCAN_MAX_BITS = 26
_EXHAUSTIVE_KAPPA = 24


def baker_bound(log_heights, d: int, B: int) -> float:
    """U in the guaranteed inequality |a_1^b_1 ... a_n^b_n - 1| >= e^-U.

    U = 2**(6n+32) * n**(3n+6) * d**(n+2) * (1+log d) * (log B + log d)
        * prod(log_heights),
    with n = len(log_heights), field degree d, exponent bound B.
    """
    log_heights = list(log_heights)
    n = len(log_heights)
    if n < 1:
        raise ValueError("need at least one height")
    if d < 1 or B < 2:
        raise ValueError(f"need degree >= 1 and B >= 2, got d={d!r}, B={B!r}")
    if any(a < 1 for a in log_heights):
        raise ValueError("log heights must be >= 1")
    head = 2 ** (6 * n + 32) * n ** (3 * n + 6) * d ** (n + 2)
    tail = (1.0 + math.log(d)) * (math.log(B) + math.log(d))
    for a in log_heights:
        tail *= a
    if head.bit_length() <= 1000:
        return float(head) * tail
    log_u = math.log(head) + math.log(tail)
    return math.exp(log_u) if log_u < 709.0 else math.inf


class CorxGap(NamedTuple):
    gap: Fraction
    max_term: Fraction
    effective_C: float


def corx_gap(q1: int, q2: int, m1: int, m2: int,
             k0: int, k1: int, k2: int) -> CorxGap:
    """Exact gap |m1*q2**k0/q1**k1 + m2/q2**k2| with the smallest constant
    C making gap >= max_term * exp(-C * X) hold, where
    X = log q1 * log q2 * log(max(k1, k0+k2)) * log(max(|m1|, |m2|)).

    effective_C is 0 when the gap already exceeds max_term, and +inf when
    X = 0 (|m1| = |m2| = 1) yet the gap falls short: no finite constant
    rescues that boundary case.
    """
    if q1 < 2 or q2 < 2 or math.gcd(q1, q2) != 1:
        raise ValueError(f"need coprime bases > 1, got {q1!r}, {q2!r}")
    if m1 % q1 == 0:
        raise ValueError(f"m1 = {m1!r} must not be divisible by q1 = {q1}")
    if m2 % q2 == 0:
        raise ValueError(f"m2 = {m2!r} must not be divisible by q2 = {q2}")
    if min(k0, k1, k2) < 1:
        raise ValueError("exponents k0, k1, k2 must be >= 1")
    t1 = Fraction(m1 * q2**k0, q1**k1)
    t2 = Fraction(m2, q2**k2)
    gap = abs(t1 + t2)
    assert gap != 0, "zero gap impossible under the stated divisibility"
    max_term = max(abs(t1), abs(t2))
    if gap >= max_term:
        return CorxGap(gap, max_term, 0.0)
    x = (math.log(q1) * math.log(q2) * math.log(max(k1, k0 + k2))
         * math.log(max(abs(m1), abs(m2))))
    if x == 0.0:
        return CorxGap(gap, max_term, math.inf)
    return CorxGap(gap, max_term, math.log(max_term / gap) / x)


class RunSup(NamedTuple):
    sup: int
    argmax: int
    ratio: float


def sup_run_length(K: int, eta: float) -> RunSup:
    """Exhaustive sup over 1 <= M < 2**(eta*K) of the longest equal-bit
    run of M * 3**K, with the attaining M and the ratio sup/(eta*K)."""
    if K < 0 or eta < 0:
        raise ValueError("need K >= 0 and eta >= 0")
    bits = eta * K
    if bits > RUN_SCAN_MAX_BITS:
        raise BudgetExceeded(
            f"eta*K = {bits:.2f} exceeds the exhaustion budget of {RUN_SCAN_MAX_BITS} bits")
    base = 3**K
    m_hi = max(2, math.floor(2.0**bits))
    if base * (m_hi - 1) <= _kernels.I64_MAX:
        sup, arg = _kernels.max_run_scan(base, m_hi)
        sup, arg = int(sup), int(arg)
    else:
        sup, arg = 0, 1
        for m in range(1, m_hi):
            r = run_profile(m * base).max_run
            if r > sup:
                sup, arg = r, m
    return RunSup(sup, arg, sup / bits if bits > 0 else math.inf)


@dataclass
class EliminationWitness:
    """Multiplier A with block_extract(A * 3**K, a, b) = omega, A = d mod k,
    and 0 < A <= 4 * k**2 * 2**(2*eta*K + eps*K)."""

    A: int
    K: int
    a: int
    b: int
    omega: int
    d: int
    k: int
    eta: float
    eps: float

    def within_size_bound(self) -> bool:
        """A <= 4 * k**2 * 2**(2*eta*K + eps*K), compared in log2."""
        exponent = 2 * self.eta * self.K + self.eps * self.K
        return math.log2(self.A) <= math.log2(4 * self.k**2) + exponent + 1e-9

    def as_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True)


def verify_witness(w: EliminationWitness) -> bool:
    """Recheck every invariant of a witness from scratch."""
    return (w.A > 0
            and w.A % w.k == w.d
            and block_extract(w.A * 3**w.K, w.a, w.b) == w.omega
            and w.within_size_bound())


def witness_from_dict(obj: dict) -> EliminationWitness:
    return EliminationWitness(**{f: obj[f] for f in
                                 ("A", "K", "a", "b", "omega", "d", "k", "eta", "eps")})


def _convergent_denominators(p: int, q: int):
    """Denominators of the continued-fraction convergents of p/q."""
    dens = []
    h0, h1 = 1, 0
    while q:
        a, r = divmod(p, q)
        h0, h1 = h0 * a + h1, h0
        dens.append(h0)
        p, q = q, r
    return dens


def _certified_small_multiple(K: int, b: int, kappa: int) -> int:
    """C in [1, 2**kappa] with ||C * 3**K / 2**b|| < 2**-kappa, certified
    in exact integer arithmetic; continued-fraction convergents first,
    exhaustive scan as a fallback at small kappa."""
    pow2b = 1 << b
    base = 3**K

    def certified(c: int) -> bool:
        r = c * base % pow2b
        return min(r, pow2b - r) << kappa < pow2b

    best = None
    for den in _convergent_denominators(base % pow2b, pow2b):
        if den > 1 << kappa:
            break
        best = den
    if best is not None and certified(best):
        return best
    if kappa <= _EXHAUSTIVE_KAPPA:
        for c in range(1, (1 << kappa) + 1):
            if certified(c):
                return c
    raise ConstructionFailed("dirichlet",
                             f"no certified multiple C <= 2**{kappa} found")


@lru_cache(maxsize=32)
def _elimination_cycle(K: int, a: int, b: int, k: int, d: int):
    """Shared construction work for one (K, a, b, k, d): the shifted
    multiplier B and the map from attained block value to the smallest
    cycle index r."""
    m = k.bit_length()  # 2**(m-1) <= k < 2**m
    if a <= m:
        raise ConstructionFailed("margin", f"window base a={a} must exceed m={m}")
    kappa = b - a + m
    c_mult = _certified_small_multiple(K, b, kappa)
    base = 3**K
    low = c_mult * base % (1 << b)
    margin = 1 << (a - m)
    if low < margin:
        breaker = low  # digits [a-m, b) all zero; highest 1 below a-m
    elif low >= (1 << b) - margin:
        breaker = ~low & (margin - 1)  # all ones; highest 0 below a-m
    else:
        raise ConstructionFailed("dirichlet", "certified multiple lost its cleared window")
    if breaker == 0:
        raise ConstructionFailed("breaker",
                                 f"no digit below index {a - m} breaks the run")
    c_pos = breaker.bit_length() - 1
    shifted = (1 << (a - m - c_pos)) * c_mult
    step = k * shifted * base
    # r = 0 would give the zero multiplier when d = 0
    r_from = 1 if d == 0 else 0
    cycle: dict[int, int] = {}
    val = d * base + r_from * step
    for r in range(r_from, r_from + (1 << (b - a + 1))):
        blk = block_extract(val, a, b)
        if blk not in cycle:
            cycle[blk] = r
        val += step
    return shifted, cycle


def odd_eliminate(K: int, a: int, b: int, omega: int, d: int, k: int,
                  eta: float, eps: float) -> EliminationWitness:
    """Construct A = d mod k whose product with 3**K carries the block
    omega in bit window [a, b).

    Steps: (i) margin m with 2**(m-1) <= k < 2**m; (ii) a certified
    multiple C clearing the digits of C * 3**K on [a-m, b); (iii) shift
    the highest run-breaking digit up to a-m, giving B; (iv) walk
    r -> block of (r*k*B + d) * 3**K on [a, b) until omega appears.
    Raises ConstructionFailed naming the step when K is too small for
    the construction to go through.
    """
    if not 0 <= eps * K <= a or not a < b or not b <= a + eta * K:
        raise ValueError(
            f"window must satisfy eps*K <= a < b <= a + eta*K, got a={a}, b={b}")
    if not 0 <= omega < 1 << (b - a):
        raise ValueError(f"omega must lie in [0, 2**{b - a}), got {omega!r}")
    if not (k >= 1 and 0 <= d < k):
        raise ValueError(f"need 0 <= d < k with k >= 1, got d={d!r}, k={k!r}")
    shifted, cycle = _elimination_cycle(K, a, b, k, d)
    if omega not in cycle:
        raise ConstructionFailed("cycle", f"block {omega} never attained")
    A = cycle[omega] * k * shifted + d
    w = EliminationWitness(A, K, a, b, omega, d, k, eta, eps)
    if not verify_witness(w):
        raise ConstructionFailed("size-bound",
                                 f"witness A={A} fails re-verification or the size bound")
    return w
