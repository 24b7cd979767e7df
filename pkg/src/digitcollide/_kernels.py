"""Hot scan kernels, JIT-compiled with a pure-numpy fallback.

Every scan in the package ultimately runs through one of these kernels on
int64 blocks (callers guarantee all intermediate values stay below 2**63
and fall back to big-integer loops otherwise).  Each kernel exists twice
with identical semantics:

* a numba ``@njit(nogil=True)`` version (default), and
* a vectorized pure-numpy version.

Set ``DIGITCOLLIDE_BACKEND=numpy`` to force the fallback path; the active
choice is exported as ``BACKEND``.  ``IMPLS`` maps backend name to the
full kernel set so benchmarks can time both in one process.
"""

from __future__ import annotations

import os

import numpy as np

_ENV_FLAG = "DIGITCOLLIDE_BACKEND"
_requested = os.environ.get(_ENV_FLAG, "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ValueError(f"{_ENV_FLAG} must be 'numba' or 'numpy', got {_requested!r}")

_HAVE_NUMBA = False
if _requested == "numba":
    try:
        import numba

        _HAVE_NUMBA = True
    except ImportError:
        pass

I64_MAX = (1 << 63) - 1


# ---------------------------------------------------------------------------
# pure-numpy implementations
# ---------------------------------------------------------------------------

def _digit_sums_range_np(lo, hi, mult):
    """(s_2(mult*n), s_3(n)) for n in [lo, hi), as int64 arrays."""
    n = np.arange(lo, hi, dtype=np.int64)
    s2 = np.bitwise_count(n * mult).astype(np.int64)
    s3 = np.zeros(n.shape[0], dtype=np.int64)
    v = n.copy()
    while v.any():
        s3 += v % 3
        v //= 3
    return s2, s3


def _window_sums_range_np(lo, hi, mult, b2lo, b2len, p3lo, p3len):
    """Windowed digit sums: bits [b2lo, b2lo+b2len) of mult*n and the
    ternary digits of n covered by the block (n // p3lo) % p3len."""
    n = np.arange(lo, hi, dtype=np.int64)
    mask = (1 << b2len) - 1
    w2 = np.bitwise_count(((n * mult) >> b2lo) & mask).astype(np.int64)
    w3 = np.zeros(n.shape[0], dtype=np.int64)
    v = (n // p3lo) % p3len
    while v.any():
        w3 += v % 3
        v //= 3
    return w2, w3


def _diff_counts_np(m_lo, m_hi, t, counts):
    """Accumulate counts of s_2(n) - s_2(n+t) + 64 for n in [m_lo, m_hi)."""
    n = np.arange(m_lo, m_hi, dtype=np.int64)
    d = (np.bitwise_count(n).astype(np.int64)
         - np.bitwise_count(n + t).astype(np.int64))
    counts += np.bincount(d + 64, minlength=129).astype(np.int64)
    return counts


def _catalan_vals_range_np(lo, hi):
    """(v_2(C_n), v_3(C_n)) for n in [lo, hi) via carry counts of n+n."""
    n = np.arange(lo, hi, dtype=np.int64)
    s2n = np.bitwise_count(n).astype(np.int64)
    s2_2n = np.bitwise_count(2 * n).astype(np.int64)
    s3n = np.zeros(n.shape[0], dtype=np.int64)
    s3_2n = np.zeros(n.shape[0], dtype=np.int64)
    v = n.copy()
    while v.any():
        s3n += v % 3
        v //= 3
    v = 2 * n
    while v.any():
        s3_2n += v % 3
        v //= 3
    succ = n + 1
    a2 = np.zeros(n.shape[0], dtype=np.int64)
    v = succ.copy()
    live = (v & 1) == 0
    while live.any():
        a2[live] += 1
        v[live] >>= 1
        live = (v & 1) == 0
    a3 = np.zeros(n.shape[0], dtype=np.int64)
    v = succ.copy()
    live = (v % 3) == 0
    while live.any():
        a3[live] += 1
        v[live] //= 3
        live = (v % 3) == 0
    nu2 = 2 * s2n - s2_2n - a2
    nu3 = (2 * s3n - s3_2n) // 2 - a3
    return nu2, nu3


def _bitlen_np(x):
    """Exact bit length of positive int64 values (guess via log2, then fix)."""
    bl = np.floor(np.log2(x.astype(np.float64))).astype(np.int64) + 1
    too_big = (x >> (bl - 1)) == 0
    bl[too_big] -= 1
    too_small = (x >> bl) != 0
    bl[too_small] += 1
    return bl


def _ones_run_np(x):
    """Longest run of 1-bits per element."""
    run = np.zeros(x.shape[0], dtype=np.int64)
    r = x.copy()
    while r.any():
        run += r != 0
        r &= r >> 1
    return run


def _max_run_scan_np(base, m_hi):
    """sup and argmax over 1 <= M < m_hi of the longest equal-bit run of M*base."""
    sup = 0
    arg = 1
    chunk = 1 << 18
    for start in range(1, m_hi, chunk):
        stop = min(start + chunk, m_hi)
        x = np.arange(start, stop, dtype=np.int64) * base
        r1 = _ones_run_np(x)
        bl = _bitlen_np(x)
        z = ~x & ((1 << (bl - 1)) - 1)
        r0 = _ones_run_np(z)
        r = np.maximum(r1, r0)
        i = int(np.argmax(r))
        if int(r[i]) > sup:
            sup = int(r[i])
            arg = start + i
    return sup, arg


def _gowers_counts_np(stable, order, counts):
    """Counts of the alternating digit-sum combination over all (n, r) boxes.

    stable[x] holds s_q(x) for x < size; for each shift tuple r in
    [0, size)^order and each n, the integer E = sum over eps in {0,1}^order
    of (-1)^|eps| * stable[(n + eps.r) % size] is tallied at counts[E+off]
    with off = (len(counts)-1)//2.
    """
    size = stable.shape[0]
    off = (counts.shape[0] - 1) // 2
    n = np.arange(size, dtype=np.int64)
    signs = []
    for eps in range(1 << order):
        signs.append(-1 if bin(eps).count("1") & 1 else 1)
    r = [0] * order
    while True:
        e_vec = np.zeros(size, dtype=np.int64)
        for eps in range(1 << order):
            shift = 0
            for bit in range(order):
                if (eps >> bit) & 1:
                    shift += r[bit]
            e_vec += signs[eps] * stable[(n + shift) % size]
        counts += np.bincount(e_vec + off, minlength=counts.shape[0]).astype(np.int64)
        idx = 0
        while idx < order:
            r[idx] += 1
            if r[idx] < size:
                break
            r[idx] = 0
            idx += 1
        if idx == order:
            return counts


_NP_IMPL = {
    "digit_sums_range": _digit_sums_range_np,
    "window_sums_range": _window_sums_range_np,
    "diff_counts": _diff_counts_np,
    "catalan_vals_range": _catalan_vals_range_np,
    "max_run_scan": _max_run_scan_np,
    "gowers_counts": _gowers_counts_np,
}


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if _HAVE_NUMBA:
    from numba import njit

    @njit(cache=True, nogil=True)
    def _digit_sums_range_nb(lo, hi, mult):
        count = hi - lo
        s2 = np.empty(count, np.int64)
        s3 = np.empty(count, np.int64)
        for i in range(count):
            m = (lo + i) * mult
            c = 0
            while m:
                m &= m - 1
                c += 1
            s2[i] = c
            v = lo + i
            c = 0
            while v:
                c += v % 3
                v //= 3
            s3[i] = c
        return s2, s3

    @njit(cache=True, nogil=True)
    def _window_sums_range_nb(lo, hi, mult, b2lo, b2len, p3lo, p3len):
        count = hi - lo
        w2 = np.empty(count, np.int64)
        w3 = np.empty(count, np.int64)
        mask = (1 << b2len) - 1
        for i in range(count):
            m = (((lo + i) * mult) >> b2lo) & mask
            c = 0
            while m:
                m &= m - 1
                c += 1
            w2[i] = c
            v = ((lo + i) // p3lo) % p3len
            c = 0
            while v:
                c += v % 3
                v //= 3
            w3[i] = c
        return w2, w3

    @njit(cache=True, nogil=True)
    def _diff_counts_nb(m_lo, m_hi, t, counts):
        for n in range(m_lo, m_hi):
            a = n
            c = 0
            while a:
                a &= a - 1
                c += 1
            b = n + t
            while b:
                b &= b - 1
                c -= 1
            counts[c + 64] += 1
        return counts

    @njit(cache=True, nogil=True)
    def _catalan_vals_range_nb(lo, hi):
        count = hi - lo
        nu2 = np.empty(count, np.int64)
        nu3 = np.empty(count, np.int64)
        for i in range(count):
            n = lo + i
            m = n
            s2n = 0
            while m:
                m &= m - 1
                s2n += 1
            m = 2 * n
            s2_2n = 0
            while m:
                m &= m - 1
                s2_2n += 1
            v = n
            s3n = 0
            while v:
                s3n += v % 3
                v //= 3
            v = 2 * n
            s3_2n = 0
            while v:
                s3_2n += v % 3
                v //= 3
            t = n + 1
            a2 = 0
            while t & 1 == 0:
                a2 += 1
                t >>= 1
            t = n + 1
            a3 = 0
            while t % 3 == 0:
                a3 += 1
                t //= 3
            nu2[i] = 2 * s2n - s2_2n - a2
            nu3[i] = (2 * s3n - s3_2n) // 2 - a3
        return nu2, nu3

    @njit(cache=True, nogil=True)
    def _max_run_scan_nb(base, m_hi):
        sup = 0
        arg = 1
        for m in range(1, m_hi):
            x = m * base
            r1 = 0
            y = x
            while y != 0:
                y &= y >> 1
                r1 += 1
            bl = 0
            y = x
            while y != 0:
                y >>= 1
                bl += 1
            z = ~x & ((1 << (bl - 1)) - 1)
            r0 = 0
            while z != 0:
                z &= z >> 1
                r0 += 1
            r = r1 if r1 > r0 else r0
            if r > sup:
                sup = r
                arg = m
        return sup, arg

    @njit(cache=True, nogil=True)
    def _gowers_counts_nb(stable, order, counts):
        size = stable.shape[0]
        off = (counts.shape[0] - 1) // 2
        r = np.zeros(order, np.int64)
        while True:
            for n in range(size):
                e_val = 0
                for eps in range(1 << order):
                    x = n
                    for bit in range(order):
                        if (eps >> bit) & 1:
                            x += r[bit]
                    s = stable[x % size]
                    p = eps
                    odd = 0
                    while p:
                        odd ^= 1
                        p &= p - 1
                    if odd:
                        e_val -= s
                    else:
                        e_val += s
                counts[e_val + off] += 1
            idx = 0
            while idx < order:
                r[idx] += 1
                if r[idx] < size:
                    break
                r[idx] = 0
                idx += 1
            if idx == order:
                return counts

    _NB_IMPL = {
        "digit_sums_range": _digit_sums_range_nb,
        "window_sums_range": _window_sums_range_nb,
        "diff_counts": _diff_counts_nb,
        "catalan_vals_range": _catalan_vals_range_nb,
        "max_run_scan": _max_run_scan_nb,
        "gowers_counts": _gowers_counts_nb,
    }
    IMPLS = {"numpy": _NP_IMPL, "numba": _NB_IMPL}
    BACKEND = "numba"
    _ACTIVE = _NB_IMPL
else:
    IMPLS = {"numpy": _NP_IMPL}
    BACKEND = "numpy"
    _ACTIVE = _NP_IMPL

digit_sums_range = _ACTIVE["digit_sums_range"]
window_sums_range = _ACTIVE["window_sums_range"]
diff_counts = _ACTIVE["diff_counts"]
catalan_vals_range = _ACTIVE["catalan_vals_range"]
max_run_scan = _ACTIVE["max_run_scan"]
gowers_counts = _ACTIVE["gowers_counts"]
