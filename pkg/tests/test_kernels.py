"""Backend parity: the numba kernels and the pure-numpy fallbacks must be
indistinguishable through every kernel entry point."""

import numpy as np
import pytest

from digitcollide import _kernels

pytestmark = pytest.mark.skipif(
    "numba" not in _kernels.IMPLS, reason="numba backend unavailable")


def both(name):
    return _kernels.IMPLS["numpy"][name], _kernels.IMPLS["numba"][name]


def test_digit_sums_parity():
    np_fn, nb_fn = both("digit_sums_range")
    for lo, hi, mult in ((0, 4096, 1), (100, 5000, 81), (0, 1000, 3**25)):
        a2, a3 = np_fn(lo, hi, mult)
        b2, b3 = nb_fn(lo, hi, mult)
        assert np.array_equal(a2, b2) and np.array_equal(a3, b3)


def test_window_sums_parity():
    np_fn, nb_fn = both("window_sums_range")
    a = np_fn(0, 3000, 9, 2, 7, 27, 3**5)
    b = nb_fn(0, 3000, 9, 2, 7, 27, 3**5)
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


def test_diff_counts_parity():
    np_fn, nb_fn = both("diff_counts")
    a = np_fn(0, 2**16, 37, np.zeros(129, dtype=np.int64))
    b = nb_fn(0, 2**16, 37, np.zeros(129, dtype=np.int64))
    assert np.array_equal(a, b)
    assert a.sum() == 2**16


def test_catalan_vals_parity():
    np_fn, nb_fn = both("catalan_vals_range")
    a = np_fn(0, 4096)
    b = nb_fn(0, 4096)
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


def test_max_run_scan_parity():
    np_fn, nb_fn = both("max_run_scan")
    for base, m_hi in ((3**5, 4), (3**12, 2**10), (3**20, 2**8)):
        assert np_fn(base, m_hi) == tuple(int(x) for x in nb_fn(base, m_hi))


def test_gowers_counts_parity():
    np_fn, nb_fn = both("gowers_counts")
    stable = np.array([bin(x).count("1") for x in range(16)], dtype=np.int64)
    size = 2 * (1 << 2) * 4 + 1
    a = np_fn(stable, 2, np.zeros(size, dtype=np.int64))
    b = nb_fn(stable, 2, np.zeros(size, dtype=np.int64))
    assert np.array_equal(a, b)
