import random

import numpy as np
import pytest

from digitcollide import arithmetic as ar
from digitcollide.digits import digit_sums_block, valuation
from conftest import ref_s2, ref_s3


def test_legendre_examples():
    assert ar.legendre_valuation(10, 2) == 8      # 10! = 3628800
    assert ar.legendre_valuation(6, 3) == 2       # 720 = 2^4 * 3^2 * 5
    assert ar.legendre_valuation(0, 2) == 0
    with pytest.raises(ValueError):
        ar.legendre_valuation(10, 6)


def test_legendre_against_floor_sum():
    for p in (2, 3):
        for n in range(0, 3001):
            floor_sum = 0
            pk = p
            while pk <= n:
                floor_sum += n // pk
                pk *= p
            assert ar.legendre_valuation(n, p) == floor_sum


def test_legendre_against_direct_factorial():
    f = 1
    for n in range(1, 400):
        f *= n
        assert ar.legendre_valuation(n, 2) == valuation(f, 2)
        assert ar.legendre_valuation(n, 3) == valuation(f, 3)


def test_factorial_profile_examples():
    p = ar.factorial_profile(5)
    assert (p.nu2, p.nu3, p.nu12, p.last12) == (3, 1, 1, 10)   # 120 = A0 base 12
    p = ar.factorial_profile(6)
    assert (p.nu2, p.nu3, p.nu12, p.last12) == (4, 2, 2, 5)    # 720 = 500 base 12
    assert ar.factorial_profile(0).last12 == 1
    assert ar.factorial_profile(1).last12 == 1


def test_factorial_profile_fields_consistent():
    rng = random.Random(15)
    for _ in range(100):
        n = rng.randrange(0, 10**9)
        p = ar.factorial_profile(n)
        assert p.nu2 == n - ref_s2(n)
        assert p.nu3 == (n - ref_s3(n)) // 2
        assert p.nu12 == min(p.nu2 // 2, p.nu3)
        assert 1 <= p.last12 <= 11


def test_last12_fast_path_matches_direct():
    f = 1
    pw = 1  # 12**nu12 tracked incrementally
    nu12_prev = 0
    for n in range(2, 1200):
        f *= n
        nu12 = min((n - ref_s2(n)) // 2, (n - ref_s3(n)) // 2)
        pw *= 12 ** (nu12 - nu12_prev)
        nu12_prev = nu12
        assert ar.factorial_profile(n).last12 == f // pw % 12, n


def test_nu3_integrality_to_1e6():
    _, s3 = digit_sums_block(0, 10**6)
    n = np.arange(10**6, dtype=np.int64)
    assert ((n - s3) % 2 == 0).all()


def test_equivalence_examples():
    assert ar.equivalence_check(6) == (True, True, True, True, True)
    assert ar.equivalence_check(5) == (False, False, False, False, True)
    assert ar.equivalence_check(0) == (True, True, True, True, True)


def test_equivalence_all_agree_band():
    for n in range(20000):
        assert ar.equivalence_check(n).all_agree, n


def test_catalan_examples():
    assert ar.catalan_valuation(2, 2) == 1     # C_2 = 2
    assert ar.catalan_valuation(5, 3) == 1     # C_5 = 42
    assert ar.catalan_valuation(0, 2) == 0
    assert ar.catalan_valuation(0, 3) == 0
    with pytest.raises(ValueError):
        ar.catalan_valuation(5, 4)


def test_catalan_against_direct_factorization():
    c = 1
    for n in range(0, 500):
        if n:
            num = c * 2 * (2 * n - 1)
            c, r = divmod(num, n + 1)
            assert r == 0
        for p in (2, 3):
            direct = valuation(c, p) if c > 1 else 0
            assert ar.catalan_valuation(n, p) == direct, (n, p)


def test_catalan_classical_identity():
    # v_2(C_n) = s_2(n+1) - 1, an independent cross-check
    for n in range(10**4):
        assert ar.catalan_valuation(n, 2) == ref_s2(n + 1) - 1


def test_catalan_scan_examples():
    recs = list(ar.catalan_collision_scan(0, 10, require_positive=True))
    assert any(r.n == 5 for r in recs)
    for r in recs:
        assert r.nu2 == ar.catalan_valuation(r.n, 2)
        assert r.nu3 == ar.catalan_valuation(r.n, 3)
        assert r.nu2 == r.nu3 and r.nu2 > 0
    recs = list(ar.catalan_collision_scan(0, 2))
    assert recs[0].n == 0 and recs[0].nu2 == 0


def test_catalan_scan_weights():
    for r in ar.catalan_collision_scan(0, 20000, a=2, b=1):
        assert 2 * ar.catalan_valuation(r.n, 2) == ar.catalan_valuation(r.n, 3)


def test_catalan_scan_requires_valid_weights():
    with pytest.raises(ValueError):
        list(ar.catalan_collision_scan(0, 10, a=0))
