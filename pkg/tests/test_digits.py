import random

import numpy as np
import pytest

from digitcollide import digits
from conftest import ref_digit_sum, ref_s2, ref_s3


def test_to_digits_examples():
    assert digits.to_digits(0, 3) == []
    assert digits.to_digits(7, 3) == [1, 2]
    assert digits.to_digits(3**10, 3) == [0] * 10 + [1]


def test_to_digits_canonical_form():
    for n in (1, 5, 242, 3**7, 12**5 - 1):
        for q in (2, 3, 12):
            d = digits.to_digits(n, q)
            assert d == [] or d[-1] != 0
            assert all(0 <= x < q for x in d)


@pytest.mark.parametrize("q", [2, 3, 12])
def test_round_trip(q):
    values = list(range(0, 5000))
    values += list(range(5000, 10**6, 997))
    values += [10**6 - 1]
    for n in values:
        assert digits.from_digits(digits.to_digits(n, q), q) == n


def test_digit_sum_examples():
    assert digits.digit_sum(0, 2) == 0
    assert digits.digit_sum(7, 3) == 3
    assert digits.digit_sum(6, 2) == 2 and digits.digit_sum(6, 3) == 2


def test_least_collision_above_one_is_six():
    hits = [n for n in range(10)
            if ref_s2(n) == ref_s3(n) and n > 1]
    assert hits[0] == 6


def test_digit_sum_matches_reference():
    rng = random.Random(1)
    for _ in range(200):
        n = rng.randrange(10**12)
        for q in (2, 3, 12):
            assert digits.digit_sum(n, q) == ref_digit_sum(n, q)


def test_digit_at():
    assert digits.digit_at(6, 2, 1) == 1
    assert digits.digit_at(6, 2, 10) == 0
    assert digits.digit_at(3**7, 3, 7) == 1
    assert digits.digit_at(3**7, 3, 6) == 0


def test_block_extract_examples():
    assert digits.block_extract(0b110110, 1, 4) == 0b011
    n = 12345
    assert digits.block_extract(n, 0, n.bit_length()) == n
    assert digits.block_extract(n, 3, 3) == 0


def test_block_extract_partition_reassembles():
    rng = random.Random(2)
    for _ in range(100):
        n = rng.randrange(1, 10**15)
        bl = n.bit_length()
        cuts = sorted(rng.sample(range(1, bl), min(4, bl - 1)))
        bounds = [0] + cuts + [bl]
        total = sum(digits.block_extract(n, a, b) << a
                    for a, b in zip(bounds, bounds[1:]))
        assert total == n


def test_block_extract_errors():
    with pytest.raises(ValueError):
        digits.block_extract(5, 3, 1)


def test_run_profile_examples():
    assert digits.run_profile(243) == (4, 2)          # 11110011
    assert digits.run_profile(2**9) == (9, 1)
    assert digits.run_profile(0b10101) == (1, 3)
    assert digits.run_profile(1) == (1, 1)


def test_run_profile_reference():
    def ref(m):
        bits = bin(m)[2:]
        runs = []
        cur = bits[0]
        ln = 0
        for ch in bits:
            if ch == cur:
                ln += 1
            else:
                runs.append((cur, ln))
                cur, ln = ch, 1
        runs.append((cur, ln))
        return (max(ln for _, ln in runs),
                sum(1 for ch, _ in runs if ch == "1"))

    rng = random.Random(3)
    for _ in range(500):
        m = rng.randrange(1, 2**40)
        assert tuple(digits.run_profile(m)) == ref(m)


def test_run_profile_appending_zero_never_shrinks_max_run():
    for m in range(1, 2**16):
        assert digits.run_profile(2 * m).max_run >= digits.run_profile(m).max_run


def test_run_profile_zero_rejected():
    with pytest.raises(ValueError):
        digits.run_profile(0)


def test_valuation():
    assert digits.valuation(12, 2) == 2
    assert digits.valuation(12, 3) == 1
    assert digits.valuation(720, 2) == 4
    with pytest.raises(ValueError):
        digits.valuation(0, 2)
    with pytest.raises(ValueError):
        digits.valuation(10, 4)


def test_scan_examples():
    assert list(digits.scan_digit_sums(0, 4)) == [
        (0, 0, 0), (1, 1, 1), (2, 1, 2), (3, 2, 1)]
    assert list(digits.scan_digit_sums(6, 8)) == [(6, 2, 2), (7, 3, 3)]
    assert list(digits.scan_digit_sums(5, 5)) == []


def test_scan_multiplier_matches_pointwise():
    for n, s2, s3 in digits.scan_digit_sums(0, 2000, multiplier=9):
        assert s2 == digits.digit_sum(9 * n, 2)
        assert s3 == digits.digit_sum(n, 3)


def test_scan_matches_reference_on_random_points():
    rng = random.Random(4)
    for _ in range(300):
        n = rng.randrange(10**9)
        mult = rng.choice([1, 3, 9, 3**8])
        s2, s3 = digits.digit_sums_block(n, n + 1, mult)
        assert s2[0] == ref_s2(mult * n)
        assert s3[0] == ref_s3(n)


def test_scan_bignum_fallback_agrees():
    mult = 3**300
    s2, s3 = digits.digit_sums_block(17, 21, mult)
    for i, n in enumerate(range(17, 21)):
        assert s2[i] == ref_s2(mult * n)
        assert s3[i] == ref_s3(n)


def test_subadditivity_exhaustive_to_10k():
    limit = 10**4
    for q in (2, 3):
        table = np.array([ref_digit_sum(n, q) for n in range(2 * limit)],
                         dtype=np.int64)
        s = table[:limit]
        for m in range(0, limit, 64):
            block = np.arange(m, min(m + 64, limit))
            lhs = table[block[:, None] + np.arange(limit)[None, :]]
            rhs = s[block][:, None] + s[None, :]
            assert (lhs <= rhs).all()


def test_congruence_s3_mod2_to_1e6():
    _, s3 = digits.digit_sums_block(0, 10**6)
    n = np.arange(10**6, dtype=np.int64)
    assert ((s3 - n) % 2 == 0).all()


def test_invalid_base_rejected():
    for fn in (lambda: digits.to_digits(5, 1),
               lambda: digits.digit_sum(5, 0),
               lambda: digits.digit_at(5, 1, 0)):
        with pytest.raises(ValueError):
            fn()
