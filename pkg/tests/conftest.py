"""Shared pure-python reference implementations, kept deliberately naive:
these are the oracles the fast paths are judged against."""

import pytest


def ref_digit_sum(n: int, q: int) -> int:
    s = 0
    while n:
        s += n % q
        n //= q
    return s


def ref_s2(n: int) -> int:
    return bin(n).count("1")


def ref_s3(n: int) -> int:
    return ref_digit_sum(n, 3)


@pytest.fixture(scope="session")
def pair_table_100k():
    """(s_2(n), s_3(n)) -> sorted list of n, for all n < 10**5, from scratch."""
    table = {}
    for n in range(10**5):
        key = (ref_s2(n), ref_s3(n))
        table.setdefault(key, []).append(n)
    return table
