from fractions import Fraction
from itertools import permutations
from math import factorial

import pytest

from luqikeng.combin import eulerian_number, eulerian_polynomial, pochhammer, stirling2
from luqikeng.exactalg import IntPolynomial, count_roots_open, is_square_free, isolate_real_roots


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def brute_stirling2(n, k):
    return sum(1 for p in set_partitions(list(range(n))) if len(p) == k)


def brute_eulerian(n, m):
    """Permutations of n objects with exactly m - 1 rises."""
    return sum(
        1 for p in permutations(range(n))
        if sum(p[i] < p[i + 1] for i in range(n - 1)) == m - 1
    )


def triangle_eulerian(n_max):
    # A(n,m) = (n-m+1) A(n-1,m-1) + m A(n-1,m)
    rows = {1: {1: 1}}
    for n in range(2, n_max + 1):
        prev = rows[n - 1]
        rows[n] = {m: (n - m + 1) * prev.get(m - 1, 0) + m * prev.get(m, 0) for m in range(1, n + 1)}
    return rows


def test_stirling_examples():
    assert stirling2(1, 1) == 1
    assert stirling2(4, 2) == 7 == brute_stirling2(4, 2)
    assert stirling2(5, 6) == 0
    assert stirling2(0, 0) == 1 and stirling2(3, 0) == 0 and stirling2(0, 2) == 0


@pytest.mark.parametrize("n", range(0, 8))
def test_stirling_matches_enumeration(n):
    assert [stirling2(n, k) for k in range(n + 1)] == [brute_stirling2(n, k) for k in range(n + 1)]


def test_stirling_boundary():
    for n in range(1, 40):
        assert stirling2(n, n) == 1 and stirling2(n, 1) == 1


def test_eulerian_examples():
    assert eulerian_number(3, 2) == 4
    assert eulerian_number(4, 2) == 11 and eulerian_number(4, 3) == 11
    # only the decreasing permutation has no rises
    assert all(eulerian_number(n, 1) == 1 for n in range(1, 11))
    assert all(brute_eulerian(n, 1) == 1 for n in range(1, 8))


@pytest.mark.parametrize("n", range(1, 8))
def test_eulerian_matches_permutation_count(n):
    assert [eulerian_number(n, m) for m in range(1, n + 1)] == [brute_eulerian(n, m) for m in range(1, n + 1)]


def test_eulerian_matches_triangle_recurrence():
    rows = triangle_eulerian(12)
    for n in range(1, 13):
        assert [eulerian_number(n, m) for m in range(1, n + 1)] == [rows[n][m] for m in range(1, n + 1)]


def test_eulerian_range_checked():
    with pytest.raises(ValueError):
        eulerian_number(3, 4)
    with pytest.raises(ValueError):
        eulerian_number(3, 0)


def test_eulerian_row_sum_and_symmetry():
    for n in range(1, 13):
        row = [eulerian_number(n, m) for m in range(1, n + 1)]
        assert sum(row) == factorial(n)
        assert row == row[::-1]


def test_eulerian_polynomial_examples():
    assert eulerian_polynomial(2) == IntPolynomial((1, 1))
    assert eulerian_polynomial(4) == IntPolynomial((1, 11, 11, 1))
    for n in range(1, 9):
        p = eulerian_polynomial(n)
        assert p.degree == n - 1
        assert p(1) == factorial(n)
        assert all(c > 0 for c in p.coeffs)


def test_eulerian_polynomials_are_real_rooted_negative():
    for n in range(2, 13):
        p = eulerian_polynomial(n)
        assert is_square_free(p)
        ivs = isolate_real_roots(p)
        assert len(ivs) == n - 1
        assert count_roots_open(p, -10**9, 0) == n - 1


def test_pochhammer():
    assert pochhammer(3, 0) == 1
    assert pochhammer(2, 3) == 24
    assert pochhammer(1 + 1, 3) == 24
    assert pochhammer(Fraction(1, 2), 2) == Fraction(3, 4)
