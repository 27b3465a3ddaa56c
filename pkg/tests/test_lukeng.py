from fractions import Fraction
from math import comb, factorial

import pytest

from luqikeng import lukeng
from luqikeng.combin import eulerian_polynomial
from luqikeng.exactalg import IntPolynomial, count_roots_open, isolate_real_roots
from luqikeng.lukeng import (
    AnmIndex,
    CapExceededError,
    Relation,
    anm_closed,
    anm_recurrence,
    anm_series_oracle,
    compute_m0,
    conjecture_probe,
    cross_recurrence_check,
    f_nearest,
    is_lu_qi_keng,
    largest_root,
    quotient_series,
    root_table,
    theorem_suite,
    verify_interlacing,
)

TABLE1 = [1, 3, 6, 8, 11, 14, 17, 20, 23, 26, 29, 32, 35, 38, 42]
TABLE2 = [1, 3, 6, 8, 11, 14, 17, 20, 23, 26, 30, 33, 37, 41, 44]


def test_index_validation():
    with pytest.raises(ValueError):
        AnmIndex(0, 1)
    with pytest.raises(ValueError):
        anm_recurrence(1, 0)


def test_anm_examples():
    assert anm_recurrence(1, 1) == IntPolynomial((1, 1))
    assert anm_recurrence(2, 1) == IntPolynomial((1, 4, 1))
    # 3(1+t) + (1-t) = 4 + 2t; the second derivative of t/(1-t)^2 is (4+2t)/(1-t)^4
    assert anm_recurrence(1, 2) == IntPolynomial((4, 2)) == anm_closed(1, 2)
    assert anm_closed(1, 1) == IntPolynomial((1, 1))
    assert anm_closed(2, 3) == anm_recurrence(2, 3)


def test_series_oracle_examples():
    assert anm_series_oracle(1, 1, 2)[0] == 1
    assert anm_series_oracle(2, 2, 3)[0] == 8
    # (1+t) * sum C(k+2,2) t^k, expanded by hand
    expanded = [comb(k + 2, 2) + (comb(k + 1, 2) if k >= 1 else 0) for k in range(10)]
    assert expanded == [(k + 1) ** 2 for k in range(10)] == anm_series_oracle(1, 1, 10)
    with pytest.raises(ValueError):
        anm_series_oracle(3, 1, 3)


def test_quotient_series_against_direct_division():
    # multiply back by (1-t)^N and compare with the polynomial
    p = anm_recurrence(3, 2)
    N = 6
    s = quotient_series(p, N, 20)
    back = IntPolynomial(tuple(s))
    for _ in range(N):
        back = back * IntPolynomial((1, -1))
    assert list(back.coeffs[:20]) == list(p.coeffs) + [0] * (20 - len(p.coeffs))


@pytest.mark.parametrize("n", range(1, 11))
def test_three_constructions_agree(n):
    for m in range(1, 11):
        p = anm_recurrence(n, m)
        assert p == anm_closed(n, m)
        assert quotient_series(p, n + m + 1, n + m + 5) == anm_series_oracle(n, m, n + m + 5)


def test_structure_of_anm():
    for n in range(1, 9):
        for m in range(1, 9):
            p = anm_recurrence(n, m)
            assert p.degree == n
            assert all(c > 0 for c in p.coeffs)
            assert p(1) == factorial(n + m)


def test_eulerian_bridge():
    for n in range(1, 13):
        assert anm_recurrence(n, 1) == eulerian_polynomial(n + 1)


def test_eulerian_has_root_in_unit_interval_from_three():
    for n in range(1, 13):
        has = count_roots_open(eulerian_polynomial(n), -1, 0) > 0
        assert has is (n >= 3)


@pytest.mark.parametrize("n, m", [(1, 1), (3, 2), (5, 4), (2, 7)])
def test_cross_recurrence(n, m):
    assert cross_recurrence_check(n, m)


def test_cross_recurrence_by_hand():
    t = IntPolynomial((0, 1))
    lhs = IntPolynomial((1, 4, 1))
    rhs = t * IntPolynomial((4, 2)) + IntPolynomial((1, -1)) * IntPolynomial((1, 1))
    assert lhs == rhs


def test_real_rooted_simple_negative():
    for n in range(1, 13):
        for m in range(1, 13):
            p = anm_recurrence(n, m)
            ivs = isolate_real_roots(p)
            assert len(ivs) == n
            assert count_roots_open(p, -10**12, 0) == n


# -- interlacing -----------------------------------------------------------

def test_interlacing_examples():
    assert verify_interlacing(IntPolynomial((2, -3, 1)), IntPolynomial((-3, 2))).relation is Relation.STRICTLY_INTERLACES
    rep = verify_interlacing(IntPolynomial((-1, 0, 1)), IntPolynomial((-4, 0, 1)))
    assert rep.relation is Relation.FAILS and "ordering" in rep.reason
    # A_{2,2} ≺ A_{2,1}
    rep = verify_interlacing(anm_recurrence(2, 1), anm_recurrence(2, 2))
    assert rep.relation is Relation.STRICTLY_ALTERNATES
    assert [w.owner for w in rep.witness] == ["g", "f", "g", "f"]


def test_interlacing_non_strict_and_degree_failures():
    f = IntPolynomial.from_roots([1, 2, 3])
    g = IntPolynomial.from_roots([1, Fraction(5, 2)])
    assert verify_interlacing(f, g).relation is Relation.INTERLACES
    g2 = IntPolynomial.from_roots([0, 2, Fraction(5, 2)])
    assert verify_interlacing(f, g2).relation is Relation.ALTERNATES
    g3 = IntPolynomial.from_roots([0])
    rep = verify_interlacing(f, g3)
    assert rep.relation is Relation.FAILS and "degree" in rep.reason
    # non-real roots
    rep = verify_interlacing(IntPolynomial((1, 0, 1)), IntPolynomial((0, 1)))
    assert rep.relation is Relation.FAILS
    with pytest.raises(ValueError):
        verify_interlacing(IntPolynomial((1, 2, 1)), IntPolynomial((1,)))


def test_interlacing_chains_on_grid():
    for n in range(1, 11):
        for m in range(1, 11):
            a = verify_interlacing(anm_recurrence(n, m), anm_recurrence(n, m + 1))
            assert a.relation is Relation.STRICTLY_ALTERNATES
            b = verify_interlacing(anm_recurrence(n + 1, m), anm_recurrence(n, m))
            assert b.relation is Relation.STRICTLY_INTERLACES


# -- verdicts and m_0 ------------------------------------------------------

def test_verdict_examples():
    v = is_lu_qi_keng(1, 1)
    assert v.is_lu_qi_keng and v.root_at_minus_one and v.roots_in_unit_interval == 0
    v = is_lu_qi_keng(2, 1)
    assert not v.is_lu_qi_keng and v.roots_in_unit_interval == 1
    # -2 + sqrt(3) = -0.2679491924...
    assert v.largest_root.lo <= Fraction(-2679491924, 10**10)
    assert v.largest_root.hi >= Fraction(-2679491925, 10**10)
    assert v.largest_root.width <= Fraction(1, 10**6)
    v = is_lu_qi_keng(2, 3)
    assert v.is_lu_qi_keng and v.root_at_minus_one  # r_{2,3} = -1 exactly


def test_largest_root_examples():
    assert largest_root(1, 1, Fraction(1, 100)) == largest_root(1, 1, 1) and -1 in largest_root(1, 1, 1)
    r = largest_root(2, 1, Fraction(1, 10**8))
    assert r.lo <= Fraction(-26794919, 10**8) <= r.hi + Fraction(1, 10**8)
    assert -2 in largest_root(1, 2, Fraction(1, 10**6))
    with pytest.raises(ValueError):
        largest_root(1, 1, 0)


def test_compute_m0_small():
    assert compute_m0(1).m0 == 1
    for n, expected in [(3, 6), (5, 11), (10, 26)]:
        c = compute_m0(n)
        assert c.m0 == expected
        assert all(not v.is_lu_qi_keng for v in c.below) and c.at.is_lu_qi_keng
        assert [v.index.m for v in c.below] == list(range(1, expected))


def test_compute_m0_cap(monkeypatch):
    with pytest.raises(CapExceededError):
        compute_m0(5, m_cap=10)
    monkeypatch.setenv("LUQIKENG_MCAP", "4")
    with pytest.raises(CapExceededError):
        compute_m0(3)
    assert lukeng.default_m_cap(3) == 4


def test_verdicts_consistent_with_m0():
    for n, m0 in enumerate(TABLE1, 1):
        for m in range(max(1, m0 - 3), m0 + 6):
            assert is_lu_qi_keng(n, m).is_lu_qi_keng is (m >= m0)


def test_m0_sweep_parallel_matches_serial():
    serial = [c.m0 for c in lukeng.m0_sweep(range(1, 7), jobs=1)]
    parallel = [c.m0 for c in lukeng.m0_sweep(range(1, 7), jobs=2)]
    assert serial == parallel == TABLE1[:6]


def test_root_table():
    rows = root_table(2, 1)
    assert [r.in_unit_interval for r in rows] == [False, True]
    (row,) = root_table(1, 1)
    assert row.interval.is_point() and row.interval.lo == -1 and not row.in_unit_interval
    assert not any(r.in_unit_interval for r in root_table(3, 6))


def test_theorem_suite_small():
    rep = theorem_suite(1, 1)
    assert rep.passed
    rep = theorem_suite(6, 6)
    assert rep.passed, rep.violations
    assert rep.m0 == dict(enumerate(TABLE1[:6], 1))


# -- conjectures -----------------------------------------------------------

def test_f_nearest_values():
    assert [f_nearest(n).value for n in range(1, 16)] == TABLE2
    f = f_nearest(6)
    assert f.lo <= Fraction(14) <= f.hi + 1 and f.hi - f.lo < Fraction(1, 2)


def test_f_nearest_reports_tie_when_undecided():
    f = f_nearest(40, max_terms=1)
    assert f.tie and f.value is None


def test_log_bounds_bracket_ln():
    import math
    for x in (2, 7, 16, 41):
        lo, hi = lukeng._log_bounds(x, 200)
        assert lo <= Fraction(math.log(x)) + Fraction(1, 10**12)
        assert hi >= Fraction(math.log(x)) - Fraction(1, 10**12)
        assert lo < hi


def test_conjecture_probe_table():
    rep = conjecture_probe(15)
    assert [r.m0 for r in rep.rows] == TABLE1
    assert [r.f.value for r in rep.rows] == TABLE2
    assert rep.equality_iff_small_n and rep.bound_holds and rep.strictly_increasing
    assert [r.diff for r in rep.rows[10:]] == [-1, -1, -2, -3, -2]
    r1 = rep.largest_roots[1]
    assert all(b.lo > a.hi for a, b in zip(r1, r1[1:]))  # drifts towards 0 in n
