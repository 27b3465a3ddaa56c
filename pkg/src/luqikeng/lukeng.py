"""Numerator polynomials A_{n,m}(t) of d^m/dt^m Li_{-n}(t) and the Lu Qi-Keng question.

The m-th derivative of the negative-order polylogarithm is written as

    d^m/dt^m Li_{-n}(t) = A_{n,m}(t) / (1 - t)^(n + m + 1),

and the Fock-Bargmann-Hartogs domain D_{n,m} is Lu Qi-Keng exactly when
A_{n,m} has no zero in the open unit disk.  Because A_{n,m} is real-rooted
with negative roots, that reduces to counting its roots in (-1, 0).
"""

from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .combin import eulerian_polynomial, pochhammer, stirling2
from .exactalg import (
    IntPolynomial,
    RationalInterval,
    annulus_bounds,
    cauchy_bound,
    count_roots_open,
    is_square_free,
    isolate_real_roots,
    largest_root_below,
    poly_gcd,
    refine_root,
)

DEFAULT_WIDTH = Fraction(1, 10**6)
ONE_MINUS_T = IntPolynomial((1, -1))
T = IntPolynomial((0, 1))


class CapExceededError(RuntimeError):
    """The m_0 search ran past its safety cap without finding a Lu Qi-Keng m."""

    def __init__(self, n: int, m_cap: int):
        super().__init__(f"m_0({n}) search exceeded the cap m <= {m_cap}")
        self.n = n
        self.m_cap = m_cap


@dataclass(frozen=True, order=True)
class AnmIndex:
    n: int
    m: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError(f"A_{{n,m}} needs n, m >= 1, got n={self.n}, m={self.m}")


# -- three constructions ---------------------------------------------------

@lru_cache(maxsize=None)
def _anm_recurrence(n: int, m: int) -> IntPolynomial:
    if m == 1:
        return eulerian_polynomial(n + 1)
    prev = _anm_recurrence(n, m - 1)
    return (n + m) * prev + ONE_MINUS_T * prev.derivative()


def anm_recurrence(n: int, m: int) -> IntPolynomial:
    """A_{n,m} from A_{n,1} = A_{n+1} and A_{n,m+1} = (n+m+1) A_{n,m} + (1-t) A_{n,m}'."""
    AnmIndex(n, m)
    # fill bottom-up so the cache never recurses deeply
    for k in range(1, m):
        _anm_recurrence(n, k)
    return _anm_recurrence(n, m)


@lru_cache(maxsize=None)
def anm_closed(n: int, m: int) -> IntPolynomial:
    """A_{n,m} = m! sum_j (-1)^(n+j) (m+1)_j S(n+1, j+1) (1-t)^(n-j)."""
    AnmIndex(n, m)
    out = IntPolynomial()
    power = IntPolynomial((1,))  # (1-t)^(n-j), built from j = n downwards
    for j in range(n, -1, -1):
        c = (-1) ** (n + j) * pochhammer(m + 1, j) * stirling2(n + 1, j + 1)
        out = out + c * power
        power = power * ONE_MINUS_T
    return math.factorial(m) * out


def anm_series_oracle(n: int, m: int, num_terms: int) -> list[int]:
    """Taylor coefficients (k+1)_m (k+m)^n of d^m/dt^m Li_{-n}(t) at t = 0."""
    AnmIndex(n, m)
    if num_terms < n + 1:
        raise ValueError("num_terms must be at least n + 1")
    return [pochhammer(k + 1, m) * (k + m) ** n for k in range(num_terms)]


def quotient_series(p: IntPolynomial, power: int, num_terms: int) -> list[int]:
    """First Taylor coefficients of p(t) / (1 - t)^power."""
    # 1/(1-t)^N = sum_k C(k+N-1, N-1) t^k
    return [
        sum(a * math.comb(k - i + power - 1, power - 1) for i, a in enumerate(p.coeffs) if i <= k)
        for k in range(num_terms)
    ]


def cross_recurrence_check(n: int, m: int) -> bool:
    """A_{n+1,m} == t A_{n,m+1} + m (1-t) A_{n,m}, exactly."""
    lhs = anm_recurrence(n + 1, m)
    rhs = T * anm_recurrence(n, m + 1) + m * (ONE_MINUS_T * anm_recurrence(n, m))
    return lhs == rhs


# -- interlacing -----------------------------------------------------------

class Relation(str, enum.Enum):
    STRICTLY_ALTERNATES = "strictly_alternates"
    STRICTLY_INTERLACES = "strictly_interlaces"
    ALTERNATES = "alternates"
    INTERLACES = "interlaces"
    FAILS = "fails"

    @property
    def strict(self) -> bool:
        return self in (Relation.STRICTLY_ALTERNATES, Relation.STRICTLY_INTERLACES)


@dataclass(frozen=True)
class WitnessRoot:
    interval: RationalInterval
    owner: str  # "f", "g" or "both"


@dataclass(frozen=True)
class InterlacingReport:
    relation: Relation
    witness: tuple[WitnessRoot, ...]
    reason: str = ""

    @property
    def f_roots(self) -> list[RationalInterval]:
        return [w.interval for w in self.witness if w.owner in ("f", "both")]

    @property
    def g_roots(self) -> list[RationalInterval]:
        return [w.interval for w in self.witness if w.owner in ("g", "both")]


def _owner_of(iv: RationalInterval, factors: Sequence[tuple[str, IntPolynomial]]) -> str:
    # the factors are pairwise coprime, so exactly one vanishes inside iv
    for tag, q in factors:
        if q.degree < 1:
            continue
        if iv.is_point():
            if q.sign_at(iv.lo) == 0:
                return tag
        elif q.sign_at(iv.lo) * q.sign_at(iv.hi) < 0:
            return tag
    raise AssertionError(f"no factor owns the root in {iv}")


def verify_interlacing(f: IntPolynomial, g: IntPolynomial) -> InterlacingReport:
    """Classify whether g alternates or interlaces f (the relation "g ≺ f").

    Both inputs must be nonzero and square-free.  Shared roots are found
    exactly through gcd(f, g), so every ordering decision is certified: the
    roots of f/h, g/h and h = gcd(f, g) are isolated together as roots of
    one square-free product and attributed by exact sign tests.
    """
    if f.is_zero() or g.is_zero():
        raise ValueError("verify_interlacing needs nonzero polynomials")
    for name, q in (("f", f), ("g", g)):
        if q.degree >= 1 and not is_square_free(q):
            raise ValueError(f"{name} is not square-free")
    h = poly_gcd(f, g)
    f1, g1 = f // h, g // h
    factors = (("f", f1), ("g", g1), ("both", h))
    product = f1 * g1 * h
    ivs = isolate_real_roots(product) if product.degree >= 1 else []
    witness = tuple(WitnessRoot(iv, _owner_of(iv, factors)) for iv in ivs)

    a_pos = [i for i, w in enumerate(witness) if w.owner in ("f", "both")]
    b_pos = [i for i, w in enumerate(witness) if w.owner in ("g", "both")]
    if len(a_pos) < f.degree:
        return InterlacingReport(Relation.FAILS, witness, f"f has {f.degree - len(a_pos)} non-real roots")
    if len(b_pos) < g.degree:
        return InterlacingReport(Relation.FAILS, witness, f"g has {g.degree - len(b_pos)} non-real roots")

    if f.degree == g.degree:
        chain = [x for pair in zip(b_pos, a_pos) for x in pair]
        labels = [x for i in range(1, f.degree + 1) for x in (f"b{i}", f"a{i}")]
        strict_rel, weak_rel = Relation.STRICTLY_ALTERNATES, Relation.ALTERNATES
    elif f.degree == g.degree + 1:
        chain = [a_pos[0]] + [x for pair in zip(b_pos, a_pos[1:]) for x in pair]
        labels = ["a1"] + [x for i in range(1, g.degree + 1) for x in (f"b{i}", f"a{i + 1}")]
        strict_rel, weak_rel = Relation.STRICTLY_INTERLACES, Relation.INTERLACES
    else:
        return InterlacingReport(
            Relation.FAILS, witness, f"degree condition fails: deg f = {f.degree}, deg g = {g.degree}"
        )
    for k in range(len(chain) - 1):
        if chain[k] > chain[k + 1]:
            return InterlacingReport(
                Relation.FAILS, witness, f"ordering violated: {labels[k]} > {labels[k + 1]}"
            )
    shared = any(w.owner == "both" for w in witness)
    return InterlacingReport(weak_rel if shared else strict_rel, witness)


# -- Lu Qi-Keng verdicts ---------------------------------------------------

@dataclass(frozen=True)
class LuQiKengVerdict:
    index: AnmIndex
    is_lu_qi_keng: bool
    roots_in_unit_interval: int
    largest_root: RationalInterval
    root_at_minus_one: bool


def largest_root_of(p: IntPolynomial, width=DEFAULT_WIDTH) -> RationalInterval:
    # positive coefficients: 0 is not a root and every real root is negative
    return largest_root_below(p, 0, width)


def largest_root(n: int, m: int, width=DEFAULT_WIDTH) -> RationalInterval:
    """Enclosure of r_{n,m}, the largest root of A_{n,m}, of width <= width."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    return largest_root_of(anm_recurrence(n, m), width)


def is_lu_qi_keng(n: int, m: int, width=DEFAULT_WIDTH) -> LuQiKengVerdict:
    """Decide whether D_{n,m} is a Lu Qi-Keng domain.

    Roots of A_{n,m} in the open disk are its roots in (-1, 0); a root at
    exactly -1 lies on the boundary and does not spoil the property.
    """
    idx = AnmIndex(n, m)
    p = anm_recurrence(n, m)
    at_minus_one = p.sign_at(-1) == 0
    count = count_roots_open(p, -1, 0)
    return LuQiKengVerdict(
        index=idx,
        is_lu_qi_keng=count == 0,
        roots_in_unit_interval=count,
        largest_root=largest_root_of(p, Fraction(width)),
        root_at_minus_one=at_minus_one,
    )


@dataclass(frozen=True)
class RootRow:
    interval: RationalInterval
    in_unit_interval: bool  # root lies in the open interval (-1, 0)


def root_table(n: int, m: int, width=DEFAULT_WIDTH) -> list[RootRow]:
    """All roots of A_{n,m}, ascending, each enclosed to the given width."""
    width = Fraction(width)
    p = anm_recurrence(n, m)
    rows = []
    for iv in isolate_real_roots(p):
        for edge in (-1, 0):
            if edge in iv and p.sign_at(edge) == 0:
                iv = RationalInterval.point(edge)
        iv = refine_root(p, iv, width)
        # an isolating interval of a root other than -1 and 0 shrinks away from both
        while iv.lo < -1 < iv.hi or iv.lo < 0 < iv.hi:
            iv = refine_root(p, iv, iv.width / 2)
        if iv.is_point():
            inside = -1 < iv.lo < 0
        else:
            inside = -1 <= iv.lo and iv.hi <= 0
        rows.append(RootRow(iv, inside))
    return rows


@dataclass(frozen=True)
class M0Certificate:
    n: int
    m0: int
    below: tuple[LuQiKengVerdict, ...]
    at: LuQiKengVerdict


def default_m_cap(n: int) -> int:
    env = os.environ.get("LUQIKENG_MCAP")
    if env:
        return int(env)
    return math.ceil(4 * (n + 1) * math.log(n + 1) + 16)


def compute_m0(n: int, m_cap: Optional[int] = None, width=DEFAULT_WIDTH) -> M0Certificate:
    """Least m with D_{n,m} Lu Qi-Keng, scanning m = 1, 2, ... upwards.

    r_{n,m} strictly decreases in m, so the first success is m_0(n).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    cap = default_m_cap(n) if m_cap is None else m_cap
    below = []
    for m in range(1, cap + 1):
        v = is_lu_qi_keng(n, m, width)
        if v.is_lu_qi_keng:
            return M0Certificate(n, m, tuple(below), v)
        below.append(v)
    raise CapExceededError(n, cap)


def _m0_worker(args):
    n, m_cap, width = args
    return compute_m0(n, m_cap, width)


def m0_sweep(ns: Sequence[int], jobs: int = 1, m_cap: Optional[int] = None,
             width=DEFAULT_WIDTH) -> list[M0Certificate]:
    """compute_m0 for several n, optionally in worker processes; ordered as ns."""
    tasks = [(n, m_cap, Fraction(width)) for n in ns]
    if jobs <= 1 or len(tasks) <= 1:
        return [_m0_worker(t) for t in tasks]
    # largest n first keeps the pool busy; results are re-keyed by n
    order = sorted(range(len(tasks)), key=lambda i: -tasks[i][0])
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        done = list(pool.map(_m0_worker, [tasks[i] for i in order]))
    out: list[Optional[M0Certificate]] = [None] * len(tasks)
    for i, cert in zip(order, done):
        out[i] = cert
    return out  # type: ignore[return-value]


# -- theorem suite ---------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    identity: str
    n: int
    m: int
    detail: str

    def __str__(self):
        return f"{self.identity} fails at (n={self.n}, m={self.m}): {self.detail}"


@dataclass
class SuiteReport:
    n_max: int
    m_max: int
    checks: dict[str, int] = field(default_factory=dict)
    violations: list[Violation] = field(default_factory=list)
    m0: dict[int, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def record(self, identity: str, ok: bool, n: int, m: int, detail: str = ""):
        self.checks[identity] = self.checks.get(identity, 0) + 1
        if not ok:
            self.violations.append(Violation(identity, n, m, detail))


def three_way_check(n: int, m: int, extra_terms: int = 5) -> tuple[bool, str]:
    """recurrence == closed form, and the Taylor series of both match (k+1)_m (k+m)^n."""
    rec = anm_recurrence(n, m)
    closed = anm_closed(n, m)
    if rec != closed:
        diff = [i for i in range(max(len(rec), len(closed))) if rec[i] != closed[i]]
        return False, f"recurrence != closed form at coefficient(s) {diff}"
    terms = n + m + extra_terms
    expected = anm_series_oracle(n, m, terms)
    got = quotient_series(rec, n + m + 1, terms)
    if got != expected:
        k = next(i for i, (x, y) in enumerate(zip(got, expected)) if x != y)
        return False, f"Taylor coefficient {k}: {got[k]} != {expected[k]}"
    return True, ""


def theorem_suite(n_max: int, m_max: int, with_three_way: bool = True,
                  jobs: int = 1) -> SuiteReport:
    """Check the structural theorems on the grid 1 <= n <= n_max, 1 <= m <= m_max.

    Violations are collected, never raised.
    """
    if n_max < 1 or m_max < 1:
        raise ValueError("bounds must be >= 1")
    rep = SuiteReport(n_max, m_max)
    roots: dict[tuple[int, int], list[RationalInterval]] = {}

    def root_list(n, m):
        if (n, m) not in roots:
            roots[(n, m)] = isolate_real_roots(anm_recurrence(n, m))
        return roots[(n, m)]

    for n in range(1, n_max + 1):
        for m in range(1, m_max + 1):
            p = anm_recurrence(n, m)
            if with_three_way:
                ok, why = three_way_check(n, m)
                rep.record("three_way_construction", ok, n, m, why)
            rep.record("degree_equals_n", p.degree == n, n, m, f"degree {p.degree}")
            rep.record("positive_coefficients", all(c > 0 for c in p.coeffs), n, m, str(p.coeffs))
            sf = is_square_free(p)
            rep.record("square_free", sf, n, m, "gcd(p, p') is not constant")
            if not sf:
                continue
            ivs = root_list(n, m)
            negative = count_roots_open(p, -cauchy_bound(p), 0) if p.sign_at(0) else -1
            rep.record("all_roots_real_negative", len(ivs) == n and negative == n, n, m,
                       f"{len(ivs)} real roots, {negative} in (-B, 0), expected {n}")
            if all(c > 0 for c in p.coeffs):
                lo, hi = annulus_bounds(p)
                # roots are negative, so |t| in [lo, hi] means t in [-hi, -lo]
                inside = count_roots_open(p, -hi, -lo) + (p.sign_at(-hi) == 0) + (
                    lo != hi and p.sign_at(-lo) == 0)
                rep.record("annulus_containment", inside == len(ivs), n, m,
                           f"{inside} of {len(ivs)} roots within [{lo}, {hi}]")

            # A_{n,m+1} ≺ A_{n,m}: A_{n,m+1} strictly alternates A_{n,m}
            q = anm_recurrence(n, m + 1)
            r1 = verify_interlacing(p, q)
            rep.record("alternation_in_m", r1.relation is Relation.STRICTLY_ALTERNATES, n, m,
                       f"A_{n},{m + 1} vs A_{n},{m}: {r1.relation.value} {r1.reason}")
            # A_{n,m} ≺ A_{n+1,m}: A_{n,m} strictly interlaces A_{n+1,m}
            s = anm_recurrence(n + 1, m)
            r2 = verify_interlacing(s, p)
            rep.record("interlacing_in_n", r2.relation is Relation.STRICTLY_INTERLACES, n, m,
                       f"A_{n},{m} vs A_{n + 1},{m}: {r2.relation.value} {r2.reason}")
            rep.record("cross_recurrence", cross_recurrence_check(n, m), n, m,
                       "A_{n+1,m} != t A_{n,m+1} + m(1-t) A_{n,m}")
            if r1.relation is not Relation.FAILS:
                ok = _largest_owner(r1) == "f"
                rep.record("largest_root_decreasing_in_m", ok, n, m, "r_{n,m+1} >= r_{n,m}")
            if r2.relation is not Relation.FAILS:
                ok = _largest_owner(r2) == "f"
                rep.record("largest_root_increasing_in_n", ok, n, m, "r_{n+1,m} <= r_{n,m}")

    certs = m0_sweep(range(1, n_max + 1), jobs=jobs)
    for c in certs:
        rep.m0[c.n] = c.m0
    for n in range(2, n_max + 1):
        rep.record("m0_nondecreasing", rep.m0[n] >= rep.m0[n - 1], n, rep.m0[n],
                   f"m0({n}) = {rep.m0[n]} < m0({n - 1}) = {rep.m0[n - 1]}")
    return rep


def _largest_owner(report: InterlacingReport) -> str:
    return report.witness[-1].owner


# -- conjecture probe ------------------------------------------------------

def _log_bounds(x: int, terms: int) -> tuple[Fraction, Fraction]:
    """Rigorous bounds on ln x for an integer x >= 1 via 2 atanh((x-1)/(x+1))."""
    y = Fraction(x - 1, x + 1)
    y2 = y * y
    s = Fraction(0)
    pw = y
    for k in range(terms):
        s += pw / (2 * k + 1)
        pw *= y2
    # the tail is bounded by a geometric series in y^2
    tail = pw / ((2 * terms + 1) * (1 - y2))
    return 2 * s, 2 * (s + tail)


@dataclass(frozen=True)
class NearestInt:
    n: int
    value: Optional[int]  # None when undecided (tie)
    lo: Fraction
    hi: Fraction

    @property
    def tie(self) -> bool:
        return self.value is None


def f_nearest(n: int, max_terms: int = 1 << 14) -> NearestInt:
    """Nearest integer to (n+1) ln(n+1), decided from a certified enclosure."""
    if n < 1:
        raise ValueError("n must be >= 1")
    x = n + 1
    terms = 16
    while True:
        a, b = _log_bounds(x, terms)
        lo, hi = x * a, x * b
        k_lo, k_hi = math.floor(lo + Fraction(1, 2)), math.floor(hi + Fraction(1, 2))
        if k_lo == k_hi and lo + Fraction(1, 2) != k_lo:
            return NearestInt(n, k_lo, lo, hi)
        if terms >= max_terms:
            return NearestInt(n, None, lo, hi)
        terms *= 2


@dataclass(frozen=True)
class ConjectureRow:
    n: int
    m0: int
    f: NearestInt
    strict_increase: Optional[bool]  # None for the first row

    @property
    def diff(self) -> Optional[int]:
        return None if self.f.tie else self.m0 - self.f.value


@dataclass
class ConjectureReport:
    rows: list[ConjectureRow]
    largest_roots: dict[int, list[RationalInterval]]  # m -> r_{n,m} for n = 1..n_max

    @property
    def bound_holds(self) -> bool:
        return all(r.diff is not None and r.diff <= 0 for r in self.rows)

    @property
    def equality_iff_small_n(self) -> bool:
        return all(r.diff is not None and (r.diff == 0) == (r.n <= 10) for r in self.rows)

    @property
    def strictly_increasing(self) -> bool:
        return all(r.strict_increase is not False for r in self.rows)

    @property
    def ties(self) -> list[int]:
        return [r.n for r in self.rows if r.f.tie]


def conjecture_probe(n_max: int, fixed_ms: Sequence[int] = (1, 2, 3), jobs: int = 1,
                     width=DEFAULT_WIDTH) -> ConjectureReport:
    """Tabulate m_0(n) against f(n) and the drift of r_{n,m} in n.

    Reports only; nothing here is asserted.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    certs = m0_sweep(range(1, n_max + 1), jobs=jobs, width=width)
    rows = []
    for i, c in enumerate(certs):
        inc = None if i == 0 else c.m0 > certs[i - 1].m0
        rows.append(ConjectureRow(c.n, c.m0, f_nearest(c.n), inc))
    trend = {m: [largest_root(n, m, width) for n in range(1, n_max + 1)] for m in fixed_ms}
    return ConjectureReport(rows, trend)
