"""Exact integer polynomials and certified real-root machinery.

Everything here works over Python integers and :class:`fractions.Fraction`;
no floating point is used anywhere, so results are bit-identical across
platforms.  Root counting uses Sturm chains built with a primitive
pseudo-remainder sequence (each remainder divided by its positive content).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from operator import index
from typing import Iterable, Sequence, Union

RationalLike = Union[int, Fraction]


class EndpointRootError(ValueError):
    """Raised by :func:`sturm_count` when an interval endpoint is a root."""

    def __init__(self, point: Fraction):
        super().__init__(f"polynomial vanishes at interval endpoint {point}")
        self.point = point


def _strip(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = [index(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPolynomial:
    """Dense univariate polynomial with integer coefficients, lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    @classmethod
    def from_roots(cls, roots: Iterable[RationalLike]) -> "IntPolynomial":
        """Primitive integer polynomial vanishing exactly at the given rationals."""
        p = cls((1,))
        for r in roots:
            r = Fraction(r)
            p = p * cls((-r.numerator, r.denominator))
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPolynomial((other,))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPolynomial((other,))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(tuple(other * x for x in self.coeffs))
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def __call__(self, x: RationalLike) -> Fraction:
        """Exact value at a rational point."""
        x = Fraction(x)
        num, den = x.numerator, x.denominator
        return Fraction(self._homogeneous(num, den), den ** max(self.degree, 0))

    def _homogeneous(self, num: int, den: int) -> int:
        # sum c_i num^i den^(d-i); same sign as p(num/den) since den > 0
        c = self.coeffs
        if not c:
            return 0
        acc = c[-1]
        pw = 1
        for ci in reversed(c[:-1]):
            pw *= den
            acc = acc * num + ci * pw
        return acc

    def sign_at(self, x: RationalLike) -> int:
        x = Fraction(x)
        v = self._homogeneous(x.numerator, x.denominator)
        return (v > 0) - (v < 0)

    def compose_affine(self, alpha: int, beta: int) -> "IntPolynomial":
        """Return p(alpha*t + beta)."""
        lin = IntPolynomial((beta, alpha))
        out = IntPolynomial()
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def reversed(self) -> "IntPolynomial":
        """t^deg * p(1/t)."""
        return IntPolynomial(tuple(reversed(self.coeffs)))

    def content(self) -> int:
        return gcd(*self.coeffs) if self.coeffs else 0

    def primitive(self) -> "IntPolynomial":
        """Divide by the content and make the leading coefficient positive."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return IntPolynomial(tuple(c // g for c in self.coeffs))

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial":
        """Quotient self/other, which must be exact with an integer result."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        r = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        q = [0] * max(len(r) - db, 0)
        for k in range(len(r) - 1, db - 1, -1):
            c, rem = divmod(r[k], b[-1])
            if rem:
                raise ValueError("inexact polynomial division")
            q[k - db] = c
            if c:
                for j, bj in enumerate(b):
                    r[k - db + j] -= c * bj
        if any(r):
            raise ValueError("inexact polynomial division")
        return IntPolynomial(q)

    def __floordiv__(self, other):
        return self.exact_div(other)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = "t" if i == 1 else f"t^{i}"
                body = mono if mag == 1 else f"{mag}{mono}"
            terms.append(("-" if c < 0 else "+", body))
        s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sgn, body in terms[1:]:
            s += f" {sgn} {body}"
        return s


def _as_poly(p) -> IntPolynomial:
    return p if isinstance(p, IntPolynomial) else IntPolynomial(tuple(p))


@dataclass(frozen=True)
class RationalInterval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval: lo={lo} > hi={hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, x: RationalLike) -> "RationalInterval":
        return cls(Fraction(x), Fraction(x))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_point(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "RationalInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def disjoint(self, other: "RationalInterval") -> bool:
        return self.hi < other.lo or other.hi < self.lo

    def __str__(self):
        if self.is_point():
            return f"[{self.lo}] (~{float(self.lo):.12g}, exact)"
        return f"[{self.lo}, {self.hi}] (~{float(self.midpoint):.12g})"


# -- gcd / Sturm -----------------------------------------------------------

def _prem_positive(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Pseudo-remainder of a by b scaled by |lc(b)|^(deg a - deg b + 1) > 0."""
    r = list(a)
    db = len(b) - 1
    lc = b[-1]
    s = 1 if lc > 0 else -1
    alc = abs(lc)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] * s
        r = [alc * x for x in r]
        if c:
            off = k - db
            for j, bj in enumerate(b):
                r[off + j] -= c * bj
        r.pop()
    while r and r[-1] == 0:
        r.pop()
    return r


def _positive_content_divide(r: list[int]) -> list[int]:
    g = gcd(*r)
    return [x // g for x in r] if g > 1 else r


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive gcd with positive leading coefficient (zero if both are zero)."""
    a, b = _as_poly(a), _as_poly(b)
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    x, y = list(a.primitive().coeffs), list(b.primitive().coeffs)
    if len(x) < len(y):
        x, y = y, x
    while y:
        r = _prem_positive(x, y)
        x, y = y, (_positive_content_divide(r) if r else r)
    return IntPolynomial(x).primitive()


def is_square_free(p: IntPolynomial) -> bool:
    p = _as_poly(p)
    if p.is_zero():
        raise ValueError("the zero polynomial has no square-free status")
    return poly_gcd(p, p.derivative()).degree == 0


def _sign_variations(polys: Sequence[IntPolynomial], x: Fraction) -> int:
    num, den = x.numerator, x.denominator
    prev = 0
    count = 0
    for q in polys:
        v = q._homogeneous(num, den)
        if v == 0:
            continue
        s = 1 if v > 0 else -1
        if prev and s != prev:
            count += 1
        prev = s
    return count


@dataclass(frozen=True)
class SturmChain:
    """Sturm sequence p, p', -rem, ... up to positive integer scalings."""

    polys: tuple[IntPolynomial, ...]

    @property
    def base(self) -> IntPolynomial:
        return self.polys[0]

    def variations(self, x: RationalLike) -> int:
        return _sign_variations(self.polys, Fraction(x))

    def count(self, lo: RationalLike, hi: RationalLike) -> int:
        """Distinct roots in the open interval (lo, hi); endpoints must not be roots."""
        lo, hi = Fraction(lo), Fraction(hi)
        p = self.base
        for e in (lo, hi):
            if p.sign_at(e) == 0:
                raise EndpointRootError(e)
        if lo >= hi:
            return 0
        return self.variations(lo) - self.variations(hi)


@lru_cache(maxsize=4096)
def sturm_chain(p: IntPolynomial) -> SturmChain:
    p = _as_poly(p)
    if p.is_zero():
        raise ValueError("Sturm chain of the zero polynomial")
    chain = [p]
    dp = p.derivative()
    if dp.is_zero():
        return SturmChain(tuple(chain))
    chain.append(dp)
    # positive contents do not change any sign; remove them before the remainder sequence
    x = _positive_content_divide(list(p.coeffs))
    y = _positive_content_divide(list(dp.coeffs))
    while True:
        r = _prem_positive(x, y)
        if not r:
            break
        r = [-c for c in _positive_content_divide(r)]
        chain.append(IntPolynomial(r))
        x, y = y, r
    return SturmChain(tuple(chain))


def sturm_count(p: IntPolynomial, interval: RationalInterval) -> int:
    """Number of distinct real roots of p in the open interval (lo, hi).

    Raises EndpointRootError if p vanishes at lo or hi.
    """
    return sturm_chain(_as_poly(p)).count(interval.lo, interval.hi)


def count_roots_open(p: IntPolynomial, lo: RationalLike, hi: RationalLike) -> int:
    """Like :func:`sturm_count` but tolerates roots sitting exactly on lo or hi."""
    p = _as_poly(p)
    lo, hi = Fraction(lo), Fraction(hi)
    if lo >= hi:
        return 0
    chain = sturm_chain(p)
    a, b = lo, hi
    if p.sign_at(lo) == 0:
        a = _step_off_root(chain, lo, hi, +1)
    if p.sign_at(hi) == 0:
        b = _step_off_root(chain, hi, lo, -1)
    if a >= b:
        return 0
    return chain.count(a, b)


def _step_off_root(chain: SturmChain, root: Fraction, toward: Fraction, direction: int) -> Fraction:
    # nearest non-root point on the given side with no other root in between
    p = chain.base
    eps = abs(toward - root) / 2
    while True:
        x = root + direction * eps
        y = root - direction * eps
        if p.sign_at(x) != 0 and p.sign_at(y) != 0:
            if chain.count(min(x, y), max(x, y)) == 1:
                return x
        eps /= 2


def cauchy_bound(p: IntPolynomial) -> Fraction:
    """1 + max |a_i| / |a_d|; every complex root has modulus strictly below it."""
    p = _as_poly(p)
    if p.degree < 1:
        return Fraction(1)
    lead = abs(p.leading)
    return 1 + Fraction(max(abs(c) for c in p.coeffs[:-1]), lead)


def isolate_real_roots(p: IntPolynomial) -> list[RationalInterval]:
    """Disjoint ascending isolating intervals, one per distinct real root.

    An interval is degenerate when bisection hit the root exactly.
    """
    p = _as_poly(p)
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    if p.degree < 1:
        return []
    if not is_square_free(p):
        raise ValueError("isolate_real_roots requires a square-free polynomial")
    return list(_isolate_cached(p))


@lru_cache(maxsize=4096)
def _isolate_cached(p: IntPolynomial) -> tuple[RationalInterval, ...]:
    chain = sturm_chain(p)
    bound = cauchy_bound(p)
    out: list[RationalInterval] = []
    stack = [(-bound, bound, chain.count(-bound, bound))]
    while stack:
        lo, hi, k = stack.pop()
        if k == 0:
            continue
        if k == 1:
            out.append(RationalInterval(lo, hi))
            continue
        mid = (lo + hi) / 2
        if p.sign_at(mid) == 0:
            out.append(RationalInterval.point(mid))
            eps = (hi - lo) / 4
            while True:
                a, b = mid - eps, mid + eps
                if p.sign_at(a) and p.sign_at(b) and chain.count(a, b) == 1:
                    break
                eps /= 2
            stack.append((lo, a, chain.count(lo, a)))
            stack.append((b, hi, chain.count(b, hi)))
        else:
            left = chain.count(lo, mid)
            stack.append((lo, mid, left))
            stack.append((mid, hi, k - left))
    out.sort(key=lambda iv: iv.lo)
    # neighbours may share a (non-root) bisection point; shrink until disjoint
    for i in range(len(out) - 1):
        while out[i].hi >= out[i + 1].lo:
            j = i if out[i].width >= out[i + 1].width else i + 1
            out[j] = refine_root(p, out[j], out[j].width / 2)
    return tuple(out)


def refine_root(p: IntPolynomial, iv: RationalInterval, width: RationalLike) -> RationalInterval:
    """Bisect an isolating interval of a simple root down to hi - lo <= width."""
    p = _as_poly(p)
    width = Fraction(width)
    lo, hi = iv.lo, iv.hi
    s_lo, s_hi = p.sign_at(lo), p.sign_at(hi)
    if s_lo == 0:
        return RationalInterval.point(lo)
    if s_hi == 0:
        return RationalInterval.point(hi)
    if iv.width <= width:
        return iv
    if s_lo == s_hi:
        raise ValueError(f"no sign change of p over {iv}; not an isolating interval of a simple root")
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = p.sign_at(mid)
        if s == 0:
            return RationalInterval.point(mid)
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return RationalInterval(lo, hi)


def largest_root_below(p: IntPolynomial, hi: RationalLike, width: RationalLike) -> RationalInterval:
    """Enclosure of the largest real root of p that is strictly below ``hi``.

    ``hi`` must not be a root.  Searches downward in doubling steps, then
    bisects until the largest root is isolated and refines it.
    """
    p = _as_poly(p)
    hi = Fraction(hi)
    if p.sign_at(hi) == 0:
        raise EndpointRootError(hi)
    bound = cauchy_bound(p)
    step = Fraction(1)
    lo = hi - step
    while count_roots_open(p, lo, hi) == 0:
        if p.sign_at(lo) == 0:
            return RationalInterval.point(lo)
        if lo < -bound:
            raise ValueError(f"p has no real root below {hi}")
        hi = lo
        step *= 2
        lo = hi - step
    # now at least one root in (lo, hi); shrink until exactly one remains on the right
    while True:
        k = count_roots_open(p, lo, hi)
        if k == 1 and p.sign_at(lo) != 0:
            return refine_root(p, RationalInterval(lo, hi), width)
        mid = (lo + hi) / 2
        right = count_roots_open(p, mid, hi)
        if right >= 1:
            lo = mid
        elif p.sign_at(mid) == 0:
            return RationalInterval.point(mid)
        else:
            hi = mid


def annulus_bounds(p: IntPolynomial) -> tuple[Fraction, Fraction]:
    """(min, max) of consecutive coefficient ratios a_i / a_{i+1}.

    For strictly positive coefficients all complex roots have modulus in
    [min, max].
    """
    p = _as_poly(p)
    if p.degree < 1:
        raise ValueError("annulus bounds need degree >= 1")
    if any(c <= 0 for c in p.coeffs):
        raise ValueError("annulus bounds need strictly positive coefficients")
    ratios = [Fraction(a, b) for a, b in zip(p.coeffs, p.coeffs[1:])]
    return min(ratios), max(ratios)
