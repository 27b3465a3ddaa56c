"""Double-precision evaluation of the Bergman kernel of D_{n,m}.

For (z, zeta), (z', zeta') in D_{n,m} = {||zeta||^2 < exp(-mu ||z||^2)}:

    K = mu^n / pi^(n+m) * exp(m mu <z,z'>) * A_{n,m}(t) / (1 - t)^(n+m+1),
    t = exp(mu <z,z'>) <zeta, zeta'>,

with <a, b> = sum a_i conj(b_i).  Membership of both points forces |t| < 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .exactalg import IntPolynomial
from .lukeng import AnmIndex, anm_recurrence, largest_root


class DomainError(ValueError):
    """A point lies outside D_{n,m}, or |t| >= 1."""


@dataclass(frozen=True)
class FBHPoint:
    z: tuple[complex, ...]
    zeta: tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "z", tuple(complex(x) for x in self.z))
        object.__setattr__(self, "zeta", tuple(complex(x) for x in self.zeta))


@dataclass(frozen=True)
class KernelPoint:
    index: AnmIndex
    mu: float
    p: FBHPoint
    q: FBHPoint

    def __post_init__(self):
        if not self.mu > 0:
            raise ValueError(f"mu must be positive, got {self.mu}")
        for pt in (self.p, self.q):
            _check_dims(self.index, pt)

    def swapped(self) -> "KernelPoint":
        return KernelPoint(self.index, self.mu, self.q, self.p)


def _check_dims(index: AnmIndex, p: FBHPoint):
    if len(p.z) != index.n or len(p.zeta) != index.m:
        raise ValueError(
            f"point has dimensions ({len(p.z)}, {len(p.zeta)}), expected ({index.n}, {index.m})"
        )


def inner(a: Sequence[complex], b: Sequence[complex]) -> complex:
    return sum((x * y.conjugate() for x, y in zip(a, b)), 0j)


def norm2(a: Sequence[complex]) -> float:
    return math.fsum(abs(x) ** 2 for x in a)


def membership_gap(index: AnmIndex, mu: float, p: FBHPoint) -> tuple[float, float]:
    """(||zeta||^2, exp(-mu ||z||^2)); the point is a member iff the first is smaller."""
    _check_dims(index, p)
    return norm2(p.zeta), math.exp(-mu * norm2(p.z))


def is_member(index: AnmIndex, mu: float, p: FBHPoint) -> bool:
    """Strict floating comparison ||zeta||^2 < exp(-mu ||z||^2); no tolerance."""
    lhs, rhs = membership_gap(index, mu, p)
    return lhs < rhs


def kernel_t(kp: KernelPoint) -> complex:
    return cmath.exp(kp.mu * inner(kp.p.z, kp.q.z)) * inner(kp.p.zeta, kp.q.zeta)


def prefactor(kp: KernelPoint) -> complex:
    n, m = kp.index.n, kp.index.m
    return kp.mu ** n / math.pi ** (n + m) * cmath.exp(m * kp.mu * inner(kp.p.z, kp.q.z))


def _checked_t(kp: KernelPoint) -> complex:
    for label, pt in (("p", kp.p), ("q", kp.q)):
        lhs, rhs = membership_gap(kp.index, kp.mu, pt)
        if not lhs < rhs:
            raise DomainError(
                f"{label} is not in D_{{{kp.index.n},{kp.index.m}}}: "
                f"||zeta||^2 = {lhs!r} is not < exp(-mu ||z||^2) = {rhs!r}"
            )
    t = kernel_t(kp)
    if not abs(t) < 1:
        raise DomainError(f"|t| = {abs(t)!r} >= 1")
    return t


def _horner(coeffs: Sequence[float], t: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _float_coeffs(p: IntPolynomial) -> list[float]:
    # float() raises OverflowError beyond double range rather than returning inf
    return [float(c) for c in p.coeffs]


def kernel_eval(kp: KernelPoint) -> complex:
    """Closed-form kernel value with the exact A_{n,m} coefficients rounded to double."""
    t = _checked_t(kp)
    n, m = kp.index.n, kp.index.m
    a = _float_coeffs(anm_recurrence(n, m))
    return prefactor(kp) * _horner(a, t) / (1 - t) ** (n + m + 1)


def kernel_scale(kp: KernelPoint) -> float:
    """|prefactor| * sum |a_i| |t|^i / |1 - t|^(n+m+1).

    This is the magnitude against which rounding in kernel_eval is measured;
    it equals |K| when t >= 0.
    """
    t = _checked_t(kp)
    n, m = kp.index.n, kp.index.m
    a = _float_coeffs(anm_recurrence(n, m))
    return abs(prefactor(kp)) * _horner(a, abs(t)).real / abs(1 - t) ** (n + m + 1)


def series_terms_needed(n: int, m: int, t_abs: float, rel_tol: float = 1e-30) -> int:
    """Number of terms after which the tail of sum (k+1)_m (k+m)^n |t|^k is below
    rel_tol times its largest term."""
    if t_abs == 0:
        return 1
    if not t_abs < 1:
        raise DomainError(f"|t| = {t_abs!r} >= 1")
    log_t = math.log(t_abs)

    def log_term(k):
        return math.lgamma(k + m + 1) - math.lgamma(k + 1) + n * math.log(k + m) + k * log_t

    peak = -math.inf
    k = 0
    while True:
        lt = log_term(k)
        peak = max(peak, lt)
        # term ratio at k is below rho < 1 once it is past the peak; bound the tail geometrically
        rho = (k + m + 1) / (k + 1) * ((k + m + 1) / (k + m)) ** n * t_abs
        if rho < 1 and lt - math.log1p(-rho) < peak + math.log(rel_tol):
            return k + 1
        k += 1


def kernel_series_eval(kp: KernelPoint, num_terms: int, dps: int = 50) -> complex:
    """Partial sum of sum_k (k+1)_m (k+m)^n t^k times the prefactor.

    The sum is accumulated in a private mpmath context at ``dps`` digits so
    that cancellation for t near the negative axis does not swamp the check.
    """
    t = _checked_t(kp)
    n, m = kp.index.n, kp.index.m
    ctx = mpmath.MPContext()
    ctx.dps = dps
    tt = ctx.mpc(t)
    total = ctx.mpc(0)
    pw = ctx.mpc(1)
    for k in range(num_terms):
        coeff = math.prod(range(k + 1, k + m + 1)) * (k + m) ** n
        total += coeff * pw
        pw *= tt
    return prefactor(kp) * complex(total)


def zero_witness(n: int, m: int, mu: float = 1.0) -> KernelPoint:
    """A member pair at which K vanishes, built from the root r of A_{n,m} in (-1, 0).

    z = z' = 0, zeta = (s, 0, ...), zeta' = (r/s, 0, ...), s^2 = (1 + |r|)/2,
    so <zeta, zeta'> = r.  Raises ValueError when D_{n,m} is Lu Qi-Keng.
    """
    index = AnmIndex(n, m)
    r_iv = largest_root(n, m, Fraction(1, 2**80))
    r = float(r_iv.midpoint)
    if not -1 < r < 0:
        raise ValueError(f"A_{n},{m} has no root in (-1, 0); D_{n},{m} is Lu Qi-Keng")
    s = math.sqrt((1 + abs(r)) / 2)
    zeros = (0j,) * n
    tail = (0j,) * (m - 1)
    p = FBHPoint(zeros, (complex(s),) + tail)
    q = FBHPoint(zeros, (complex(r / s),) + tail)
    return KernelPoint(index, mu, p, q)
