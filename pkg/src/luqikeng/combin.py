"""Stirling numbers, Eulerian numbers and polynomials, rising factorials."""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb
from typing import Union

from .exactalg import IntPolynomial

_stirling_rows: list[list[int]] = [[1]]
_stirling_lock = threading.Lock()


def _stirling_row(n: int) -> list[int]:
    # rows are appended under the lock and never mutated afterwards
    if n < len(_stirling_rows):
        return _stirling_rows[n]
    with _stirling_lock:
        while len(_stirling_rows) <= n:
            prev = _stirling_rows[-1]
            i = len(_stirling_rows)
            row = [0] * (i + 1)
            for k in range(1, i + 1):
                row[k] = (k * prev[k] if k < len(prev) else 0) + prev[k - 1]
            _stirling_rows.append(row)
        return _stirling_rows[n]


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind S(n, k)."""
    if n < 0 or k < 0:
        raise ValueError("stirling2 needs nonnegative arguments")
    if k > n:
        return 0
    return _stirling_row(n)[k]


def eulerian_number(n: int, m: int) -> int:
    """A(n, m): permutations of n objects with m - 1 rises.

    Evaluated by the alternating sum over binomials; 1 <= m <= n.
    """
    if n < 1 or not 1 <= m <= n:
        raise ValueError(f"eulerian_number needs 1 <= m <= n, got n={n}, m={m}")
    return sum((-1) ** l * comb(n + 1, l) * (m - l) ** n for l in range(m + 1))


def eulerian_polynomial(n: int) -> IntPolynomial:
    """A_n(t) = sum_j A(n, j+1) t^j, so that Li_{-n}(t) = t A_n(t) / (1-t)^(n+1)."""
    if n < 1:
        raise ValueError("eulerian_polynomial needs n >= 1")
    return IntPolynomial(tuple(eulerian_number(n, j + 1) for j in range(n)))


def pochhammer(a: Union[int, Fraction], k: int) -> Union[int, Fraction]:
    """Rising factorial a (a+1) ... (a+k-1); (a)_0 = 1."""
    if k < 0:
        raise ValueError("pochhammer needs k >= 0")
    out = 1
    for i in range(k):
        out *= a + i
    return out
