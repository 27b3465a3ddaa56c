"""JSON output records with lossless exact values.

Integers are written as decimal strings, rationals as "p/q" strings (always
with an explicit denominator), so parsing reproduces the exact objects.
"""

from __future__ import annotations

import datetime as _dt
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Any, Optional, Union

from .exactalg import IntPolynomial, RationalInterval

SCHEMA_VERSION = "1.0"


def exact(x: Union[int, Fraction]) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return str(int(x))


def parse_exact(s: str) -> Union[int, Fraction]:
    if "/" in s:
        p, q = s.split("/")
        return Fraction(int(p), int(q))
    return int(s)


def decimal(x: Union[int, Fraction]) -> str:
    return f"{float(x):.12g}"


def polynomial_json(p: IntPolynomial) -> dict:
    return {"degree": p.degree, "coefficients": [exact(c) for c in p.coeffs]}


def parse_polynomial(d: dict) -> IntPolynomial:
    return IntPolynomial(tuple(int(c) for c in d["coefficients"]))


def interval_json(iv: RationalInterval) -> dict:
    return {
        "lo": exact(iv.lo),
        "hi": exact(iv.hi),
        "lo_decimal": decimal(iv.lo),
        "hi_decimal": decimal(iv.hi),
        "exact_point": iv.is_point(),
    }


def parse_interval(d: dict) -> RationalInterval:
    return RationalInterval(Fraction(parse_exact(d["lo"])), Fraction(parse_exact(d["hi"])))


def verdict_json(v) -> dict:
    return {
        "n": v.index.n,
        "m": v.index.m,
        "is_lu_qi_keng": v.is_lu_qi_keng,
        "roots_in_unit_interval": v.roots_in_unit_interval,
        "largest_root": interval_json(v.largest_root),
        "root_at_minus_one": v.root_at_minus_one,
    }


def certificate_json(c) -> dict:
    return {
        "n": c.n,
        "m0": c.m0,
        "below": [verdict_json(v) for v in c.below],
        "at": verdict_json(c.at),
    }


def utc_now() -> str:
    return _dt.datetime.now(_dt.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass
class OutputRecord:
    command: str
    inputs: dict[str, Any]
    results: Any
    schema_version: str = SCHEMA_VERSION
    generated_at: Optional[str] = None

    def to_dict(self) -> dict:
        d = {
            "schema_version": self.schema_version,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
        }
        if self.generated_at is not None:
            d["generated_at"] = self.generated_at
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "OutputRecord":
        d = json.loads(text)
        return cls(
            command=d["command"],
            inputs=d["inputs"],
            results=d["results"],
            schema_version=d["schema_version"],
            generated_at=d.get("generated_at"),
        )


def load_schema() -> dict:
    text = resources.files("luqikeng").joinpath("output_record.schema.json").read_text()
    return json.loads(text)
