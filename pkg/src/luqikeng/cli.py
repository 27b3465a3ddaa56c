"""Command-line front end.

Exit status: 0 success, 1 verification failure, 2 usage or domain error,
3 the m_0 search hit its cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

from . import lukeng
from .exactalg import IntPolynomial
from .kernel import (
    DomainError,
    FBHPoint,
    KernelPoint,
    kernel_eval,
    kernel_scale,
    kernel_series_eval,
    kernel_t,
    series_terms_needed,
    zero_witness,
)
from .records import (
    OutputRecord,
    certificate_json,
    decimal,
    exact,
    interval_json,
    polynomial_json,
    utc_now,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

TABLE1_N = range(1, 16)


class UsageError(Exception):
    pass


@dataclass
class Output:
    results: Any
    header: list[str]
    rows: list[list[Any]]
    plain: list[str]
    status: int = EXIT_OK
    csv_text: Optional[str] = None  # overrides header/rows when set
    notes: list[str] = field(default_factory=list)


def _rational(s: str) -> Fraction:
    try:
        x = Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}")
    if x <= 0:
        raise argparse.ArgumentTypeError("width must be positive")
    return x


def _positive(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _coeff_list(s: str) -> IntPolynomial:
    parts = s.replace(",", " ").split()
    try:
        return IntPolynomial(tuple(int(x) for x in parts))
    except ValueError:
        raise argparse.ArgumentTypeError(f"coefficients must be integers: {s!r}")


def _iv_cells(iv) -> list[str]:
    return [exact(iv.lo), exact(iv.hi), decimal(iv.midpoint)]


def _fmt_iv(iv) -> str:
    if iv.is_point():
        return f"{exact(iv.lo)} (exact)"
    return f"[{exact(iv.lo)}, {exact(iv.hi)}] ~ {decimal(iv.midpoint)}"


# -- commands --------------------------------------------------------------

def cmd_anm(args) -> Output:
    p = lukeng.anm_recurrence(args.n, args.m)
    rows = [[i, exact(c)] for i, c in enumerate(p.coeffs)]
    return Output(
        results={"n": args.n, "m": args.m, "polynomial": polynomial_json(p)},
        header=["power", "coefficient"],
        rows=rows,
        plain=[" ".join(exact(c) for c in p.coeffs)],
    )


def cmd_roots(args) -> Output:
    table = lukeng.root_table(args.n, args.m, args.width)
    rows, plain, res = [], [], []
    for k, r in enumerate(table, 1):
        iv = r.interval
        rows.append([k] + _iv_cells(iv) + [iv.is_point(), r.in_unit_interval])
        flag = "  in (-1,0)" if r.in_unit_interval else ""
        plain.append(f"root {k}: {_fmt_iv(iv)}{flag}")
        res.append({"interval": interval_json(iv), "in_unit_interval": r.in_unit_interval})
    return Output(
        results={"n": args.n, "m": args.m, "roots": res,
                 "count_in_unit_interval": sum(r.in_unit_interval for r in table)},
        header=["k", "lo", "hi", "approx", "exact_hit", "in_unit_interval"],
        rows=rows,
        plain=plain,
    )


def _m0_rows(certs):
    rows, plain, res = [], [], []
    for c in certs:
        prev = c.below[-1].largest_root if c.below else None
        rows.append([c.n, c.m0] + _iv_cells(c.at.largest_root)
                    + (_iv_cells(prev) if prev else ["", "", ""]))
        line = f"n={c.n:<3d} m0={c.m0:<4d} r(n,m0)={_fmt_iv(c.at.largest_root)}"
        if prev:
            line += f"  r(n,m0-1)={_fmt_iv(prev)}"
        plain.append(line)
        res.append({
            "n": c.n,
            "m0": c.m0,
            "r_at_m0": interval_json(c.at.largest_root),
            "r_below_m0": interval_json(prev) if prev else None,
        })
    return rows, plain, res


def cmd_m0(args) -> Output:
    if args.n_from > args.n_to:
        raise UsageError("--n-from must not exceed --n-to")
    certs = lukeng.m0_sweep(range(args.n_from, args.n_to + 1), jobs=args.jobs, width=args.width)
    rows, plain, res = _m0_rows(certs)
    results: dict[str, Any] = {"rows": res}
    if args.certify:
        results["certificates"] = [certificate_json(c) for c in certs]
        for c in certs:
            plain.append(f"certificate n={c.n}: m=1..{c.m0 - 1} each have a root in (-1,0); "
                         f"m={c.m0} has none")
    return Output(
        results=results,
        header=["n", "m0", "r_m0_lo", "r_m0_hi", "r_m0_approx",
                "r_below_lo", "r_below_hi", "r_below_approx"],
        rows=rows,
        plain=plain,
    )


def cmd_table1(args) -> Output:
    certs = lukeng.m0_sweep(TABLE1_N, jobs=args.jobs, width=args.width)
    ns = [c.n for c in certs]
    m0s = [c.m0 for c in certs]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n"] + ns)
    w.writerow(["m_0(n)"] + m0s)
    width = max(len(str(x)) for x in ns + m0s)
    plain = [
        "n      | " + " ".join(f"{x:>{width}}" for x in ns),
        "m_0(n) | " + " ".join(f"{x:>{width}}" for x in m0s),
    ]
    return Output(
        results={"n": ns, "m0": m0s},
        header=[], rows=[], plain=plain, csv_text=buf.getvalue(),
    )


def _interlace_inputs(args) -> tuple[IntPolynomial, IntPolynomial, str]:
    if args.f is not None or args.g is not None:
        if args.f is None or args.g is None:
            raise UsageError("--f and --g must be given together")
        return args.f, args.g, "g vs f"
    if args.n is None or args.m is None:
        raise UsageError("give either --f/--g or --n/--m")
    n, m = args.n, args.m
    if args.step == "m":
        return (lukeng.anm_recurrence(n, m), lukeng.anm_recurrence(n, m + 1),
                f"A_{{{n},{m + 1}}} vs A_{{{n},{m}}}")
    return (lukeng.anm_recurrence(n + 1, m), lukeng.anm_recurrence(n, m),
            f"A_{{{n},{m}}} vs A_{{{n + 1},{m}}}")


def cmd_interlace(args) -> Output:
    f, g, label = _interlace_inputs(args)
    try:
        rep = lukeng.verify_interlacing(f, g)
    except ValueError as e:
        raise UsageError(str(e))
    rows = [[k] + _iv_cells(w.interval) + [w.owner] for k, w in enumerate(rep.witness, 1)]
    plain = [f"{label}: {rep.relation.value}" + (f" ({rep.reason})" if rep.reason else "")]
    plain += [f"  {w.owner:<4s} {_fmt_iv(w.interval)}" for w in rep.witness]
    return Output(
        results={
            "f": polynomial_json(f),
            "g": polynomial_json(g),
            "relation": rep.relation.value,
            "reason": rep.reason,
            "witness": [{"owner": w.owner, "interval": interval_json(w.interval)}
                        for w in rep.witness],
        },
        header=["k", "lo", "hi", "approx", "owner"],
        rows=rows,
        plain=plain,
        status=EXIT_OK if rep.relation is not lukeng.Relation.FAILS else EXIT_FAIL,
    )


def cmd_verify(args) -> Output:
    rep = lukeng.theorem_suite(args.n_max, args.m_max, with_three_way=True, jobs=args.jobs)
    rows = []
    plain = [f"grid 1 <= n <= {args.n_max}, 1 <= m <= {args.m_max}"]
    failed_by = {}
    for v in rep.violations:
        failed_by[v.identity] = failed_by.get(v.identity, 0) + 1
    for name, count in rep.checks.items():
        bad = failed_by.get(name, 0)
        rows.append([name, count, bad])
        plain.append(f"{'FAIL' if bad else 'ok  '} {name}: {count - bad}/{count}")
    for v in rep.violations:
        plain.append(f"VIOLATION {v}")
    plain.append("m0: " + " ".join(str(rep.m0[n]) for n in sorted(rep.m0)))
    plain.append("all checks passed" if rep.passed else f"{len(rep.violations)} violation(s)")
    return Output(
        results={
            "passed": rep.passed,
            "checks": rep.checks,
            "violations": [{"identity": v.identity, "n": v.n, "m": v.m, "detail": v.detail}
                           for v in rep.violations],
            "m0": {str(n): m for n, m in sorted(rep.m0.items())},
        },
        header=["identity", "checked", "failed"],
        rows=rows,
        plain=plain,
        status=EXIT_OK if rep.passed else EXIT_FAIL,
    )


def cmd_conjectures(args) -> Output:
    rep = lukeng.conjecture_probe(args.n_max, fixed_ms=args.fixed_m, jobs=args.jobs,
                                  width=args.width)
    rows, plain, res = [], [], []
    plain.append(f"{'n':>3} {'m0':>5} {'f':>5} {'m0-f':>5}  strict")
    for r in rep.rows:
        f = "tie" if r.f.tie else r.f.value
        diff = "" if r.diff is None else r.diff
        inc = "" if r.strict_increase is None else r.strict_increase
        rows.append([r.n, r.m0, f, diff, inc, r.f.tie])
        plain.append(f"{r.n:>3} {r.m0:>5} {f!s:>5} {diff!s:>5}  {inc}")
        res.append({
            "n": r.n, "m0": r.m0, "f": None if r.f.tie else r.f.value,
            "f_enclosure": {"lo": exact(r.f.lo), "hi": exact(r.f.hi),
                            "lo_decimal": decimal(r.f.lo), "hi_decimal": decimal(r.f.hi)},
            "diff": r.diff, "strict_increase": r.strict_increase, "tie": r.f.tie,
        })
    plain.append(f"m0(n) <= f(n) for all n <= {args.n_max}: {rep.bound_holds}")
    plain.append(f"m0(n) = f(n) exactly when n <= 10 (within range): {rep.equality_iff_small_n}")
    plain.append(f"m0 strictly increasing: {rep.strictly_increasing}")
    if rep.ties:
        plain.append(f"undecided nearest-integer ties at n = {rep.ties}")
    for m, ivs in rep.largest_roots.items():
        plain.append(f"r(n,{m}) for n=1..{args.n_max}: "
                     + " ".join(decimal(iv.midpoint) for iv in ivs))
    return Output(
        results={
            "rows": res,
            "summary": {
                "bound_holds": rep.bound_holds,
                "equality_iff_n_le_10": rep.equality_iff_small_n,
                "strictly_increasing": rep.strictly_increasing,
                "ties": rep.ties,
            },
            "largest_root_trend": {
                str(m): [interval_json(iv) for iv in ivs]
                for m, ivs in rep.largest_roots.items()
            },
        },
        header=["n", "m0", "f", "m0_minus_f", "strict_increase", "tie"],
        rows=rows,
        plain=plain,
    )


def _complex_vec(obj, name: str) -> list[complex]:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        return [complex(float(re), float(im)) for re, im in obj]
    except (TypeError, ValueError):
        raise UsageError(f"{name} must be a list of [re, im] pairs")


def _kernel_point(args) -> KernelPoint:
    idx = lukeng.AnmIndex(args.n, args.m)
    if args.witness:
        return zero_witness(args.n, args.m, args.mu)
    if args.points:
        with open(args.points) as fh:
            d = json.load(fh)
        mu = float(d.get("mu", args.mu))
        vals = [d.get(k) for k in ("z", "zeta", "z_prime", "zeta_prime")]
    else:
        mu = args.mu
        vals = [args.z, args.zeta, args.z_prime, args.zeta_prime]
    names = ("z", "zeta", "z_prime", "zeta_prime")
    defaults = ([0] * args.n, [0] * args.m)
    vecs = []
    for i, (name, v) in enumerate(zip(names, vals)):
        if v is None:
            vecs.append([complex(x) for x in defaults[i % 2]])
        else:
            vecs.append(_complex_vec(v, name))
    try:
        return KernelPoint(idx, mu, FBHPoint(vecs[0], vecs[1]), FBHPoint(vecs[2], vecs[3]))
    except ValueError as e:
        raise UsageError(str(e))


def _cx(z: complex) -> list[str]:
    return [repr(z.real), repr(z.imag)]


def cmd_kernel_eval(args) -> Output:
    try:
        kp = _kernel_point(args)
        k = kernel_eval(kp)
        scale = kernel_scale(kp)
    except DomainError as e:
        raise UsageError(f"domain error: {e}")
    except ValueError as e:
        raise UsageError(str(e))
    t = kernel_t(kp)
    results: dict[str, Any] = {"K": _cx(k), "t": _cx(t), "scale": repr(scale),
                               "relative_to_scale": repr(abs(k) / scale)}
    plain = [f"t = {t!r}", f"K = {k!r}", f"|K| / scale = {abs(k) / scale:.3e}"]
    rows = [["K", k.real, k.imag], ["t", t.real, t.imag]]
    if args.oracle:
        terms = args.terms or series_terms_needed(kp.index.n, kp.index.m, abs(t))
        ks = kernel_series_eval(kp, terms)
        rel = abs(k - ks) / scale
        results["oracle"] = {"K_series": _cx(ks), "terms": terms, "difference_relative": repr(rel)}
        plain.append(f"series oracle ({terms} terms) = {ks!r}, |diff| / scale = {rel:.3e}")
        rows.append(["K_series", ks.real, ks.imag])
    return Output(results=results, header=["quantity", "re", "im"], rows=rows, plain=plain)


# -- parser ----------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("plain", "json", "csv"), default=None)
    p.add_argument("--jobs", type=_positive, default=os.cpu_count() or 1,
                   help="worker processes for n-sweeps (default: logical CPUs)")
    p.add_argument("--width", type=_rational, default=lukeng.DEFAULT_WIDTH,
                   help="root enclosure width, e.g. 1/1000000 or 1e-6")
    p.add_argument("--no-timestamp", action="store_true",
                   help="omit generated_at from JSON output")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="luqikeng",
        description="Certified Lu Qi-Keng analysis of Fock-Bargmann-Hartogs domains.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("anm", parents=[common], help="coefficients of A_{n,m}")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--m", type=_positive, required=True)
    p.set_defaults(func=cmd_anm)

    p = sub.add_parser("roots", parents=[common], help="isolated roots of A_{n,m}")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--m", type=_positive, required=True)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("m0", parents=[common], help="threshold m_0(n) for a range of n")
    p.add_argument("--n-from", type=_positive, required=True)
    p.add_argument("--n-to", type=_positive, required=True)
    p.add_argument("--certify", action="store_true", help="emit full certificates")
    p.set_defaults(func=cmd_m0)

    p = sub.add_parser("table1", parents=[common], help="m_0(n) for n = 1..15 as a two-row table")
    p.set_defaults(func=cmd_table1, default_format="csv")

    p = sub.add_parser("interlace", parents=[common],
                       help="classify whether g alternates/interlaces f")
    p.add_argument("--f", type=_coeff_list, help="ascending integer coefficients of f")
    p.add_argument("--g", type=_coeff_list, help="ascending integer coefficients of g")
    p.add_argument("--n", type=_positive)
    p.add_argument("--m", type=_positive)
    p.add_argument("--step", choices=("m", "n"), default="m",
                   help="m: A_{n,m+1} vs A_{n,m}; n: A_{n,m} vs A_{n+1,m}")
    p.set_defaults(func=cmd_interlace)

    p = sub.add_parser("verify", parents=[common], help="run the theorem suite on a grid")
    p.add_argument("--n-max", type=_positive, required=True)
    p.add_argument("--m-max", type=_positive, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conjectures", parents=[common], help="compare m_0(n) with f(n)")
    p.add_argument("--n-max", type=_positive, required=True)
    p.add_argument("--fixed-m", type=_positive, nargs="+", default=[1, 2, 3],
                   help="m values for the r_{n,m} trend")
    p.set_defaults(func=cmd_conjectures)

    p = sub.add_parser("kernel-eval", parents=[common], help="evaluate the Bergman kernel")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--points", help="JSON file with mu, z, zeta, z_prime, zeta_prime")
    p.add_argument("--z", help='inline JSON, e.g. "[[0.1, 0.0]]"')
    p.add_argument("--zeta")
    p.add_argument("--z-prime")
    p.add_argument("--zeta-prime")
    p.add_argument("--witness", action="store_true",
                   help="use the constructed zero-witness pair")
    p.add_argument("--oracle", action="store_true", help="cross-check against the series")
    p.add_argument("--terms", type=_positive, help="series terms (default: adaptive)")
    p.set_defaults(func=cmd_kernel_eval)
    return parser


def render(out: Output, args, record: OutputRecord) -> str:
    fmt = args.format or getattr(args, "default_format", "plain")
    if fmt == "json":
        return record.to_json() + "\n"
    if fmt == "csv":
        if out.csv_text is not None:
            return out.csv_text
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(out.header)
        w.writerows(out.rows)
        return buf.getvalue()
    return "\n".join(out.plain) + "\n"


def _inputs(args) -> dict:
    skip = {"func", "format", "no_timestamp", "default_format", "jobs", "command"}
    d = {}
    for k, v in sorted(vars(args).items()):
        if k in skip:
            continue
        if isinstance(v, Fraction):
            v = exact(v)
        elif isinstance(v, IntPolynomial):
            v = [exact(c) for c in v.coeffs]
        d[k] = v
    return d


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if os.environ.get("LUQIKENG_MCAP"):
        try:
            int(os.environ["LUQIKENG_MCAP"])
        except ValueError:
            parser.error("LUQIKENG_MCAP must be an integer")
    try:
        out = args.func(args)
    except UsageError as e:
        print(f"{parser.prog} {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except lukeng.CapExceededError as e:
        print(f"{parser.prog} {args.command}: error: {e} "
              "(raise it with LUQIKENG_MCAP)", file=sys.stderr)
        return EXIT_CAP
    record = OutputRecord(
        command=args.command,
        inputs=_inputs(args),
        results=out.results,
        generated_at=None if args.no_timestamp else utc_now(),
    )
    sys.stdout.write(render(out, args, record))
    return out.status


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
