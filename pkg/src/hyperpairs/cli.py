"""Command-line front end.

Exit status: 0 success, 1 usage or domain error, 2 numerical agreement
failure, 3 a series or sum failed to converge.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor

from .errors import DomainError, HyperpairsError, NotConverged, ParityError
from .identities import IdentityInstance, XiSpec, euler_lift, rhs_sum, xi_direct, xi_legendre
from .legendre import CoefficientSpec, coeff
from .numerics import PFQParams, half
from .oracle import (
    cos_power_integral,
    cos_power_quadrature,
    quadrature_coeff,
    quadrature_euler,
    quadrature_xi,
)
from .tables import TABLES, TERMS, matches_printed, truncate_like

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_NOT_CONVERGED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 is reserved for mismatches here.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --------------------------------------------------------------------------
# output formatting


def format_float(x) -> str:
    if x is None or not math.isfinite(x):
        return "null"
    s = "%.17g" % x
    if "." not in s and "e" not in s:
        s += ".0"
    return s


def to_json(obj) -> str:
    """Deterministic JSON: insertion key order, 17 significant digits."""
    if obj is None or obj is True or obj is False:
        return json.dumps(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = ", ".join(f"{json.dumps(str(k))}: {to_json(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(to_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _csv_cell(v) -> str:
    if isinstance(v, float):
        return "" if not math.isfinite(v) else "%.17g" % v
    if v is None:
        return ""
    return str(v)


def emit(records, fmt: str, columns, text_render, out) -> None:
    if fmt == "json":
        out.write("[\n" + ",\n".join("  " + to_json(r) for r in records) + "\n]\n")
    elif fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in records:
            w.writerow([_csv_cell(r.get(c)) for c in columns])
        out.write(buf.getvalue())
    else:
        out.write(text_render(records))


def _g(x, digits=16) -> str:
    return "nan" if x is None else f"{x:.{digits}g}"


# --------------------------------------------------------------------------
# verify / table


CASE_COLUMNS = ["form", "p", "mu", "nu", "a", "b", "z"]
REPORT_COLUMNS = ["lhs", "rhs", "abs_err", "rel_err", "agreed_digits", "nonzero_terms_used"]


def _report_record(instance, report) -> dict:
    d = instance.describe()
    for c in ("a", "b"):
        d.setdefault(c, None)
    rec = {c: d[c] for c in CASE_COLUMNS}
    rec.update(
        lhs=report.lhs,
        rhs=report.rhs,
        abs_err=report.abs_err,
        rel_err=report.rel_err,
        agreed_digits=report.agreed_digits,
        nonzero_terms_used=report.nonzero_terms_used,
        rhs_partials=[{"L": L, "partial": s} for L, s in report.rhs_partials],
    )
    return rec


def _default_terms(p: int) -> int:
    return 3 if p == 0 else 4


def _build_instance(args) -> IdentityInstance:
    have_munu = args.mu is not None or args.nu is not None
    have_ab = args.a is not None or args.b is not None
    if args.special:
        if have_munu or have_ab:
            raise UsageError("--special cannot be combined with --mu/--nu or --a/--b")
        make = IdentityInstance.special00 if args.special == "00" else IdentityInstance.special11
        return make(args.p, args.z)
    if have_munu == have_ab:
        raise UsageError("give either --mu and --nu, or --a and --b")
    if have_munu:
        if args.mu is None or args.nu is None:
            raise UsageError("--mu and --nu must be given together")
        return IdentityInstance.munu(args.mu, args.nu, args.p, args.z)
    if args.a is None or args.b is None:
        raise UsageError("--a and --b must be given together")
    return IdentityInstance.ab(args.a, args.b, args.p, args.z)


def _render_verify(records) -> str:
    lines = []
    for r in records:
        head = "  ".join(f"{c}={r[c]}" for c in CASE_COLUMNS if r[c] is not None)
        lines.append(head)
        for part in r["rhs_partials"]:
            lines.append(f"  L={part['L']:<3d} partial={_g(part['partial'])}")
        lines.append(f"  lhs      {_g(r['lhs'])}")
        lines.append(f"  rhs      {_g(r['rhs'])}")
        lines.append(
            f"  abs_err  {_g(r['abs_err'], 3)}  rel_err {_g(r['rel_err'], 3)}  "
            f"agreed_digits {r['agreed_digits']}  terms {r['nonzero_terms_used']}"
        )
    return "\n".join(lines) + "\n"


def cmd_verify(args, out) -> int:
    instance = _build_instance(args)
    terms = args.terms if args.terms is not None else _default_terms(instance.p)
    report = rhs_sum(instance, terms, max_L=args.max_L)
    rec = _report_record(instance, report)
    emit([rec], args.format, CASE_COLUMNS + REPORT_COLUMNS, _render_verify, out)
    if args.tol is not None:
        ok = report.rel_err <= args.tol
    else:
        ok = report.agreed_digits >= args.digits
    return EXIT_OK if ok else EXIT_MISMATCH


def _table_row(which, row, terms, max_L):
    p = TERMS[which][0]
    instance = IdentityInstance.munu(row.mu, row.nu, p, row.z)
    report = rhs_sum(instance, terms, max_L=max_L)
    rec = _report_record(instance, report)
    lhs_ok = matches_printed(report.lhs, row.lhs)
    rhs_ok = matches_printed(report.rhs, row.rhs)
    rec.update(printed_lhs=row.lhs, printed_rhs=row.rhs, lhs_match=lhs_ok, rhs_match=rhs_ok)
    return rec


def _render_table(records) -> str:
    header = f"{'mu':>3} {'nu':>3} {'z':>7}  {'LHS':>20} {'printed':>20}  {'RHS':>20} {'printed':>20}  digits  match"
    lines = [header, "-" * len(header)]
    for r in records:
        mark = "ok" if r["lhs_match"] and r["rhs_match"] else (
            "LHS" if not r["lhs_match"] and r["rhs_match"] else "RHS" if r["lhs_match"] else "both"
        )
        mark = mark if mark == "ok" else f"FAIL({mark})"
        lines.append(
            f"{r['mu']:>3} {r['nu']:>3} {r['z']:>7g}  "
            f"{truncate_like(r['lhs'], r['printed_lhs']):>20} {r['printed_lhs']:>20}  "
            f"{truncate_like(r['rhs'], r['printed_rhs']):>20} {r['printed_rhs']:>20}  "
            f"{r['agreed_digits']:>6}  {mark}"
        )
    return "\n".join(lines) + "\n"


def run_table(which: int, terms=None, max_L=None, parallel=False) -> list:
    """Recompute every row of a reference table, in table order."""
    p, default_terms = TERMS[which]
    terms = default_terms if terms is None else terms
    rows = TABLES[which]
    if parallel:
        with ThreadPoolExecutor() as pool:
            return list(pool.map(lambda r: _table_row(which, r, terms, max_L), rows))
    return [_table_row(which, r, terms, max_L) for r in rows]


def cmd_table(args, out) -> int:
    records = run_table(args.which, args.terms, args.max_L, args.parallel)
    cols = CASE_COLUMNS + REPORT_COLUMNS + ["printed_lhs", "printed_rhs", "lhs_match", "rhs_match"]
    emit(records, args.format, cols, _render_table, out)
    failing = [r for r in records if not (r["lhs_match"] and r["rhs_match"])]
    for r in failing:
        side = [s for s, ok in (("lhs", r["lhs_match"]), ("rhs", r["rhs_match"])) if not ok]
        print(f"mismatch: mu={r['mu']} nu={r['nu']} z={r['z']:g} ({', '.join(side)})", file=sys.stderr)
    return EXIT_MISMATCH if failing else EXIT_OK


# --------------------------------------------------------------------------
# coeff / xi / oracle-check


def _within(a, b, tol) -> bool:
    d = abs(a - b)
    return d <= tol or d <= tol * abs(b)


def cmd_coeff(args, out) -> int:
    spec = CoefficientSpec(args.L, args.N, args.p, args.k)
    value = coeff(spec, reduced=not args.general)
    rec = {"L": spec.L, "N": spec.N, "p": spec.p, "k": spec.k, "value": value}
    ok = True
    if args.oracle:
        q = quadrature_coeff(spec.L, spec.N, spec.p, spec.k)
        tol = 1e-10 if args.tol is None else args.tol
        rec.update(oracle=q, abs_err=abs(value - q), rel_err=abs(value - q) / abs(q) if q else None)
        ok = _within(value, q, tol)

    def render(records):
        r = records[0]
        lines = [f"a^{r['p']}_{{{r['L']},{r['N']}}}(k={r['k']:g}) = {_g(r['value'])}"]
        if "oracle" in r:
            lines.append(f"quadrature         = {_g(r['oracle'])}")
            rel = "n/a" if r["rel_err"] is None else _g(r["rel_err"], 3)
            lines.append(f"abs_err {_g(r['abs_err'], 3)}  rel_err {rel}")
        return "\n".join(lines) + "\n"

    cols = ["L", "N", "p", "k", "value", "oracle", "abs_err", "rel_err"]
    emit([rec], args.format, cols, render, out)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_xi(args, out) -> int:
    spec = XiSpec(args.n, args.p, args.k_alpha0, args.z, args.j_max, args.M_max, args.l_max, args.h_max)
    if args.parallel:
        with ThreadPoolExecutor(3) as pool:
            futs = [pool.submit(f, spec) for f in (xi_direct, xi_legendre, quadrature_xi)]
            d, l, q = (f.result() for f in futs)
    else:
        d, l, q = xi_direct(spec), xi_legendre(spec), quadrature_xi(spec)
    rec = {
        "n": spec.n, "p": spec.p, "k_alpha0": spec.k_alpha0, "z": spec.z,
        "j_max": spec.j_max, "M_max": spec.M_max, "l_max": spec.l_max, "h_max": spec.h_max,
        "direct": d, "legendre": l, "quadrature": q,
        "direct_vs_legendre": abs(d - l), "direct_vs_quadrature": abs(d - q), "legendre_vs_quadrature": abs(l - q),
    }
    tol = 1e-8 if args.tol is None else args.tol
    ok = max(rec["direct_vs_legendre"], rec["direct_vs_quadrature"], rec["legendre_vs_quadrature"]) <= tol

    def render(records):
        r = records[0]
        return (
            f"Xi_{r['n']}^{r['p']}(k_alpha0={r['k_alpha0']:g}, z={r['z']:g})\n"
            f"  direct     {_g(r['direct'])}\n"
            f"  legendre   {_g(r['legendre'])}\n"
            f"  quadrature {_g(r['quadrature'])}\n"
            f"  |direct-legendre| {_g(r['direct_vs_legendre'], 3)}  "
            f"|direct-quadrature| {_g(r['direct_vs_quadrature'], 3)}  "
            f"|legendre-quadrature| {_g(r['legendre_vs_quadrature'], 3)}\n"
        )

    emit([rec], args.format, list(rec), render, out)
    return EXIT_OK if ok else EXIT_MISMATCH


def _check_coeff(max_order, tol):
    worst = 0.0
    for L in range(max_order + 1):
        for N in range(max_order + 1):
            for p in (0, 1):
                for k in (0.5, 2.0, 5.0):
                    a = coeff(CoefficientSpec(L, N, p, k))
                    q = quadrature_coeff(L, N, p, k)
                    d = abs(a - q)
                    worst = max(worst, min(d, d / abs(q)) if q else d)
    return {"suite": "coeff", "cases": (max_order + 1) ** 2 * 6, "worst": worst, "pass": worst <= tol}


def _check_cos(max_order, tol):
    worst = max(
        abs(cos_power_integral(m, n) - cos_power_quadrature(m, n))
        for m in range(2 * max_order + 1)
        for n in range(2 * max_order + 1)
    )
    return {"suite": "cos_power", "cases": (2 * max_order + 1) ** 2, "worst": worst, "pass": worst <= tol}


def _check_euler(max_order, tol):
    worst, cases = 0.0, 0
    for mu in range(0, max_order + 1, 2):
        for nu in range(mu % 2, max_order + 1, 2):
            s = half(mu + nu)
            base = PFQParams((s + half(1), s + 1), (mu + 1, nu + 1, mu + nu + 1), 0.0)
            for p in (0, 1):
                alpha = s + half(1) + p
                for omega in (0.25, 1.0):
                    lift = euler_lift(base.with_argument(-omega), alpha)
                    worst = max(worst, abs(lift.value() - quadrature_euler(base, alpha, omega)))
                    cases += 1
    return {"suite": "euler", "cases": cases, "worst": worst, "pass": worst <= tol}


def _check_xi(max_order, tol):
    worst, cases = 0.0, 0
    for n in range(min(max_order, 3) + 1):
        for p in (0, 1):
            for k in (0.3, 1.0):
                spec = XiSpec(n, p, k, 0.5)
                d, l, q = xi_direct(spec), xi_legendre(spec), quadrature_xi(spec)
                worst = max(worst, abs(d - l), abs(d - q), abs(l - q))
                cases += 1
    return {"suite": "xi", "cases": cases, "worst": worst, "pass": worst <= tol}


_SUITES = {"coeff": (_check_coeff, 1e-10), "cos": (_check_cos, 1e-12), "euler": (_check_euler, 1e-9), "xi": (_check_xi, 1e-8)}


def cmd_oracle_check(args, out) -> int:
    names = list(_SUITES) if args.suite == "all" else [args.suite]

    def run(name):
        fn, tol = _SUITES[name]
        return fn(args.max_order, tol if args.tol is None else args.tol)

    if args.parallel:
        with ThreadPoolExecutor() as pool:
            records = list(pool.map(run, names))
    else:
        records = [run(n) for n in names]

    def render(recs):
        return "".join(
            f"{r['suite']:<10} cases {r['cases']:>4}  worst {_g(r['worst'], 3):>9}  {'PASS' if r['pass'] else 'FAIL'}\n"
            for r in recs
        )

    emit(records, args.format, ["suite", "cases", "worst", "pass"], render, out)
    return EXIT_OK if all(r["pass"] for r in records) else EXIT_MISMATCH


# --------------------------------------------------------------------------
# parser


def _common(parser: argparse.ArgumentParser, *, suppress: bool) -> None:
    d = argparse.SUPPRESS if suppress else None
    g = parser.add_argument_group("common options")
    g.add_argument("--terms", type=int, default=d, help="nonzero L terms in the right-hand side")
    g.add_argument("--format", choices=("text", "json", "csv"), default=d if suppress else "text")
    g.add_argument("--tol", type=float, default=d, help="agreement tolerance overriding the default")
    g.add_argument("--parallel", action="store_true", default=d if suppress else False)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="hyperpairs",
        description="Evaluate and check 3F4 summation identities built from pair products of 2F3 functions.",
    )
    _common(parser, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="compare both sides of one identity instance")
    v.add_argument("--mu", type=int)
    v.add_argument("--nu", type=int)
    v.add_argument("--a", type=int)
    v.add_argument("--b", type=int)
    v.add_argument("--special", choices=("00", "11"), help="use the reduced mu=nu=0 or mu=nu=1 form")
    v.add_argument("--p", type=int, default=0, choices=(0, 1))
    v.add_argument("--z", type=float, required=True)
    v.add_argument("--digits", type=int, default=7, help="agreed digits required for exit 0")
    v.add_argument("--max-L", dest="max_L", type=int, help="also stop the sum past this degree")

    t = sub.add_parser("table", help="recompute a reference table")
    t.add_argument("--which", type=int, choices=(1, 2), required=True)
    t.add_argument("--max-L", dest="max_L", type=int, help="also stop the sum past this degree")

    c = sub.add_parser("coeff", help="Fourier-Legendre coefficient of x^p J_N(kx)")
    c.add_argument("--L", type=int, required=True)
    c.add_argument("--N", type=int, required=True)
    c.add_argument("--p", type=int, default=0)
    c.add_argument("--k", type=float, required=True)
    c.add_argument("--oracle", action="store_true", help="also integrate numerically")
    c.add_argument("--general", action="store_true", help="use the 2F3 form even for N = 0, 1")

    x = sub.add_parser("xi", help="angular amplitude by three routes")
    x.add_argument("--n", type=int, required=True)
    x.add_argument("--p", type=int, default=0)
    x.add_argument("--k-alpha0", dest="k_alpha0", type=float, required=True)
    x.add_argument("--z", type=float, required=True)
    x.add_argument("--j-max", dest="j_max", type=int, default=8)
    x.add_argument("--M-max", dest="M_max", type=int, default=8)
    x.add_argument("--l-max", dest="l_max", type=int, default=12)
    x.add_argument("--h-max", dest="h_max", type=int)

    o = sub.add_parser("oracle-check", help="run quadrature cross-check suites")
    o.add_argument("--suite", choices=("all",) + tuple(_SUITES), default="all")
    o.add_argument("--max-order", dest="max_order", type=int, default=10)

    for sp in (v, t, c, x, o):
        _common(sp, suppress=True)
    return parser


_DEFAULTS = {"terms": None, "format": "text", "tol": None, "parallel": False}
_COMMANDS = {"verify": cmd_verify, "table": cmd_table, "coeff": cmd_coeff, "xi": cmd_xi, "oracle-check": cmd_oracle_check}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    for k, v in _DEFAULTS.items():
        if not hasattr(args, k):
            setattr(args, k, v)
    if args.terms is not None and args.terms < 1:
        parser.error("--terms must be >= 1")
    try:
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        parser.error(str(exc))
    except ParityError as exc:
        print(f"parity error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotConverged as exc:
        print(f"not converged: {exc}", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    except HyperpairsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
