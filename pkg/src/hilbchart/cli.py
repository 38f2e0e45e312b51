"""Command-line interface.

Exit codes: 0 success, 1 bad input (parse errors, malformed documents,
precondition violations), 2 a verification returned false, 3 a degree cap
or enumeration budget was exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .charts import ChartIdeal, ChartSpec, generic_free_vars, is_power_section
from .commutant import ScalarMatrixTuple, algebra_orbit, check_multiplication_form, commutant_basis
from .errors import PreconditionError, ResourceError
from .groebner import DEFAULT_DEGREE_CAP, eliminate, groebner_basis, solved_form
from .iarrobino import bound_at_degree, degree_and_slack, dimension_lower_bound, reducibility_signal, scan
from .line import MultiplicativeSetSpec, representing_ring_description
from .points import DEFAULT_BUDGET, compare, enumerate_semantic, enumerate_symbolic
from .ring import ParseError, as_var, field_from_tag
from .verify import run_suite

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_RESOURCE = 0, 1, 2, 3


class _Outcome(Exception):
    def __init__(self, doc, code):
        self.doc, self.code = doc, code


def _load_spec(path: str) -> ChartSpec:
    with open(path, encoding="utf-8") as fh:
        return ChartSpec.from_json(fh.read())


def _load_chart(path: str) -> tuple[ChartSpec, ChartIdeal]:
    spec = _load_spec(path)
    return spec, spec.build()


def _cap(args, spec: ChartSpec) -> int:
    if args.degree_cap is not None:
        return args.degree_cap
    return int(spec.options.get("degree_cap", DEFAULT_DEGREE_CAP))


def _vars(items: Sequence[str] | None) -> list:
    out = []
    for item in items or ():
        out.extend(as_var(t.strip()) for t in item.split(",") if t.strip())
    return out


# --------------------------------------------------------------------------
# subcommands


def cmd_chart(args):
    _, chart = _load_chart(args.spec)
    doc = chart.to_document()
    doc["nonzero_generators"] = len(chart.generators())
    return doc


def cmd_gb(args):
    spec, chart = _load_chart(args.spec)
    gb = groebner_basis(chart.generators(), order=args.order or spec.options.get("order", "grevlex"), degree_cap=_cap(args, spec))
    doc = {"order": gb.order, "partial": gb.partial, "generators": gb.to_strings()}
    if gb.partial:
        raise _Outcome(doc, EXIT_RESOURCE)
    return doc


def cmd_nf(args):
    spec, chart = _load_chart(args.spec)
    gb = groebner_basis(chart.generators(), order=args.order or spec.options.get("order", "grevlex"), degree_cap=_cap(args, spec))
    r = gb.reduce(chart.ring.parse(args.poly))
    doc = {"input": args.poly, "normal_form": str(r), "partial": gb.partial}
    if gb.partial and not r.is_zero():
        raise _Outcome(doc, EXIT_RESOURCE)
    return doc


def cmd_eliminate(args):
    spec, chart = _load_chart(args.spec)
    keep = _vars(args.keep)
    missing = [v for v in keep if v not in chart.ring.index]
    if missing:
        raise PreconditionError(f"variables not in the chart ring: {', '.join(map(str, missing))}")
    gb = eliminate(chart.generators(), keep, _cap(args, spec))
    doc = {"keep": [str(v) for v in keep], "partial": gb.partial, "generators": gb.to_strings()}
    if gb.partial:
        raise _Outcome(doc, EXIT_RESOURCE)
    return doc


def cmd_freecheck(args):
    spec, chart = _load_chart(args.spec)
    free = _vars(args.free)
    if not free:
        if chart.presentation.relations or not is_power_section(chart):
            raise PreconditionError("--free is required unless the chart is the power-section chart of a polynomial ring")
        free = generic_free_vars(chart.m, chart.n)
    sf = solved_form(chart.generators(), free, _cap(args, spec), ring=chart.ring)
    doc = {
        "free_variables": [str(v) for v in free],
        "free": sf.is_free and not sf.partial,
        "partial": sf.partial,
        "rewrites": {str(v): str(r) for v, r in sorted(sf.solved.items(), key=lambda kv: chart.ring.index[kv[0]])},
        "residual": [str(r) for r in sf.residual],
        "unsolved": [str(v) for v in sf.unsolved],
    }
    if sf.partial:
        raise _Outcome(doc, EXIT_RESOURCE)
    if not sf.is_free:
        raise _Outcome(doc, EXIT_VERIFY)
    return doc


def cmd_points(args):
    spec, chart = _load_chart(args.chart)
    budget = args.budget if args.budget is not None else int(spec.options.get("budget", DEFAULT_BUDGET))
    if args.mode == "compare":
        c = compare(chart, args.p, budget, args.backend)
        doc = {"p": args.p, "mode": "compare", **c.to_document()}
        if args.list:
            doc["points"] = enumerate_symbolic(chart, args.p, budget, args.backend).to_strings()
        if not c.equal:
            raise _Outcome(doc, EXIT_VERIFY)
        return doc
    fn = enumerate_symbolic if args.mode == "symbolic" else enumerate_semantic
    pts = fn(chart, args.p, budget, args.backend)
    doc = {"p": args.p, "mode": args.mode, "count": len(pts)}
    if args.list:
        doc["points"] = pts.to_strings()
    return doc


def cmd_line(args):
    field = field_from_tag(args.field)
    gens = [g.strip() for item in args.s_gens or () for g in item.split(",") if g.strip()]
    spec = MultiplicativeSetSpec.from_strings(gens, field)
    return representing_ring_description(spec, args.n).to_document()


def cmd_iarrobino(args):
    rows = []
    if args.scan_d is not None:
        rows = [lb.row() for lb in scan(args.m, args.scan_d)]
        first = next((r for r in rows if r["signal"]), None)
        return {"m": args.m, "rows": rows, "first_signal_d": first["d"] if first else None}
    if args.n is None:
        raise PreconditionError("iarrobino needs --n or --scan-d")
    d, s = degree_and_slack(args.n, args.m)
    lb = bound_at_degree(d, args.m, s if args.s is None else args.s)
    opt = dimension_lower_bound(args.n, args.m)
    return {
        "m": args.m,
        "rows": [lb.row()],
        "optimal": opt.row(),
        "reducibility_signal": reducibility_signal(args.n, args.m),
    }


def cmd_commutant(args):
    with open(args.tuple, encoding="utf-8") as fh:
        doc = json.load(fh)
    field = field_from_tag(str(doc.get("field", "Q")))
    if "matrices" not in doc:
        raise ValueError("matrix-tuple document needs a 'matrices' field")
    t = ScalarMatrixTuple.from_lists(doc["matrices"], field)
    orbit = len(algebra_orbit(t))
    out = {"n": t.n, "orbit_dimension": orbit, "cyclic": orbit == t.n, "commutant_dimension": len(commutant_basis(t))}
    if orbit == t.n:
        out["multiplication_form"] = check_multiplication_form(t)
        if not out["multiplication_form"]:
            raise _Outcome(out, EXIT_VERIFY)
        return out
    raise _Outcome(out, EXIT_VERIFY)


def cmd_verify(args):
    checks = run_suite(args.suite)
    doc = {"suite": args.suite, "passed": all(c.ok for c in checks), "checks": [c.to_document() for c in checks]}
    if not doc["passed"]:
        raise _Outcome(doc, EXIT_VERIFY)
    return doc


# --------------------------------------------------------------------------
# output


def _render_text(doc) -> str:
    rows = doc.get("rows") if isinstance(doc, dict) else None
    lines = []
    if rows:
        cols = list(rows[0])
        table = [cols] + [[str(r[c]) for c in cols] for r in rows]
        widths = [max(len(row[k]) for row in table) for k in range(len(cols))]
        for row in table:
            lines.append("  ".join(x.rjust(w) for x, w in zip(row, widths)))
        doc = {k: v for k, v in doc.items() if k != "rows"}
    for k, v in doc.items():
        if isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{k}:")
            for item in v:
                lines.append("  " + "  ".join(f"{a}={b}" for a, b in item.items()))
        elif isinstance(v, list):
            lines.append(f"{k}:")
            lines.extend(f"  {x}" for x in v)
        elif isinstance(v, dict):
            lines.append(f"{k}:")
            lines.extend(f"  {a}: {b}" for a, b in v.items())
        else:
            lines.append(f"{k}: {v}")
    return "\n".join(lines)


def _emit(doc, fmt: str, stream):
    if fmt == "json":
        stream.write(json.dumps(doc, indent=2) + "\n")
    else:
        stream.write(_render_text(doc) + "\n")


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="randomization seed for property tests; never changes results")

    ap = argparse.ArgumentParser(prog="hilbchart", description="Charts of Hilbert schemes of points as matrix-entry ideals.", parents=[common])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_, parents=[common])
        p.set_defaults(func=fn)
        return p

    p = add("chart", cmd_chart, "build a chart document from a chart spec")
    p.add_argument("--spec", required=True)

    for name, fn, help_ in (("gb", cmd_gb, "Groebner basis of the chart ideal"), ("nf", cmd_nf, "normal form modulo the chart ideal")):
        p = add(name, fn, help_)
        p.add_argument("--spec", required=True)
        p.add_argument("--order", choices=("lex", "grlex", "grevlex"))
        p.add_argument("--degree-cap", type=int)
        if name == "nf":
            p.add_argument("--poly", required=True)

    p = add("eliminate", cmd_eliminate, "intersect the chart ideal with a subring")
    p.add_argument("--spec", required=True)
    p.add_argument("--keep", nargs="+", required=True)
    p.add_argument("--degree-cap", type=int)

    p = add("freecheck", cmd_freecheck, "is the chart a polynomial ring on the given variables")
    p.add_argument("--spec", required=True)
    p.add_argument("--free", nargs="+")
    p.add_argument("--degree-cap", type=int)

    p = add("points", cmd_points, "enumerate F_p points")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--chart", required=True)
    p.add_argument("--mode", choices=("symbolic", "semantic", "compare"), default="compare")
    p.add_argument("--list", action="store_true", help="include the point list")
    p.add_argument("--budget", type=int)
    p.add_argument("--backend", choices=("numba", "numpy"))

    p = add("line", cmd_line, "representing ring of points on a localized line")
    p.add_argument("--s-gens", nargs="*", default=[])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--field", default="Q")

    p = add("iarrobino", cmd_iarrobino, "degenerate-family dimension bounds")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--s", type=int)
    p.add_argument("--scan-d", type=int)

    p = add("commutant", cmd_commutant, "commutant of a scalar matrix tuple")
    p.add_argument("--tuple", required=True)

    p = add("verify", cmd_verify, "run a verification suite")
    p.add_argument("--suite", required=True)
    return ap


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    fmt = getattr(args, "format", "json")
    try:
        doc = args.func(args)
        code = EXIT_OK
    except _Outcome as o:
        doc, code = o.doc, o.code
    except ParseError as e:
        stderr.write(f"parse error: {e}\n")
        return EXIT_INPUT
    except ResourceError as e:
        stderr.write(f"resource limit: {e}\n")
        return EXIT_RESOURCE
    except (PreconditionError, ValueError, KeyError, OSError) as e:
        stderr.write(f"error: {e}\n")
        return EXIT_INPUT
    _emit(doc, fmt, stdout)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
