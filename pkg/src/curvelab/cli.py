"""Command-line interface: parse germs, compute invariants, run the verifier.

Exit codes: 0 on success, 1 when a computation reports a mathematical
failure (a red check, or an infinite count where finiteness was demanded),
2 on bad input.  Output is plain text or JSON (--json); infinite counts are
rendered as the string "infinite" with the certificate polynomial attached,
and as a tagged union in JSON.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from .algebra import (
    DEFAULT_PRECISION,
    PRECISION_CAP,
    BiPoly,
    RAT,
    is_infinite,
    rat,
)
from .branches import implicitize, rational_branches
from .contact import probe_order_sample
from .degree import winding_degree
from .errors import CurveLabError, ParseError
from .implicit import (
    analyze_implicit,
    inflection_polynomial,
    vertex_polynomial,
)
from .intersection import intersection_multiplicity, milnor_number, multiplicity
from .parametric import (
    first_puiseux_exponent,
    inflection_order,
    osculating_circle,
    vertex_order,
)
from .parsing import parse_param, parse_poly, render_param, render_poly
from .verify import (
    Report,
    condensed_contact_set,
    constancy_probe,
    run_corpus,
    table1_suite,
)


def _count_json(value, certificate=None):
    if is_infinite(value):
        payload = {"certificate": render_poly(certificate) if certificate else None}
        return {"infinite": payload}
    return {"finite": value}


def _count_text(value, certificate=None):
    if is_infinite(value):
        if certificate is not None:
            return f"infinite (certificate: {render_poly(certificate)})"
        return "infinite"
    return str(value)


def _emit(payload: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True))
        return
    for key, value in payload.items():
        if key == "checks":
            for check in value:
                mark = "ok " if check["pass"] else "FAIL"
                print(f"  [{mark}] {check['id']}: {check['lhs']} vs {check['rhs']}")
        elif key == "notes":
            for note in value:
                print(f"  note: {note}")
        else:
            print(f"{key}: {value}")


def _report_payload(report: Report) -> dict:
    return {
        "name": report.name,
        "checks": [
            {"id": c.ident, "lhs": str(c.lhs), "rhs": str(c.rhs), "pass": c.passed}
            for c in report.checks
        ],
        "notes": list(report.notes),
        "pass": report.passed,
    }


def _render_reports(reports: list[Report], as_json: bool) -> int:
    ok = all(r.passed for r in reports)
    if as_json:
        print(json.dumps([_report_payload(r) for r in reports], indent=2, sort_keys=True))
    else:
        for r in reports:
            status = "ok" if r.passed else "FAIL"
            good = sum(1 for c in r.checks if c.passed)
            print(f"{r.name}: {status} ({good}/{len(r.checks)} checks)")
            for c in r.checks:
                if not c.passed:
                    print(f"  [FAIL] {c.ident}: {c.lhs} vs {c.rhs}")
            for note in r.notes:
                print(f"  note: {note}")
    return 0 if ok else 1


def _cmd_analyze_implicit(args) -> int:
    f = parse_poly(args.poly)
    report = analyze_implicit(f)
    payload = {
        "name": "analyze-implicit",
        "input": render_poly(f),
        "mult": report.mult if not args.json else report.mult,
        "milnor": _count_text(report.milnor) if not args.json else _count_json(report.milnor),
        "inflections": (
            _count_text(report.inflections, report.inflection_certificate)
            if not args.json
            else _count_json(report.inflections, report.inflection_certificate)
        ),
        "vertices": (
            _count_text(report.vertices, report.vertex_certificate)
            if not args.json
            else _count_json(report.vertices, report.vertex_certificate)
        ),
    }
    _emit(payload, args.json)
    finite_needed = is_infinite(report.inflections) or is_infinite(report.vertices)
    return 1 if finite_needed else 0


def _cmd_analyze_parametric(args) -> int:
    g = parse_param(args.param)
    i_order = inflection_order(g)
    v_order = vertex_order(g)
    payload = {
        "name": "analyze-parametric",
        "input": render_param(g),
        "inflections": _count_json(i_order) if args.json else _count_text(i_order),
        "vertices": _count_json(v_order) if args.json else _count_text(v_order),
    }
    try:
        beta = first_puiseux_exponent(g)
        osc = osculating_circle(g)
        payload["beta"] = beta
        payload["lambda"] = osc.lam
        payload["tangent_line_contact"] = osc.tangent_line_contact
        payload["osculating_degenerate"] = osc.degenerate
    except CurveLabError:
        pass
    _emit(payload, args.json)
    return 1 if (is_infinite(i_order) or is_infinite(v_order)) else 0


def _cmd_intersect(args) -> int:
    f = parse_poly(args.f)
    g = parse_poly(args.g)
    result = intersection_multiplicity(f, g)
    payload = {
        "name": "intersect",
        "input": f"{render_poly(f)} ; {render_poly(g)}",
        "multiplicity": (
            _count_json(result.value, result.certificate)
            if args.json
            else _count_text(result.value, result.certificate)
        ),
    }
    _emit(payload, args.json)
    return 1 if result.is_infinite else 0


def _cmd_milnor(args) -> int:
    f = parse_poly(args.poly)
    mu = milnor_number(f)
    payload = {
        "name": "milnor",
        "input": render_poly(f),
        "milnor": _count_json(mu) if args.json else _count_text(mu),
    }
    _emit(payload, args.json)
    return 1 if is_infinite(mu) else 0


def _cmd_contact_set(args) -> int:
    f = parse_poly(args.poly)
    contact = condensed_contact_set(f, precision=args.precision)
    payload = {
        "name": "contact-set",
        "input": render_poly(f),
        "contact_set": str(contact),
    }
    if args.json:
        payload["contact_set"] = {
            "finite": sorted(contact.finite),
            "tail": contact.tail,
        }
    _emit(payload, args.json)
    return 0


def _cmd_implicitize(args) -> int:
    g = parse_param(args.param)
    f = implicitize(g)
    payload = {
        "name": "implicitize",
        "input": render_param(g),
        "f": render_poly(f),
        "mult": multiplicity(f),
    }
    _emit(payload, args.json)
    return 0


def _cmd_branches(args) -> int:
    f = parse_poly(args.poly)
    data = rational_branches(f, precision=args.precision)
    entries = []
    for b in data:
        entries.append(
            {
                "m": b.m,
                "beta": b.beta,
                "tangent": f"[{b.tangent[0]}:{b.tangent[1]}]",
                "swapped": b.swapped,
                "param": render_param(b.param) if b.param else None,
            }
        )
    if args.json:
        print(json.dumps({"name": "branches", "input": render_poly(f), "branches": entries}, indent=2, sort_keys=True))
    else:
        print(f"branches of {render_poly(f)}:")
        for e in entries:
            print(
                f"  m={e['m']} beta={e['beta']} tangent={e['tangent']}"
                f" swapped={e['swapped']} param={e['param']}"
            )
    return 0


def _cmd_degree(args) -> int:
    radius = rat(args.radius)
    if args.kind == "custom":
        if args.q is None:
            raise ParseError("custom degree needs two polynomials", 1, 1)
        p = parse_poly(args.p)
        q = parse_poly(args.q)
    else:
        f = parse_poly(args.p)
        companion = inflection_polynomial(f) if args.kind == "inflection" else vertex_polynomial(f)
        p, q = f, companion
    report = winding_degree(p, q, radius, map_kind=args.kind)
    payload = {
        "name": "degree",
        "kind": args.kind,
        "radius": str(report.radius),
        "degree": report.degree,
        "samples_used": report.samples_used,
    }
    _emit(payload, args.json)
    return 0


def _cmd_verify(args) -> int:
    which = args.suite
    reports: list[Report] = []
    if which in ("table1", "all"):
        reports.append(table1_suite())
    if which in ("bridge", "multibranch", "bounds", "all"):
        for rep in run_corpus():
            keep = {
                "bridge": ("I_f = I_gamma", "V_f = V_gamma"),
                "multibranch": ("sum I_gamma", "sum V_gamma", "mu(f) = sum"),
                "bounds": ("within",),
                "all": ("",),
            }[which]
            filtered = Report(rep.name, [c for c in rep.checks if any(k in c.ident for k in keep)], rep.notes if which == "all" else [])
            if filtered.checks or which == "all":
                reports.append(filtered if which != "all" else rep)
    if which in ("constancy", "all"):
        for poly_text, trials in (("y^2 - x^3", args.trials), ("y^2 - x^5", args.trials)):
            rep = constancy_probe(parse_poly(poly_text), trials, seed=7)
            rep.name = f"constancy {poly_text}"
            reports.append(rep)
    return _render_reports(reports, args.json)


def _cmd_corpus(args) -> int:
    if args.action != "run":
        raise ParseError(f"unknown corpus action {args.action!r}", 1, 1)
    names = args.names or None
    reports = run_corpus(names)
    return _render_reports(reports, args.json)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument(
        "--precision",
        type=int,
        default=None,
        help=f"series precision in [16, {PRECISION_CAP}] (default {DEFAULT_PRECISION};"
        " env CURVELAB_PRECISION overrides)",
    )
    parser = argparse.ArgumentParser(
        prog="curvelab",
        description="Exact local invariants of singular plane curve germs.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    p = add_parser("analyze-implicit", help="invariants of f(x,y) = 0 at the origin")
    p.add_argument("poly")
    p.set_defaults(func=_cmd_analyze_implicit)

    p = add_parser("analyze-parametric", help="invariants of (x(t), y(t))")
    p.add_argument("param")
    p.set_defaults(func=_cmd_analyze_parametric)

    p = add_parser("intersect", help="local intersection number of two curves")
    p.add_argument("f")
    p.add_argument("g")
    p.set_defaults(func=_cmd_intersect)

    p = add_parser("milnor", help="Milnor number of f at the origin")
    p.add_argument("poly")
    p.set_defaults(func=_cmd_milnor)

    p = add_parser("contact-set", help="contact set of f from its rational branches")
    p.add_argument("poly")
    p.set_defaults(func=_cmd_contact_set)

    p = add_parser("implicitize", help="defining polynomial of (t^m, y(t))")
    p.add_argument("param")
    p.set_defaults(func=_cmd_implicitize)

    p = add_parser("branches", help="rational branch data of f")
    p.add_argument("poly")
    p.set_defaults(func=_cmd_branches)

    p = add_parser("degree", help="winding degree of a map pair on a circle")
    p.add_argument("--kind", choices=("inflection", "vertex", "custom"), default="custom")
    p.add_argument("--radius", default="1/4")
    p.add_argument("p", help="f for inflection/vertex kinds, else the first component")
    p.add_argument("q", nargs="?", default=None, help="second component (custom kind)")
    p.set_defaults(func=_cmd_degree)

    p = add_parser("verify", help="run identity suites over the corpus")
    p.add_argument(
        "suite", choices=("bridge", "multibranch", "table1", "bounds", "constancy", "all")
    )
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--strict-hypotheses", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = add_parser("corpus", help="corpus operations")
    p.add_argument("action", choices=("run",))
    p.add_argument("names", nargs="*")
    p.set_defaults(func=_cmd_corpus)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    env_precision = os.environ.get("CURVELAB_PRECISION")
    if args.precision is None and env_precision:
        args.precision = int(env_precision)
    if args.precision is not None and not (16 <= args.precision <= PRECISION_CAP):
        print(f"error: precision must lie in [16, {PRECISION_CAP}]", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except ParseError as err:
        print(f"input error: {err}", file=sys.stderr)
        return 2
    except CurveLabError as err:
        print(f"error ({type(err).__name__}): {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
