"""Command-line interface: ``boroczky <group> <command> [options]``.

Exit status is 0 for a positive result, 1 for a valid negative one
(degenerate parameters, NotContained, NoRationalB15, no rational B15 for
the given ``a``) and 2 for errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import re
import sys
from fractions import Fraction
from typing import Any, Callable

from . import __version__, b12, b15, containment, ellcurve, render
from .errors import BoroczkyError, ParseError
from .projgeom import Configuration, ProjPoint
from .scalar import QQ

log = logging.getLogger("boroczky")

OK, NEGATIVE, ERROR = 0, 1, 2
THREADS_ENV = "BOROCZKY_THREADS"


class Output:
    """Collects the result; prints JSON or text to stdout or ``--out``."""

    def __init__(self, args: argparse.Namespace):
        self.args = args

    def emit(self, data: Any, text: str) -> None:
        body = json.dumps(data, indent=2, sort_keys=True) + "\n" if self.args.json else text.rstrip("\n") + "\n"
        if self.args.out:
            with open(self.args.out, "w", encoding="utf-8") as fh:
                fh.write(body)
        else:
            sys.stdout.write(body)


def _params(text: str) -> b12.ParameterTriple:
    return b12.ParameterTriple.parse(text)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not an exact rational: {text!r}") from exc


def _census_text(c: dict) -> str:
    return ", ".join(f"{n} points of multiplicity {k}" for k, n in sorted(c.items(), reverse=True))


def _read_configuration(path: str) -> Configuration:
    with open(path, encoding="utf-8") as fh:
        return Configuration.from_json(fh.read())


# ----------------------------------------------------------------------
# b12
# ----------------------------------------------------------------------


def cmd_b12_build(args, out: Output) -> int:
    res = b12.build(_params(args.params))
    cfg = res.configuration
    out.emit(
        res.to_dict(),
        f"class {res.cls.tag}\n{len(cfg.lines)} lines; {_census_text(cfg.census)}",
    )
    return OK if res.cls.generic else NEGATIVE


def cmd_b12_classify(args, out: Output) -> int:
    m = _params(args.params)
    cls = b12.classify(m)
    data = cls.to_dict()
    text = cls.tag
    if not cls.generic:
        rep = b12.degeneration_report(m)
        data = rep.to_dict()
        text += f"\n{len(rep.lines)} lines; {_census_text(rep.census)}"
        if rep.coincident:
            text += "\ncoincident points: " + "; ".join("=".join(g) for g in rep.coincident)
    out.emit(data, text)
    return OK if cls.generic else NEGATIVE


def cmd_b12_identities(args, out: Output) -> int:
    rep = b12.verify_symbolic_identities()
    text = "\n".join(f"{k} = {v}" for k, v in rep.values.items())
    text += f"\nclosed forms agree with join/meet: {rep.closed_forms_agree}"
    out.emit(rep.to_dict(), text)
    return OK if rep.ok else ERROR


def cmd_b12_scan(args, out: Output) -> int:
    values = [_fraction(v) for v in args.grid.split(",")]
    grid = [(v.numerator, v.denominator) for v in values] + ([(1, 0)] if args.infinity else [])
    records = list(b12.scan(grid))
    counts: dict[str, int] = {}
    for r in records:
        counts[r.cls.tag] = counts.get(r.cls.tag, 0) + 1
    data = {"records": [r.to_dict() for r in records], "counts": counts}
    text = "\n".join(f"{t}: {n}" for t, n in sorted(counts.items()))
    out.emit(data, text)
    return OK


def cmd_b12_random(args, out: Output) -> int:
    rng = random.Random(args.seed)
    recs = []
    for _ in range(args.count):
        res = b12.build(b12.random_generic(rng), check=False)
        recs.append({"params": res.params.text(), "census": {str(k): v for k, v in sorted(res.configuration.census.items())}})
    ok = all(r["census"] == {"2": 9, "3": 19} for r in recs)
    out.emit({"samples": recs, "all_generic_census": ok}, f"{len(recs)} samples, generic census everywhere: {ok}")
    return OK if ok else ERROR


# ----------------------------------------------------------------------
# b15
# ----------------------------------------------------------------------


def cmd_b15_conditions(args, out: Output) -> int:
    ci = b15.derive_condition_ideal()
    data = {
        "generator": str(ci.generator),
        "factored": str(ci),
        "stripped": [
            {"name": s.name, "removed": s.stripped, "cofactor": str(s.cofactor), "divisible_by_f": s.divisible_by_f}
            for s in b15.stripped_conditions()
        ],
    }
    out.emit(data, str(ci))
    return OK


def _b15_params(args) -> b15.B15Parameters:
    if args.symbolic:
        return b15.symbolic_parameters()
    sols = b15.solve_b(_fraction(args.a))
    if not sols:
        raise ParseError(f"a = {args.a} admits no valid b")
    if args.root >= len(sols):
        raise ParseError(f"root index {args.root} out of range (have {len(sols)})")
    return sols[args.root]


def cmd_b15_build(args, out: Output) -> int:
    res = b15.build(_b15_params(args))
    cfg = res.configuration
    ok = all(res.facts.values()) and all(res.conditions) and not res.census_deviates
    text = (
        f"a = {res.params.a}, b = {res.params.b} over {cfg.field.describe()}\n"
        f"{len(cfg.lines)} lines; {_census_text(cfg.census)}\n"
        f"facts: {res.facts}\nconditions: {sum(res.conditions)}/{len(res.conditions)}"
    )
    out.emit(res.to_dict(), text)
    return OK if ok else ERROR


def cmd_b15_attempt(args, out: Output) -> int:
    att = b15.attempt_rational(_fraction(args.a))
    out.emit(att.to_dict(), f"a = {att.a}: {att.reason}")
    return OK if att.valid else NEGATIVE


# ----------------------------------------------------------------------
# curve
# ----------------------------------------------------------------------


def cmd_curve_points(args, out: Output) -> int:
    rp = ellcurve.rational_points(ellcurve.E, args.height)
    data = {
        "curve": [int(c) for c in ellcurve.E.coefficients],
        "height_bound": args.height,
        "points": [P.to_json() for P in rp.points],
        "torsion": [P.to_json() for P in rp.torsion],
        "methods_agree": rp.agree,
    }
    text = "\n".join(str(P) for P in rp.points) + f"\nNagell-Lutz agrees: {rp.agree}"
    out.emit(data, text)
    return OK if rp.agree else ERROR


def cmd_curve_certify(args, out: Output) -> int:
    cert = ellcurve.certify_no_rational_b15(args.height)
    lines = [f"{p['point']}: {p['verdict']}" for p in cert["pullbacks"]]
    out.emit(cert, "\n".join(lines + [cert["verdict"]]))
    return NEGATIVE if cert["verdict"] == "NoRationalB15" else ERROR


# ----------------------------------------------------------------------
# containment
# ----------------------------------------------------------------------


def _parse_points(text: str) -> list[ProjPoint]:
    triples = re.findall(r"\(([^()]*)\)", text)
    if not triples:
        raise ParseError("expected points as (x:y:z),(x:y:z),...")
    pts = []
    for t in triples:
        parts = t.split(":")
        if len(parts) != 3:
            raise ParseError(f"bad point ({t})")
        pts.append(ProjPoint([QQ.parse(p) for p in parts]))
    return pts


def cmd_containment(args, out: Output) -> int:
    sources = [x for x in (args.params, args.points, args.input) if x]
    if len(sources) != 1:
        raise ParseError("give exactly one of --params, --points, --in")
    cands = []
    if args.points:
        ps = containment.PointSet(_parse_points(args.points))
    else:
        cfg = b12.build(_params(args.params)).configuration if args.params else _read_configuration(args.input)
        ps = containment.PointSet.from_configuration(cfg, args.min_mult)
        if not args.no_witness:
            cands.append(containment.line_product_witness(cfg, args.min_mult))
    v = containment.check_containment(
        ps,
        args.m,
        args.r,
        max_degree=args.max_degree,
        candidates=cands,
        mod_primes=args.mod_primes,
        exact=args.exact,
        seed=args.seed,
    )
    text = f"{v.status} ({v.certification}) for {len(ps)} points, m={v.m}, r={v.r}"
    if v.witness is not None:
        text += f"\nwitness: {v.witness}"
    out.emit(v.to_dict(), text)
    return {"Contained": OK, "NotContained": NEGATIVE}.get(v.status, ERROR)


# ----------------------------------------------------------------------
# render
# ----------------------------------------------------------------------


def cmd_render(args, out: Output) -> int:
    sources = [x for x in (args.params, args.b15_a, args.input) if x]
    if len(sources) != 1:
        raise ParseError("give exactly one of --params, --b15-a, --in")
    if args.params:
        cfg, title = b12.build(_params(args.params)).configuration, f"B12 {args.params}"
    elif args.b15_a:
        sols = b15.solve_b(_fraction(args.b15_a))
        if not sols:
            raise ParseError(f"a = {args.b15_a} admits no valid b")
        cfg, title = b15.build(sols[0]).configuration, f"B15 a={args.b15_a}"
    else:
        cfg, title = _read_configuration(args.input), args.input
    window = None
    if args.window:
        window = [_fraction(v) for v in args.window.split(",")]
        if len(window) != 4:
            raise ParseError("window is xmin,xmax,ymin,ymax")
    doc = render.render(cfg, args.chart, window, args.format, title)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(doc)
    else:
        sys.stdout.write(doc)
    return OK


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--out", help="write output to this file instead of stdout")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized steps")
    p.add_argument(
        "--threads",
        type=int,
        default=int(os.environ.get(THREADS_ENV, "1")),
        help=f"worker cap (default from ${THREADS_ENV}, else 1)",
    )
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="boroczky", description="Boroczky B12/B15 configurations.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    groups = parser.add_subparsers(dest="group", required=True)

    def leaf(sub, name: str, func: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    g = groups.add_parser("b12", help="the 12-line configuration").add_subparsers(dest="cmd", required=True)
    p = leaf(g, "build", cmd_b12_build, "build from three ratios")
    p.add_argument("--params", required=True, help='"1/1,1/2,1/3" or "(1:1),(1:2),(1:3)"')
    p = leaf(g, "classify", cmd_b12_classify, "degeneration class of three ratios")
    p.add_argument("--params", required=True)
    leaf(g, "verify-identities", cmd_b12_identities, "symbolic identities over QQ(a1..c2)")
    p = leaf(g, "scan", cmd_b12_scan, "classify every triple from a grid of values")
    p.add_argument("--grid", default="-1,0,1/2,1,2", help="comma-separated rationals")
    p.add_argument("--infinity", action="store_true", help="also include the ratio (1:0)")
    p = leaf(g, "random", cmd_b12_random, "census of random generic parameters")
    p.add_argument("--count", type=int, default=100)

    g = groups.add_parser("b15", help="the 15-line configuration").add_subparsers(dest="cmd", required=True)
    leaf(g, "conditions", cmd_b15_conditions, "Groebner basis of the incidence conditions")
    p = leaf(g, "build", cmd_b15_build, "build for a rational a (or symbolically)")
    p.add_argument("--a", default="2")
    p.add_argument("--root", type=int, default=0, help="which root b of f(a, b) = 0")
    p.add_argument("--symbolic", action="store_true", help="build over QQ(a)[b]/(f)")
    p = leaf(g, "attempt-rational", cmd_b15_attempt, "why a rational a fails")
    p.add_argument("--a", required=True)

    g = groups.add_parser("curve", help="the elliptic curve of B15 parameters").add_subparsers(
        dest="cmd", required=True
    )
    p = leaf(g, "points", cmd_curve_points, "rational points up to a height bound")
    p.add_argument("--height", type=int, default=1000)
    p = leaf(g, "certify", cmd_curve_certify, "certificate that no rational B15 exists")
    p.add_argument("--height", type=int, default=1000)

    g = groups.add_parser("containment", help="symbolic power containment").add_subparsers(
        dest="cmd", required=True
    )
    p = leaf(g, "check", cmd_containment, "decide I^(m) in I^r")
    p.add_argument("--params", help="B12 ratios; uses its points of multiplicity >= --min-mult")
    p.add_argument("--points", help='explicit list "(x:y:z),(x:y:z),..."')
    p.add_argument("--in", dest="input", help="configuration JSON file")
    p.add_argument("--min-mult", type=int, default=3)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--mod-primes", type=int, default=5)
    p.add_argument("--exact", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--no-witness", action="store_true", help="skip the line-product candidate")

    p = leaf(groups, "render", cmd_render, "SVG or TikZ drawing")
    p.add_argument("--params", help="B12 ratios")
    p.add_argument("--b15-a", help="B15 with this rational a (first root b)")
    p.add_argument("--in", dest="input", help="configuration JSON file")
    p.add_argument("--chart", default="auto", help='"z=1", "y=1", "x=1", "h0,h1,h2" or "auto"')
    p.add_argument("--window", help="xmin,xmax,ymin,ymax")
    p.add_argument("--format", choices=("svg", "tikz"), default="svg")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    if args.threads < 1:
        print("boroczky: --threads must be positive", file=sys.stderr)
        return ERROR
    try:
        return args.func(args, Output(args))
    except (BoroczkyError, ValueError, OSError) as exc:
        print(f"boroczky: error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
