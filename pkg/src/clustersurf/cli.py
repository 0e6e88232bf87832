"""Command-line front end.

    clustersurf expand    --surface annulus:1,1 --triangulation standard --curve z1
    clustersurf walks     --surface polygon:2 --triangulation fan --curve "c 2-4"
    clustersurf flip      --surface polygon:2 --triangulation fan --arc 1
    clustersurf basis     --surface annulus:1,1 --max-weight 2
    clustersurf decompose --surface annulus:1,1 --collection z1 --collection z1
    clustersurf verify    --suite all
    clustersurf graph     --surface polygon:2

Exit status: 0 on success, 1 when a verification fails, 2 on bad usage.
"""

from __future__ import annotations

import argparse
import json
import sys

from .basis import (
    Collection,
    CollectionError,
    DecompositionError,
    decompose,
    decompose_auto,
    enumerate_collections,
    exchange_graph,
    format_collection,
    parse_collection,
)
from .expansion import (
    ExpansionError,
    OracleSearchError,
    enumerate_arc_walks,
    enumerate_loop_walks,
    expand_collection,
    expand_curve,
    expand_loop,
)
from .laurent import LaurentPoly, format_fraction
from .surface import Loop, SurfaceError, format_curve, format_surface, parse_curve, parse_surface
from .suites import SUITES, run_suite
from .triangulation import (
    Triangulation,
    TriangulationError,
    flip,
    standard_triangulation,
    fan_triangulation,
    validate,
    wrap_triangulation,
)


class UsageError(Exception):
    pass


def parse_triangulation(s, text: str) -> Triangulation:
    """``standard``, ``fan``, ``wrap:r`` or an explicit ``;``-separated arc list."""
    text = text.strip()
    if text == "standard":
        return standard_triangulation(s)
    if text == "fan":
        return fan_triangulation(s)
    if text.startswith("wrap:"):
        try:
            r = int(text[5:])
        except ValueError:
            raise UsageError(f"--triangulation: bad wrap index in {text!r}") from None
        return wrap_triangulation(s, (), r).triangulation
    t = Triangulation(s, tuple(parse_curve(a.strip()) for a in text.split(";") if a.strip()))
    report = validate(t)
    if not report:
        raise UsageError(f"--triangulation: {report.reason}")
    return t


def _common(p, triangulation=True):
    p.add_argument("--surface", required=True, help="polygon:n or annulus:p,q")
    if triangulation:
        p.add_argument("--triangulation", default="standard", help="standard, fan, wrap:r or 'arc; arc; ...'")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", metavar="FILE", help="write output here instead of standard output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clustersurf", description="Cluster algebras of polygons and annuli.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("expand", help="Laurent expansion of a curve, loop or collection")
    _common(p)
    p.add_argument("--curve", help="curve notation, e.g. 'c 2-4', 'p inner:1+3', 'b i1 o1 w0', 'z2'")
    p.add_argument("--collection", help="';'-separated members")
    p.add_argument("--m", type=int, help="expand the loop z_m")

    p = sub.add_parser("walks", help="list the coloured walks of a curve or loop")
    _common(p)
    p.add_argument("--curve")
    p.add_argument("--m", type=int)

    p = sub.add_parser("flip", help="flip one arc of a triangulation")
    _common(p)
    p.add_argument("--arc", type=int, required=True, help="1-based position of the arc to flip")

    p = sub.add_parser("basis", help="enumerate collections up to a crossing weight")
    _common(p, triangulation=False)
    p.add_argument("--max-weight", type=int, default=2)
    p.add_argument("--max-size", type=int)
    p.add_argument("--no-loops", action="store_true")

    p = sub.add_parser("decompose", help="write a product of collections in the basis")
    _common(p)
    p.add_argument("--collection", action="append", default=[], help="factor; repeat for a product")
    p.add_argument("--input", metavar="FILE", help="Laurent polynomial JSON to decompose instead")
    p.add_argument("--max-weight", type=int, help="candidate weight bound (default: grow automatically)")

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)} or all")
    p.add_argument("--surface", help="restrict the chebyshev suite to one annulus")
    p.add_argument("--max-m", type=int)
    p.add_argument("--max-weight", type=int)
    p.add_argument("--radius", type=int)
    p.add_argument("--r", type=int, help="wrap range |r| for the positivity suite")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", metavar="FILE")

    p = sub.add_parser("graph", help="exchange graph of flips")
    _common(p, triangulation=False)
    p.add_argument("--radius", type=int, help="ball radius for annuli (default 4)")
    return parser


def _poly_out(args, t, poly, extra):
    if args.format == "text":
        return format_fraction(poly)
    return json.dumps(dict(extra, triangulation=t.to_dict(), expansion=poly.to_dict()), indent=2)


def cmd_expand(args, s):
    t = parse_triangulation(s, args.triangulation)
    given = [x is not None for x in (args.curve, args.collection, args.m)]
    if sum(given) != 1:
        raise UsageError("expand needs exactly one of --curve, --collection, --m")
    if args.collection is not None:
        c = parse_collection(s, args.collection)
        return _poly_out(args, t, expand_collection(t, c), {"collection": format_collection(c)}), 0
    g = Loop(args.m) if args.m is not None else parse_curve(args.curve)
    poly = expand_loop(t, g.m) if isinstance(g, Loop) else expand_curve(t, g)
    return _poly_out(args, t, poly, {"curve": format_curve(g)}), 0


def cmd_walks(args, s):
    t = parse_triangulation(s, args.triangulation)
    if (args.curve is None) == (args.m is None):
        raise UsageError("walks needs exactly one of --curve, --m")
    g = Loop(args.m) if args.m is not None else parse_curve(args.curve)
    walks = enumerate_loop_walks(t, g.m) if isinstance(g, Loop) else enumerate_arc_walks(t, g)
    if args.format == "text":
        lines = [w.notation() for w in walks]
        return "\n".join(lines + [f"# {len(walks)} walks"]), 0
    data = {
        "curve": format_curve(g),
        "triangulation": t.to_dict(),
        "count": len(walks),
        "walks": [{"notation": w.notation(), "monomial": list(w.exponents(t.nvars))} for w in walks],
    }
    return json.dumps(data, indent=2), 0


def cmd_flip(args, s):
    t = parse_triangulation(s, args.triangulation)
    if not 1 <= args.arc <= t.nvars:
        raise UsageError(f"--arc must be between 1 and {t.nvars}")
    u = flip(t, args.arc - 1)
    if args.format == "text":
        return "; ".join(format_curve(a) for a in u.arcs), 0
    return json.dumps({"before": t.to_dict(), "arc": args.arc, "after": u.to_dict()}, indent=2), 0


def cmd_basis(args, s):
    colls = enumerate_collections(s, args.max_weight, allow_loops=not args.no_loops, max_size=args.max_size)
    if args.format == "text":
        return "\n".join(format_collection(c) for c in colls), 0
    data = {"surface": format_surface(s), "maxWeight": args.max_weight, "collections": [format_collection(c) for c in colls]}
    return json.dumps(data, indent=2), 0


def cmd_decompose(args, s):
    t = parse_triangulation(s, args.triangulation)
    if args.input:
        with open(args.input) as fh:
            y = LaurentPoly.from_json(fh.read())
    elif args.collection:
        y = LaurentPoly.one(t.nvars)
        for text in args.collection:
            y = y * expand_collection(t, parse_collection(s, text))
    else:
        raise UsageError("decompose needs --collection or --input")
    if args.max_weight is not None:
        d = decompose(y, t, enumerate_collections(s, args.max_weight))
    else:
        d = decompose_auto(y, t)
    if args.format == "text":
        parts = [f"{v} * [{format_collection(c)}]" for c, v in sorted(d.coefficients.items(), key=lambda kv: format_collection(kv[0]))]
        return " + ".join(parts) or "0", 0
    return json.dumps(dict(d.to_dict(), input=y.to_dict()), indent=2), 0


def cmd_verify(args):
    params = {}
    if args.surface:
        params["surface"] = parse_surface(args.surface)
    for flag, name in (("max_m", "max_m"), ("max_weight", "max_weight"), ("radius", "radius"), ("r", "wrap_range")):
        if getattr(args, flag) is not None:
            params[name] = getattr(args, flag)
    try:
        reports = run_suite(args.suite, **params)
    except KeyError as exc:
        raise UsageError(f"--suite: {exc.args[0]}") from None
    ok = all(r.ok for r in reports)
    if args.format == "text":
        text = "\n".join(r.summary() for r in reports)
    else:
        text = json.dumps([r.to_dict() for r in reports], indent=2)
    return text, 0 if ok else 1


def cmd_graph(args, s):
    g = exchange_graph(s, args.radius)
    if args.format == "text":
        lines = [f"{i}: " + "; ".join(format_curve(a) for a in v.arcs) for i, v in enumerate(g.vertices)]
        lines += [f"{i} -- {j}" for i, j in g.edges]
        lines.append(f"# {len(g.vertices)} vertices, {len(g.edges)} edges")
        return "\n".join(lines), 0
    return json.dumps(g.to_dict(), indent=2), 0


COMMANDS = {
    "expand": cmd_expand,
    "walks": cmd_walks,
    "flip": cmd_flip,
    "basis": cmd_basis,
    "decompose": cmd_decompose,
    "graph": cmd_graph,
}


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.verb == "verify":
            text, code = cmd_verify(args)
        else:
            text, code = COMMANDS[args.verb](args, parse_surface(args.surface))
    except (UsageError, SurfaceError, TriangulationError, CollectionError, ExpansionError) as exc:
        print(f"clustersurf {args.verb}: error: {exc}", file=sys.stderr)
        return 2
    except (DecompositionError, OracleSearchError) as exc:
        print(f"clustersurf {args.verb}: {exc}", file=sys.stderr)
        return 1
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


def main():
    sys.exit(run())
