"""Command-line entry point: ``choicegraph <subcommand> ...``.

Exit status is 0 on success, 1 when a requested verification fails and 2 on
usage or input errors. ``--json`` switches stdout to a single JSON document.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

from . import graph as gcore
from .automorphisms import AutomorphismLimitError, automorphisms, fixed_vertices, orbits
from .claims import run_all
from .colorings import (
    UndefinedInvariantError,
    chromatic_index,
    chromatic_number,
    distinguishing_index,
    distinguishing_number,
    irreducible_coloring,
    is_irreducible,
    is_proper,
)
from .covers import (
    ENUMERATORS,
    WitnessError,
    WitnessKind,
    check,
    maximal_matching,
    minimal_dominating_set,
    minimal_edge_cover,
    minimal_vertex_cover,
    star_structure_check,
)
from .extract import EXTRACTORS, ExtractionError, extract, is_sound
from .fologic import EvaluationError, FormulaSyntaxError, evaluate, free_variables, parse_formula
from .gadgets import GadgetError, GadgetInstance, Kind, block_clusters, gen_gadget
from .shelah_soifer import QSqrt2, sample_component, verify_parity_coloring


class UsageError(Exception):
    pass


COVER_BUILDERS = {
    "vc": minimal_vertex_cover,
    "dom": minimal_dominating_set,
    "matching": maximal_matching,
    "edgecover": minimal_edge_cover,
}

WITNESS_BUILDERS = {
    WitnessKind.DOMINATING_SET: minimal_dominating_set,
    WitnessKind.MATCHING: maximal_matching,
    WitnessKind.EDGE_COVER: minimal_edge_cover,
}

ENUM_FOR_WITNESS = {
    WitnessKind.DOMINATING_SET: "minimal-dominating-sets",
    WitnessKind.MATCHING: "maximal-matchings",
    WitnessKind.EDGE_COVER: "minimal-edge-covers",
}


# -- helpers ---------------------------------------------------------------------------


def _sizes(text: str) -> list[int]:
    try:
        sizes = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"sizes must be comma-separated integers, got {text!r}") from None
    if not sizes:
        raise argparse.ArgumentTypeError("sizes must be non-empty")
    return sizes


def _load_graph(path: str) -> gcore.Graph:
    try:
        return gcore.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read graph {path!r}: {exc.strerror}") from None
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"{path}: not a graph file ({exc})") from None


def _instance(args) -> GadgetInstance:
    return GadgetInstance(Kind(args.kind), args.sizes, args.k)


class _Out:
    """Collects the payload and the human rendering; emits one of them at the end."""

    def __init__(self, args):
        self.args = args
        self.lines: list[str] = []
        self.payload: dict = {}

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def emit(self) -> None:
        text = json.dumps(self.payload, indent=2) if self.args.json else "\n".join(self.lines)
        if getattr(self.args, "out", None) and self.args.command != "gen":
            with open(self.args.out, "w") as fh:
                fh.write(text + "\n")
        else:
            print(text)


# -- subcommands -------------------------------------------------------------------------------


def cmd_gen(args, out: _Out) -> int:
    spec = _instance(args)
    g = gen_gadget(spec)
    if args.out:
        gcore.save(g, args.out)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(gcore.to_dot(g, block_clusters(spec), name=spec.kind.value))
    out.payload = {"kind": spec.kind.value, "sizes": list(spec.sizes), "k": spec.k_offset, "graph": gcore.to_json_dict(g)}
    if args.out and not args.json:
        out.line(f"wrote {spec.kind.value}{list(spec.sizes)}: {len(g.vertices)} vertices, {len(g.edges)} edges -> {args.out}")
    elif not args.json:
        out.line(gcore.dumps(g))
    return 0


def cmd_color(args, out: _Out) -> int:
    g = _load_graph(args.graph)
    solvers = {
        "chromatic": lambda: chromatic_number(g),
        "index": lambda: chromatic_index(g),
        "irreducible": lambda: (None, irreducible_coloring(g)),
        "distinguishing": lambda: distinguishing_number(g, args.max_vertices),
        "distinguishing-index": lambda: distinguishing_index(g, args.max_vertices),
    }
    try:
        value, witness = solvers[args.what]()
    except UndefinedInvariantError as exc:
        out.payload = {"what": args.what, "value": None, "undefined": str(exc)}
        out.line(f"{args.what}: undefined ({exc})")
        return 0
    out.payload = {"what": args.what, "value": value if value is not None else witness.palette_size, **witness.to_json_dict()}
    if args.what == "irreducible":
        out.payload["irreducible"] = is_irreducible(g, witness)
        out.payload["proper"] = is_proper(g, witness)
        out.line(f"irreducible coloring with {witness.palette_size} colors")
    else:
        out.line(f"{args.what}: {value}")
    for color, members in sorted(witness.classes().items()):
        shown = [gcore.edge_label(m) if isinstance(m, tuple) else m for m in members]
        out.line(f"  {color}: {' '.join(shown)}")
    return 0


def cmd_cover(args, out: _Out) -> int:
    g = _load_graph(args.graph)
    w = COVER_BUILDERS[args.what](g)
    out.payload = {"what": args.what, "witness": w.to_json_dict()}
    out.line(f"{w.kind.value}: {' '.join(_show(m) for m in w.sorted())}")
    if not args.verify:
        return 0
    ok = check(g, w, True)
    out.payload["minimal_or_maximal"] = ok
    out.line(f"check (minimal/maximal): {'pass' if ok else 'FAIL'}")
    if w.kind is WitnessKind.EDGE_COVER:
        star = star_structure_check(g, w)
        out.payload["star_forest"] = star
        out.line(f"star structure: {'pass' if star else 'FAIL'}")
        ok = ok and star
    return 0 if ok else 1


def _show(m) -> str:
    return gcore.edge_label(m) if isinstance(m, tuple) else m


def cmd_enumerate(args, out: _Out) -> int:
    g = _load_graph(args.graph)
    found = []
    for w in ENUMERATORS[args.what](g):
        if args.limit is not None and len(found) >= args.limit:
            break
        found.append(w)
    out.payload = {"what": args.what, "count": len(found), "truncated": args.limit is not None and len(found) >= args.limit,
                   "witnesses": [w.to_json_dict()["members"] for w in found]}
    for w in found:
        out.line(" ".join(_show(m) for m in w.sorted()) or "(empty)")
    out.line(f"{len(found)} {args.what}")
    return 0


def cmd_aut(args, out: _Out) -> int:
    g = _load_graph(args.graph)
    if args.orbits:
        orbs = orbits(g, args.max_vertices)
        out.payload = {"orbits": orbs}
        out.lines += [" ".join(o) for o in orbs]
    elif args.fixed:
        fixed = sorted(fixed_vertices(g, args.max_vertices))
        out.payload = {"fixed": fixed}
        out.line(" ".join(fixed))
    else:
        perms = automorphisms(g, args.max_vertices)
        out.payload = {"count": len(perms), "automorphisms": [p.mapping for p in perms]}
        out.line(f"{len(perms)} automorphisms")
        for p in perms[: args.show]:
            moved = [f"{v}->{w}" for v, w in zip(p.domain, p.images) if v != w]
            out.line("  " + (" ".join(moved) or "identity"))
    return 0


def cmd_fo(args, out: _Out) -> int:
    g = _load_graph(args.graph)
    assignment = {}
    for item in args.assign:
        var, sep, value = item.partition("=")
        if not sep or not var:
            raise UsageError(f"--assign expects VAR=VERTEX, got {item!r}")
        assignment[var.strip()] = value.strip()
    f = parse_formula(args.formula)
    unbound = sorted(free_variables(f) - set(assignment))
    if unbound:
        print(f"warning: free variables {unbound} have no assignment", file=sys.stderr)
    value = evaluate(g, f, assignment)
    out.payload = {"formula": str(f), "assignment": assignment, "value": value}
    out.line("true" if value else "false")
    return 0


def cmd_ss(args, out: _Out) -> int:
    base = QSqrt2.parse(args.base)
    sample = sample_component(args.count, args.seed, base)
    report = verify_parity_coloring(sample, base)
    out.payload = {"base": str(base), "seed": args.seed, **report.to_json_dict()}
    out.line(f"{report.size} points, {report.edges} sampled edges")
    for label, ok in (("parity classes independent", report.classes_independent),
                      ("opposite-parity neighbor sampled", report.opposite_neighbor),
                      ("no odd cycle", report.no_odd_cycle)):
        out.line(f"  {'pass' if ok else 'FAIL'}  {label}")
    return 0 if report.passed else 1


def cmd_extract(args, out: _Out) -> int:
    spec = _instance(args)
    if spec.kind not in EXTRACTORS:
        raise UsageError(f"no extractor for {spec.kind.value}; choose from {', '.join(k.value for k in EXTRACTORS)}")
    wkind, _ = EXTRACTORS[spec.kind]
    g = gen_gadget(spec)
    if not args.enumerate_all:
        w = WITNESS_BUILDERS[wkind](g)
        cf = extract(spec, w)
        out.payload = {"kind": spec.kind.value, "sizes": list(spec.sizes), "k": spec.k_offset,
                       "witness": w.to_json_dict(), **cf.to_json_dict(), "sound": is_sound(spec, cf)}
        out.line(f"witness ({wkind.value}): {' '.join(_show(m) for m in w.sorted())}")
        for i, v in sorted(cf.picks.items()):
            flag = "  (fallback)" if i in cf.fallbacks else ""
            out.line(f"  A_{i} -> {v}{flag}")
        if cf.partial:
            out.line("  partial choice function")
        return 0
    count = fallbacks = 0
    failures = []
    for w in ENUMERATORS[ENUM_FOR_WITNESS[wkind]](g):
        if args.limit is not None and count >= args.limit:
            break
        count += 1
        try:
            cf = extract(spec, w)
        except ExtractionError as exc:
            failures.append({"witness": w.to_json_dict()["members"], "error": str(exc)})
            continue
        fallbacks += bool(cf.fallbacks)
        if not is_sound(spec, cf):
            failures.append({"witness": w.to_json_dict()["members"], "error": f"unsound picks {cf.picks}"})
    out.payload = {"kind": spec.kind.value, "sizes": list(spec.sizes), "k": spec.k_offset, "witnesses": count,
                   "with_fallback": fallbacks, "failures": failures[:20], "failure_count": len(failures)}
    out.line(f"{count} witnesses, {len(failures)} failures, {fallbacks} with a flagged fallback")
    for f in failures[:5]:
        out.line(f"  {f['error']}")
    return 0 if not failures else 1


def cmd_verify_claims(args, out: _Out) -> int:
    results = run_all(args.max_size, args.seed, args.samples)
    out.payload = {"max_size": args.max_size, "seed": args.seed, "checks": [r.to_json_dict() for r in results],
                   "passed": all(r.passed for r in results)}
    width = max(len(r.name) for r in results)
    for r in results:
        out.line(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.cases:>5} cases  {r.seconds:7.2f}s  {r.detail}".rstrip())
    return 0 if all(r.passed for r in results) else 1


# -- parser -------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document on stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for every randomized corpus or sample")
    common.add_argument("--out", metavar="FILE", help="write the result to FILE instead of stdout")

    p = argparse.ArgumentParser(prog="choicegraph", description="Gadget graphs, exact invariants and choice extraction.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def graph_cmd(name, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("--graph", required=True, metavar="FILE", help="graph in the JSON format")
        return sp

    def gadget_args(sp):
        sp.add_argument("--kind", required=True, choices=[k.value for k in Kind])
        sp.add_argument("--sizes", required=True, type=_sizes, metavar="CSV", help="block sizes |A_n|, e.g. 3,2,3")
        sp.add_argument("--k", type=int, default=1, help="|B_i| - |A_i| for G3/G6 (default 1)")

    sp = sub.add_parser("gen", parents=[common], help="generate a gadget graph")
    gadget_args(sp)
    sp.add_argument("--dot", metavar="FILE", help="also write a DOT file with one cluster per block")
    sp.set_defaults(func=cmd_gen)

    sp = graph_cmd("color", "exact coloring invariants with witnesses")
    sp.add_argument("--what", required=True,
                    choices=["chromatic", "index", "irreducible", "distinguishing", "distinguishing-index"])
    sp.add_argument("--max-vertices", type=int, default=24, help="automorphism search guard")
    sp.set_defaults(func=cmd_color)

    sp = graph_cmd("cover", "greedy minimal covers, dominating sets and maximal matchings")
    sp.add_argument("--what", required=True, choices=sorted(COVER_BUILDERS))
    sp.add_argument("--verify", action="store_true", help="check minimality/maximality (exit 1 on failure)")
    sp.set_defaults(func=cmd_cover)

    sp = graph_cmd("enumerate", "list every minimal/maximal witness")
    sp.add_argument("--what", required=True, choices=sorted(ENUMERATORS))
    sp.add_argument("--limit", type=int, help="stop after this many witnesses")
    sp.set_defaults(func=cmd_enumerate)

    sp = graph_cmd("aut", "automorphism group, orbits or fixed vertices")
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--orbits", action="store_true")
    mode.add_argument("--fixed", action="store_true")
    sp.add_argument("--max-vertices", type=int, default=24, help="search guard")
    sp.add_argument("--show", type=int, default=20, help="permutations listed in the text output")
    sp.set_defaults(func=cmd_aut)

    fo = sub.add_parser("fo", help="first-order formulas over graphs")
    fo_sub = fo.add_subparsers(dest="fo_command", required=True, metavar="ACTION")
    sp = fo_sub.add_parser("eval", parents=[common], help="evaluate a formula")
    sp.add_argument("--graph", required=True, metavar="FILE")
    sp.add_argument("--formula", required=True)
    sp.add_argument("--assign", action="append", default=[], metavar="VAR=VERTEX")
    sp.set_defaults(func=cmd_fo)

    ss = sub.add_parser("ss", help="Shelah-Soifer graph on Q(sqrt2)")
    ss_sub = ss.add_subparsers(dest="ss_command", required=True, metavar="ACTION")
    sp = ss_sub.add_parser("verify", parents=[common], help="check the parity coloring on a seeded sample")
    sp.add_argument("--count", type=int, default=1000)
    sp.add_argument("--base", default="0/1 + 0/1 sqrt2", help='component base point, "a + b sqrt2"')
    sp.set_defaults(func=cmd_ss)

    sp = sub.add_parser("extract", parents=[common], help="read a choice function off a gadget witness")
    gadget_args(sp)
    sp.add_argument("--enumerate-all", action="store_true", help="check every minimal/maximal witness")
    sp.add_argument("--limit", type=int, help="with --enumerate-all, stop after this many witnesses")
    sp.set_defaults(func=cmd_extract)

    sp = sub.add_parser("verify-claims", parents=[common], help="run every structural check over a size sweep")
    sp.add_argument("--max-size", type=int, default=3, help="block sizes and block counts up to this value")
    sp.add_argument("--samples", type=int, default=1000, help="Shelah-Soifer sample size")
    sp.set_defaults(func=cmd_verify_claims)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = _Out(args)
    try:
        code = args.func(args, out)
    except (UsageError, GadgetError, FormulaSyntaxError, EvaluationError, WitnessError,
            AutomorphismLimitError, gcore.GraphError, ValueError) as exc:
        print(f"choicegraph: error: {exc}", file=sys.stderr)
        return 2
    out.emit()
    return code


def entry() -> None:
    sys.exit(main())
