"""Command-line front end. Every subcommand prints JSON to stdout."""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from .bounds import PotentialKind, closed_form_bounds, potential_sum
from .certificates import certify, counting_bound
from .constructive import construct_triangle_free_forest
from .errors import Incomplete, InducedForestError
from .exact import max_induced_forest, max_induced_linear_k_forest
from .experiment import ExperimentConfig, run_experiment
from .graph import VertexSet, induces_forest, induces_linear_k_forest, tree_decomposition
from .graph_io import read_graphs, serialize_graph6, write_graphs
from .regularize import extract_best_copy, regularize
from .search import LexVariant, search


def _frac(x: Fraction) -> list[int]:
    return [x.numerator, x.denominator]


def _emit(items: list) -> None:
    out = items[0] if len(items) == 1 else items
    json.dump(out, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _graphs(path: str):
    return [(doc.label, doc.graph) for doc in read_graphs(path)]


def cmd_bounds(args) -> int:
    _emit([closed_form_bounds(g, label).to_dict() for label, g in _graphs(args.file)])
    return 0


def cmd_exact(args) -> int:
    out = []
    status = 0
    for label, g in _graphs(args.file):
        try:
            if args.k is None:
                res = max_induced_forest(g, args.budget)
            else:
                res = max_induced_linear_k_forest(g, args.k, args.budget)
        except Incomplete as exc:
            res = exc.result
            status = 3
        out.append({"graph": label, **res.to_dict()})
    _emit(out)
    return status


def _variant_floor(variant: LexVariant, n: int, delta: int) -> Fraction | None:
    if delta == 0:
        return None
    if variant.kind == "K4":
        return Fraction(6 * n, 2 * delta + 5)
    if variant.kind == "Kq":
        return Fraction(6 * n, 2 * delta + variant.q + 1)
    return Fraction(2 * n, delta + 1)


def _search_payload(g, variant: LexVariant, state) -> dict:
    certs = certify(g, state, variant)
    cb = counting_bound(g, state, variant) if state.converged else None
    return {
        "size": state.size,
        "set": state.s.to_list(),
        "objective": list(state.objective_vector),
        "moves": len(state.move_log),
        "converged": state.converged,
        "certificates": certs.to_dict(),
        "counting_bound": cb.to_dict() if cb else None,
    }


def cmd_construct(args) -> int:
    out = []
    for label, g in _graphs(args.file):
        delta = max(g.degree) if g.n else 0
        if args.method == "tf":
            cert, trace = construct_triangle_free_forest(g)
            floor = potential_sum(g, PotentialKind.TRIANGLE_FREE)
            item = {"graph": label, "method": "tf", "size": len(cert.vertices), "set": cert.vertices.to_list(),
                    "floor": _frac(floor), "floor_met": len(cert.vertices) >= math.ceil(floor)}
            if args.trace:
                item["trace"] = [step.to_dict() for step in trace]
            out.append(item)
            continue
        variant = LexVariant.parse(args.method)
        variant.check_applicable(g)
        floor = _variant_floor(variant, g.n, delta)
        host, reg = g, None
        if args.regularize and g.m and len(set(g.degree)) > 1:
            reg = regularize(g, args.max_vertices)
            host = reg.g_prime
        state = search(host, variant, order_seed=args.order_seed, check_applicable=False)
        item = {"graph": label, "method": variant.name, **_search_payload(host, variant, state)}
        if reg is not None:
            copy, proj = extract_best_copy(reg, state.s, variant.linear_k)
            item.update(size=len(proj), set=proj.to_list(), copy=copy, copies=reg.copies,
                        size_in_regularized=state.size)
        item["floor"] = _frac(floor) if floor is not None else None
        item["floor_met"] = item["size"] >= math.ceil(floor) if floor is not None else None
        out.append(item)
    _emit(out)
    return 0


def cmd_search(args) -> int:
    out = []
    status = 0
    variant = LexVariant.parse(args.variant)
    for label, g in _graphs(args.file):
        try:
            state = search(g, variant, max_moves=args.max_moves, full_radius=args.full_radius,
                           order_seed=args.order_seed)
        except Incomplete as exc:
            state = exc.result
            status = 3
        floor = _variant_floor(variant, g.n, max(g.degree) if g.n else 0)
        item = {"graph": label, "variant": variant.name, **_search_payload(g, variant, state)}
        item["floor"] = _frac(floor) if floor is not None else None
        out.append(item)
    _emit(out)
    return status


def cmd_regularize(args) -> int:
    out = []
    for label, g in _graphs(args.file):
        reg = regularize(g, args.max_vertices)
        out.append({"graph": label, "graph6": serialize_graph6(reg.g_prime).decode(), **reg.to_dict()})
    _emit(out)
    return 0


def cmd_verify(args) -> int:
    members = [int(x) for x in args.set.replace(" ", "").split(",") if x]
    out = []
    ok = True
    for label, g in _graphs(args.file):
        s = VertexSet.of(g.n, members)
        forest = induces_forest(g, s)
        item = {"graph": label, "size": len(s), "forest": forest}
        if args.k is not None:
            item["linear_k"] = args.k
            item["linear_k_forest"] = induces_linear_k_forest(g, s, args.k)
            ok &= item["linear_k_forest"]
        ok &= forest
        if forest:
            item["trees"] = [
                {"vertices": t.vertices.to_list(), "edges": t.edge_count, "max_degree": t.max_degree,
                 "diameter": t.diameter, "diameter_paths": t.diameter_path_count}
                for t in tree_decomposition(g, s)
            ]
        out.append(item)
    _emit(out)
    return 0 if ok else 1


def cmd_experiment(args) -> int:
    cfg = ExperimentConfig.load(args.config)
    if args.workers is not None:
        cfg.workers = args.workers
    result = run_experiment(cfg)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            fh.write(result.to_csv())
    sys.stdout.write(result.to_json())
    if args.strict and not result.passed:
        print(f"{len(result.summary['violations'])} guarantee violation(s)", file=sys.stderr)
        return 1
    return 0


def cmd_convert(args) -> int:
    docs = read_graphs(args.input)
    write_graphs(args.output, [d.graph for d in docs], args.to)
    _emit([{"input": args.input, "output": args.output, "graphs": len(docs)}])
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="inducedforest", description="Induced forest bounds, constructions and exact solver.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("bounds", help="evaluate every closed-form lower bound")
    s.add_argument("file")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("exact", help="exact a(G), or a_k(G) with --k")
    s.add_argument("file")
    s.add_argument("--k", type=int)
    s.add_argument("--budget", type=int, help="node limit for branch and bound")
    s.set_defaults(func=cmd_exact)

    s = sub.add_parser("construct", help="build a large induced forest")
    s.add_argument("file")
    s.add_argument("--method", required=True, help="tf | k4 | kq:<q> | a3")
    s.add_argument("--regularize", action="store_true", help="search on the regularized graph and keep the best copy")
    s.add_argument("--max-vertices", type=int, default=1 << 14)
    s.add_argument("--order-seed", type=int)
    s.add_argument("--trace", action="store_true", help="include the step trace (tf only)")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("search", help="run the exchange search and certify the result")
    s.add_argument("file")
    s.add_argument("--variant", required=True, help="k4 | kq:<q> | a3")
    s.add_argument("--full-radius", action="store_true")
    s.add_argument("--order-seed", type=int)
    s.add_argument("--max-moves", type=int)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("regularize", help="embed in a regular graph built from copies")
    s.add_argument("file")
    s.add_argument("--max-vertices", type=int, default=1 << 14)
    s.set_defaults(func=cmd_regularize)

    s = sub.add_parser("verify", help="check that a vertex set induces a forest")
    s.add_argument("file")
    s.add_argument("--set", required=True, help="comma-separated vertices")
    s.add_argument("--k", type=int, help="also check for a linear k-forest")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("experiment", help="run an experiment config")
    s.add_argument("--config", required=True)
    s.add_argument("--strict", action="store_true", help="exit nonzero on any guarantee violation")
    s.add_argument("--csv", help="also write the rows as CSV")
    s.add_argument("--workers", type=int)
    s.set_defaults(func=cmd_experiment)

    s = sub.add_parser("convert", help="convert between graph6 and edge list")
    s.add_argument("input")
    s.add_argument("output")
    s.add_argument("--to", choices=["graph6", "edgelist"])
    s.set_defaults(func=cmd_convert)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InducedForestError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
