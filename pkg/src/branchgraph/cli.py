"""Command-line interface: ``branchgraph <command> [<subcommand>] [options]``.

Every command prints one JSON document (keys sorted, rationals as strings).
Exit status: 0 when the query is answered or the check passes, 1 when a
check is violated, 2 on usage or contract errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import boyer, catalog, cone, extres, harmonic, multiplicative, order, products
from .errors import BranchGraphError
from .extreal import format_ext
from .graph import GradedGraph, enumerate_paths, shifted_dim, validate_graph

__all__ = ["main", "build_parser", "COMMANDS", "OPERATIONS"]

# catalog graphs are built to this depth when a command has no --depth and
# the computation is bounded by its inputs (dim, paths)
ADVERTISED_DEPTH = 12

GRAPH_ALIASES = {"glued-pascal": "glued-pascal-demo"}


class UsageError(BranchGraphError):
    pass


# -- selector resolution -----------------------------------------------------


def _load_json_arg(text: str):
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            return json.load(fh)
    return json.loads(text)


def _graph(args, depth=None) -> GradedGraph:
    name = GRAPH_ALIASES.get(args.graph, args.graph)
    depth = args.depth if depth is None else depth
    if name.endswith(".json") and os.path.exists(name):
        g = GradedGraph.from_json(_load_json_arg(name))
        if depth is not None and depth > g.depth:
            raise UsageError(f"file graph only reaches depth {g.depth}")
        return g
    if depth is None:
        raise UsageError("--depth is required for this command")
    return catalog.build_graph(name, depth)


def _function(g: GradedGraph, text: str) -> harmonic.HarmonicFunction:
    if text.endswith(".json") or text.lstrip().startswith("{"):
        data = _load_json_arg(text)
        if "rule" in data:
            return catalog.build_function(data["rule"], g)
        return harmonic.HarmonicFunction.from_json(g, data)
    return catalog.build_function(text, g)


def _subset(g: GradedGraph, text: str, depth: int) -> order.VertexSubset:
    if text.endswith(".json") or text.lstrip().startswith("{"):
        return order.subset_from_json(g, _load_json_arg(text))
    return catalog.build_subset(text, g, depth)


def _vertex(g: GradedGraph, label: str):
    return g.vertex(label)


def _pairs(text: str) -> list[tuple[str, str]]:
    out = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        label, sep, value = part.rpartition("=")
        if not sep:
            label, value = part, "1"
        out.append((label.strip(), value.strip()))
    return out


def _cone_element(g: GradedGraph, text: str) -> cone.ConeElement:
    """``'{"level":..,"coeffs":{..}}'`` or the shorthand ``"(2,1)=3;(1,1)=1"``."""
    if text.lstrip().startswith("{") or text.endswith(".json"):
        return cone.ConeElement.from_json(g, _load_json_arg(text))
    coeffs = {}
    for label, value in _pairs(text):
        v = g.vertex(label)
        coeffs[v] = coeffs.get(v, Fraction(0)) + Fraction(value)
    if not coeffs:
        raise UsageError("empty cone element")
    level = g.level(next(iter(coeffs)))
    return cone.ConeElement(level, coeffs).check(g)


def _algebra_element(g: GradedGraph, text: str) -> multiplicative.AlgebraElement:
    coeffs = {}
    for label, value in _pairs(text):
        v = g.vertex(label)
        coeffs[v] = coeffs.get(v, Fraction(0)) + Fraction(value)
    return multiplicative.AlgebraElement(coeffs)


def _path(g: GradedGraph, text: str) -> list:
    return [g.vertex(x.strip()) for x in text.split(";") if x.strip()]


# -- handlers: each returns (report, exit code) -------------------------------


def cmd_validate(args):
    g = _graph(args)
    report = validate_graph(g, args.depth)
    return report.to_json(), 0 if report.ok else 1


def cmd_dim(args):
    g = _graph(args, args.depth or ADVERTISED_DEPTH)
    return {"dim": str(shifted_dim(g, _vertex(g, args.source), _vertex(g, args.target)))}, 0


def cmd_paths(args):
    g = _graph(args, args.depth or ADVERTISED_DEPTH)
    found = enumerate_paths(g, _vertex(g, args.source), _vertex(g, args.target), cap=args.cap)
    total = sum((w for _, w in found), Fraction(0))
    return {
        "count": len(found),
        "total": str(total),
        "paths": [{"vertices": [g.label(v) for v in p], "weight": str(w)} for p, w in found],
    }, 0


def cmd_subset_classify(args):
    g = _graph(args)
    S = _subset(g, args.subset, args.depth)
    return order.classify_subset(g, S, args.depth).to_json(g), 0


def cmd_subset_complement(args):
    g = _graph(args)
    S = _subset(g, args.subset, args.depth)
    C = order.complement(g, S, args.depth)
    out = C.to_json(g)
    out["flags"] = order.classify_subset(g, C, args.depth).to_json(g)
    return out, 0


def cmd_subset_saturate(args):
    g = _graph(args)
    S = _subset(g, args.subset, args.depth)
    res = order.saturate(g, S, args.depth)
    out = res.subset.to_json(g)
    out["added"] = [g.label(v) for v in res.added]
    out["indeterminate_level"] = res.indeterminate_level
    return out, 0


def cmd_subset_primitive(args):
    g = _graph(args)
    S = _subset(g, args.subset, args.depth)
    verdict = order.is_primitive_coideal(g, S, args.depth, args.margin)
    return verdict.to_json(g), 1 if verdict.status == "RefutedWithWitnessPair" else 0


def cmd_subset_split(args):
    g = _graph(args)
    S = _subset(g, args.subset, args.depth)
    res = order.split_nonprimitive(g, S, _vertex(g, args.l1), _vertex(g, args.l2), args.depth)
    return {"J1": res.J1.to_json(g), "J2": res.J2.to_json(g)}, 0


def cmd_subset_path(args):
    g = _graph(args)
    S = order.path_coideal(g, _path(g, args.path), args.depth)
    out = S.to_json(g)
    out["flags"] = order.classify_subset(g, S).to_json(g)
    return out, 0


def cmd_harmonic_check(args):
    g = _graph(args)
    report = harmonic.check_harmonic(_function(g, args.fn), args.depth, args.mode)
    return report.to_json(g), 0 if report.ok else 1


def cmd_harmonic_boundary(args):
    g = _graph(args)
    return harmonic.boundary_sets(_function(g, args.fn), args.depth).to_json(g), 0


def cmd_harmonic_psi(args):
    g = _graph(args)
    psi = harmonic.psi_sequence(_function(g, args.fn), _vertex(g, args.vertex), args.depth)
    return {"vertex": args.vertex, "psi": [str(x) for x in psi]}, 0


def cmd_harmonic_diag(args):
    g = _graph(args)
    report = harmonic.semifinite_diagnostic(_function(g, args.fn), _vertex(g, args.vertex), args.depth)
    return report.to_json(g), 0


def cmd_harmonic_from_subharmonic(args):
    g = _graph(args)
    phi = _function(g, args.fn)
    if args.zero_outside:
        S = _subset(g, args.zero_outside, args.depth)
        inner = phi
        phi = harmonic.HarmonicFunction(
            g, rule=lambda v: inner(v) if v in S.members else Fraction(0), name=f"{inner.name}|{S.name}"
        )
    table = harmonic.harmonic_from_subharmonic(phi, args.depth)
    keys = [_vertex(g, v) for v in args.vertex] if args.vertex else None
    return table.to_json(keys), 0


def cmd_harmonic_rescale(args):
    g = _graph(args)
    phi = harmonic.rescale(_function(g, args.fn), Fraction(args.u))
    return {g.label(v): format_ext(x) for v, x in phi.values(args.depth).items()}, 0


def cmd_harmonic_ergodic(args):
    g = _graph(args)
    ratios = harmonic.ergodic_ratio_sequence(g, _vertex(g, args.vertex), _path(g, args.path))
    return {"vertex": args.vertex, "ratios": [str(x) for x in ratios]}, 0


def cmd_ext(args):
    g = _graph(args)
    I = _subset(g, args.subset, args.depth)
    res = extres.restrict(_function(g, args.fn), I, args.depth)
    table = extres.extend(res, g, args.depth)
    keys = [_vertex(g, v) for v in args.vertex] if args.vertex else None
    return table.to_json(keys), 0


def cmd_res(args):
    g = _graph(args)
    I = _subset(g, args.subset, args.depth)
    res = extres.restrict(_function(g, args.fn), I, args.depth)
    return res.to_json(), 0 if res.report.ok else 1


def cmd_cone_compare(args):
    g = _graph(args)
    a, b = _cone_element(g, args.a), _cone_element(g, args.b)
    refuters = [_function(g, f) for f in args.refuter or []]
    return cone.cone_compare(g, a, b, args.depth, refuters).to_json(), 0


def cmd_cone_push(args):
    g = _graph(args)
    return cone.push_down(g, _cone_element(g, args.a), args.level).to_json(g), 0


def cmd_cone_eval(args):
    g = _graph(args)
    value = cone.evaluate_functional(_function(g, args.fn), _cone_element(g, args.a))
    return {"value": format_ext(value)}, 0


def _structure(args):
    return catalog.build_structure(GRAPH_ALIASES.get(args.structure, args.structure), args.depth)


def _finish(M, report, code):
    catalog.save_cache(M)
    return report, code


def cmd_mult_verify(args):
    M = _structure(args)
    report = multiplicative.verify_structure(M, args.depth)
    return _finish(M, report.to_json(M.graph), 0 if report.ok else 1)


def cmd_mult_check_ring(args):
    M = _structure(args)
    verdict = multiplicative.ring_theorem_check(M, _function(M.graph, args.fn), args.depth)
    return _finish(M, verdict.to_json(M.graph), 0 if verdict.status == "MultiplicativeToDepth" else 1)


def cmd_mult_check_forbid(args):
    M = _structure(args)
    verdict = multiplicative.forbidding_precondition(M, args.depth)
    return _finish(M, verdict.to_json(M.graph), 0 if verdict.status == "AllProductsNonzero" else 1)


def cmd_mult_companion(args):
    M = _structure(args)
    report = multiplicative.companion_check(
        M, _function(M.graph, args.fn), _function(M.graph, args.psi), args.depth
    )
    return _finish(M, report.to_json(M.graph), 0 if report.ok else 1)


def cmd_mult_multiply(args):
    M = _structure(args)
    a, b = _algebra_element(M.graph, args.a), _algebra_element(M.graph, args.b)
    return _finish(M, multiplicative.multiply(M, a, b).to_json(M.graph), 0)


def cmd_mult_represent(args):
    M = _structure(args)
    a = _algebra_element(M.graph, args.a)
    return _finish(M, multiplicative.represent_in_R(M, a, args.degree).to_json(M.graph), 0)


def _beta(g, text):
    return {g.vertex(label): Fraction(value) for label, value in _pairs(text)}


def cmd_boyer_check(args):
    g = _graph(args)
    I = _subset(g, args.ideal, args.depth)
    inst = boyer.BoyerInstance(g, I, _vertex(g, args.vertex), args.m, _beta(g, args.beta), args.l_min, args.l_max)
    phi = _function(g, args.fn) if args.fn else None
    result = boyer.check_general_boyer(inst, args.depth, phi)
    return result.to_json(g), 0 if result.status == "Satisfied" else 1


def cmd_boyer_identity(args):
    g = _graph(args)
    I = _subset(g, args.ideal, args.depth)
    report = boyer.first_entry_identity_check(g, I, _vertex(g, args.vertex), _vertex(g, args.eta), args.depth)
    return report.to_json(), 0 if report.ok else 1


def _glued(args):
    g = _graph(args)
    G = getattr(g, "glued", None)
    if G is None:
        raise UsageError(f"{args.graph!r} is not a glued catalog graph")
    return G


def cmd_boyer_e1(args):
    G = _glued(args)
    verdict = boyer.check_example1(G, _vertex(G.graph, args.vertex), args.depth)
    return verdict.to_json(G.graph), 0 if verdict.status == "Satisfied" else 1


def cmd_boyer_e2(args):
    G = _glued(args)
    verdict = boyer.check_example2(G, _vertex(G.graph, args.vertex), args.depth)
    return verdict.to_json(G.graph), 0 if verdict.status == "Satisfied" else 1


def _factors(args):
    names = [x.strip() for x in args.factors.split(",") if x.strip()]
    if len(names) < 2:
        raise UsageError("--factors needs at least two graph names")
    return names


def _product(args):
    names = _factors(args)
    return catalog.build_graph("product:" + ",".join(names), args.depth)


def cmd_product_build(args):
    g = _product(args)
    report = validate_graph(g, args.depth)
    out = {
        "name": g.name,
        "level_sizes": [len(g.vertices(n)) for n in range(g.depth + 1)],
        "valid": report.ok,
    }
    if args.format == "dot":
        return g.to_dot(), 0
    if args.full:
        out["graph"] = g.to_json()
    return out, 0 if report.ok else 1


def cmd_product_dim(args):
    g = _product(args)
    a, b = _vertex(g, args.source), _vertex(g, args.target)
    closed = products.product_dim(g.factors, a, b)
    direct = shifted_dim(g, a, b)
    return {"dim": str(closed), "shifted_dim": str(direct), "agree": closed == direct}, 0 if closed == direct else 1


def cmd_product_tensor(args):
    g = _product(args)
    fns = args.fns.split("|") if args.fns else ["unit"] * len(g.factors)
    if len(fns) != len(g.factors):
        raise UsageError("one component function per factor")
    phis = [_function(f, name) for f, name in zip(g.factors, fns)]
    w = [Fraction(x) for x in args.w.split(",")]
    phi = products.tensor_harmonic(g, phis, w)
    report = harmonic.check_harmonic(phi, args.depth)
    return {
        "harmonic": report.ok,
        "values": {g.label(v): format_ext(x) for v, x in phi.values(args.depth).items()},
    }, 0 if report.ok else 1


def cmd_product_decompose(args):
    if args.factors:
        g = _product(args)
    else:
        g = _graph(args)
    phi = _function(g, args.fn)
    dec = products.recover_components(phi, args.depth, series=not args.no_series)
    return dec.to_json(g), 0 if dec.consistent and dec.roundtrip else 1


def cmd_catalog_list(args):
    return {"entries": [e.to_json() for e in catalog.entries()]}, 0


def cmd_export(args):
    g = _graph(args)
    if args.format == "dot":
        return g.to_dot(), 0
    return g.to_json(), 0


# -- parser ------------------------------------------------------------------

# (command path, handler, library operations it exposes)
COMMANDS = [
    (("validate",), cmd_validate, ["validate_graph"]),
    (("dim",), cmd_dim, ["shifted_dim"]),
    (("paths",), cmd_paths, ["enumerate_paths"]),
    (("subset", "classify"), cmd_subset_classify, ["classify_subset"]),
    (("subset", "complement"), cmd_subset_complement, ["complement"]),
    (("subset", "saturate"), cmd_subset_saturate, ["saturate"]),
    (("subset", "primitive"), cmd_subset_primitive, ["is_primitive_coideal"]),
    (("subset", "split"), cmd_subset_split, ["split_nonprimitive"]),
    (("subset", "path"), cmd_subset_path, ["path_coideal"]),
    (("harmonic", "check"), cmd_harmonic_check, ["check_harmonic"]),
    (("harmonic", "boundary"), cmd_harmonic_boundary, ["boundary_sets"]),
    (("harmonic", "psi"), cmd_harmonic_psi, ["psi_sequence"]),
    (("harmonic", "diag"), cmd_harmonic_diag, ["semifinite_diagnostic"]),
    (("harmonic", "from-subharmonic"), cmd_harmonic_from_subharmonic, ["harmonic_from_subharmonic"]),
    (("harmonic", "rescale"), cmd_harmonic_rescale, ["rescale"]),
    (("harmonic", "ergodic"), cmd_harmonic_ergodic, ["ergodic_ratio_sequence"]),
    (("ext",), cmd_ext, ["extend"]),
    (("res",), cmd_res, ["restrict"]),
    (("cone", "compare"), cmd_cone_compare, ["cone_compare"]),
    (("cone", "push"), cmd_cone_push, ["push_down"]),
    (("cone", "eval"), cmd_cone_eval, ["evaluate_functional"]),
    (("mult", "verify"), cmd_mult_verify, ["verify_structure"]),
    (("mult", "check-ring"), cmd_mult_check_ring, ["ring_theorem_check"]),
    (("mult", "check-forbid"), cmd_mult_check_forbid, ["forbidding_precondition"]),
    (("mult", "companion"), cmd_mult_companion, ["companion_check"]),
    (("mult", "multiply"), cmd_mult_multiply, ["multiply"]),
    (("mult", "represent"), cmd_mult_represent, ["represent_in_R"]),
    (("boyer", "check"), cmd_boyer_check, ["check_general_boyer"]),
    (("boyer", "identity"), cmd_boyer_identity, ["first_entry_identity_check"]),
    (("boyer", "e1"), cmd_boyer_e1, ["check_example1"]),
    (("boyer", "e2"), cmd_boyer_e2, ["check_example2"]),
    (("product", "build"), cmd_product_build, ["product_graph"]),
    (("product", "dim"), cmd_product_dim, ["product_dim"]),
    (("product", "tensor"), cmd_product_tensor, ["tensor_harmonic"]),
    (("product", "decompose"), cmd_product_decompose, ["recover_components"]),
    (("catalog", "list"), cmd_catalog_list, ["build"]),
    (("export",), cmd_export, ["to_json", "to_dot"]),
]

OPERATIONS = {op: " ".join(path) for path, _, ops in COMMANDS for op in ops}


def _add_options(p: argparse.ArgumentParser, path: tuple):
    key = " ".join(path)
    needs_graph = key not in ("catalog list",) and not key.startswith(("mult", "product"))
    if needs_graph:
        p.add_argument("--graph", required=True, help="catalog name or graph JSON file")
    optional_depth = key in ("dim", "paths")
    if key == "product decompose":
        p.add_argument("--graph", help="product graph name (or use --factors)")
    if key != "catalog list":
        p.add_argument("--depth", type=int, required=not optional_depth, help="truncation depth")
    if key in ("dim", "paths", "product dim"):
        p.add_argument("--from", dest="source", required=True)
        p.add_argument("--to", dest="target", required=True)
    if key == "paths":
        p.add_argument("--cap", type=int, default=100_000)
    if key.startswith("subset") and key != "subset path":
        p.add_argument("--subset", required=True, help="catalog subset name or subset JSON")
    if key == "subset primitive":
        p.add_argument("--margin", type=int, default=None)
    if key == "subset split":
        p.add_argument("--l1", required=True)
        p.add_argument("--l2", required=True)
    if key in ("subset path", "harmonic ergodic"):
        p.add_argument("--path", required=True, help="vertex labels separated by ';'")
    if key.startswith("harmonic") and key != "harmonic ergodic" or key in ("ext", "res", "cone eval"):
        p.add_argument("--fn", required=True, help="catalog function name or function JSON")
    if key == "harmonic check":
        p.add_argument("--mode", choices=("harmonic", "subharmonic"), default="harmonic")
    if key in ("harmonic psi", "harmonic diag", "harmonic ergodic", "boyer check", "boyer identity", "boyer e1", "boyer e2"):
        p.add_argument("--vertex", required=True)
    if key in ("harmonic from-subharmonic", "ext"):
        p.add_argument("--vertex", action="append", help="restrict output to these vertices")
    if key == "harmonic from-subharmonic":
        p.add_argument("--zero-outside", help="use the function only on this subset, 0 elsewhere")
    if key == "harmonic rescale":
        p.add_argument("--u", required=True)
    if key in ("ext", "res"):
        p.add_argument("--subset", required=True, help="the ideal")
    if key in ("cone compare", "cone push", "cone eval"):
        p.add_argument("--a", required=True, help="cone element: JSON or 'label=c;label=c'")
    if key == "cone compare":
        p.add_argument("--b", required=True)
        p.add_argument("--refuter", action="append", help="finite harmonic function used to refute")
    if key == "cone push":
        p.add_argument("--level", type=int, required=True)
    if key.startswith("mult"):
        p.add_argument("--structure", required=True, help="pascal2 | pascal:n | young | kingman | macdonald:q=..,t=..")
    if key in ("mult check-ring", "mult companion"):
        p.add_argument("--fn", required=True)
    if key == "mult companion":
        p.add_argument("--psi", required=True)
    if key in ("mult multiply", "mult represent"):
        p.add_argument("--a", required=True, help="algebra element 'label=c;label=c'")
    if key == "mult multiply":
        p.add_argument("--b", required=True)
    if key == "mult represent":
        p.add_argument("--degree", type=int, required=True)
    if key in ("boyer check", "boyer identity"):
        p.add_argument("--ideal", required=True)
    if key == "boyer check":
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--beta", required=True, help="'label=c;label=c' on level m of the ideal")
        p.add_argument("--l-min", type=int, default=0)
        p.add_argument("--l-max", type=int, default=None)
        p.add_argument("--fn", help="optional harmonic function for the consequences")
    if key == "boyer identity":
        p.add_argument("--eta", required=True)
    if key.startswith("product"):
        p.add_argument("--factors", required=key != "product decompose", help="comma-separated graph names")
    if key == "product build":
        p.add_argument("--full", action="store_true", help="include the graph JSON")
    if key == "product tensor":
        p.add_argument("--w", required=True, help="simplex point, comma-separated")
        p.add_argument("--fns", help="component functions separated by '|'")
    if key == "product decompose":
        p.add_argument("--fn", required=True)
        p.add_argument("--no-series", action="store_true", help="skip the series partial sums")
    p.add_argument("--format", choices=("json", "dot", "table"), default="json")
    p.add_argument("--output", help="write the report to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="branchgraph", description="Exact computations on weighted branching graphs.")
    top = parser.add_subparsers(dest="command", required=True)
    groups: dict = {}
    for path, handler, _ in COMMANDS:
        if len(path) == 1:
            p = top.add_parser(path[0])
        else:
            if path[0] not in groups:
                gp = top.add_parser(path[0])
                groups[path[0]] = gp.add_subparsers(dest="subcommand", required=True)
            p = groups[path[0]].add_parser(path[1])
        _add_options(p, path)
        p.set_defaults(handler=handler)
    return parser


def _render(report, fmt: str) -> str:
    if isinstance(report, str):
        return report if report.endswith("\n") else report + "\n"
    if fmt == "table":
        return "".join(f"{k}\t{json.dumps(v, sort_keys=True, ensure_ascii=False)}\n" for k, v in sorted(report.items()))
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if getattr(args, "depth", None) is not None and args.depth < 1:
        stderr.write("error: --depth must be at least 1\n")
        return 2
    try:
        report, code = args.handler(args)
    except (BranchGraphError, ValueError, KeyError, json.JSONDecodeError, ZeroDivisionError) as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    text = _render(report, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
