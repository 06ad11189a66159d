"""Named graphs, subsets, functions and multiplicative structures.

Names carry their parameters: ``pascal:3``, ``bernoulli:p=1/3``,
``macdonald:q=1/3,t=1/2``, ``glued-e1:pascal2,pascal2,id,1``,
``product:young,chain``. Builders are deterministic.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .boyer import GluedGraph, glue
from .errors import CatalogError, DomainError
from .extreal import INF
from .graph import GradedGraph, LevelGenerator
from .harmonic import HarmonicFunction
from .multiplicative import (
    MultiplicativeStructure,
    kingman_oracle,
    monomial_oracle,
    schur_oracle,
)
from .order import VertexSubset, subset_from_predicate
from .products import product_graph, tensor_harmonic
from .symmetric import (
    MacdonaldP,
    add_box,
    format_partition,
    monomial_product,
    parse_partition,
    schur_at_ones,
)

__all__ = [
    "CatalogEntry",
    "ENTRIES",
    "entries",
    "build_graph",
    "build_glued",
    "build_function",
    "build_subset",
    "build_structure",
    "build",
    "parse_name",
]

CACHE_ENV = "BRANCHGRAPH_CACHE"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str  # graph | subset | function | structure
    params: str
    provenance: str
    status: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "kind": self.kind, "params": self.params, "provenance": self.provenance}
        if self.status:
            out["status"] = self.status
        return out


ENTRIES = (
    CatalogEntry("chain", "graph", "", "one vertex per level, unit edges"),
    CatalogEntry("pascal2", "graph", "", "Pascal triangle, vertices (a,b)"),
    CatalogEntry("pascal:n", "graph", "n >= 1", "Pascal pyramid, product of n chains"),
    CatalogEntry("young", "graph", "", "partitions, add-a-box edges (checked against the Schur Pieri rule)"),
    CatalogEntry("kingman", "graph", "", "partitions, weights from m_1 * m_lambda"),
    CatalogEntry("macdonald:q=..,t=..", "graph", "q, t rational, not +-1", "partitions, weights from P_1 * P_lambda"),
    CatalogEntry("product:G1,G2,..", "graph", "catalog graph names", "direct product of graphs"),
    CatalogEntry("glued-e1:G1,G2,map,w", "graph", "map in id|sum|axis, w > 0", "G2 one level above G1, edges mu -> mu' of weight w"),
    CatalogEntry("glued-e2:G1,G2,map,s1,sc", "graph", "map in id|sum|axis", "G2 level-aligned, G1 weights times s1, cross weights sc*kappa2"),
    CatalogEntry("glued-pascal-demo", "graph", "", "glued-e1:pascal2,pascal2,id,1"),
    CatalogEntry("chain-into-pascal", "graph", "", "glued-e1:chain,pascal2,axis,1 (map not surjective)"),
    CatalogEntry("a>=k, b>=k", "subset", "k >= 0 (Pascal)", "ideal of vertices with a (or b) at least k"),
    CatalogEntry("two-axes", "subset", "Pascal", "coideal {(a,0)} u {(0,b)}"),
    CatalogEntry("n>=k", "subset", "chain", "ideal of the chain"),
    CatalogEntry("copy1, copy2", "subset", "glued graphs", "the two copies; copy2 is an ideal"),
    CatalogEntry("all", "subset", "any graph", "the whole window"),
    CatalogEntry("bernoulli:p=..", "function", "0 <= p <= 1 (Pascal)", "p^a (1-p)^b", "indecomposable"),
    CatalogEntry("schur-spec:k=..", "function", "k >= 1 (Young)", "s_lambda(1/k,...,1/k)", "indecomposable"),
    CatalogEntry("schur-mix:k=..,..", "function", "two or more k (Young)", "average of schur-spec functions", "decomposable"),
    CatalogEntry("unit", "function", "chain", "constant 1", "indecomposable"),
    CatalogEntry("tensor:w=..[;f1|f2|..]", "function", "w on the simplex (products)", "w_1^|l_1|...w_n^|l_n| f_1(l_1)...f_n(l_n)", "indecomposable"),
    CatalogEntry("glued-semifinite-demo", "function", "glued-pascal-demo", "inf on copy 1, bernoulli:p=1/2 on copy 2", "indecomposable"),
    CatalogEntry("pascal-semifinite", "function", "Pascal", "inf on b=0, 1 on b=1, 0 above", "indecomposable"),
    CatalogEntry("axis-infinite", "function", "Pascal", "inf on b=0, 0 elsewhere", "unknown"),
    CatalogEntry("chain-into-pascal-finite:p=..", "function", "0 < p < 1", "p^n/(1-p) on the chain, bernoulli:p on Pascal", "unknown"),
    CatalogEntry("pascal2 | pascal:n | young | kingman | macdonald:q=..,t=..", "structure", "", "multiplicative structures"),
)


def entries() -> list[CatalogEntry]:
    return list(ENTRIES)


def parse_name(name: str) -> tuple[str, list[str], dict]:
    """``"base:x,y,k=v"`` -> ``("base", ["x", "y"], {"k": "v"})``."""
    base, _, rest = name.strip().partition(":")
    positional, keyword = [], {}
    if rest:
        for part in rest.split(","):
            part = part.strip()
            if "=" in part:
                k, _, v = part.partition("=")
                keyword[k.strip()] = v.strip()
            elif part:
                positional.append(part)
    return base, positional, keyword


def _rational(text, what="parameter") -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError, TypeError):
        raise CatalogError(f"{what} {text!r} is not a rational number") from None


def _int(text, what="parameter") -> int:
    try:
        return int(text)
    except (ValueError, TypeError):
        raise CatalogError(f"{what} {text!r} is not an integer") from None


# -- graphs --------------------------------------------------------------------


def _parse_chain(text: str) -> int:
    text = text.strip()
    if text.startswith("c"):
        text = text[1:]
    return int(text)


def _parse_tuple(text: str) -> tuple:
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError("expected a parenthesized tuple")
    body = text[1:-1].strip()
    return tuple(int(x) for x in body.split(",")) if body else ()


def _format_tuple(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def _union(a, b):
    size = max(len(a), len(b))
    a = a + (0,) * (size - len(a))
    b = b + (0,) * (size - len(b))
    return tuple(max(x, y) for x, y in zip(a, b) if max(x, y) > 0)


def _chain(depth: int) -> GradedGraph:
    gen = LevelGenerator((0,), lambda n: [(n + 1, 1)])
    return GradedGraph.from_generator(
        gen, depth, name="chain", branching=True, parser=_parse_chain, join=max
    )


def _pascal(n: int, depth: int) -> GradedGraph:
    if n < 1:
        raise CatalogError("pascal:n needs n >= 1")

    def succ(v):
        return [(v[:i] + (v[i] + 1,) + v[i + 1:], 1) for i in range(n)]

    gen = LevelGenerator(((0,) * n,), succ, sort_key=lambda v: tuple(-x for x in v))
    g = GradedGraph.from_generator(
        gen,
        depth,
        name="pascal2" if n == 2 else f"pascal:{n}",
        branching=True,
        formatter=_format_tuple,
        parser=_parse_tuple,
        join=lambda a, b: tuple(max(x, y) for x, y in zip(a, b)),
    )
    g.factors = tuple(_chain(depth) for _ in range(n))
    return g


def _partition_graph(name: str, succ, depth: int) -> GradedGraph:
    gen = LevelGenerator(((),), succ, sort_key=lambda lam: tuple(-x for x in lam))
    return GradedGraph.from_generator(
        gen,
        depth,
        name=name,
        branching=True,
        formatter=format_partition,
        parser=parse_partition,
        join=_union,
    )


def _young(depth: int) -> GradedGraph:
    return _partition_graph("young", lambda lam: [(mu, 1) for mu in add_box(lam)], depth)


def _kingman(depth: int) -> GradedGraph:
    return _partition_graph("kingman", lambda lam: list(monomial_product((1,), lam)), depth)


def _macdonald(q, t, depth: int) -> GradedGraph:
    family = _macdonald_family(q, t)
    name = f"macdonald:q={q},t={t}"
    return _partition_graph(name, lambda lam: sorted(family.product((1,), lam).items()), depth)


@lru_cache(maxsize=None)
def _macdonald_family(q: Fraction, t: Fraction) -> MacdonaldP:
    return MacdonaldP(q, t)


_MAPS = {
    "id": lambda v: v,
    "sum": lambda v: sum(v),
    "axis": lambda n: (n, 0),
}


_ALIASES = {
    "glued-pascal-demo": "glued-e1:pascal2,pascal2,id,1",
    "chain-into-pascal": "glued-e1:chain,pascal2,axis,1",
}


@lru_cache(maxsize=64)
def build_glued(name: str, depth: int) -> GluedGraph:
    """Glued graph with its components and map (for the example checkers)."""
    return _glued(_ALIASES.get(name, name), depth, name)


def _glued(spec: str, depth: int, name: str) -> GluedGraph:
    base, pos, _ = parse_name(spec)
    if base not in ("glued-e1", "glued-e2") or len(pos) < 3:
        raise CatalogError(f"unknown glued graph {spec!r}")
    g1, g2 = build_graph(pos[0], depth), build_graph(pos[1], depth)
    if pos[2] not in _MAPS:
        raise CatalogError(f"unknown map {pos[2]!r}; use one of {sorted(_MAPS)}")
    mapping = _MAPS[pos[2]]
    if base == "glued-e1":
        w = _rational(pos[3] if len(pos) > 3 else "1", "cross weight")
        if w <= 0:
            raise CatalogError("cross weight must be positive")
        cross = lambda u, v: w if mapping(u) == v else 0  # noqa: E731
        return glue(g1, g2, mapping, depth, layout="e1", cross=cross, name=name)
    s1 = _rational(pos[3] if len(pos) > 3 else "1", "internal scale")
    sc = _rational(pos[4] if len(pos) > 4 else "1", "cross scale")
    if s1 <= 0 or sc <= 0:
        raise CatalogError("scales must be positive")
    cross = lambda u, v: sc * g2.kappa(mapping(u), v)  # noqa: E731
    return glue(g1, g2, mapping, depth, layout="e2", cross=cross, scale1=s1, name=name)


@lru_cache(maxsize=64)
def build_graph(name: str, depth: int) -> GradedGraph:
    """Catalog graph truncated at ``depth``."""
    if depth < 0:
        raise CatalogError("depth must be nonnegative")
    name = name.strip()
    base, pos, kw = parse_name(name)
    if name == "chain":
        return _chain(depth)
    if name == "pascal2":
        return _pascal(2, depth)
    if base == "pascal" and pos:
        return _pascal(_int(pos[0], "pascal dimension"), depth)
    if name == "young":
        return _young(depth)
    if name == "kingman":
        return _kingman(depth)
    if base == "macdonald":
        try:
            q, t = _rational(kw["q"], "q"), _rational(kw["t"], "t")
        except KeyError:
            raise CatalogError("macdonald needs q=..,t=..") from None
        try:
            return _macdonald(q, t, depth)
        except DomainError as exc:
            raise CatalogError(str(exc)) from None
    if base == "product":
        if len(pos) < 2:
            raise CatalogError("product needs at least two factors")
        return product_graph([build_graph(p, depth) for p in pos], depth, name=name)
    if base in ("glued-e1", "glued-e2") or name in ("glued-pascal-demo", "chain-into-pascal"):
        G = build_glued(name, depth)
        G.graph.glued = G
        return G.graph
    raise CatalogError(f"unknown graph {name!r}")


# -- subsets -------------------------------------------------------------------


def build_subset(name: str, g: GradedGraph, depth: int | None = None) -> VertexSubset:
    depth = g.depth if depth is None else depth
    name = name.strip()
    if ":" in name and not name.startswith(("a>=", "b>=", "n>=")):
        name = name.split(":", 1)[1]
    if name == "all":
        return subset_from_predicate(g, lambda v: True, depth, "plain", name)
    if name in ("copy1", "copy2"):
        side = name[-1]
        kind = "ideal" if side == "2" else "coideal"
        return subset_from_predicate(g, lambda v: isinstance(v, tuple) and v[0] == side, depth, kind, name)
    if name == "two-axes":
        return subset_from_predicate(g, lambda v: v[0] == 0 or v[1] == 0, depth, "coideal", name)
    for axis, index in (("a", 0), ("b", 1), ("n", None)):
        prefix = axis + ">="
        if name.startswith(prefix):
            k = _int(name[len(prefix):], "threshold")
            if index is None:
                return subset_from_predicate(g, lambda v: v >= k, depth, "ideal", name)
            return subset_from_predicate(g, lambda v: v[index] >= k, depth, "ideal", name)
    raise CatalogError(f"unknown subset {name!r}")


# -- functions -----------------------------------------------------------------


def _probability(text) -> Fraction:
    p = _rational(text, "p")
    if not 0 <= p <= 1:
        raise CatalogError(f"p = {p} is outside [0, 1]")
    return p


def _bernoulli_rule(p: Fraction):
    q = 1 - p
    return lambda v: p ** v[0] * q ** v[1]


def build_function(name: str, g: GradedGraph) -> HarmonicFunction:
    """Catalog function on graph ``g`` (``name`` may carry parameters)."""
    name = name.strip()
    base, pos, kw = parse_name(name)
    spec = {"graph": g.name, "rule": name}
    if base == "bernoulli":
        p = _probability(kw.get("p", pos[0] if pos else None))
        return HarmonicFunction(g, rule=_bernoulli_rule(p), name=name, status="indecomposable", spec=spec)
    if base == "schur-spec":
        k = _int(kw.get("k", pos[0] if pos else None), "k")
        if k < 1:
            raise CatalogError("k must be positive")
        rule = lambda lam: Fraction(schur_at_ones(lam, k), k ** sum(lam))  # noqa: E731
        return HarmonicFunction(g, rule=rule, name=name, status="indecomposable", spec=spec)
    if base == "schur-mix":
        ks = [_int(x, "k") for x in ([kw["k"]] if "k" in kw else []) + pos]
        if len(ks) < 2:
            raise CatalogError("schur-mix needs at least two k values")
        rule = lambda lam: sum(Fraction(schur_at_ones(lam, k), k ** sum(lam)) for k in ks) / len(ks)  # noqa: E731
        return HarmonicFunction(g, rule=rule, name=name, status="decomposable", spec=spec)
    if name == "unit":
        return HarmonicFunction(g, rule=lambda v: Fraction(1), name=name, status="indecomposable", spec=spec)
    if base == "tensor":
        return _tensor(name, g, spec)
    if name == "glued-semifinite-demo":
        half = _bernoulli_rule(Fraction(1, 2))
        rule = lambda v: INF if v[0] == "1" else half(v[1])  # noqa: E731
        return HarmonicFunction(g, rule=rule, name=name, status="indecomposable", spec=spec)
    if name == "pascal-semifinite":
        rule = lambda v: INF if v[1] == 0 else Fraction(int(v[1] == 1))  # noqa: E731
        return HarmonicFunction(g, rule=rule, name=name, status="indecomposable", spec=spec)
    if name == "axis-infinite":
        rule = lambda v: INF if v[1] == 0 else Fraction(0)  # noqa: E731
        return HarmonicFunction(g, rule=rule, name=name, status="unknown", spec=spec)
    if base == "chain-into-pascal-finite":
        p = _probability(kw.get("p", pos[0] if pos else None))
        if not 0 < p < 1:
            raise CatalogError("p must lie strictly between 0 and 1")
        bern = _bernoulli_rule(p)
        rule = lambda v: p ** v[1] / (1 - p) if v[0] == "1" else bern(v[1])  # noqa: E731
        return HarmonicFunction(g, rule=rule, name=name, status="unknown", spec=spec)
    raise CatalogError(f"unknown function {name!r}")


def _tensor(name: str, g: GradedGraph, spec: dict) -> HarmonicFunction:
    factors = getattr(g, "factors", None)
    if not factors:
        raise CatalogError("tensor functions live on product graphs")
    body = name.split(":", 1)[1] if ":" in name else ""
    weights, _, comps = body.partition(";")
    if not weights.startswith("w="):
        raise CatalogError("tensor needs w=w1,w2,...")
    w = [_rational(x, "weight") for x in weights[2:].split(",")]
    names = comps.split("|") if comps else ["unit"] * len(factors)
    if len(names) != len(factors) or len(w) != len(factors):
        raise CatalogError(f"tensor needs {len(factors)} weights and component functions")
    phis = [build_function(n, f) for n, f in zip(names, factors)]
    try:
        phi = tensor_harmonic(g, phis, w, name=name)
    except DomainError as exc:
        raise CatalogError(str(exc)) from None
    phi.spec = spec
    return phi


# -- multiplicative structures -------------------------------------------------


def build_structure(name: str, depth: int) -> MultiplicativeStructure:
    g = build_graph(name, depth)
    base, _, kw = parse_name(name)
    if name == "pascal2" or base == "pascal":
        oracle = monomial_oracle
    elif name == "young":
        oracle = schur_oracle
    elif name == "kingman":
        oracle = kingman_oracle
    elif base == "macdonald":
        family = _macdonald_family(_rational(kw["q"]), _rational(kw["t"]))
        oracle = family.product
    else:
        raise CatalogError(f"no multiplicative structure for {name!r}")
    M = MultiplicativeStructure(g, oracle, name=name)
    _load_cache(M)
    return M


def _cache_path(M: MultiplicativeStructure):
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    safe = "".join(ch if ch.isalnum() or ch in "-_" else "_" for ch in M.name)
    return os.path.join(root, f"{safe}.json")


def _load_cache(M: MultiplicativeStructure):
    path = _cache_path(M)
    if path is None or not os.path.exists(path):
        return
    g = M.graph
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    for key, row in data.items():
        a, _, b = key.partition("|")
        try:
            lam, mu = g.vertex(a), g.vertex(b)
            M._cache[(lam, mu)] = {g.vertex(k): Fraction(v) for k, v in row.items()}
        except Exception:
            continue


def save_cache(M: MultiplicativeStructure):
    """Write the oracle cache under ``$BRANCHGRAPH_CACHE`` (no-op when unset)."""
    path = _cache_path(M)
    if path is None:
        return
    g = M.graph
    os.makedirs(os.path.dirname(path), exist_ok=True)
    data = {
        f"{g.label(a)}|{g.label(b)}": {g.label(v): str(c) for v, c in row.items()}
        for (a, b), row in M._cache.items()
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, sort_keys=True)


def build(name: str, depth: int, graph: GradedGraph | None = None):
    """Resolve any catalog name: a function when ``graph`` is given, else a graph."""
    if graph is not None:
        try:
            return build_function(name, graph)
        except CatalogError:
            return build_subset(name, graph, depth)
    return build_graph(name, depth)
