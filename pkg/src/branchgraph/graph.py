"""Graded graphs with rational edge multiplicities, truncated at a finite depth.

A :class:`GradedGraph` stores levels ``0..depth`` and the edges leaving every
level below ``depth``. Catalog graphs also carry a :class:`LevelGenerator`
that can rebuild (or deepen) the window deterministically; nothing ever grows
the window implicitly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import DepthError, DomainError, LevelOverflowError, ResourceError, VertexLookupError

__all__ = [
    "DEFAULT_MAX_LEVEL_SIZE",
    "LevelGenerator",
    "GradedGraph",
    "Violation",
    "ValidationReport",
    "validate_graph",
    "shifted_dim",
    "enumerate_paths",
    "check_path",
    "path_weight",
]

DEFAULT_MAX_LEVEL_SIZE = 200_000

Vertex = Hashable


@dataclass(frozen=True)
class LevelGenerator:
    """Deterministic rule producing the graph level by level.

    ``successors(v)`` must return ``(w, weight)`` pairs; zero weights are dropped.
    """

    roots: tuple
    successors: Callable[[Vertex], Iterable[tuple[Vertex, object]]]
    sort_key: Callable[[Vertex], object] | None = None


def _sorted_level(vertices, key):
    try:
        return sorted(vertices, key=key)
    except TypeError:
        return list(vertices)


def _weight(w) -> Fraction:
    if isinstance(w, float):
        raise DomainError("edge weights must be exact rationals, not floats")
    w = Fraction(w)
    if w < 0:
        raise DomainError(f"negative edge weight {w}")
    return w


class GradedGraph:
    """Finite window ``Γ_0, ..., Γ_depth`` of a graded graph.

    Args:
        levels: vertex lists, one per level; index is the level.
        edges: mapping ``(u, v) -> weight`` or iterable of ``(u, v, weight)``.
            Zero weights are non-edges and are discarded.
        branching: whether the graph claims to be a branching graph.
        generator: optional rule the window was built from.
        formatter / parser: canonical label <-> vertex conversion.
        join: optional least-common-majorant function (lattices only).
    """

    def __init__(
        self,
        levels: Sequence[Sequence[Vertex]],
        edges,
        *,
        name: str = "graph",
        branching: bool = False,
        generator: LevelGenerator | None = None,
        formatter: Callable[[Vertex], str] | None = None,
        parser: Callable[[str], Vertex] | None = None,
        join: Callable[[Vertex, Vertex], Vertex | None] | None = None,
        max_level_size: int = DEFAULT_MAX_LEVEL_SIZE,
    ):
        self.name = name
        self.branching = bool(branching)
        self.generator = generator
        self.join = join
        self.max_level_size = max_level_size
        self._formatter = formatter or str
        self._parser = parser
        self._levels: tuple[tuple[Vertex, ...], ...] = tuple(tuple(lv) for lv in levels)
        self._level_of: dict[Vertex, int] = {}
        for n, lv in enumerate(self._levels):
            if len(lv) > max_level_size:
                raise LevelOverflowError(f"level {n} has {len(lv)} vertices (cap {max_level_size})")
            for v in lv:
                if v in self._level_of:
                    raise DomainError(f"vertex {self._formatter(v)} appears twice")
                self._level_of[v] = n
        self._succ: dict[Vertex, dict[Vertex, Fraction]] = {v: {} for v in self._level_of}
        self._pred: dict[Vertex, dict[Vertex, Fraction]] = {v: {} for v in self._level_of}
        items = edges.items() if isinstance(edges, Mapping) else ((u, v, w) for u, v, w in edges)
        for item in items:
            if isinstance(edges, Mapping):
                (u, v), w = item
            else:
                u, v, w = item
            w = _weight(w)
            if w == 0:
                continue
            for x in (u, v):
                if x not in self._level_of:
                    raise VertexLookupError(f"edge endpoint {self._formatter(x)} is not a vertex")
            self._succ[u][v] = self._succ[u].get(v, Fraction(0)) + w
            self._pred[v][u] = self._pred[v].get(u, Fraction(0)) + w
        # (source, level) -> {target: dim}; dict inserts are atomic and idempotent
        self._rows: dict[tuple[Vertex, int], dict[Vertex, Fraction]] = {}

    # -- construction -------------------------------------------------------

    @classmethod
    def from_generator(cls, generator: LevelGenerator, depth: int, **kwargs) -> "GradedGraph":
        if depth < 0:
            raise DepthError("depth must be nonnegative")
        cap = kwargs.get("max_level_size", DEFAULT_MAX_LEVEL_SIZE)
        levels = [_sorted_level(set(generator.roots), generator.sort_key)]
        edges: dict[tuple[Vertex, Vertex], Fraction] = {}
        for n in range(depth):
            nxt = set()
            for v in levels[n]:
                for w, k in generator.successors(v):
                    k = _weight(k)
                    if k == 0:
                        continue
                    edges[(v, w)] = edges.get((v, w), Fraction(0)) + k
                    nxt.add(w)
            if len(nxt) > cap:
                raise LevelOverflowError(f"level {n + 1} has {len(nxt)} vertices (cap {cap})")
            levels.append(_sorted_level(nxt, generator.sort_key))
        return cls(levels, edges, generator=generator, **kwargs)

    def extended(self, depth: int) -> "GradedGraph":
        """Rebuild the window to ``depth`` from the generator."""
        if self.generator is None:
            raise DepthError(f"graph {self.name!r} has no generator and cannot be extended")
        return type(self).from_generator(self.generator, depth, **self._kwargs())

    def _kwargs(self):
        return dict(
            name=self.name,
            branching=self.branching,
            formatter=self._formatter,
            parser=self._parser,
            join=self.join,
            max_level_size=self.max_level_size,
        )

    def regenerates(self) -> bool:
        """True when the generator reproduces this window exactly."""
        if self.generator is None:
            return False
        other = self.extended(self.depth)
        return other._levels == self._levels and other._succ == self._succ

    def subgraph(self, members: Iterable[Vertex], name: str | None = None) -> "GradedGraph":
        """Induced subgraph keeping the ambient level numbering (levels may be empty)."""
        keep = set(members)
        for v in keep:
            self.level(v)
        levels = [[v for v in lv if v in keep] for lv in self._levels]
        edges = {(u, v): w for u in keep for v, w in self._succ[u].items() if v in keep}
        return GradedGraph(
            levels,
            edges,
            name=name or f"{self.name}|sub",
            branching=False,
            formatter=self._formatter,
            parser=self._parser,
            max_level_size=self.max_level_size,
        )

    # -- queries ------------------------------------------------------------

    @property
    def depth(self) -> int:
        return len(self._levels) - 1

    @property
    def levels(self) -> tuple[tuple[Vertex, ...], ...]:
        return self._levels

    def vertices(self, n: int) -> tuple[Vertex, ...]:
        if not 0 <= n <= self.depth:
            raise DepthError(f"level {n} outside window 0..{self.depth} of {self.name!r}")
        return self._levels[n]

    def iter_vertices(self, max_level: int | None = None) -> Iterator[Vertex]:
        top = self.depth if max_level is None else min(max_level, self.depth)
        for n in range(top + 1):
            yield from self._levels[n]

    def __contains__(self, v) -> bool:
        try:
            return v in self._level_of
        except TypeError:
            return False

    def __len__(self):
        return len(self._level_of)

    def __repr__(self):
        sizes = ",".join(str(len(lv)) for lv in self._levels)
        return f"GradedGraph({self.name!r}, depth={self.depth}, sizes=[{sizes}])"

    def level(self, v) -> int:
        try:
            return self._level_of[v]
        except (KeyError, TypeError):
            raise VertexLookupError(f"unknown vertex {v!r} in {self.name!r}") from None

    def successors(self, v) -> dict[Vertex, Fraction]:
        self.level(v)
        return self._succ[v]

    def predecessors(self, v) -> dict[Vertex, Fraction]:
        self.level(v)
        return self._pred[v]

    def kappa(self, u, v) -> Fraction:
        self.level(u)
        return self._succ[u].get(v, Fraction(0))

    def edges(self) -> Iterator[tuple[Vertex, Vertex, Fraction]]:
        for lv in self._levels:
            for u in lv:
                for v, w in self._succ[u].items():
                    yield u, v, w

    def label(self, v) -> str:
        return self._formatter(v)

    def vertex(self, label: str):
        """Resolve a canonical label to a vertex of this window."""
        if self._parser is None:
            candidate = label
        else:
            try:
                candidate = self._parser(label)
            except (ValueError, SyntaxError) as exc:
                raise VertexLookupError(f"cannot parse vertex label {label!r}: {exc}") from None
        if candidate not in self:
            raise VertexLookupError(f"vertex {label!r} not in {self.name!r} (depth {self.depth})")
        return candidate

    # -- shifted dimension --------------------------------------------------

    def dim_row(self, source, level: int) -> dict[Vertex, Fraction]:
        """``{nu: dim(source, nu)}`` over level ``level`` (zero entries omitted)."""
        start = self.level(source)
        if level > self.depth:
            raise DepthError(f"level {level} beyond truncation depth {self.depth}")
        if level < start:
            return {}
        key = (source, level)
        row = self._rows.get(key)
        if row is not None:
            return row
        n = level
        while n > start and (source, n - 1) not in self._rows:
            n -= 1
        if n == start:
            self._rows[(source, start)] = {source: Fraction(1)}
            n += 1
        while n <= level:
            prev = self._rows[(source, n - 1)]
            cur: dict[Vertex, Fraction] = {}
            for u, c in prev.items():
                for v, w in self._succ[u].items():
                    cur[v] = cur.get(v, 0) + c * w
            self._rows[(source, n)] = cur
            n += 1
        return self._rows[key]

    def dim(self, mu, nu) -> Fraction:
        lv = self.level(nu)
        return self.dim_row(mu, lv).get(nu, Fraction(0))

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "branching": self.branching,
            "depth": self.depth,
            "levels": [[self.label(v) for v in lv] for lv in self._levels],
            "edges": [
                {"from": self.label(u), "to": self.label(v), "w": str(w)} for u, v, w in self.edges()
            ],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "GradedGraph":
        """Load the JSON graph format; vertices are the label strings themselves."""
        if isinstance(data, str):
            data = json.loads(data)
        levels = [list(lv) for lv in data["levels"]]
        if "depth" in data and int(data["depth"]) != len(levels) - 1:
            raise DomainError(f"declared depth {data['depth']} but {len(levels)} levels given")
        edges = [(e["from"], e["to"], Fraction(str(e.get("w", "1")))) for e in data["edges"]]
        return cls(levels, edges, name=data.get("name", "graph"), branching=bool(data.get("branching", False)))

    def to_dot(self) -> str:
        """Graphviz rendering: one rank per level, edge labels for weights != 1."""
        ids = {}
        out = [f'digraph "{self.name}" {{', "  rankdir=BT;"]
        for n, lv in enumerate(self._levels):
            names = []
            for v in lv:
                ids[v] = f"v{len(ids)}"
                names.append(ids[v])
                out.append(f'  {ids[v]} [label="{self.label(v)}"];')
            out.append("  { rank=same; " + " ".join(names) + " }")
        for u, v, w in self.edges():
            attr = "" if w == 1 else f' [label="{w}"]'
            out.append(f"  {ids[u]} -> {ids[v]}{attr};")
        out.append("}")
        return "\n".join(out) + "\n"


@dataclass(frozen=True)
class Violation:
    vertex: str | None
    condition: str
    detail: str = ""


@dataclass
class ValidationReport:
    graph: str
    depth: int
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "graph": self.graph,
            "depth": self.depth,
            "ok": self.ok,
            "violations": [
                {"vertex": v.vertex, "condition": v.condition, "detail": v.detail} for v in self.violations
            ],
        }


def validate_graph(g: GradedGraph, depth: int) -> ValidationReport:
    """Check graded-graph conditions (and branching conditions if claimed) on levels ``0..depth``."""
    if depth > g.depth:
        raise DepthError(f"depth {depth} exceeds truncation depth {g.depth}")
    report = ValidationReport(g.name, depth)
    bad = report.violations
    for n in range(depth + 1):
        for v in g.vertices(n):
            succ = g.successors(v)
            for w in succ:
                if g.level(w) != n + 1:
                    bad.append(Violation(g.label(v), "adjacent-levels", f"edge to {g.label(w)} at level {g.level(w)}"))
            if n < depth and not any(g.level(w) == n + 1 for w in succ):
                bad.append(Violation(g.label(v), "has-successor", "no outgoing edge to the next level"))
    if g.branching:
        if len(g.vertices(0)) != 1:
            bad.append(Violation(None, "single-root", f"level 0 has {len(g.vertices(0))} vertices, not a singleton"))
        for n in range(1, depth + 1):
            for v in g.vertices(n):
                if not any(g.level(u) == n - 1 for u in g.predecessors(v)):
                    bad.append(Violation(g.label(v), "has-predecessor", "no incoming edge from the previous level"))
    return report


def shifted_dim(g: GradedGraph, mu, nu) -> Fraction:
    """Weighted number of paths from ``mu`` to ``nu`` (1 if equal, 0 if unreachable)."""
    return g.dim(mu, nu)


def enumerate_paths(g: GradedGraph, mu, nu, cap: int = 100_000) -> list[tuple[tuple, Fraction]]:
    """All paths ``mu -> ... -> nu`` with their weight products, by plain DFS.

    Deliberately independent of :meth:`GradedGraph.dim_row`; used as its oracle.
    ``cap`` bounds the number of partial paths explored.
    """
    start, stop = g.level(mu), g.level(nu)
    if stop < start:
        return []
    found: list[tuple[tuple, Fraction]] = []
    explored = 0
    stack = [((mu,), Fraction(1))]
    while stack:
        path, weight = stack.pop()
        explored += 1
        if explored > cap:
            raise ResourceError(f"path enumeration exceeded cap {cap}")
        last = path[-1]
        if len(path) - 1 == stop - start:
            if last == nu:
                found.append((path, weight))
            continue
        for w, k in sorted(g.successors(last).items(), key=lambda item: g.label(item[0]), reverse=True):
            stack.append((path + (w,), weight * k))
    return found


def check_path(g: GradedGraph, path: Sequence) -> bool:
    return all(v in g for v in path) and all(g.kappa(u, v) > 0 for u, v in zip(path, path[1:]))


def path_weight(g: GradedGraph, path: Sequence) -> Fraction:
    w = Fraction(1)
    for u, v in zip(path, path[1:]):
        w *= g.kappa(u, v)
    return w
