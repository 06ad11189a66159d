"""Path-counting criterion for infinite values and semifiniteness at a vertex.

Glued graphs put a copy of ``Γ_2`` above a copy of ``Γ_1`` so that ``Γ_2``
is an ideal. Two layouts are supported: ``"e1"`` shifts ``Γ_2`` up by one
level (``Γ_n = (Γ_1)_n ⊔ (Γ_2)_{n-1}``), ``"e2"`` keeps levels aligned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .cone import ConeElement, cone_compare
from .errors import ContractError, DepthError
from .extreal import INF, format_ext
from .graph import GradedGraph
from .order import VertexSubset, classify_subset, up_set

__all__ = [
    "GluedGraph",
    "glue",
    "BoyerInstance",
    "BoyerResult",
    "check_general_boyer",
    "first_entry_identity_check",
    "check_example1",
    "check_example2",
]


@dataclass
class GluedGraph:
    graph: GradedGraph
    g1: GradedGraph
    g2: GradedGraph
    mapping: Callable
    layout: str

    @property
    def offset(self) -> int:
        return 1 if self.layout == "e1" else 0

    @staticmethod
    def copy1(v):
        return ("1", v)

    @staticmethod
    def copy2(v):
        return ("2", v)

    def prime(self, v):
        """``λ ↦ λ'`` on glued vertices of copy 1."""
        side, inner = v
        if side != "1":
            raise ContractError("the map is defined on copy 1 only")
        return ("2", self.mapping(inner))

    def ideal(self, depth: int | None = None) -> VertexSubset:
        depth = self.graph.depth if depth is None else depth
        members = frozenset(v for v in self.graph.iter_vertices(depth) if v[0] == "2")
        return VertexSubset(members, depth, "ideal", predicate=lambda v: v[0] == "2", name="copy2")

    def coideal(self, depth: int | None = None) -> VertexSubset:
        depth = self.graph.depth if depth is None else depth
        members = frozenset(v for v in self.graph.iter_vertices(depth) if v[0] == "1")
        return VertexSubset(members, depth, "coideal", predicate=lambda v: v[0] == "1", name="copy1")

    def uncovered(self, depth: int):
        """First copy-2 vertex not hit by the map inside the window, or None."""
        for n in range(depth + 1 - self.offset):
            if n > self.g1.depth:
                break
            image = {self.mapping(v) for v in self.g1.vertices(n)}
            for w in self.g2.vertices(n):
                if w not in image:
                    return ("2", w)
        return None


def glue(
    g1: GradedGraph,
    g2: GradedGraph,
    mapping: Callable,
    depth: int,
    *,
    layout: str = "e1",
    cross: Callable | None = None,
    scale1=1,
    name: str = "glued",
) -> GluedGraph:
    """Build a glued graph to ``depth``.

    ``cross(u, w)`` gives the weight of the edge from copy-1 vertex ``u`` to
    copy-2 vertex ``w``. The default is ``1`` on ``u -> u'`` for ``"e1"`` and
    ``κ_2(u', w)`` for ``"e2"``. ``scale1`` multiplies the internal weights
    of copy 1.
    """
    if layout not in ("e1", "e2"):
        raise ContractError(f"unknown layout {layout!r}")
    off = 1 if layout == "e1" else 0
    if g1.depth < depth or g2.depth < depth - off:
        raise DepthError("component windows are too shallow for the requested depth")
    scale1 = Fraction(scale1)
    if cross is None:
        if layout == "e1":
            cross = lambda u, w: Fraction(int(mapping(u) == w))  # noqa: E731
        else:
            cross = lambda u, w: g2.kappa(mapping(u), w)  # noqa: E731
    levels = []
    for n in range(depth + 1):
        lv = [("1", v) for v in g1.vertices(n)]
        if n - off >= 0:
            lv += [("2", v) for v in g2.vertices(n - off)]
        levels.append(lv)
    edges = {}
    for n in range(depth):
        for u in g1.vertices(n):
            for w, k in g1.successors(u).items():
                edges[(("1", u), ("1", w))] = k * scale1
            m = n + 1 - off
            if 0 <= m <= g2.depth:
                for w in g2.vertices(m):
                    k = Fraction(cross(u, w))
                    if k:
                        edges[(("1", u), ("2", w))] = k
        if n - off >= 0:
            for u in g2.vertices(n - off):
                for w, k in g2.successors(u).items():
                    edges[(("2", u), ("2", w))] = k

    def fmt(v):
        side, inner = v
        return f"{(g1 if side == '1' else g2).label(inner)}@{side}"

    def parse(text):
        text = text.strip()
        if text in ("root1", "root2"):
            text = "root@" + text[-1]
        body, _, side = text.rpartition("@")
        if side not in ("1", "2"):
            raise ValueError("glued labels end in @1 or @2")
        g = g1 if side == "1" else g2
        if body == "root":
            return (side, g.vertices(0)[0])
        return (side, g.vertex(body))

    graph = GradedGraph(levels, edges, name=name, branching=(layout == "e1"), formatter=fmt, parser=parse)
    return GluedGraph(graph, g1, g2, mapping, layout)


@dataclass
class BoyerInstance:
    graph: GradedGraph
    ideal: VertexSubset
    vertex: object
    m: int
    beta: Mapping
    l_min: int = 0
    l_max: int | None = None

    def __post_init__(self):
        self.beta = {v: Fraction(c) for v, c in self.beta.items()}
        if any(c < 0 for c in self.beta.values()):
            raise ContractError("beta must be nonnegative")
        if not any(c > 0 for c in self.beta.values()):
            raise ContractError("beta must have a positive entry")
        for v in self.beta:
            if v not in self.ideal.members or self.graph.level(v) != self.m:
                raise ContractError(f"beta is supported on I_m; {self.graph.label(v)} is not there")
        if self.vertex in self.ideal.members:
            raise ContractError("the vertex must lie outside the ideal")

    @property
    def b(self) -> ConeElement:
        return ConeElement(self.m, self.beta)


@dataclass
class BoyerResult:
    status: str  # Satisfied | Violated
    l_range: tuple
    margins: dict = field(default_factory=dict)  # (l, η) -> margin
    witness: tuple | None = None  # (l, η, margin)
    b: ConeElement | None = None
    verified_N: int = 0
    degenerate: bool = False
    consequences: dict = field(default_factory=dict)

    def to_json(self, g: GradedGraph) -> dict:
        out = {
            "status": self.status,
            "l_range": list(self.l_range),
            "degenerate": self.degenerate,
            "min_margin": str(min(self.margins.values())) if self.margins else None,
            "checked": len(self.margins),
        }
        if self.witness is not None:
            l, eta, margin = self.witness
            out["witness"] = {"l": l, "eta": g.label(eta), "margin": str(margin)}
        if self.b is not None:
            out["b"] = self.b.to_json(g)
            out["verified_N"] = self.verified_N
        if self.consequences:
            out["consequences"] = self.consequences
        return out


def _entry_row(g: GradedGraph, lam, members, level: int) -> dict:
    """``η ↦ Σ_{μ∈J_level} dim(λ,μ) κ(μ,η)`` over ``η ∈ I_{level+1}``."""
    out: dict = {}
    for mu, d in g.dim_row(lam, level).items():
        if mu in members:
            continue
        for eta, k in g.successors(mu).items():
            if eta in members:
                out[eta] = out.get(eta, Fraction(0)) + d * k
    return out


def check_general_boyer(inst: BoyerInstance, depth: int | None = None, phi=None, n_max: int | None = None) -> BoyerResult:
    """Check the inequality for ``l`` in the instance's range that fits the window."""
    g = inst.graph
    depth = g.depth if depth is None else depth
    if depth > g.depth:
        raise DepthError(f"depth {depth} exceeds truncation depth {g.depth}")
    flags = classify_subset(g, inst.ideal, min(depth, inst.ideal.depth))
    if not flags.is_ideal:
        raise ContractError("the given set is not an ideal")
    n = g.level(inst.vertex)
    top = depth - n - 1
    l_max = top if inst.l_max is None else min(inst.l_max, top)
    if l_max < inst.l_min:
        raise DepthError("window too small to check any l")
    members = inst.ideal.members
    margins = {}
    rhs_seen = False
    for l in range(inst.l_min, l_max + 1):
        lhs = _entry_row(g, inst.vertex, members, n + l)
        rhs: dict = {}
        if n + l + 1 >= inst.m:
            for nu, c in inst.beta.items():
                for eta, d in g.dim_row(nu, n + l + 1).items():
                    rhs[eta] = rhs.get(eta, Fraction(0)) + c * d
        for eta in g.vertices(n + l + 1):
            if eta not in members:
                continue
            r = rhs.get(eta, Fraction(0))
            rhs_seen = rhs_seen or r > 0
            margin = lhs.get(eta, Fraction(0)) - r
            margins[(l, eta)] = margin
            if margin < 0:
                return BoyerResult("Violated", (inst.l_min, l_max), margins, (l, eta, margin))
    b = inst.b
    verified = 0
    limit = depth if n_max is None else n_max
    lam = ConeElement.vertex(g, inst.vertex)
    for N in range(1, limit + 1):
        if cone_compare(g, lam, b.scale(N), depth).status != "ProvenGE":
            break
        verified = N
    result = BoyerResult("Satisfied", (inst.l_min, l_max), margins, None, b, verified, not rhs_seen)
    result.consequences = _consequences(g, inst, phi)
    return result


def _consequences(g: GradedGraph, inst: BoyerInstance, phi) -> dict:
    out = {"lambda_ge_N_b": True}
    if phi is None:
        out["note"] = "phi(lambda) = inf for every harmonic phi with phi(b) > 0"
        return out
    value = sum((c * phi(v) for v, c in inst.beta.items()), Fraction(0)) if all(
        phi(v) is not INF for v in inst.beta
    ) else INF
    positive = any(phi(v) != 0 for v, c in inst.beta.items() if c > 0)
    out["phi_b"] = format_ext(value)
    out["phi_lambda_infinite"] = bool(positive)
    out["semifinite_at_lambda"] = bool(positive and value is not INF)
    if not positive:
        out["note"] = "no nu with beta_nu > 0 and phi(nu) > 0: nothing follows"
    return out


@dataclass
class IdentityReport:
    lhs: Fraction
    rhs: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {"ok": self.ok, "lhs": str(self.lhs), "rhs": str(self.rhs)}


def first_entry_identity_check(g: GradedGraph, I: VertexSubset, lam, eta_bar, depth: int | None = None) -> IdentityReport:
    """Split the paths ``λ -> η̄`` by the edge on which they first enter ``I``."""
    depth = g.depth if depth is None else depth
    if lam in I.members:
        raise ContractError("lambda must lie outside the ideal")
    if eta_bar not in I.members:
        raise ContractError("eta_bar must lie in the ideal")
    if g.level(eta_bar) > depth:
        raise DepthError("eta_bar lies above the window")
    n, top = g.level(lam), g.level(eta_bar)
    lhs = g.dim(lam, eta_bar)
    rhs = Fraction(0)
    for level in range(n, top):
        for eta, c in _entry_row(g, lam, I.members, level).items():
            rhs += c * g.dim(eta, eta_bar)
    return IdentityReport(lhs, rhs)


@dataclass
class ExampleVerdict:
    status: str  # Satisfied | Violated
    margins: dict = field(default_factory=dict)
    witness: tuple | None = None
    general: BoyerResult | None = None
    m: int | None = None

    def to_json(self, g: GradedGraph) -> dict:
        out = {
            "status": self.status,
            "checked": len(self.margins),
            "min_margin": str(min(self.margins.values())) if self.margins else None,
            "m": self.m,
        }
        if self.witness is not None:
            out["witness"] = {"kind": self.witness[0], "vertex": g.label(self.witness[1]), "margin": str(self.witness[2])}
        if self.general is not None:
            out["general"] = self.general.to_json(g)
        return out


def _require_surjective(G: GluedGraph, depth: int):
    miss = G.uncovered(depth)
    if miss is not None:
        raise ContractError(f"the map is not surjective: {G.graph.label(miss)} is not covered")


def check_example1(G: GluedGraph, lam, depth: int | None = None, l_min: int = 0) -> ExampleVerdict:
    """``dim_1(λ,μ) κ(μ,μ') ≥ dim_2(λ',μ')`` for copy-1 ``μ`` above ``λ`` in the window."""
    if G.layout != "e1":
        raise ContractError("check_example1 needs the shifted 'e1' layout")
    g = G.graph
    depth = g.depth if depth is None else depth
    _require_surjective(G, depth)
    side, lam1 = lam
    if side != "1":
        raise ContractError("lambda must be a copy-1 vertex")
    lam2 = G.mapping(lam1)
    n = G.g1.level(lam1)
    margins = {}
    for level in range(n + l_min, depth):
        for mu in G.g1.vertices(level):
            mu2 = G.mapping(mu)
            lhs = G.g1.dim(lam1, mu) * g.kappa(("1", mu), ("2", mu2))
            rhs = G.g2.dim(lam2, mu2)
            margins[("1", mu)] = lhs - rhs
            if lhs < rhs:
                return ExampleVerdict("Violated", margins, ("condition", ("1", mu), lhs - rhs))
    inst = BoyerInstance(g, G.ideal(depth), lam, n + 1, {("2", lam2): 1}, l_min=l_min)
    return ExampleVerdict("Satisfied", margins, None, check_general_boyer(inst, depth), n + 1)


def check_example2(G: GluedGraph, lam, depth: int | None = None) -> ExampleVerdict:
    """Edge inequalities on the up-cone of ``λ`` in copy 1, then ``dim(λ,μ) ≥ dim_2(λ',μ')``."""
    if G.layout != "e2":
        raise ContractError("check_example2 needs the aligned 'e2' layout")
    g = G.graph
    depth = g.depth if depth is None else depth
    _require_surjective(G, depth)
    side, lam1 = lam
    if side != "1":
        raise ContractError("lambda must be a copy-1 vertex")
    cone = sorted(
        (v for v in up_set(g, lam, depth) if v[0] == "1"),
        key=lambda v: (g.level(v), G.g1.vertices(g.level(v)).index(v[1])),
    )
    margins = {}
    for x in cone:
        if g.level(x) >= depth:
            continue
        x2 = G.mapping(x[1])
        for w, k2 in G.g2.successors(x2).items():
            margin = g.kappa(x, ("2", w)) - k2
            margins[("cross", x, w)] = margin
            if margin < 0:
                return ExampleVerdict("Violated", margins, ("cross-edge", x, margin))
        for mu in G.g1.successors(x[1]):
            margin = g.kappa(x, ("1", mu)) - G.g2.kappa(x2, G.mapping(mu))
            margins[("inner", x, mu)] = margin
            if margin < 0:
                return ExampleVerdict("Violated", margins, ("inner-edge", x, margin))
    lam2 = G.mapping(lam1)
    for x in cone:
        margin = g.dim(lam, x) - G.g2.dim(lam2, G.mapping(x[1]))
        margins[("dim", x)] = margin
        if margin < 0:
            return ExampleVerdict("Violated", margins, ("dim", x, margin))
    n = g.level(lam)
    inst = BoyerInstance(g, G.ideal(depth), lam, n, {("2", lam2): 1})
    return ExampleVerdict("Satisfied", margins, None, check_general_boyer(inst, depth), n)
