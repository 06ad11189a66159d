"""Restriction to an ideal and extension back to the whole graph."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContractError, DepthError
from .extreal import ext_sum
from .graph import GradedGraph
from .harmonic import HarmonicFunction, HarmonicityReport, LimitTable, check_harmonic
from .order import VertexSubset, classify_subset

__all__ = ["IdealRestriction", "restrict", "restriction_from_function", "extend", "extend_value"]


@dataclass
class IdealRestriction:
    """A function on an ideal, viewed as a graded graph with the induced edges.

    ``degenerate`` is set when the function vanishes on the ideal inside the
    window; the correspondence needs it to be nonzero there.
    """

    ideal: VertexSubset
    graph: GradedGraph
    phi: HarmonicFunction
    degenerate: bool
    report: HarmonicityReport | None = None

    def to_json(self) -> dict:
        g = self.graph
        return {
            "ideal": self.ideal.name or "ideal",
            "depth": self.ideal.depth,
            "degenerate": self.degenerate,
            "harmonic_on_ideal": None if self.report is None else self.report.ok,
            "values": {g.label(v): str(self.phi(v)) for v in g.iter_vertices(self.ideal.depth)},
        }


def _ideal_graph(g: GradedGraph, I: VertexSubset, depth: int) -> GradedGraph:
    if depth > g.depth or depth > I.depth:
        raise DepthError(f"depth {depth} exceeds the window")
    flags = classify_subset(g, I, depth)
    if not flags.is_ideal:
        raise ContractError(f"not an ideal (witness {g.label(flags.witnesses['not_ideal'])})")
    members = [v for v in I.members if g.level(v) <= depth]
    sub = g.subgraph(members, name=f"{g.name}|{I.name or 'ideal'}")
    return sub


def restrict(phi: HarmonicFunction, I: VertexSubset, depth: int | None = None) -> IdealRestriction:
    """Table restriction ``φ|_I``, checked harmonic on the induced graph."""
    g = phi.graph
    depth = I.depth if depth is None else depth
    sub = _ideal_graph(g, I, depth)
    table = {v: phi(v) for v in sub.iter_vertices()}
    phi_I = HarmonicFunction(sub, table=table, name=f"{phi.name}|I", status=phi.status)
    degenerate = all(x == 0 for x in table.values())
    return IdealRestriction(I, sub, phi_I, degenerate, check_harmonic(phi_I, depth))


def restriction_from_function(g: GradedGraph, I: VertexSubset, phi_I, depth: int | None = None, check: bool = True) -> IdealRestriction:
    """Wrap a function given directly on the ideal (a callable or a table)."""
    depth = I.depth if depth is None else depth
    sub = _ideal_graph(g, I, depth)
    if isinstance(phi_I, HarmonicFunction):
        source = phi_I
        phi_I = lambda v: source(v)  # noqa: E731
    if callable(phi_I):
        table = {v: phi_I(v) for v in sub.iter_vertices()}
    else:
        table = {v: phi_I[v] for v in sub.iter_vertices()}
    f = HarmonicFunction(sub, table=table, name="phi_I")
    degenerate = all(x == 0 for x in f.table.values())
    report = check_harmonic(f, depth) if check else None
    return IdealRestriction(I, sub, f, degenerate, report)


def extend_value(res: IdealRestriction, g: GradedGraph, lam, N: int):
    """Prelimit value ``Σ_{μ∈I_N} dim(λ,μ) φ_I(μ)``."""
    members = res.ideal.members
    return ext_sum(d * res.phi(mu) for mu, d in g.dim_row(lam, N).items() if mu in members)


def extend(res: IdealRestriction, g: GradedGraph, depth: int | None = None) -> LimitTable:
    """Monotone prelimit sequences of the extension at every vertex to ``depth``."""
    if res.degenerate:
        raise ContractError("the function vanishes on the ideal inside the window")
    depth = res.ideal.depth if depth is None else depth
    if depth > res.ideal.depth:
        raise DepthError(f"depth {depth} exceeds the ideal's window {res.ideal.depth}")
    seqs = {}
    for lam in g.iter_vertices(depth):
        seqs[lam] = [extend_value(res, g, lam, N) for N in range(g.level(lam), depth + 1)]
    return LimitTable(g, depth, seqs)
