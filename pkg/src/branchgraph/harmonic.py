"""Harmonic and subharmonic functions with values in ``[0, +inf]``.

A :class:`HarmonicFunction` is just a vertex -> ExtReal map (table or rule);
harmonicity is something checked, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .cone import ConeElement
from .errors import ContractError, CoverageError, DepthError, DomainError
from .extreal import INF, as_ext, ext_sum, format_ext
from .graph import GradedGraph, check_path
from .order import VertexSubset, classify_subset

__all__ = [
    "HarmonicFunction",
    "HarmonicityReport",
    "check_harmonic",
    "BoundarySets",
    "boundary_sets",
    "psi_sequence",
    "prelimit_element",
    "DiagnosticsReport",
    "semifinite_diagnostic",
    "LimitTable",
    "harmonic_from_subharmonic",
    "limit_status",
    "rescale",
    "ergodic_ratio_sequence",
]

STATUSES = ("indecomposable", "decomposable", "unknown")


class HarmonicFunction:
    """Vertex -> ExtReal map on ``graph``, from a table, a rule, or both.

    Table entries take precedence over the rule. ``status`` records what is
    known about indecomposability; it is a label, not something computed.
    """

    def __init__(
        self,
        graph: GradedGraph,
        rule: Callable | None = None,
        table: Mapping | None = None,
        *,
        name: str = "",
        status: str = "unknown",
        spec: dict | None = None,
    ):
        if rule is None and table is None:
            raise ContractError("a harmonic function needs a rule or a table")
        if status not in STATUSES:
            raise DomainError(f"unknown status {status!r}")
        self.graph = graph
        self.rule = rule
        self.table = {v: as_ext(x) for v, x in (table or {}).items()}
        self.name = name
        self.status = status
        self.spec = spec

    def __repr__(self):
        return f"HarmonicFunction({self.name or 'anonymous'!r} on {self.graph.name!r})"

    def __call__(self, v):
        if v in self.table:
            return self.table[v]
        if self.rule is None:
            raise CoverageError(f"no value for {self.graph.label(v)}", [v])
        return as_ext(self.rule(v))

    def has_value(self, v) -> bool:
        if v in self.table:
            return True
        if self.rule is None:
            return False
        try:
            self.rule(v)
        except (KeyError, LookupError):
            return False
        return True

    def values(self, depth: int) -> dict:
        missing = [v for v in self.graph.iter_vertices(depth) if not self.has_value(v)]
        if missing:
            raise CoverageError(
                f"{len(missing)} vertices lack values (first: {self.graph.label(missing[0])})", missing
            )
        return {v: self(v) for v in self.graph.iter_vertices(depth)}

    def is_normalized(self) -> bool:
        roots = self.graph.vertices(0)
        return len(roots) == 1 and self(roots[0]) == 1

    def is_finite(self, depth: int) -> bool:
        return all(x is not INF for x in self.values(depth).values())

    def to_json(self, depth: int) -> dict:
        if self.spec is not None:
            return dict(self.spec)
        return {
            "graph": self.graph.name,
            "values": {self.graph.label(v): format_ext(x) for v, x in self.values(depth).items()},
        }

    @classmethod
    def from_json(cls, g: GradedGraph, data: dict, name: str = "") -> "HarmonicFunction":
        table = {g.vertex(k): as_ext(v) for k, v in data["values"].items()}
        return cls(g, table=table, name=name or data.get("name", "table"))


@dataclass
class HarmonicityReport:
    mode: str
    depth: int
    violations: list = field(default_factory=list)  # (vertex, lhs, rhs)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self, g: GradedGraph) -> dict:
        return {
            "mode": self.mode,
            "depth": self.depth,
            "ok": self.ok,
            "violations": [
                {"vertex": g.label(v), "value": format_ext(a), "successor_sum": format_ext(b)}
                for v, a, b in self.violations
            ],
        }


def check_harmonic(phi: HarmonicFunction, depth: int, mode: str = "harmonic") -> HarmonicityReport:
    """Compare ``φ(λ)`` with ``Σ κ(λ,μ) φ(μ)`` for every ``|λ| < depth``."""
    if mode not in ("harmonic", "subharmonic"):
        raise DomainError(f"mode must be harmonic or subharmonic, not {mode!r}")
    g = phi.graph
    if depth > g.depth:
        raise DepthError(f"depth {depth} exceeds truncation depth {g.depth}")
    values = phi.values(depth)
    report = HarmonicityReport(mode, depth)
    for n in range(depth):
        for v in g.vertices(n):
            lhs = values[v]
            rhs = ext_sum(k * values[w] for w, k in g.successors(v).items())
            good = lhs == rhs if mode == "harmonic" else lhs <= rhs
            if not good:
                report.violations.append((v, lhs, rhs))
    return report


@dataclass
class BoundarySets:
    kernel: VertexSubset
    support: VertexSubset
    finiteness_ideal: VertexSubset
    flags: dict

    def to_json(self, g: GradedGraph) -> dict:
        out = {}
        for key in ("kernel", "support", "finiteness_ideal"):
            subset = getattr(self, key)
            data = subset.to_json(g)
            data["flags"] = self.flags[key].to_json(g)
            out[key] = data
        return out


def boundary_sets(phi: HarmonicFunction, depth: int) -> BoundarySets:
    g = phi.graph
    values = phi.values(depth)
    kernel = VertexSubset(frozenset(v for v, x in values.items() if x == 0), depth, "ideal", name="kernel")
    support = VertexSubset(frozenset(v for v, x in values.items() if x != 0), depth, "coideal", name="support")
    finite = VertexSubset(frozenset(v for v, x in values.items() if x is not INF), depth, "ideal", name="finiteness")
    flags = {
        "kernel": classify_subset(g, kernel, depth),
        "support": classify_subset(g, support, depth),
        "finiteness_ideal": classify_subset(g, finite, depth),
    }
    return BoundarySets(kernel, support, finite, flags)


def _finite_positive(x) -> bool:
    return x is not INF and x > 0


def psi_sequence(phi: HarmonicFunction, lam, N_max: int) -> list[Fraction]:
    """``ψ_N(λ) = Σ dim(λ,μ) φ(μ)`` over ``μ ∈ Γ_N`` with ``0 < φ(μ) < ∞``, for ``N = |λ|..N_max``."""
    g = phi.graph
    start = g.level(lam)
    if N_max > g.depth:
        raise DepthError(f"N_max {N_max} exceeds truncation depth {g.depth}")
    out = []
    for N in range(start, N_max + 1):
        total = Fraction(0)
        for mu, d in g.dim_row(lam, N).items():
            x = phi(mu)
            if _finite_positive(x):
                total += d * x
        out.append(total)
    return out


def prelimit_element(phi: HarmonicFunction, lam, N: int) -> ConeElement:
    """``b_N = Σ dim(λ,μ) μ`` over finite positive ``μ ∈ Γ_N``; ``b_N ≤_K λ`` and ``φ(b_N) = ψ_N``."""
    g = phi.graph
    return ConeElement(N, {mu: d for mu, d in g.dim_row(lam, N).items() if _finite_positive(phi(mu))})


@dataclass
class DiagnosticsReport:
    vertex: object
    value: object
    psi: list
    verdict: str  # ConsistentFinite | SemifiniteEvidence | Inconclusive
    monotone: bool
    growth: Fraction | None = None
    window: tuple | None = None
    note: str = ""

    def to_json(self, g: GradedGraph) -> dict:
        out = {
            "vertex": g.label(self.vertex),
            "value": format_ext(self.value),
            "psi": [str(x) for x in self.psi],
            "verdict": self.verdict,
            "monotone": self.monotone,
        }
        if self.growth is not None:
            out["growth"] = str(self.growth)
            out["window"] = list(self.window)
        if self.note:
            out["note"] = self.note
        return out


def semifinite_diagnostic(phi: HarmonicFunction, lam, depth: int) -> DiagnosticsReport:
    """Window evidence for finiteness or semifiniteness of ``φ`` at ``λ``.

    For ``φ(λ) = ∞`` the growth witness is the average slope ``c`` of ``ψ``
    over the trailing half of the window; evidence requires ``c > 0`` and
    ``ψ_N ≥ c·(N - |λ|)`` on that half.
    """
    g = phi.graph
    k = g.level(lam)
    value = phi(lam)
    psi = psi_sequence(phi, lam, depth)
    monotone = all(a <= b for a, b in zip(psi, psi[1:]))
    note = "" if monotone else "psi is not monotone: input is not subharmonic"
    if value is not INF:
        finite_window = phi.is_finite(depth)
        ok = all(x <= value for x in psi) and (not finite_window or all(x == value for x in psi))
        verdict = "ConsistentFinite" if ok and monotone else "Inconclusive"
        if not ok:
            note = note or "psi exceeds the value or differs from it on an everywhere-finite window"
        return DiagnosticsReport(lam, value, psi, verdict, monotone, note=note)
    mid = k + (depth - k) // 2
    if depth - mid < 1:
        return DiagnosticsReport(lam, value, psi, "Inconclusive", monotone, note="window too short")
    c = (psi[depth - k] - psi[mid - k]) / (depth - mid)
    tail_ok = c > 0 and all(psi[N - k] >= c * (N - k) for N in range(mid, depth + 1))
    if tail_ok and monotone:
        return DiagnosticsReport(lam, value, psi, "SemifiniteEvidence", monotone, c, (mid, depth), note)
    if not note:
        note = "psi does not grow linearly in the window (not a disproof)"
    return DiagnosticsReport(lam, value, psi, "Inconclusive", monotone, c, (mid, depth), note)


def limit_status(seq: Sequence) -> str:
    """Stabilized / Growing / Indeterminate for a monotone prelimit sequence."""
    if len(seq) < 2:
        return "Indeterminate"
    if seq[-1] == seq[-2]:
        return "Stabilized"
    return "Growing"


@dataclass
class LimitTable:
    """Per-vertex monotone prelimit sequences, their status and last value."""

    graph: GradedGraph
    depth: int
    sequences: dict

    def status(self, v) -> str:
        return limit_status(self.sequences[v])

    def bound(self, v):
        return self.sequences[v][-1]

    def as_function(self, name: str = "limit") -> HarmonicFunction:
        return HarmonicFunction(self.graph, table={v: s[-1] for v, s in self.sequences.items()}, name=name)

    def to_json(self, vertices=None) -> dict:
        g = self.graph
        keys = list(self.sequences) if vertices is None else list(vertices)
        return {
            g.label(v): {"status": self.status(v), "values": [format_ext(x) for x in self.sequences[v]]}
            for v in keys
        }


def harmonic_from_subharmonic(c, depth: int, graph: GradedGraph | None = None) -> LimitTable:
    """``c̄(λ) = lim_N Σ_{μ∈Γ_N} dim(λ,μ) c_μ`` reported as monotone sequences."""
    if not isinstance(c, HarmonicFunction):
        if graph is None:
            raise ContractError("a plain table needs the graph")
        c = HarmonicFunction(graph, table=c, name="c")
    report = check_harmonic(c, depth, "subharmonic")
    if not report.ok:
        v = report.violations[0][0]
        raise ContractError(f"input is not subharmonic at {c.graph.label(v)}")
    g = c.graph
    values = c.values(depth)
    seqs = {}
    for lam in g.iter_vertices(depth):
        seq = []
        for N in range(g.level(lam), depth + 1):
            seq.append(ext_sum(d * values[mu] for mu, d in g.dim_row(lam, N).items()))
        seqs[lam] = seq
    return LimitTable(g, depth, seqs)


def rescale(phi: HarmonicFunction, u) -> HarmonicFunction:
    """``λ ↦ u^{|λ|} φ(λ)``. Not claimed harmonic for the original graph."""
    if isinstance(u, float):
        raise TypeError("pass u as an exact rational")
    u = Fraction(u)
    if u <= 0:
        raise DomainError("rescaling factor must be positive")
    g = phi.graph
    return HarmonicFunction(g, rule=lambda v: u ** g.level(v) * phi(v), name=f"rescale({phi.name},{u})")


def ergodic_ratio_sequence(g: GradedGraph, lam, tau: Sequence) -> list[Fraction]:
    """``dim(λ, τ_N) / dim(τ_N)`` along a path prefix starting at the root."""
    if not g.branching:
        raise ContractError("ergodic ratios need a branching graph")
    if not tau or not check_path(g, tau) or g.level(tau[0]) != 0:
        raise ContractError("tau must be a path from the root")
    root = tau[0]
    return [g.dim(lam, v) / g.dim(root, v) for v in tau]
