"""Elements of K(Γ), push-down along the branching rule, and the cone order."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import ContractError, DepthError, UndefinedFormError
from .extreal import INF, as_ext, format_ext
from .graph import GradedGraph

__all__ = ["ConeElement", "ConeVerdict", "push_down", "cone_compare", "evaluate_functional"]


@dataclass(frozen=True)
class ConeElement:
    """Formal rational combination of vertices on one level."""

    level: int
    coeffs: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {v: Fraction(c) for v, c in self.coeffs.items() if Fraction(c) != 0}
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def vertex(cls, g: GradedGraph, v, scale=1) -> "ConeElement":
        return cls(g.level(v), {v: Fraction(scale)})

    def check(self, g: GradedGraph) -> "ConeElement":
        for v in self.coeffs:
            if g.level(v) != self.level:
                raise ContractError(f"{g.label(v)} is not on level {self.level}")
        return self

    @property
    def is_positive(self) -> bool:
        return all(c >= 0 for c in self.coeffs.values())

    def scale(self, c) -> "ConeElement":
        c = Fraction(c)
        return ConeElement(self.level, {v: c * x for v, x in self.coeffs.items()})

    def __sub__(self, other: "ConeElement") -> "ConeElement":
        if self.level != other.level:
            raise ContractError("difference of elements on different levels; push down first")
        out = dict(self.coeffs)
        for v, c in other.coeffs.items():
            out[v] = out.get(v, Fraction(0)) - c
        return ConeElement(self.level, out)

    def __add__(self, other: "ConeElement") -> "ConeElement":
        return self - other.scale(-1)

    def to_json(self, g: GradedGraph) -> dict:
        order = {v: i for i, v in enumerate(g.vertices(self.level))}
        items = sorted(self.coeffs.items(), key=lambda kv: order.get(kv[0], 0))
        return {"level": self.level, "coeffs": {g.label(v): str(c) for v, c in items}}

    @classmethod
    def from_json(cls, g: GradedGraph, data: dict) -> "ConeElement":
        coeffs = {g.vertex(k): Fraction(v) for k, v in data["coeffs"].items()}
        return cls(int(data["level"]), coeffs).check(g)


def push_down(g: GradedGraph, a: ConeElement, target_level: int) -> ConeElement:
    """Rewrite ``a`` on ``target_level`` using ``λ = Σ κ(λ,μ) μ``."""
    if target_level > g.depth:
        raise DepthError(f"target level {target_level} beyond truncation depth {g.depth}")
    if target_level < a.level:
        raise ContractError("push_down only moves up the levels")
    a.check(g)
    out: dict = {}
    for v, c in a.coeffs.items():
        for w, d in g.dim_row(v, target_level).items():
            out[w] = out.get(w, Fraction(0)) + c * d
    return ConeElement(target_level, out)


@dataclass
class ConeVerdict:
    status: str  # "ProvenGE" | "Refuted" | "Unknown"
    level: int | None = None
    witness: str | None = None
    values: tuple = ()

    def to_json(self) -> dict:
        out = {"status": self.status}
        if self.level is not None:
            out["level"] = self.level
        if self.witness is not None:
            out["witness"] = self.witness
            out["values"] = [format_ext(x) for x in self.values]
        return out


def cone_compare(
    g: GradedGraph,
    a: ConeElement,
    b: ConeElement,
    depth: int | None = None,
    refuters: Iterable[Callable] = (),
) -> ConeVerdict:
    """Semi-decide ``a ≥_K b`` inside the window.

    Refuters are finite harmonic functions; since evaluation is monotone for
    the cone order, ``φ(a) < φ(b)`` disproves ``a ≥_K b``.
    """
    depth = g.depth if depth is None else depth
    if depth > g.depth:
        raise DepthError(f"depth {depth} exceeds truncation depth {g.depth}")
    start = max(a.level, b.level)
    for L in range(start, depth + 1):
        diff = push_down(g, a, L) - push_down(g, b, L)
        if diff.is_positive:
            return ConeVerdict("ProvenGE", level=L)
    for phi in refuters:
        va, vb = evaluate_functional(phi, a), evaluate_functional(phi, b)
        if va is not INF and (vb is INF or va < vb):
            name = getattr(phi, "name", None) or repr(phi)
            return ConeVerdict("Refuted", witness=name, values=(va, vb))
    return ConeVerdict("Unknown")


def evaluate_functional(phi: Callable, a: ConeElement):
    """``Σ c_v φ(v)`` with ``0·∞ = 0``; infinity meeting a negative coefficient is undefined."""
    total = Fraction(0)
    infinite = False
    signed = any(c < 0 for c in a.coeffs.values())
    for v, c in a.coeffs.items():
        val = as_ext(phi(v))
        if val is INF:
            if signed:
                raise UndefinedFormError("signed combination meets an infinite value")
            infinite = True
        else:
            total += c * val
    return INF if infinite else total
