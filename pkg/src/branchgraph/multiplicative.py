"""Multiplicative graphs: a graded algebra whose basis is the vertex set.

Structure constants come from pluggable oracles ``(λ, μ) -> {ν: c}``. The
oracles in this module are derived mechanically: monomial arithmetic for
Pascal graphs and brute-force symmetric-function expansion for partitions.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .cone import ConeElement
from .errors import ContractError, DepthError
from .extreal import INF, ext_sum, format_ext
from .graph import GradedGraph
from .symmetric import MacdonaldP, monomial_product, schur_product

__all__ = [
    "MultiplicativeStructure",
    "AlgebraElement",
    "monomial_oracle",
    "schur_oracle",
    "kingman_oracle",
    "macdonald_oracle",
    "zero_pair_oracle",
    "multiply",
    "verify_structure",
    "ring_theorem_check",
    "forbidding_precondition",
    "companion_check",
    "represent_in_R",
]

Oracle = Callable[[object, object], Mapping]


def monomial_oracle(lam, mu):
    """``x^λ · x^μ = x^{λ+μ}`` for exponent tuples."""
    return {tuple(a + b for a, b in zip(lam, mu)): Fraction(1)}


def schur_oracle(lam, mu):
    return schur_product(lam, mu)


def kingman_oracle(lam, mu):
    return {nu: Fraction(c) for nu, c in monomial_product(lam, mu)}


def macdonald_oracle(q, t) -> Oracle:
    family = MacdonaldP(q, t)
    return family.product


def zero_pair_oracle(base: Oracle, pair) -> Oracle:
    """``base`` with the product of one pair (either order) forced to zero."""
    blocked = {tuple(pair), tuple(reversed(pair))}

    def oracle(lam, mu):
        if (lam, mu) in blocked:
            return {}
        return base(lam, mu)

    return oracle


@dataclass(frozen=True)
class AlgebraElement:
    """Finite rational combination of basis vectors ``a_λ``."""

    coeffs: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {v: Fraction(c) for v, c in self.coeffs.items() if c != 0})

    @classmethod
    def basis(cls, v, c=1) -> "AlgebraElement":
        return cls({v: Fraction(c)})

    def degrees(self, g: GradedGraph) -> set:
        return {g.level(v) for v in self.coeffs}

    def component(self, g: GradedGraph, d: int) -> "AlgebraElement":
        return AlgebraElement({v: c for v, c in self.coeffs.items() if g.level(v) == d})

    def to_json(self, g: GradedGraph) -> dict:
        order = {v: i for i, v in enumerate(g.iter_vertices())}
        items = sorted(self.coeffs.items(), key=lambda kv: order[kv[0]])
        return {g.label(v): str(c) for v, c in items}


class MultiplicativeStructure:
    """Graph plus a structure-constant oracle; ``â`` is read off the root's edge row."""

    def __init__(self, graph: GradedGraph, oracle: Oracle, name: str = ""):
        roots = graph.vertices(0)
        if len(roots) != 1:
            raise ContractError("a multiplicative structure needs a single root")
        self.graph = graph
        self.oracle = oracle
        self.name = name or graph.name
        self.unit = roots[0]
        self.a_hat = AlgebraElement(dict(graph.successors(self.unit)))
        self._cache: dict = {}
        self._lock = threading.Lock()

    def constants(self, lam, mu) -> dict:
        """``{ν: c^ν_{λμ}}`` with zero entries dropped (cached)."""
        key = (lam, mu)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        g = self.graph
        deg = g.level(lam) + g.level(mu)
        if deg > g.depth:
            raise DepthError(f"product degree {deg} beyond the graph window {g.depth}")
        try:
            raw = self.oracle(lam, mu)
        except Exception as exc:
            raise ContractError(f"oracle failed on ({g.label(lam)}, {g.label(mu)}): {exc}") from exc
        row = {nu: Fraction(c) for nu, c in raw.items() if c != 0}
        with self._lock:
            self._cache.setdefault(key, row)
        return self._cache[key]

    def pairs(self, depth: int):
        """Ordered pairs ``(λ, μ)`` with ``|λ| + |μ| ≤ depth``, in a fixed order."""
        g = self.graph
        for total in range(depth + 1):
            for i in range(total + 1):
                for lam in g.vertices(i):
                    for mu in g.vertices(total - i):
                        yield lam, mu


def multiply(M: MultiplicativeStructure, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    out: dict = {}
    for u, cu in a.coeffs.items():
        for v, cv in b.coeffs.items():
            for nu, c in M.constants(u, v).items():
                out[nu] = out.get(nu, Fraction(0)) + cu * cv * c
    return AlgebraElement(out)


@dataclass
class StructureReport:
    depth: int
    pairs_checked: int = 0
    issues: list = field(default_factory=list)  # (kind, λ, μ, detail)

    @property
    def ok(self) -> bool:
        return not self.issues

    def to_json(self, g: GradedGraph) -> dict:
        return {
            "depth": self.depth,
            "ok": self.ok,
            "pairs_checked": self.pairs_checked,
            "issues": [
                {"kind": k, "left": g.label(a), "right": g.label(b), "detail": d} for k, a, b, d in self.issues
            ],
        }


def verify_structure(M: MultiplicativeStructure, depth: int) -> StructureReport:
    """Grading, unit, nonnegativity and ``â·a_λ = Σ κ(λ,μ) a_μ`` up to ``depth``."""
    g = M.graph
    report = StructureReport(depth)
    for lam, mu in M.pairs(depth):
        report.pairs_checked += 1
        row = M.constants(lam, mu)
        deg = g.level(lam) + g.level(mu)
        for nu, c in row.items():
            if nu not in g or g.level(nu) != deg:
                report.issues.append(("grading", lam, mu, f"term {nu!r} outside degree {deg}"))
            elif c < 0:
                report.issues.append(("negative", lam, mu, f"{g.label(nu)}: {c}"))
        if lam == M.unit and row != {mu: 1}:
            report.issues.append(("unit", lam, mu, "left unit fails"))
        if mu == M.unit and row != {lam: 1}:
            report.issues.append(("unit", lam, mu, "right unit fails"))
    for lam in g.iter_vertices(depth - 1):
        got = multiply(M, M.a_hat, AlgebraElement.basis(lam)).coeffs
        want = dict(g.successors(lam))
        if got != want:
            report.issues.append(("pieri", M.unit, lam, "â·a_λ differs from the edge row"))
    return report


def _evaluate(phi, a: AlgebraElement):
    return ext_sum(c * phi(v) for v, c in a.coeffs.items())


@dataclass
class RingVerdict:
    status: str  # MultiplicativeToDepth | Violation
    depth: int
    pairs_checked: int
    witness: tuple | None = None
    gap: Fraction | None = None

    def to_json(self, g: GradedGraph) -> dict:
        out = {"status": self.status, "depth": self.depth, "pairs_checked": self.pairs_checked}
        if self.witness is not None:
            out["witness"] = [g.label(v) for v in self.witness]
            out["gap"] = str(self.gap)
        return out


def ring_theorem_check(M: MultiplicativeStructure, phi, depth: int) -> RingVerdict:
    """``φ(a_λ a_μ) = φ(λ) φ(μ)`` for all ``|λ| + |μ| ≤ depth``; the first failure is the witness."""
    g = M.graph
    for v in g.iter_vertices(depth):
        if phi(v) is INF:
            raise ContractError("ring theorem check needs a finite function")
    if phi(M.unit) != 1:
        raise ContractError("ring theorem check needs a normalized function")
    checked = 0
    for lam, mu in M.pairs(depth):
        checked += 1
        lhs = _evaluate(phi, AlgebraElement(M.constants(lam, mu)))
        rhs = phi(lam) * phi(mu)
        if lhs != rhs:
            return RingVerdict("Violation", depth, checked, (lam, mu), lhs - rhs)
    return RingVerdict("MultiplicativeToDepth", depth, checked)


@dataclass
class ForbiddingVerdict:
    status: str  # AllProductsNonzero | ZeroProductWitness
    depth: int
    pairs_checked: int
    witness: tuple | None = None

    def to_json(self, g: GradedGraph) -> dict:
        out = {"status": self.status, "depth": self.depth, "pairs_checked": self.pairs_checked}
        if self.witness is not None:
            out["witness"] = [g.label(v) for v in self.witness]
        return out


def forbidding_precondition(M: MultiplicativeStructure, depth: int) -> ForbiddingVerdict:
    checked = 0
    for lam, mu in M.pairs(depth):
        checked += 1
        if not M.constants(lam, mu):
            return ForbiddingVerdict("ZeroProductWitness", depth, checked, (lam, mu))
    return ForbiddingVerdict("AllProductsNonzero", depth, checked)


@dataclass
class CompanionReport:
    depth: int
    pairs_checked: int = 0
    violations: list = field(default_factory=list)  # (λ, μ, lhs, rhs)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self, g: GradedGraph) -> dict:
        return {
            "depth": self.depth,
            "ok": self.ok,
            "pairs_checked": self.pairs_checked,
            "violations": [
                {"left": g.label(a), "right": g.label(b), "lhs": format_ext(x), "rhs": format_ext(y)}
                for a, b, x, y in self.violations
            ],
        }


def companion_check(M: MultiplicativeStructure, phi, psi, depth: int) -> CompanionReport:
    """``φ(a_λ a_μ) = ψ(λ) φ(μ)`` whenever ``φ(μ) < ∞``."""
    report = CompanionReport(depth)
    for lam, mu in M.pairs(depth):
        phi_mu = phi(mu)
        if phi_mu is INF:
            continue
        report.pairs_checked += 1
        lhs = _evaluate(phi, AlgebraElement(M.constants(lam, mu)))
        rhs = psi(lam) * phi_mu
        if lhs != rhs:
            report.violations.append((lam, mu, lhs, rhs))
    return report


def represent_in_R(M: MultiplicativeStructure, a: AlgebraElement, degree: int) -> ConeElement:
    """Class of ``a`` in ``A/(â - 1)`` written on level ``degree``: pad each component by powers of ``â``."""
    g = M.graph
    if degree > g.depth:
        raise DepthError(f"degree {degree} beyond the graph window {g.depth}")
    degrees = a.degrees(g)
    if degrees and max(degrees) > degree:
        raise ContractError("target degree is below the element's top degree")
    total: dict = {}
    for d in sorted(degrees):
        piece = a.component(g, d)
        for _ in range(degree - d):
            piece = multiply(M, M.a_hat, piece)
        for v, c in piece.coeffs.items():
            total[v] = total.get(v, Fraction(0)) + c
    return ConeElement(degree, total)
