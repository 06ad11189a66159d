"""Direct products of graded graphs and tensor harmonic functions on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from math import factorial
from typing import Sequence

from .errors import ContractError, DepthError, DomainError
from .graph import GradedGraph
from .harmonic import HarmonicFunction

__all__ = [
    "product_graph",
    "product_dim",
    "multinomial",
    "split_label",
    "simplex_point",
    "tensor_harmonic",
    "Decomposition",
    "recover_components",
    "weight_identity",
]


def multinomial(parts: Sequence[int]) -> int:
    out = factorial(sum(parts))
    for k in parts:
        out //= factorial(k)
    return out


def split_label(text: str) -> list[str]:
    """Split ``"(a,[2,1],(0,1))"`` at top-level commas: ``["a", "[2,1]", "(0,1)"]``."""
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ValueError(f"product labels are parenthesized: {text!r}")
    body = text[1:-1]
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(body[start:i].strip())
            start = i + 1
    parts.append(body[start:].strip())
    return parts


def _compositions(total: int, n: int):
    if n == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, n - 1):
            yield (first,) + rest


def product_graph(factors: Sequence[GradedGraph], depth: int, name: str | None = None) -> GradedGraph:
    """Levelwise product; one coordinate moves along each edge with its own weight.

    Vertices are flat tuples of factor vertices; labels join the factor labels
    inside parentheses.
    """
    factors = tuple(factors)
    if len(factors) < 2:
        raise ContractError("a product needs at least two factors")
    for f in factors:
        if f.depth < depth:
            raise DepthError(f"factor {f.name!r} is only known to depth {f.depth}")
    k = len(factors)
    levels = []
    for n in range(depth + 1):
        lv = []
        for comp in _compositions(n, k):
            lv.extend(cartesian(*(f.vertices(c) for f, c in zip(factors, comp))))
        levels.append(lv)
    edges = {}
    for n in range(depth):
        for v in levels[n]:
            for i, f in enumerate(factors):
                for w, kappa in f.successors(v[i]).items():
                    edges[(v, v[:i] + (w,) + v[i + 1:])] = kappa

    def fmt(v):
        return "(" + ",".join(f.label(x) for f, x in zip(factors, v)) + ")"

    def parse(text):
        parts = split_label(text)
        if len(parts) != k:
            raise ValueError(f"expected {k} components")
        return tuple(f.vertex(p) for f, p in zip(factors, parts))

    def join(a, b):
        parts = [f.join(x, y) for f, x, y in zip(factors, a, b)]
        return None if any(p is None for p in parts) else tuple(parts)

    g = GradedGraph(
        levels,
        edges,
        name=name or "x".join(f.name for f in factors),
        branching=all(f.branching for f in factors),
        formatter=fmt,
        parser=parse,
        join=join if all(f.join is not None for f in factors) else None,
    )
    g.factors = factors
    return g


def _factors_of(g: GradedGraph, factors=None):
    factors = factors if factors is not None else getattr(g, "factors", None)
    if not factors:
        raise ContractError(f"graph {g.name!r} does not record product factors")
    return tuple(factors)


def product_dim(factors: Sequence[GradedGraph], src: Sequence, dst: Sequence) -> Fraction:
    """Closed form: multinomial in the level gaps times the factor dimensions."""
    gaps = []
    total = Fraction(1)
    for f, a, b in zip(factors, src, dst):
        gap = f.level(b) - f.level(a)
        if gap < 0:
            return Fraction(0)
        gaps.append(gap)
        total *= f.dim(a, b)
        if total == 0:
            return total
    return multinomial(gaps) * total


def simplex_point(w) -> tuple[Fraction, ...]:
    out = []
    for x in w:
        if isinstance(x, float):
            raise TypeError("simplex coordinates must be exact rationals")
        out.append(Fraction(x))
    if any(x < 0 for x in out) or sum(out) != 1:
        raise DomainError(f"{[str(x) for x in out]} is not a point of the simplex")
    return tuple(out)


def tensor_harmonic(g: GradedGraph, phis: Sequence, w, name: str = "") -> HarmonicFunction:
    """``φ(λ_1..λ_n) = Π w_i^{|λ_i|} φ_i(λ_i)`` with ``0^0 = 1``."""
    factors = _factors_of(g)
    if len(phis) != len(factors):
        raise ContractError("one function per factor is needed")
    w = simplex_point(w)
    if len(w) != len(factors):
        raise ContractError("one weight per factor is needed")

    def rule(v):
        out = Fraction(1)
        for f, phi, wi, x in zip(factors, phis, w, v):
            lv = f.level(x)
            if wi == 0 and lv > 0:
                return Fraction(0)
            out *= wi ** lv * phi(x)
        return out

    label = name or "tensor:w=" + ",".join(str(x) for x in w)
    return HarmonicFunction(g, rule=rule, name=label, status="indecomposable")


def weight_identity(phi: HarmonicFunction, ks: Sequence[int], factors=None) -> Fraction:
    """``Σ_{|λ_i| = k_i} Π dim(λ_i) φ(λ_1..λ_n)``, which equals ``Π w_i^{k_i}``."""
    factors = _factors_of(phi.graph, factors)
    total = Fraction(0)
    per_factor = []
    for f, k in zip(factors, ks):
        root = f.vertices(0)[0]
        per_factor.append([(x, f.dim(root, x)) for x in f.vertices(k)])
    for combo in cartesian(*per_factor):
        d = Fraction(1)
        for _, dx in combo:
            d *= dx
        total += d * phi(tuple(x for x, _ in combo))
    return total


@dataclass
class Decomposition:
    stratum: tuple
    w: tuple
    components: dict  # i -> {vertex: value}
    weight_table: dict  # ks -> value
    consistent: bool
    roundtrip: bool | None
    series: dict = field(default_factory=dict)  # i -> {vertex: partial sum}
    issues: list = field(default_factory=list)

    def to_json(self, g: GradedGraph) -> dict:
        factors = g.factors
        return {
            "stratum": [i + 1 for i in self.stratum],
            "w": [str(x) for x in self.w],
            "consistent": self.consistent,
            "roundtrip": self.roundtrip,
            "components": {
                str(i + 1): {factors[i].label(v): str(x) for v, x in table.items()}
                for i, table in sorted(self.components.items())
            },
            "weights": {",".join(map(str, ks)): str(x) for ks, x in sorted(self.weight_table.items())},
            "series_lower_bounds": {
                str(i + 1): {factors[i].label(v): str(x) for v, x in table.items()}
                for i, table in sorted(self.series.items())
            },
            "issues": self.issues,
        }


def _embed(n: int, i: int, roots, x):
    return tuple(x if j == i else roots[j] for j in range(n))


def recover_components(phi: HarmonicFunction, depth: int, factors=None, series: bool = True) -> Decomposition:
    """Recover ``(I, w, φ_i)`` from a normalized harmonic function on a product.

    ``w`` and the table of ``Π w^k`` come from the finite weight identity at
    every level. Components are read along the axes as
    ``φ_i(μ) = φ(∅,..,μ,..,∅) / w_i^{|μ|}``. The multinomial series for
    ``φ_i`` is infinite, so its window partial sums are reported separately
    as lower bounds.
    """
    g = phi.graph
    factors = _factors_of(g, factors)
    n = len(factors)
    if depth > g.depth:
        raise DepthError(f"depth {depth} exceeds truncation depth {g.depth}")
    roots = tuple(f.vertices(0)[0] for f in factors)
    if phi(roots) != 1:
        raise ContractError("recovery needs a normalized function")
    w = tuple(weight_identity(phi, tuple(int(j == i) for j in range(n)), factors) for i in range(n))
    issues = []
    if sum(w) != 1:
        issues.append(f"recovered weights sum to {sum(w)}")
    stratum = tuple(i for i in range(n) if w[i] > 0)
    table = {}
    consistent = not issues
    for total in range(depth + 1):
        for ks in _compositions(total, n):
            val = weight_identity(phi, ks, factors)
            table[ks] = val
            expect = Fraction(1)
            for wi, k in zip(w, ks):
                expect *= wi ** k
            if val != expect:
                consistent = False
                issues.append(f"weights at {ks}: {val} != {expect}")
    components = {}
    for i in stratum:
        f = factors[i]
        components[i] = {
            x: phi(_embed(n, i, roots, x)) / w[i] ** f.level(x) for x in f.iter_vertices(depth)
        }
    partial = {}
    if series:
        for i in stratum:
            partial[i] = _series_partial_sums(phi, factors, i, depth, roots)
    roundtrip = None
    if consistent:
        def unit(_):
            return Fraction(1)

        phis = [(lambda x, t=components[i]: t[x]) if i in components else unit for i in range(n)]
        rebuilt = tensor_harmonic(g, phis, w)
        roundtrip = all(rebuilt(v) == phi(v) for v in g.iter_vertices(depth))
        if not roundtrip:
            issues.append("re-tensored components differ from the input")
    return Decomposition(stratum, w, components, table, consistent, roundtrip, partial, issues)


def _series_partial_sums(phi, factors, i, depth, roots) -> dict:
    """Window partial sums of the multinomial series for ``φ_i(μ)``, ``|μ| ≥ 1``."""
    n = len(factors)
    f = factors[i]
    out = {f.vertices(0)[0]: Fraction(1)}
    others = [j for j in range(n) if j != i]
    for mu in f.iter_vertices(depth):
        m = f.level(mu)
        if m == 0:
            continue
        total = Fraction(0)
        for budget in range(depth - m + 1):
            for ks in _compositions(budget, len(others)):
                pools = []
                for j, k in zip(others, ks):
                    fj = factors[j]
                    pools.append([(x, fj.dim(roots[j], x)) for x in fj.vertices(k)])
                parts = [0] * n
                for j, k in zip(others, ks):
                    parts[j] = k
                parts[i] = m - 1
                mc = multinomial(parts)
                for combo in cartesian(*pools):
                    v = [None] * n
                    d = Fraction(mc)
                    for j, (x, dx) in zip(others, combo):
                        v[j] = x
                        d *= dx
                    v[i] = mu
                    total += d * phi(tuple(v))
        out[mu] = total
    return out
