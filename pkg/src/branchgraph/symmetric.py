"""Symmetric functions over the monomial basis, computed by brute force.

Everything is expressed in the monomial basis ``m_λ`` of the ring of
symmetric functions in infinitely many variables. Working with dominant
exponents only is equivalent to expanding polynomials in at least
``degree`` variables: the coefficient of ``x^ν`` never depends on how many
extra variables are present once there are ``len(ν)`` of them.

* Schur functions come from counting semistandard tableaux (Kostka numbers).
* Products of monomial symmetric functions are counted from rearrangements.
* Macdonald ``P`` functions come from Gram-Schmidt in the ``(q, t)`` inner
  product, with power sums expanded into monomials by the same product rule.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Dict, Tuple

from .errors import DomainError

Partition = Tuple[int, ...]
SymFunc = Dict[Partition, Fraction]

__all__ = [
    "partitions",
    "is_partition",
    "format_partition",
    "parse_partition",
    "add_box",
    "conjugate",
    "kostka",
    "monomial_product",
    "m_multiply",
    "schur_in_m",
    "m_to_schur",
    "schur_product",
    "monomial_at_ones",
    "schur_at_ones",
    "MacdonaldP",
]


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """Partitions of ``n`` in decreasing lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def is_partition(t) -> bool:
    return (
        isinstance(t, tuple)
        and all(isinstance(x, int) and x > 0 for x in t)
        and all(a >= b for a, b in zip(t, t[1:]))
    )


def format_partition(lam: Partition) -> str:
    return "[" + ",".join(str(x) for x in lam) + "]"


def parse_partition(text: str) -> Partition:
    body = text.strip()
    if body in {"∅", "empty", "root"}:
        return ()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    elif body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    parts = tuple(int(x) for x in body.replace(" ", "").split(",") if x)
    if not is_partition(parts):
        raise ValueError(f"{text!r} is not a partition")
    return parts


def add_box(lam: Partition) -> list[Partition]:
    """Partitions obtained from ``lam`` by adding one box."""
    out = []
    for i in range(len(lam) + 1):
        row = lam[i] if i < len(lam) else 0
        if i == 0 or lam[i - 1] > row:
            new = list(lam) + ([0] if i == len(lam) else [])
            new[i] += 1
            out.append(tuple(new))
    return out


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > j) for j in range(lam[0]))


def _horizontal_strips(lam: Partition, size: int):
    """Partitions ``rho ⊆ lam`` with ``lam/rho`` a horizontal strip of ``size`` boxes."""
    n = len(lam)

    def rec(i, remaining, acc):
        if i == n:
            if remaining == 0:
                yield tuple(x for x in acc if x > 0)
            return
        low = lam[i + 1] if i + 1 < n else 0
        for r in range(lam[i], low - 1, -1):
            take = lam[i] - r
            if take > remaining:
                break
            yield from rec(i + 1, remaining - take, acc + [r])

    yield from rec(0, size, [])


@lru_cache(maxsize=None)
def kostka(lam: Partition, content: Tuple[int, ...]) -> int:
    """Number of semistandard tableaux of shape ``lam`` and the given content.

    The largest entry occupies a horizontal strip; strip it off and recurse.
    """
    content = tuple(c for c in content if c > 0)
    if sum(lam) != sum(content):
        return 0
    if not content:
        return 1
    if len(lam) > len(content):
        return 0
    last = content[-1]
    return sum(kostka(rho, content[:-1]) for rho in _horizontal_strips(lam, last))


def _arrangements(multiset: Tuple[int, ...], bound: Tuple[int, ...]):
    """Distinct vectors of length ``len(bound)`` rearranging ``multiset`` (zero padded), entrywise <= bound."""
    counts: dict[int, int] = {}
    for x in multiset:
        counts[x] = counts.get(x, 0) + 1
    zeros = len(bound) - len(multiset)
    if zeros < 0:
        return
    counts[0] = counts.get(0, 0) + zeros
    values = sorted(counts)
    out = [0] * len(bound)

    def rec(pos):
        if pos == len(bound):
            yield tuple(out)
            return
        for v in values:
            if counts[v] and v <= bound[pos]:
                counts[v] -= 1
                out[pos] = v
                yield from rec(pos + 1)
                counts[v] += 1

    yield from rec(0)


@lru_cache(maxsize=None)
def monomial_product(alpha: Partition, beta: Partition) -> tuple[tuple[Partition, int], ...]:
    """``m_alpha * m_beta`` as sorted ``(nu, coefficient)`` pairs.

    The coefficient of ``m_nu`` is the coefficient of ``x^nu``: the number of
    ways to write ``nu = a + b`` with ``a`` a rearrangement of ``alpha`` and
    ``b`` a rearrangement of ``beta``.
    """
    if alpha > beta:
        return monomial_product(beta, alpha)
    n = sum(alpha) + sum(beta)
    la, lb = len(alpha), len(beta)
    out = []
    for nu in partitions(n):
        if not max(la, lb) <= len(nu) <= la + lb:
            continue
        count = 0
        for a in _arrangements(alpha, nu):
            rest = tuple(sorted((x - y for x, y in zip(nu, a) if x - y > 0), reverse=True))
            if rest == beta:
                count += 1
        if count:
            out.append((nu, count))
    return tuple(out)


def m_multiply(f: SymFunc, g: SymFunc) -> SymFunc:
    out: SymFunc = {}
    for a, ca in f.items():
        for b, cb in g.items():
            for nu, c in monomial_product(a, b):
                out[nu] = out.get(nu, 0) + ca * cb * c
    return {k: Fraction(v) for k, v in out.items() if v != 0}


@lru_cache(maxsize=None)
def _schur_in_m(lam: Partition) -> tuple[tuple[Partition, int], ...]:
    n = sum(lam)
    return tuple((mu, k) for mu in partitions(n) if (k := kostka(lam, mu)))


def schur_in_m(lam: Partition) -> SymFunc:
    """``s_lam = sum_mu K(lam, mu) m_mu``."""
    return {mu: Fraction(k) for mu, k in _schur_in_m(lam)}


def m_to_schur(f: SymFunc) -> SymFunc:
    """Re-expand a homogeneous symmetric function from monomials into Schur functions.

    Unitriangularity of the Kostka matrix in dominance order (refined by
    lexicographic order) gives a top-down elimination.
    """
    rest = {k: Fraction(v) for k, v in f.items() if v != 0}
    out: SymFunc = {}
    while rest:
        top = max(rest)
        c = rest[top]
        out[top] = c
        for mu, k in _schur_in_m(top):
            val = rest.get(mu, 0) - c * k
            if val:
                rest[mu] = val
            else:
                rest.pop(mu, None)
    return out


@lru_cache(maxsize=None)
def _schur_product(lam: Partition, mu: Partition) -> tuple[tuple[Partition, Fraction], ...]:
    prod = m_multiply(schur_in_m(lam), schur_in_m(mu))
    return tuple(sorted(m_to_schur(prod).items()))


def schur_product(lam: Partition, mu: Partition) -> SymFunc:
    """``s_lam * s_mu`` in the Schur basis."""
    if lam > mu:
        lam, mu = mu, lam
    return dict(_schur_product(lam, mu))


def monomial_at_ones(lam: Partition, k: int) -> int:
    """``m_lam(1, ..., 1)`` with ``k`` ones: the number of distinct exponent arrangements."""
    if len(lam) > k:
        return 0
    mult: dict[int, int] = {}
    for x in lam:
        mult[x] = mult.get(x, 0) + 1
    denom = factorial(k - len(lam))
    for c in mult.values():
        denom *= factorial(c)
    return factorial(k) // denom


def schur_at_ones(lam: Partition, k: int) -> int:
    """``s_lam(1, ..., 1)`` with ``k`` ones, i.e. the number of SSYT with entries <= k."""
    return sum(c * monomial_at_ones(mu, k) for mu, c in _schur_in_m(lam))


# -- Macdonald P functions ---------------------------------------------------


def _solve(matrix: list[list[Fraction]]) -> list[list[Fraction]]:
    """Inverse of a square Fraction matrix by Gauss-Jordan elimination."""
    n = len(matrix)
    a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise DomainError("singular transition matrix")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _z(rho: Partition) -> int:
    mult: dict[int, int] = {}
    for x in rho:
        mult[x] = mult.get(x, 0) + 1
    out = 1
    for part, c in mult.items():
        out *= part**c * factorial(c)
    return out


@lru_cache(maxsize=None)
def _power_sum_in_m(rho: Partition) -> tuple[tuple[Partition, Fraction], ...]:
    f: SymFunc = {(): Fraction(1)}
    for r in rho:
        f = m_multiply(f, {(r,): Fraction(1)})
    return tuple(sorted(f.items()))


class MacdonaldP:
    """Macdonald ``P_λ(q, t)`` in the monomial basis, for exact rational ``q, t``.

    ``P_λ = m_λ + (lexicographically smaller terms)`` and the family is
    orthogonal for ``<p_ρ, p_σ> = δ z_ρ ∏ (1 - q^{ρ_i}) / (1 - t^{ρ_i})``.
    At ``q == t`` this is the Schur basis.
    """

    def __init__(self, q, t):
        self.q = Fraction(q)
        self.t = Fraction(t)
        if self.q in (1, -1) or self.t in (1, -1):
            raise DomainError("Macdonald parameters must avoid ±1")
        self._basis: dict[int, dict[Partition, SymFunc]] = {}
        self._products: dict[tuple[Partition, Partition], SymFunc] = {}

    def _weight(self, rho: Partition) -> Fraction:
        w = Fraction(_z(rho))
        for r in rho:
            w *= (1 - self.q**r) / (1 - self.t**r)
        return w

    def _degree(self, n: int) -> dict[Partition, SymFunc]:
        if n in self._basis:
            return self._basis[n]
        parts = partitions(n)
        index = {lam: i for i, lam in enumerate(parts)}
        # rows: p_rho in monomial coordinates
        r_mat = [[Fraction(0)] * len(parts) for _ in parts]
        for i, rho in enumerate(parts):
            for lam, c in _power_sum_in_m(rho):
                r_mat[i][index[lam]] = c
        # p = R m, so m_lam = sum_rho inv[lam][rho] p_rho with inv = R^{-1}
        inv = _solve(r_mat)
        weights = [self._weight(rho) for rho in parts]
        gram = [
            [sum(inv[a][k] * inv[b][k] * weights[k] for k in range(len(parts))) for b in range(len(parts))]
            for a in range(len(parts))
        ]

        def inner(u: SymFunc, v: SymFunc) -> Fraction:
            return sum(
                (cu * cv * gram[index[a]][index[b]] for a, cu in u.items() for b, cv in v.items()),
                Fraction(0),
            )

        basis: dict[Partition, SymFunc] = {}
        norms: dict[Partition, Fraction] = {}
        for lam in reversed(parts):
            vec: SymFunc = {lam: Fraction(1)}
            for mu, pm in basis.items():
                coeff = inner({lam: Fraction(1)}, pm) / norms[mu]
                if coeff:
                    for k, v in pm.items():
                        vec[k] = vec.get(k, 0) - coeff * v
            vec = {k: v for k, v in vec.items() if v != 0}
            basis[lam] = vec
            norms[lam] = inner(vec, vec)
            if norms[lam] == 0:
                raise DomainError("degenerate Macdonald inner product")
        self._basis[n] = basis
        return basis

    def in_m(self, lam: Partition) -> SymFunc:
        return dict(self._degree(sum(lam))[lam])

    def from_m(self, f: SymFunc) -> SymFunc:
        """Expand a homogeneous symmetric function (monomial coordinates) in the ``P`` basis."""
        rest = {k: Fraction(v) for k, v in f.items() if v != 0}
        out: SymFunc = {}
        while rest:
            top = max(rest)
            c = rest[top]
            out[top] = c
            for mu, v in self._degree(sum(top))[top].items():
                val = rest.get(mu, 0) - c * v
                if val:
                    rest[mu] = val
                else:
                    rest.pop(mu, None)
        return out

    def product(self, lam: Partition, mu: Partition) -> SymFunc:
        key = (lam, mu) if lam <= mu else (mu, lam)
        if key not in self._products:
            self._products[key] = self.from_m(m_multiply(self.in_m(lam), self.in_m(mu)))
        return dict(self._products[key])
