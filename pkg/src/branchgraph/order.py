"""Ideals, coideals, saturation and primitivity inside a finite window.

Verdicts about infinite objects are only ever made "to depth D": vertices on
the top level of the window have unknown successors, so saturation decisions
there are reported as indeterminate rather than guessed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

from .errors import ContractError, DepthError, VertexLookupError
from .graph import GradedGraph, check_path

__all__ = [
    "VertexSubset",
    "SubsetFlags",
    "PrimitivityVerdict",
    "subset_from_members",
    "subset_from_predicate",
    "classify_subset",
    "complement",
    "saturate",
    "up_set",
    "down_set",
    "is_primitive_coideal",
    "path_coideal",
    "split_nonprimitive",
]

Vertex = Hashable


@dataclass(frozen=True)
class VertexSubset:
    """A set of vertices on levels ``0..depth`` with a claimed role.

    ``predicate`` optionally decides membership beyond the window; it is
    what lets primitivity refutations look past the top level.
    """

    members: frozenset
    depth: int
    kind: str = "plain"
    predicate: Callable[[Vertex], bool] | None = field(default=None, compare=False)
    name: str = field(default="", compare=False)

    def __contains__(self, v) -> bool:
        return v in self.members

    def __len__(self):
        return len(self.members)

    def contains_anywhere(self, g: GradedGraph, v) -> bool | None:
        """Membership for a vertex possibly above the window (None when undecidable)."""
        if v in g and g.level(v) <= self.depth:
            return v in self.members
        if self.predicate is not None:
            return bool(self.predicate(v))
        return None

    def by_level(self, g: GradedGraph) -> list[list[Vertex]]:
        return [[v for v in g.vertices(n) if v in self.members] for n in range(min(self.depth, g.depth) + 1)]

    def to_json(self, g: GradedGraph) -> dict:
        return {
            "graph": g.name,
            "kind": self.kind,
            "depth": self.depth,
            "members": {str(n): [g.label(v) for v in lv] for n, lv in enumerate(self.by_level(g)) if lv},
        }


def subset_from_members(g: GradedGraph, members: Iterable[Vertex], depth: int, kind: str = "plain", name: str = "") -> VertexSubset:
    if depth > g.depth:
        raise DepthError(f"depth {depth} exceeds truncation depth {g.depth}")
    ms = frozenset(members)
    for v in ms:
        if g.level(v) > depth:
            raise DepthError(f"member {g.label(v)} lies above depth {depth}")
    return VertexSubset(ms, depth, kind, name=name)


def subset_from_predicate(g: GradedGraph, predicate: Callable[[Vertex], bool], depth: int, kind: str = "plain", name: str = "") -> VertexSubset:
    if depth > g.depth:
        raise DepthError(f"depth {depth} exceeds truncation depth {g.depth}")
    ms = frozenset(v for v in g.iter_vertices(depth) if predicate(v))
    return VertexSubset(ms, depth, kind, predicate=predicate, name=name)


def subset_from_json(g: GradedGraph, data: dict) -> VertexSubset:
    members = [g.vertex(label) for labels in data["members"].values() for label in labels]
    depth = int(data.get("depth", max((g.level(v) for v in members), default=0)))
    return subset_from_members(g, members, depth, data.get("kind", "plain"))


def _check_members(g: GradedGraph, S: VertexSubset):
    for v in S.members:
        if v not in g:
            raise VertexLookupError(f"subset member {v!r} is not a vertex of {g.name!r}")


@dataclass
class SubsetFlags:
    is_ideal: bool
    is_coideal: bool
    is_saturated: bool
    depth: int
    witnesses: dict = field(default_factory=dict)

    def to_json(self, g: GradedGraph) -> dict:
        return {
            "is_ideal": self.is_ideal,
            "is_coideal": self.is_coideal,
            "is_saturated": self.is_saturated,
            "depth": self.depth,
            "witnesses": {k: g.label(v) for k, v in sorted(self.witnesses.items())},
        }


def classify_subset(g: GradedGraph, S: VertexSubset, depth: int | None = None) -> SubsetFlags:
    """Ideal / coideal / saturation flags of ``S`` on levels ``0..depth``, with witnesses.

    Saturation uses the ideal form (every vertex whose successors all lie in
    ``S`` is in ``S``) when ``S`` is an ideal, the coideal form (every member
    has a successor in ``S``) otherwise. Top-level vertices are not judged.
    """
    depth = S.depth if depth is None else depth
    if depth > g.depth:
        raise DepthError(f"depth {depth} exceeds truncation depth {g.depth}")
    _check_members(g, S)
    witnesses = {}
    ideal = coideal = True
    for n in range(depth + 1):
        for v in g.vertices(n):
            inside = v in S.members
            if inside and n < depth and ideal:
                if any(w not in S.members for w in g.successors(v)):
                    ideal = False
                    witnesses["not_ideal"] = v
            if inside and n > 0 and coideal:
                if any(u not in S.members for u in g.predecessors(v)):
                    coideal = False
                    witnesses["not_coideal"] = v
    saturated = True
    for n in range(depth):
        for v in g.vertices(n):
            succ = g.successors(v)
            inside = v in S.members
            if ideal:
                if not inside and succ and all(w in S.members for w in succ):
                    saturated = False
            else:
                if inside and not any(w in S.members for w in succ):
                    saturated = False
            if not saturated:
                witnesses["not_saturated"] = v
                break
        if not saturated:
            break
    if not (ideal or coideal):
        saturated = False
    return SubsetFlags(ideal, coideal, saturated, depth, witnesses)


_SWAP = {"ideal": "coideal", "coideal": "ideal", "plain": "plain"}


def complement(g: GradedGraph, S: VertexSubset, depth: int | None = None) -> VertexSubset:
    depth = S.depth if depth is None else depth
    if depth > g.depth:
        raise DepthError(f"depth {depth} exceeds truncation depth {g.depth}")
    members = frozenset(v for v in g.iter_vertices(depth) if v not in S.members)
    pred = None
    if S.predicate is not None:
        inner = S.predicate
        pred = lambda v: not inner(v)  # noqa: E731
    return VertexSubset(members, depth, _SWAP.get(S.kind, "plain"), predicate=pred)


@dataclass
class SaturationResult:
    subset: VertexSubset
    added: list
    indeterminate_level: int


def saturate(g: GradedGraph, I: VertexSubset, depth: int | None = None) -> SaturationResult:
    """Smallest saturated ideal containing ``I`` within the window.

    One top-down sweep reaches the fixpoint: adjoining a vertex on level n can
    only affect decisions on level n - 1. Level ``depth`` is indeterminate.
    """
    depth = I.depth if depth is None else depth
    flags = classify_subset(g, I, depth)
    if not flags.is_ideal:
        raise ContractError(f"not an ideal (witness {g.label(flags.witnesses['not_ideal'])})")
    current = set(I.members)
    added = []
    for n in range(depth - 1, -1, -1):
        for v in g.vertices(n):
            if v in current:
                continue
            succ = g.successors(v)
            if succ and all(w in current for w in succ):
                current.add(v)
                added.append(v)
    sat = VertexSubset(frozenset(current), depth, "ideal", name=f"sat({I.name})" if I.name else "")
    return SaturationResult(sat, added, depth)


def up_set(g: GradedGraph, v, depth: int, within: frozenset | set | None = None) -> set:
    """Vertices ``>= v`` up to ``depth``, optionally only through ``within``."""
    out = {v}
    frontier = {v}
    for _ in range(g.level(v), depth):
        nxt = set()
        for u in frontier:
            for w in g.successors(u):
                if within is None or w in within:
                    nxt.add(w)
        out |= nxt
        frontier = nxt
    return out


def down_set(g: GradedGraph, vs: Iterable, within: frozenset | set | None = None) -> set:
    out = set()
    stack = list(vs)
    while stack:
        u = stack.pop()
        if u in out:
            continue
        out.add(u)
        for p in g.predecessors(u):
            if within is None or p in within:
                stack.append(p)
    return out


@dataclass
class PrimitivityVerdict:
    status: str  # "ProvenPrimitiveToDepth" | "RefutedWithWitnessPair" | "Unknown"
    depth: int
    pairs_checked: int = 0
    witness: tuple | None = None
    majorant: object = None
    reason: str = ""

    def to_json(self, g: GradedGraph) -> dict:
        out = {"status": self.status, "depth": self.depth, "pairs_checked": self.pairs_checked, "reason": self.reason}
        if self.witness is not None:
            out["witness"] = [g.label(v) for v in self.witness]
        return out


def is_primitive_coideal(g: GradedGraph, J: VertexSubset, depth: int | None = None, margin: int | None = None) -> PrimitivityVerdict:
    """Common-majorant test for a saturated coideal.

    Every pair on levels ``<= depth - margin`` must have a common majorant in
    ``J`` within the window. A pair without one is only declared refuted when
    the graph's ``join`` shows that no majorant exists at any level: every
    common majorant dominates ``join(a, b)``, so ``join(a, b) ∉ J`` rules all
    of them out of the (downward closed) coideal.
    """
    depth = J.depth if depth is None else depth
    flags = classify_subset(g, J, depth)
    if not (flags.is_coideal and flags.is_saturated):
        raise ContractError("input is not a saturated coideal to the given depth")
    if margin is None:
        margin = (depth + 1) // 2
    top = depth - margin
    members = [v for v in g.iter_vertices(top) if v in J.members]
    cones = {v: up_set(g, v, depth, J.members) for v in members}
    checked = 0
    unresolved = None
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            checked += 1
            if cones[a] & cones[b]:
                continue
            if g.join is not None:
                j = g.join(a, b)
                if j is not None:
                    inside = J.contains_anywhere(g, j)
                    if inside is False:
                        return PrimitivityVerdict(
                            "RefutedWithWitnessPair", depth, checked, (a, b), j,
                            reason="least common majorant lies outside the coideal",
                        )
            if unresolved is None:
                unresolved = (a, b)
    if unresolved is not None:
        return PrimitivityVerdict("Unknown", depth, checked, unresolved, reason="no majorant found within the window")
    return PrimitivityVerdict("ProvenPrimitiveToDepth", depth, checked)


def path_coideal(g: GradedGraph, tau: Sequence, depth: int | None = None) -> VertexSubset:
    """Union of the down-sets of the prefix vertices, up to ``min(depth, |tau|)``."""
    if not tau or not check_path(g, tau):
        raise ContractError("tau is not a path of the graph")
    if g.level(tau[0]) != 0:
        raise ContractError("tau must start at level 0")
    end = g.level(tau[-1])
    depth = end if depth is None else min(depth, end)
    kept = [v for v in tau if g.level(v) <= depth]
    members = frozenset(down_set(g, kept))
    return VertexSubset(members, depth, "coideal")


@dataclass
class SplitResult:
    J1: VertexSubset
    J2: VertexSubset
    cone: frozenset
    saturated_cone: frozenset


def split_nonprimitive(g: GradedGraph, J: VertexSubset, lam1, lam2, depth: int | None = None) -> SplitResult:
    """Split ``J`` as ``J1 ∪ J2`` for a pair without common majorant.

    ``J1`` is the down-closure (inside ``J``) of the cone of ``lam1``;
    ``J2`` removes the saturation of that cone, taken inside the graph ``J``.
    """
    depth = J.depth if depth is None else depth
    for v in (lam1, lam2):
        if v not in J.members:
            raise ContractError(f"{g.label(v)} is not in the coideal")
    cone1 = up_set(g, lam1, depth, J.members)
    cone2 = up_set(g, lam2, depth, J.members)
    common = cone1 & cone2
    if common:
        first = min(common, key=g.level)
        raise ContractError(f"{g.label(lam1)} and {g.label(lam2)} have the common majorant {g.label(first)}")
    J1 = frozenset(down_set(g, cone1, J.members))
    sat = set(cone1)
    for n in range(depth - 1, -1, -1):
        for v in g.vertices(n):
            if v in sat or v not in J.members:
                continue
            succ_in_J = [w for w in g.successors(v) if w in J.members]
            if succ_in_J and all(w in sat for w in succ_in_J):
                sat.add(v)
    J2 = frozenset(v for v in J.members if v not in sat)
    return SplitResult(
        VertexSubset(J1, depth, "coideal"),
        VertexSubset(J2, depth, "coideal"),
        frozenset(cone1),
        frozenset(sat),
    )
