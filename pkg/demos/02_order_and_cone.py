"""
Ideals, coideals and the cone order
===================================

Upward-closed sets (ideals) and downward-closed sets (coideals) organise the
boundary of a harmonic function. A coideal is primitive when any two of its
members have a common majorant inside it.
"""

from branchgraph import catalog
from branchgraph.cone import ConeElement, cone_compare, push_down
from branchgraph.order import classify_subset, is_primitive_coideal, saturate, split_nonprimitive

g = catalog.build_graph("pascal2", 8)

half = catalog.build_subset("a>=1", g, 8)
print("a>=1:", classify_subset(g, half, 8).to_json(g))

axes = catalog.build_subset("two-axes", g, 8)
verdict = is_primitive_coideal(g, axes, 8)
print("two axes:", verdict.status, [g.label(v) for v in verdict.witness])

# the two axes come apart into two saturated coideals
split = split_nonprimitive(g, axes, (1, 0), (0, 1), 8)
print("J1 =", sorted(g.label(v) for v in split.J1.members if g.level(v) <= 3))
print("J2 =", sorted(g.label(v) for v in split.J2.members if g.level(v) <= 3))

# saturating a tail of the chain fills it in from below
chain = catalog.build_graph("chain", 8)
res = saturate(chain, catalog.build_subset("n>=3", chain, 8), 8)
print("saturated chain tail:", sorted(res.subset.members))

# the root dominates every multiple dim(root, mu) * mu in the cone order
root = ConeElement.vertex(g, (0, 0))
print(push_down(g, root, 2).to_json(g))
print(cone_compare(g, root, ConeElement.vertex(g, (2, 1), 3), 8).to_json())
bern = catalog.build_function("bernoulli:p=1/2", g)
print(cone_compare(g, ConeElement.vertex(g, (1, 0)), ConeElement.vertex(g, (1, 0), 2), 8, [bern]).to_json())
