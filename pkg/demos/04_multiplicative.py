"""
Multiplicative graphs and the ring criterion
============================================

The Young graph is the branching rule of multiplication by s_1 in the ring of
symmetric functions. A finite normalized harmonic function is indecomposable
exactly when its linear extension is multiplicative, which can be tested pair
by pair up to a total degree.
"""

from branchgraph import catalog
from branchgraph.multiplicative import AlgebraElement, forbidding_precondition, multiply, ring_theorem_check

M = catalog.build_structure("young", 6)
g = M.graph
s21 = AlgebraElement.basis((2, 1))
print("s21 * s21 =", multiply(M, s21, s21).to_json(g))

for name in ("schur-spec:k=2", "schur-spec:k=3", "schur-mix:k=2,3"):
    verdict = ring_theorem_check(M, catalog.build_function(name, g), 5)
    print(name, verdict.to_json(g))

print(forbidding_precondition(M, 6).status)
