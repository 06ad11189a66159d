"""
Counting paths in branching graphs
==================================

Dimensions are weighted path counts. On the Pascal triangle they are binomial
coefficients, on the Young graph they count standard tableaux, and on the
Kingman graph the edges carry integer weights.
"""

from branchgraph import catalog
from branchgraph.graph import enumerate_paths

pascal = catalog.build_graph("pascal2", 6)
root = pascal.vertex("(0,0)")
for n in range(5):
    print(n, [str(pascal.dim(root, v)) for v in pascal.vertices(n)])

# the same number two ways: memoized rows and brute-force enumeration
young = catalog.build_graph("young", 6)
lam = young.vertex("[3,2,1]")
paths = enumerate_paths(young, young.vertex("[]"), lam)
print("dim [3,2,1] =", young.dim(young.vertex("[]"), lam), "paths:", len(paths))

# Kingman edges come from multiplying monomial symmetric functions by m_1
kingman = catalog.build_graph("kingman", 4)
for v, k in kingman.successors(kingman.vertex("[2,1]")).items():
    print("[2,1] ->", kingman.label(v), "weight", k)

# products of graphs: dimensions factor through a multinomial coefficient
pp = catalog.build_graph("product:pascal2,pascal2", 5)
a, b = pp.vertex("((1,0),(0,0))"), pp.vertex("((2,1),(1,1))")
print("Pascal x Pascal:", pp.dim(a, b))
