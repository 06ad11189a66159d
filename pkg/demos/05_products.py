"""
Products of graphs and the simplex of weights
=============================================

On the product of three chains (the Pascal pyramid) every normalized
indecomposable harmonic function is a tensor w_1^a w_2^b w_3^c. Recovery
reads w off finite level sums and the components off the axes.
"""

from fractions import Fraction

from branchgraph import catalog
from branchgraph.harmonic import check_harmonic
from branchgraph.products import recover_components

g = catalog.build_graph("pascal:3", 6)
phi = catalog.build_function("tensor:w=1/2,1/3,1/6", g)
print("harmonic:", check_harmonic(phi, 6).ok, " phi(1,0,0) =", phi((1, 0, 0)))

dec = recover_components(phi, 6, series=False)
print("w =", [str(x) for x in dec.w], "stratum =", [i + 1 for i in dec.stratum], "roundtrip:", dec.roundtrip)

# a boundary point of the simplex lands on a smaller stratum
edge = catalog.build_function("tensor:w=1/2,1/2,0", g)
print("stratum:", [i + 1 for i in recover_components(edge, 6, series=False).stratum])

# Bernoulli on chain x chain, and a look at the infinite series for a component
cc = catalog.build_graph("product:chain,chain", 8)
bern = catalog.build_function(f"tensor:w={Fraction(1, 3)},{Fraction(2, 3)}", cc)
dec = recover_components(bern, 8)
print({k: str(v) for k, v in dec.series[0].items()})
