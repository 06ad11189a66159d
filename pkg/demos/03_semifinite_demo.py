"""
A semifinite harmonic function on a glued graph
===============================================

Two copies of the Pascal triangle, the second one shifted up a level, with
each vertex of the first copy joined to its twin. The function is infinite on
copy 1 and Bernoulli(1/2) on copy 2. It is harmonic because infinity absorbs
finite sums. The prelimit sums at the copy-1 root grow like N, which is the
window signature of a semifinite value.
"""

from branchgraph import catalog
from branchgraph.boyer import BoyerInstance, check_general_boyer
from branchgraph.extres import extend, restrict
from branchgraph.harmonic import check_harmonic, psi_sequence, semifinite_diagnostic

g = catalog.build_graph("glued-pascal-demo", 12)
phi = catalog.build_function("glued-semifinite-demo", g)
print("harmonic:", check_harmonic(phi, 12).ok)

root1 = g.vertex("root@1")
print("psi:", [str(x) for x in psi_sequence(phi, root1, 12)])
print(semifinite_diagnostic(phi, root1, 12).verdict)

# path-counting certificate: the copy-1 root dominates N times the copy-2 root
copy2 = catalog.build_subset("copy2", g, 12)
inst = BoyerInstance(g, copy2, root1, 1, {g.vertex("root@2"): 1})
result = check_general_boyer(inst, 12, phi)
print(result.status, "verified up to N =", result.verified_N)
print(result.consequences)

# the same function comes back from its finite part on copy 2
table = extend(restrict(phi, copy2, 12), g, 12)
print("extension at root@1:", table.status(root1), [str(x) for x in table.sequences[root1][:6]])

# without a surjective gluing map the certificate fails
bad = catalog.build_graph("chain-into-pascal", 8)
inst = BoyerInstance(bad, catalog.build_subset("copy2", bad, 8), bad.vertex("0@1"), 1, {bad.vertex("root@2"): 1})
print(check_general_boyer(inst, 8).to_json(bad)["witness"])
