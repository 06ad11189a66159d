from fractions import Fraction

import pytest

from branchgraph import catalog
from branchgraph.boyer import BoyerInstance, check_example1, check_example2, check_general_boyer, first_entry_identity_check, glue
from branchgraph.errors import ContractError
from branchgraph.graph import enumerate_paths
from branchgraph.harmonic import check_harmonic


def pascal(depth):
    return catalog.build_graph("pascal2", depth)


def chain(depth):
    return catalog.build_graph("chain", depth)


def test_demo_satisfied(glued):
    I = catalog.build_subset("copy2", glued, 12)
    inst = BoyerInstance(glued, I, glued.vertex("(0,0)@1"), 1, {glued.vertex("root@2"): 1})
    res = check_general_boyer(inst, 12)
    assert res.status == "Satisfied" and not res.degenerate
    assert min(res.margins.values()) == 0
    assert res.verified_N == 12
    small = check_general_boyer(inst, 8)
    assert small.verified_N == 8


def test_consequences_with_function(glued):
    I = catalog.build_subset("copy2", glued, 10)
    inst = BoyerInstance(glued, I, glued.vertex("(0,0)@1"), 1, {glued.vertex("root@2"): 1})
    phi = catalog.build_function("glued-semifinite-demo", glued)
    res = check_general_boyer(inst, 10, phi)
    assert res.consequences["phi_lambda_infinite"] and res.consequences["semifinite_at_lambda"]


def test_chain_into_pascal_violated():
    g = catalog.build_graph("chain-into-pascal", 8)
    I = catalog.build_subset("copy2", g, 8)
    res = check_general_boyer(BoyerInstance(g, I, g.vertex("0@1"), 1, {g.vertex("root@2"): 1}), 8)
    assert res.status == "Violated"
    l, eta, margin = res.witness
    assert (l, g.label(eta), margin) == (1, "(0,1)@2", -1)
    phi = catalog.build_function("chain-into-pascal-finite:p=1/3", g)
    assert check_harmonic(phi, 8).ok and phi.is_finite(8)
    assert phi(g.vertex("0@1")) == Fraction(3, 2)


def test_degenerate_when_rhs_never_reached(glued):
    I = catalog.build_subset("copy2", glued, 10)
    inst = BoyerInstance(glued, I, glued.vertex("(0,0)@1"), 5, {glued.vertex("(4,0)@2"): 1}, l_max=2)
    res = check_general_boyer(inst, 10)
    assert res.status == "Satisfied" and res.degenerate


def test_first_entry_identity(glued):
    I = catalog.build_subset("copy2", glued, 12)
    lam, eta = glued.vertex("(0,0)@1"), glued.vertex("(1,1)@2")
    rep = first_entry_identity_check(glued, I, lam, eta, 12)
    assert rep.ok
    brute = sum(w for _, w in enumerate_paths(glued, lam, eta))
    assert rep.lhs == brute == 6  # three entry levels, 2 paths each
    far = first_entry_identity_check(glued, I, glued.vertex("(2,0)@1"), glued.vertex("(0,2)@2"), 12)
    assert far.lhs == far.rhs == 0
    direct = first_entry_identity_check(glued, I, glued.vertex("(1,0)@1"), glued.vertex("(1,0)@2"), 12)
    assert direct.lhs == direct.rhs == 1
    with pytest.raises(ContractError):
        first_entry_identity_check(glued, I, eta, eta, 12)


def test_example1_variants():
    p = pascal(9)
    ident = glue(p, p, lambda v: v, 8)
    v = check_example1(ident, ("1", (0, 0)), 8)
    assert v.status == "Satisfied" and min(v.margins.values()) == 0
    doubled = glue(p, p, lambda v: v, 8, cross=lambda u, w: 2 * int(u == w))
    v = check_example1(doubled, ("1", (0, 0)), 8)
    assert v.status == "Satisfied" and min(v.margins.values()) > 0
    onto_chain = glue(p, chain(9), lambda v: v[0] + v[1], 8)
    v = check_example1(onto_chain, ("1", (0, 0)), 8)
    assert v.status == "Satisfied" and min(v.margins.values()) >= 0
    assert check_harmonic(catalog.build_function("unit", chain(9)), 8).ok


def test_example1_requires_surjective_map():
    G = catalog.build_glued("chain-into-pascal", 6)
    with pytest.raises(ContractError):
        check_example1(G, ("1", 0), 6)


def test_example2_variants():
    p = pascal(8)
    ident = glue(p, p, lambda v: v, 8, layout="e2")
    v = check_example2(ident, ("1", (0, 0)), 8)
    assert v.status == "Satisfied" and min(v.margins.values()) == 0
    doubled = glue(p, p, lambda v: v, 8, layout="e2", scale1=2)
    v = check_example2(doubled, ("1", (0, 0)), 8)
    inner = [m for k, m in v.margins.items() if k[0] == "inner"]
    assert v.status == "Satisfied" and min(inner) > 0

    def cross(u, w):
        weight = p.kappa(u, w)
        return 0 if (u, w) == ((1, 0), (1, 1)) else weight

    broken = glue(p, p, lambda v: v, 8, layout="e2", cross=cross)
    v = check_example2(broken, ("1", (0, 0)), 8)
    assert v.status == "Violated" and v.witness[0] == "cross-edge"
    assert v.witness[1] == ("1", (1, 0)) and v.witness[2] == -1


def test_layout_mismatch(glued):
    G = catalog.build_glued("glued-pascal-demo", 6)
    with pytest.raises(ContractError):
        check_example2(G, ("1", (0, 0)), 6)
