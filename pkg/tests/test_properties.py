"""Property-based checks with hypothesis."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from branchgraph import INF, catalog
from branchgraph.cone import ConeElement, evaluate_functional, push_down
from branchgraph.extreal import ext_sum, format_ext, parse_ext
from branchgraph.harmonic import check_harmonic
from branchgraph.order import classify_subset, complement, saturate, subset_from_members, up_set
from branchgraph.products import tensor_harmonic
from branchgraph.symmetric import (
    conjugate,
    m_to_schur,
    monomial_at_ones,
    partitions,
    schur_at_ones,
    schur_in_m,
    schur_product,
)

DEPTH = 7
PASCAL = catalog.build_graph("pascal2", DEPTH)
YOUNG = catalog.build_graph("young", DEPTH)
PAS3 = catalog.build_graph("pascal:3", 5)
GRAPHS = [PASCAL, YOUNG, catalog.build_graph("kingman", DEPTH)]

rationals = st.fractions(min_value=0, max_value=10, max_denominator=50)
extreals = st.one_of(rationals, st.just(INF))


def vertices_of(g, max_level=DEPTH):
    return st.sampled_from(list(g.iter_vertices(max_level)))


@st.composite
def graph_and_pair(draw):
    g = draw(st.sampled_from(GRAPHS))
    mu = draw(vertices_of(g))
    nu = draw(vertices_of(g))
    k = draw(st.integers(min_value=0, max_value=DEPTH))
    return g, mu, nu, k


@given(graph_and_pair())
def test_dim_factors_through_any_level(data):
    g, mu, nu, k = data
    m, n = g.level(mu), g.level(nu)
    if not m <= k <= n:
        return
    total = sum((d * g.dim(eta, nu) for eta, d in g.dim_row(mu, k).items()), Fraction(0))
    assert total == g.dim(mu, nu)


@given(st.lists(vertices_of(PASCAL, 5), max_size=5))
def test_complement_is_involution(seeds):
    ideal = set()
    for v in seeds:
        ideal |= up_set(PASCAL, v, 5)
    I = subset_from_members(PASCAL, ideal, 5, kind="ideal")
    assert classify_subset(PASCAL, I, 5).is_ideal
    J = complement(PASCAL, I, 5)
    assert classify_subset(PASCAL, J, 5).is_coideal
    assert complement(PASCAL, J, 5).members == I.members


@given(st.lists(vertices_of(YOUNG, 5), min_size=1, max_size=4))
def test_saturation_is_idempotent(seeds):
    ideal = set()
    for v in seeds:
        ideal |= up_set(YOUNG, v, 5)
    once = saturate(YOUNG, subset_from_members(YOUNG, ideal, 5, kind="ideal"), 5).subset
    assert ideal <= once.members
    assert saturate(YOUNG, once, 5).subset.members == once.members
    assert classify_subset(YOUNG, once, 5).is_saturated


@given(st.dictionaries(vertices_of(PASCAL, 3), rationals, max_size=4), st.integers(3, DEPTH),
       st.fractions(min_value=0, max_value=1, max_denominator=20))
def test_harmonic_functionals_are_invariant_under_push_down(coeffs, target, p):
    if not coeffs:
        return
    level = max(PASCAL.level(v) for v in coeffs)
    a = push_down(PASCAL, ConeElement(level, {v: c for v, c in coeffs.items() if PASCAL.level(v) == level}), level)
    phi = catalog.build_function(f"bernoulli:p={p}", PASCAL)
    assert evaluate_functional(phi, push_down(PASCAL, a, target)) == evaluate_functional(phi, a)


@given(extreals, extreals, rationals)
def test_extended_real_conventions(x, y, c):
    assert 0 * INF == 0 and INF * 0 == 0
    assert ext_sum([x, y]) == ext_sum([y, x])
    if x is INF or y is INF:
        assert ext_sum([x, y]) is INF
    if c > 0:
        assert c * INF is INF
    assert parse_ext(format_ext(x)) == x


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 20), st.integers(1, 20), st.integers(1, 20))
def test_tensor_functions_are_harmonic(a, b, c):
    total = a + b + c
    w = (Fraction(a, total), Fraction(b, total), Fraction(c, total))
    unit = [catalog.build_function("unit", f) for f in PAS3.factors]
    phi = tensor_harmonic(PAS3, unit, w)
    assert check_harmonic(phi, 5).ok


@given(st.integers(0, 6).flatmap(lambda n: st.sampled_from(partitions(n))))
def test_schur_monomial_roundtrip(lam):
    assert m_to_schur(schur_in_m(lam)) == {lam: 1}


@given(st.integers(0, 5).flatmap(lambda n: st.sampled_from(partitions(n))), st.integers(1, 4))
def test_schur_evaluations(lam, k):
    expansion = schur_in_m(lam)
    assert schur_at_ones(lam, k) == sum(c * monomial_at_ones(mu, k) for mu, c in expansion.items())
    # hook content formula as an independent oracle
    conj = conjugate(lam)
    num, den = 1, 1
    for i, row in enumerate(lam):
        for j in range(row):
            num *= k + j - i
            den *= (row - j - 1) + (conj[j] - i - 1) + 1
    assert schur_at_ones(lam, k) == num // den


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 3).flatmap(lambda n: st.sampled_from(partitions(n))),
       st.integers(0, 3).flatmap(lambda n: st.sampled_from(partitions(n))))
def test_schur_products_commute_and_have_right_dimension(lam, mu):
    prod = schur_product(lam, mu)
    assert prod == schur_product(mu, lam)
    assert all(c > 0 and sum(nu) == sum(lam) + sum(mu) for nu, c in prod.items())
    # evaluation at (1,1,1) is a ring homomorphism
    assert sum(c * schur_at_ones(nu, 3) for nu, c in prod.items()) == schur_at_ones(lam, 3) * schur_at_ones(mu, 3)
