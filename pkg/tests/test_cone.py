from fractions import Fraction

import pytest

from branchgraph import INF, catalog
from branchgraph.cone import ConeElement, cone_compare, evaluate_functional, push_down
from branchgraph.errors import UndefinedFormError
from branchgraph.harmonic import HarmonicFunction


def test_push_down_root(pascal):
    got = push_down(pascal, ConeElement.vertex(pascal, (0, 0)), 2)
    assert got.coeffs == {(2, 0): 1, (1, 1): 2, (0, 2): 1}
    a = ConeElement.vertex(pascal, (1, 1), 3)
    assert push_down(pascal, a, 2) == a


def test_push_down_coefficients_are_dims(young):
    lam = young.vertex("[2,1]")
    row = push_down(young, ConeElement.vertex(young, lam), 6).coeffs
    for mu in young.vertices(6):
        assert row.get(mu, 0) == young.dim(lam, mu)


def test_compare(pascal):
    a, b = ConeElement.vertex(pascal, (0, 0)), ConeElement.vertex(pascal, (2, 1), 3)
    v = cone_compare(pascal, a, b, 6)
    assert (v.status, v.level) == ("ProvenGE", 3)
    assert cone_compare(pascal, b, b, 6).status == "ProvenGE"
    bern = catalog.build_function("bernoulli:p=1/2", pascal)
    v = cone_compare(pascal, ConeElement.vertex(pascal, (1, 0)), ConeElement.vertex(pascal, (1, 0), 2), 6, [bern])
    assert v.status == "Refuted" and v.values == (Fraction(1, 2), Fraction(1))
    assert cone_compare(pascal, ConeElement.vertex(pascal, (1, 0)), ConeElement.vertex(pascal, (1, 0), 2), 6).status == "Unknown"


def test_evaluate(pascal):
    bern = catalog.build_function("bernoulli:p=1/2", pascal)
    a = ConeElement(2, {(2, 0): 1, (1, 1): 1})
    assert evaluate_functional(bern, a) == Fraction(1, 2)
    assert evaluate_functional(bern, ConeElement(2, {})) == 0
    axis = catalog.build_function("axis-infinite", pascal)
    assert evaluate_functional(axis, ConeElement(1, {(1, 0): 0, (0, 1): 2})) == 0
    assert evaluate_functional(axis, ConeElement(1, {(1, 0): 1})) is INF
    with pytest.raises(UndefinedFormError):
        evaluate_functional(axis, ConeElement(1, {(1, 0): 1, (0, 1): -1}))


def test_json_roundtrip(pascal):
    a = ConeElement(2, {(2, 0): Fraction(1, 3), (0, 2): 2})
    assert ConeElement.from_json(pascal, a.to_json(pascal)) == a


def test_evaluation_is_monotone_on_certified_pairs(pascal):
    phi = HarmonicFunction(pascal, rule=lambda v: Fraction(1, 3) ** v[0] * Fraction(2, 3) ** v[1])
    a = ConeElement.vertex(pascal, (0, 0))
    for mu in pascal.vertices(4):
        b = ConeElement.vertex(pascal, mu, pascal.dim((0, 0), mu))
        assert cone_compare(pascal, a, b, 6).status == "ProvenGE"
        assert evaluate_functional(phi, a) >= evaluate_functional(phi, b)
