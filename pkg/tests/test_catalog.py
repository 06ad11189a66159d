from fractions import Fraction

import pytest

from branchgraph import catalog
from branchgraph.errors import CatalogError
from branchgraph.graph import validate_graph
from branchgraph.harmonic import check_harmonic
from branchgraph.symmetric import partitions, schur_product


def test_pascal_levels():
    g = catalog.build_graph("pascal2", 10)
    assert validate_graph(g, 10).ok and g.branching
    assert [len(g.vertices(k)) for k in range(11)] == list(range(1, 12))


def test_young_levels():
    g = catalog.build_graph("young", 8)
    assert [len(g.vertices(k)) for k in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]


def test_young_edges_match_schur_pieri():
    g = catalog.build_graph("young", 7)
    for n in range(7):
        for lam in partitions(n):
            assert g.successors(lam) == schur_product((1,), lam)


def test_catalog_graphs_validate():
    for name in ("chain", "pascal:3", "young", "kingman", "macdonald:q=1/3,t=1/2", "glued-pascal-demo",
                 "chain-into-pascal", "glued-e2:pascal2,pascal2,id,1", "product:young,chain"):
        depth = 4 if name.startswith("macdonald") else 6
        assert validate_graph(catalog.build_graph(name, depth), depth).ok, name


def test_glued_demo_function():
    g = catalog.build_graph("glued-pascal-demo", 12)
    phi = catalog.build_function("glued-semifinite-demo", g)
    assert check_harmonic(phi, 12).ok


def test_parse_name():
    assert catalog.parse_name("macdonald:q=1/3,t=1/2") == ("macdonald", [], {"q": "1/3", "t": "1/2"})
    assert catalog.parse_name("chain") == ("chain", [], {})


def test_labels_roundtrip():
    for name in ("chain", "pascal2", "young", "product:pascal2,chain", "glued-pascal-demo"):
        g = catalog.build_graph(name, 4)
        for v in g.iter_vertices(4):
            assert g.vertex(g.label(v)) == v
    g = catalog.build_graph("glued-pascal-demo", 4)
    assert g.vertex("root2") == g.vertex("root@2") == ("2", (0, 0))


@pytest.mark.parametrize(
    "bad", ["nope", "pascal:0", "macdonald:q=1,t=1/2", "glued-e1:chain,pascal2,weird,1", "product:chain"]
)
def test_unknown_graphs(bad):
    with pytest.raises(CatalogError):
        catalog.build_graph(bad, 3)


def test_unknown_function_and_subset():
    g = catalog.build_graph("pascal2", 3)
    with pytest.raises(CatalogError):
        catalog.build_function("bernoulli:p=3/2", g)
    with pytest.raises(CatalogError):
        catalog.build_function("mystery", g)
    with pytest.raises(CatalogError):
        catalog.build_subset("mystery", g, 3)


def test_entries_have_provenance():
    names = [e.name for e in catalog.entries()]
    assert "young" in names and "glued-semifinite-demo" in names
    assert all(e.provenance for e in catalog.entries())


def test_structure_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("BRANCHGRAPH_CACHE", str(tmp_path))
    M = catalog.build_structure("young", 4)
    row = M.constants((1,), (2,))
    catalog.save_cache(M)
    files = list(tmp_path.iterdir())
    assert [f.name for f in files] == ["young.json"]
    fresh = catalog.build_structure("young", 4)
    assert fresh._cache[((1,), (2,))] == row == {(3,): 1, (2, 1): 1}
    assert all(isinstance(c, Fraction) for c in row.values())


def test_build_dispatch():
    g = catalog.build("pascal2", 3)
    assert g.name == "pascal2"
    assert catalog.build("bernoulli:p=1/2", 3, g)((1, 0)) == Fraction(1, 2)
