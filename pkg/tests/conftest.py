import pytest

from branchgraph import catalog


@pytest.fixture(scope="session")
def pascal():
    return catalog.build_graph("pascal2", 10)


@pytest.fixture(scope="session")
def young():
    return catalog.build_graph("young", 8)


@pytest.fixture(scope="session")
def chain():
    return catalog.build_graph("chain", 10)


@pytest.fixture(scope="session")
def glued():
    return catalog.build_graph("glued-pascal-demo", 12)
