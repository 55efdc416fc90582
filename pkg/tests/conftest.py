import pytest

from semmap.data import load_fixture
from semmap.graph import ConceptGraph, build_dense_graph


@pytest.fixture(scope="session")
def dataset():
    return load_fixture()


@pytest.fixture(scope="session")
def dense(dataset):
    return build_dense_graph(dataset)


@pytest.fixture
def path3():
    return ConceptGraph.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def path4():
    return ConceptGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)])


@pytest.fixture
def star4():
    return ConceptGraph.from_edges(4, [(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def k4():
    return ConceptGraph.from_edges(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])


@pytest.fixture
def triangle():
    return ConceptGraph.from_edges(3, [(0, 1, 3), (0, 2, 2), (1, 2, 1)])
