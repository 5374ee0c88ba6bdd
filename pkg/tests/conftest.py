import pytest

from freecone.catalog import example_pair, fixture_matroids, separating_pair


@pytest.fixture(scope="session")
def fixtures():
    return fixture_matroids()


@pytest.fixture(scope="session")
def m1():
    return example_pair()[0]


@pytest.fixture(scope="session")
def m2():
    return example_pair()[1]


@pytest.fixture(scope="session")
def n1():
    return separating_pair()[0]


@pytest.fixture(scope="session")
def n2():
    return separating_pair()[1]
