import pytest

from mpreprog import BooleanNetwork

from corpus import EXAMPLE1, EXAMPLE2, EXAMPLE3, NETWORK_G, signed_graph


@pytest.fixture
def ex1():
    return BooleanNetwork(EXAMPLE1)


@pytest.fixture
def ex2():
    return BooleanNetwork(EXAMPLE2)


@pytest.fixture
def ex3():
    return BooleanNetwork(EXAMPLE3)


@pytest.fixture
def net_g():
    return BooleanNetwork(NETWORK_G)


@pytest.fixture
def sgraph():
    return signed_graph()
