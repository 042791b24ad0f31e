import random

import pytest

from rdu.rings import parse_ring


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


@pytest.fixture(scope="session")
def z12():
    return parse_ring("Z/12")


@pytest.fixture(scope="session")
def gf2():
    return parse_ring("GF(2)")


@pytest.fixture(scope="session")
def gf3():
    return parse_ring("GF(3)")


@pytest.fixture(scope="session")
def gf5():
    return parse_ring("GF(5)")


@pytest.fixture(scope="session")
def z9():
    return parse_ring("Z/9")


@pytest.fixture(scope="session")
def m2f2():
    return parse_ring("M2(GF(2))")


@pytest.fixture(scope="session")
def zz():
    return parse_ring("Z")


@pytest.fixture(scope="session")
def z4xgf3():
    return parse_ring("Z/4xGF(3)")
