from fractions import Fraction

import pytest

from spinbfv.model import build_model


@pytest.fixture(scope="session")
def m1():
    return build_model(1)


@pytest.fixture(scope="session")
def m2():
    return build_model(2)


@pytest.fixture(scope="session")
def m2b():
    beta12 = Fraction(3, 2)
    return build_model(2, [[0, beta12], [-beta12, 0]])


@pytest.fixture(scope="session")
def m3():
    return build_model(3)
