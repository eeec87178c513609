import pytest

from permuta.grammar import parse_group


@pytest.fixture(scope="session")
def S3():
    return parse_group("S(3)")


@pytest.fixture(scope="session")
def S4():
    return parse_group("S(4)")


@pytest.fixture(scope="session")
def D4():
    return parse_group("D(4)")


@pytest.fixture(scope="session")
def M16():
    return parse_group("M16")


@pytest.fixture(scope="session")
def GL23():
    return parse_group("GL(2,3)")
