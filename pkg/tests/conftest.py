import pytest

from graphcat.core import build_standard


@pytest.fixture(scope="session")
def edge():
    return build_standard("edge")


@pytest.fixture(scope="session")
def nodeless():
    return build_standard("nodeless_loop")


@pytest.fixture(scope="session")
def star3():
    return build_standard("star", 3)


@pytest.fixture(scope="session")
def star5():
    return build_standard("star", 5)


@pytest.fixture(scope="session")
def c1():
    return build_standard("loop", 1)


@pytest.fixture(scope="session")
def c2():
    return build_standard("loop", 2)


@pytest.fixture(scope="session")
def l1():
    return build_standard("linear", 1)


@pytest.fixture(scope="session")
def l2():
    return build_standard("linear", 2)
