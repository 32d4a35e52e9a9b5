import pytest

from helpers import fixture


@pytest.fixture
def square():
    return fixture("square")


@pytest.fixture
def tripod():
    return fixture("tripod")


@pytest.fixture
def cube3():
    return fixture("cube3")


@pytest.fixture
def grid12():
    return fixture("grid12")


@pytest.fixture
def point():
    return fixture("point")
