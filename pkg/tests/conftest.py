import pytest

from gonforge.incidence import build_doily
from gonforge.presentation import T1, T2
from gonforge.symmetry import doily_collineations


@pytest.fixture(scope="session")
def doily():
    return build_doily()


@pytest.fixture(scope="session")
def t1():
    return T1()


@pytest.fixture(scope="session")
def t2():
    return T2()


@pytest.fixture(scope="session")
def collineations():
    return doily_collineations()
