import pytest

from group import Free, FreeAbelian, FreeProductCyclic, standard_set


@pytest.fixture(scope="session")
def f2():
    return Free(2)


@pytest.fixture(scope="session")
def sigma_f2(f2):
    return standard_set(f2)


@pytest.fixture(scope="session")
def z2():
    return FreeAbelian(2)


@pytest.fixture(scope="session")
def sigma_z2(z2):
    return standard_set(z2)


@pytest.fixture(scope="session")
def modular():
    """Z/2 * Z/3."""
    return FreeProductCyclic((2, 3))
