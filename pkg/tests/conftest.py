import pytest

from ssd.constructions import catalog
from ssd.gf import default_field


@pytest.fixture(scope="session")
def gf2():
    return default_field(2)


@pytest.fixture(scope="session")
def gf3():
    return default_field(3)


@pytest.fixture(scope="session")
def gf4():
    return default_field(4)


@pytest.fixture(scope="session")
def gf5():
    return default_field(5)


@pytest.fixture(scope="session")
def gf9():
    return default_field(9)


@pytest.fixture(scope="session")
def catalog_rows():
    """All 31 shipped designs, built once per session."""
    return catalog()
