import pytest

from skelsig.groups import bundled_catalog


@pytest.fixture(scope="session")
def catalog():
    return bundled_catalog()


@pytest.fixture(scope="session")
def catalog_groups(catalog):
    return catalog.groups(max_order=15)
