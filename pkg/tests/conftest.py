import random

import pytest

from helpers import multigraph_catalog


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


@pytest.fixture(scope="session")
def catalog_small():
    """All multigraph classes: <= 4 vertices, <= 4 edges, labels in {1, 2}."""
    return multigraph_catalog(max_vertices=4, max_edges=4, labels=(1, 2))


@pytest.fixture(scope="session")
def catalog_3edges(catalog_small):
    return [g for g in catalog_small if g.num_edges <= 3]
