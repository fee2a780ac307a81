import pytest

from lib.gf_linalg import FieldMatrix
from matroids.catalog import get_fixture
from matroids.oracle import LinearMatroid, UniformMatroid
from representation.service import create_representation_service

FANO_ROWS = [
    [1, 0, 0, 1, 1, 0, 1],
    [0, 1, 0, 1, 0, 1, 1],
    [0, 0, 1, 0, 1, 1, 1],
]


@pytest.fixture
def u24():
    return UniformMatroid(2, 4, ["a", "b", "c", "d"])


@pytest.fixture
def fano():
    return LinearMatroid(FieldMatrix(FANO_ROWS, 2), list("abcdefg"))


@pytest.fixture
def non_fano():
    return LinearMatroid(FieldMatrix(FANO_ROWS, 3), list("abcdefg"))


@pytest.fixture
def service():
    return create_representation_service()


@pytest.fixture
def fixture_matroid():
    """Catalog lookup by name"""

    def lookup(name: str):
        return get_fixture(name).matroid

    return lookup
