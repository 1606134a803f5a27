import pytest
from hypothesis import settings

from flushtri.polygon import generate_random, validate

settings.register_profile("deterministic", derandomize=True)
settings.load_profile("deterministic")

# Hand-checked quadrilateral: clockwise, area 21, unique 3-stable triangle on
# edges (0, 1, 3) with area 55; the alternative (0, 2, 3) has area 250/3.
Q4_VERTS = [(0.0, 0.0), (2.0, 5.0), (6.0, 4.0), (5.0, 0.0)]

TRI_VERTS = [(0.0, 0.0), (1.0, 3.0), (2.0, -1.0)]


@pytest.fixture(scope="session")
def q4():
    return validate(Q4_VERTS)


@pytest.fixture(scope="session")
def tri():
    return validate(TRI_VERTS)


@pytest.fixture(scope="session")
def small_corpus():
    """Deterministic mixed-size corpus for oracle comparisons."""
    polys = []
    for seed in range(150):
        n = 4 + (seed % 29)
        polys.append(generate_random(n, seed))
    return polys
