import pytest

from quiverkit.corpus import load_fixture
from quiverkit.algebra import build_algebra
from quiverkit.arquiver import knit
from quiverkit.quiver import parse_presentation


@pytest.fixture(scope="session")
def pres_b():
    return load_fixture("d4_clustertilted.q")


@pytest.fixture(scope="session")
def alg_b(pres_b):
    return build_algebra(pres_b)


@pytest.fixture(scope="session")
def alg_c():
    return build_algebra(load_fixture("d4_tilted.q"))


@pytest.fixture(scope="session")
def alg_cm():
    return build_algebra(load_fixture("d4_tilted_ext_s2.q"))


@pytest.fixture(scope="session")
def alg_bprime():
    return build_algebra(load_fixture("d5_clustertilted.q"))


@pytest.fixture(scope="session")
def alg_a31():
    return build_algebra(load_fixture("a31_clustertilted.q"))


@pytest.fixture(scope="session")
def frag_b(alg_b):
    return knit(alg_b, 40)


@pytest.fixture(scope="session")
def frag_c(alg_c):
    return knit(alg_c, 40)


@pytest.fixture(scope="session")
def frag_bprime(alg_bprime):
    return knit(alg_bprime, 60)


@pytest.fixture(scope="session")
def alg_a2():
    return build_algebra(parse_presentation(
        "field: rational\nvertices: 1 2\narrows: a: 1 -> 2\n"))


@pytest.fixture(scope="session")
def alg_a3():
    return build_algebra(parse_presentation(
        "field: rational\nvertices: 1 2 3\narrows: a: 1 -> 2, b: 2 -> 3\n"))
