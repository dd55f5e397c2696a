import random

import pytest

from uqplus.algebra import AlgElement, Generator, build_rewrite_system
from uqplus.qcoeff import SpecializedField, RationalFunction, q
from uqplus.rootdata import preset


@pytest.fixture(scope="session")
def a2():
    return build_rewrite_system(preset("A2"))


@pytest.fixture(scope="session")
def b2():
    return build_rewrite_system(preset("B2"))


@pytest.fixture(scope="session")
def a2_num():
    return build_rewrite_system(preset("A2"), field=SpecializedField("3/2"))


@pytest.fixture(scope="session")
def b2_num():
    return build_rewrite_system(preset("B2"), field=SpecializedField("3/2"))


def random_coefficient(rng):
    num = sum((RationalFunction(rng.randint(-3, 3)) * q ** rng.randint(-2, 2) for _ in range(2)),
              RationalFunction(rng.choice([1, -1, 2])))
    if rng.random() < 0.3:
        return num / (q ** 2 + 1)
    return num


def random_word(rng, rank, max_len, letters="EFK"):
    w = []
    for _ in range(rng.randint(0, max_len)):
        kind = rng.choice(letters)
        if kind == "K":
            kind = rng.choice(["K", "Kinv"])
        w.append(Generator(kind, rng.randint(1, rank)).code)
    return tuple(w)


def random_element(rng, rank, max_len=5, letters="EFK", terms=3):
    out = {}
    for _ in range(rng.randint(1, terms)):
        out[random_word(rng, rank, max_len, letters)] = random_coefficient(rng)
    return AlgElement(out)


@pytest.fixture
def rng():
    return random.Random(20261014)
