import random
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import pytest

from qlie.lie import CECochain, WEDGE, ce_differential, multivector_to_cochain
from qlie.tensors import Multivector

FIXTURES = Path(__file__).parent / "fixtures"


def rand_fraction(rng: random.Random, span: int = 3, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def rand_multivector(g, p: int, rng: random.Random) -> Multivector:
    data = {}
    for key in combinations(range(g.dim), p):
        c = rand_fraction(rng)
        if c:
            data[key] = c
    return Multivector(g.dim, p, data)


def rand_cobracket(g, rng: random.Random) -> CECochain:
    entries = {}
    for k in range(g.dim):
        for key in combinations(range(g.dim), 2):
            c = rand_fraction(rng, span=2, den=2)
            if c:
                entries[((k,), key)] = c
    return CECochain(g, 1, WEDGE(2), entries)


def zero_cobracket(g) -> CECochain:
    return CECochain(g, 1, WEDGE(2), {})


def coboundary(g, lam: Multivector) -> CECochain:
    return ce_differential(multivector_to_cochain(g, lam))


@pytest.fixture
def rng():
    return random.Random(20240817)
