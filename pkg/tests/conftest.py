import random
from fractions import Fraction

import pytest

from qutrit_orbits.tensorspace import GroupElt


def random_sl3(rng, size=2, steps=4):
    """Product of a few elementary matrices: integral, invertible, det 1."""
    m = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    for _ in range(steps):
        i, j = rng.sample(range(3), 2)
        c = rng.randint(-size, size)
        for k in range(3):
            m[i][k] += c * m[j][k]
    # a diagonal rescaling keeps entries rational but not integral
    d = Fraction(rng.choice([1, 2, -1, Fraction(1, 2)]))
    return [[m[0][k] * d for k in range(3)], [m[1][k] / d for k in range(3)], m[2]]


def random_group_element(rng, **kw):
    return GroupElt(*[random_sl3(rng, **kw) for _ in range(3)])


@pytest.fixture
def rng():
    return random.Random(20240611)
