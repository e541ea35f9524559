import math
import random
from fractions import Fraction

import pytest

from qutrit_orbits.exactfield import (
    Cyc, I, ONE, ParseError, Z3, ZERO, approx, complex_to_cyc, conj, parse_scalar,
)


def _rand(rng):
    return Cyc(*[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)])


def test_basis_relations():
    assert Z3.c == (-1, 0, 1, 0)
    assert Z3 * Z3 + Z3 + ONE == ZERO
    assert I * I == -ONE


def test_conjugation_examples():
    assert conj(I) == -I
    assert conj(Z3) == Z3 * Z3
    assert conj(Cyc(Fraction(3, 2))) == Cyc(Fraction(3, 2))


def test_approx_examples():
    re, im = approx(Z3)
    assert abs(re + 0.5) < 1e-15 and abs(im - math.sqrt(3) / 2) < 1e-15
    assert approx(I) == pytest.approx((0.0, 1.0))
    assert approx(Cyc(Fraction(1, 2))) == (0.5, 0.0)


def test_field_axioms_on_samples():
    rng = random.Random(5)
    for _ in range(200):
        x, y, z = _rand(rng), _rand(rng), _rand(rng)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        if x:
            assert x * x.inverse() == ONE
        assert conj(conj(x)) == x
        assert conj(x * y) == conj(x) * conj(y)


def test_real_elements_are_q_sqrt3():
    rng = random.Random(6)
    for _ in range(100):
        x = _rand(rng)
        r = x + conj(x)
        assert r.is_real()
        assert abs(approx(r)[1]) < 1e-12
    assert parse_scalar("sqrt3").is_real()
    assert not I.is_real()


def test_parse_scalar_syntax():
    assert parse_scalar("1/2 + 2*z3 - i") == Cyc(Fraction(1, 2)) + Z3 * 2 - I
    assert parse_scalar("(1 - i)**2") == I * -2
    assert parse_scalar("-(1/4)") == Cyc(Fraction(-1, 4))
    assert parse_scalar("z3**-1") == Z3 * Z3


@pytest.mark.parametrize("text", ["1/", "q", "2**i", "1/0", "[1]"])
def test_parse_scalar_rejects(text):
    with pytest.raises(ParseError):
        parse_scalar(text)


def test_complex_to_cyc_recovers_exact_values():
    for x in (Z3 * 3, Cyc(Fraction(7, 3)) - I, parse_scalar("1/2*sqrt3 + i/4")):
        re, im = approx(x)
        assert complex_to_cyc(complex(re, im)) == x
    # small denominators are preferred over a close large-denominator fit
    assert complex_to_cyc(complex(math.sqrt(3), 0)) == parse_scalar("sqrt3")
    assert complex_to_cyc(complex(math.pi, 0), max_den=100) is None
