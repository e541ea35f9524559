import random

from conftest import random_group_element
from qutrit_orbits import catalog
from qutrit_orbits.jordan import (
    invariants, is_nilpotent, is_semisimple, jordan_decompose, kind, stab_dim, trace_power,
)
from qutrit_orbits.liealg import bracket
from qutrit_orbits.linalg import CycMat
from qutrit_orbits.semisimple import admissible, family_point, restricted_invariants, restricted_jacobian
from qutrit_orbits.tensorspace import U1, U2, U3, Tensor, act_group, cartan_point, parse_tensor, phi_inv

# oracle: exact 78x78 trace computation at (1, 2, 3), frozen
T_123 = (185328, -3458, 14773937328)


def _random_tensor(rng, n=6):
    v = Tensor()
    for _ in range(n):
        ket = "".join(str(rng.randrange(3)) for _ in range(3))
        v = v + parse_tensor(f"{rng.randint(-2, 2)}|{ket}>")
    return v


def test_nilpotency_examples():
    assert is_nilpotent(parse_tensor("|000>"))
    assert not is_nilpotent(U1)
    assert is_nilpotent(Tensor())


def test_semisimplicity_examples():
    assert is_semisimple(U1 + U2)
    assert not is_semisimple(parse_tensor("|000>"))
    assert is_semisimple(Tensor())


def test_kind():
    assert kind(Tensor()) == "zero"
    assert kind(parse_tensor("|000>")) == "nilpotent"
    assert kind(U1 + U2.scale(2)) == "semisimple"
    assert kind(U1 + parse_tensor("|012>")) == "mixed"


def test_jordan_split_examples():
    split = jordan_decompose(U1 + parse_tensor("|012>"))
    assert split.s == U1 and split.e == parse_tensor("|012>")
    s = cartan_point(1, 2, 3)
    assert jordan_decompose(s).e.is_zero() and jordan_decompose(s).s == s
    e = parse_tensor("|001> + |010> + |100>")
    assert jordan_decompose(e).s.is_zero() and jordan_decompose(e).e == e


def test_jordan_split_properties():
    rng = random.Random(7)
    for _ in range(8):
        v = _random_tensor(rng)
        split = jordan_decompose(v)
        assert split.s + split.e == v
        assert bracket(phi_inv(split.s), phi_inv(split.e)).is_zero()
        assert is_semisimple(split.s) and is_nilpotent(split.e)
        # rational input gives rational parts
        assert split.s.is_rational() and split.e.is_rational()
        again = jordan_decompose(split.s)
        assert again.s == split.s and again.e.is_zero()


def test_invariants_at_123():
    t = invariants(cartan_point(1, 2, 3)).as_tuple()
    assert t == T_123
    assert t == restricted_invariants(1, 2, 3)
    # odd trace powers vanish, which is why degree 9 needs another generator
    assert trace_power(cartan_point(1, 2, 3), 9) == 0


def test_restricted_jacobian_rank_three():
    J = restricted_jacobian(1, 2, 3)
    assert CycMat.from_rows(J).rank() == 3


def test_invariants_vanish_on_nilpotent_table():
    for row in catalog.nilpotent_rows()[::4]:
        assert invariants(row.representative).is_zero()


def test_invariants_constant_on_orbits(rng):
    for _ in range(5):
        v = _random_tensor(rng)
        g = random_group_element(rng)
        assert invariants(act_group(g, v)) == invariants(v)


def test_invariants_homogeneous_degrees():
    v = cartan_point(1, 2, 3)
    t1, t2 = invariants(v).as_tuple(), invariants(v.scale(2)).as_tuple()
    assert t2 == (t1[0] * 2 ** 6, t1[1] * 2 ** 9, t1[2] * 2 ** 12)


def test_stab_dim_examples():
    assert stab_dim(cartan_point(1, 2, 3)) == 0
    assert stab_dim(U2 - U3) == 8
    assert stab_dim(U1) == 4


def test_stab_dim_separates_families(rng):
    for fam, want in ((1, 0), (2, 2), (3, 4), (4, 8)):
        n = {1: 3, 2: 2, 3: 1, 4: 1}[fam]
        for _ in range(3):
            params = None
            while params is None or not admissible(fam, params):
                params = [rng.randint(-4, 4) for _ in range(n)]
            v = family_point(fam, params)
            assert stab_dim(v) == want
            assert stab_dim(act_group(random_group_element(rng), v)) == want
