import random

import pytest

from conftest import random_group_element
from qutrit_orbits.exactfield import ONE, Z3, Cyc
from qutrit_orbits.galois import MatrixElt
from qutrit_orbits.semisimple import (
    WEYL_GENERATORS, DifferentFamilies, NotSemisimple, ZeroInput, admissible, cartan_params, family_of,
    family_point, first_family_stabilizer, gamma_group, in_orbit, reflection_classes, reflections,
    restricted_invariants, semisimple_equivalent, weyl_group, FIRST_FAMILY_STABILIZER,
)
from qutrit_orbits.jordan import invariants
from qutrit_orbits.tensorspace import U1, U2, U3, Tensor, act_group, cartan_point, parse_tensor


def test_weyl_group_census():
    W = weyl_group()
    assert W.order == 648
    assert W.index(MatrixElt.diag(Z3, ONE, ONE)) is not None
    assert len(reflections(W)) == 24
    assert sorted(len(c) for c in reflection_classes(W)) == [12, 12]


def test_weyl_generators_preserve_invariants():
    rng = random.Random(8)
    for _ in range(5):
        a = [Cyc(rng.randint(-3, 3), rng.randint(-3, 3), 0, 0) for _ in range(3)]
        base = restricted_invariants(*a)
        for w in WEYL_GENERATORS:
            assert restricted_invariants(*w.apply(a)) == base


def test_weyl_generators_preserve_tensor_invariants():
    # independent of the frozen restricted polynomials: full trace computation
    a = [Cyc(1), Cyc(2), Cyc(-1, 0, 1, 0)]
    base = invariants(cartan_point(*a))
    for w in WEYL_GENERATORS:
        assert invariants(cartan_point(*w.apply(a))) == base


def test_family_of_examples():
    assert family_of(cartan_point(1, 2, 3)).family == 1
    assert family_of(U1 + U2).family == 2
    assert family_of(U2 - U3).family == 4
    assert family_of(U1.scale(5)).family == 3
    with pytest.raises(ZeroInput):
        family_of(Tensor())
    with pytest.raises(NotSemisimple):
        family_of(parse_tensor("|000>"))


def test_family_of_moved_points(rng):
    for fam, params in ((1, (1, 2, 3)), (2, (1, 2)), (3, (2,)), (4, (1,))):
        v = act_group(random_group_element(rng), family_point(fam, params))
        assert family_of(v).family == fam


def test_cartan_params():
    pts = cartan_params(cartan_point(1, 2, 3))
    assert in_orbit(pts, (1, 2, 3))
    assert len(pts) == 648
    assert in_orbit(cartan_params(U1), (1, 0, 0))


def test_cartan_params_of_moved_point(rng):
    g = random_group_element(rng)
    pts = cartan_params(act_group(g, cartan_point(1, 2, 3)))
    assert in_orbit(pts, (1, 2, 3), tol=1e-8)


def test_gamma_orders():
    assert [gamma_group(f).order for f in (1, 2, 3, 4)] == [648, 18, 6, 3]
    G3 = gamma_group(3)
    assert G3.index(MatrixElt.scalar(-Z3)) is not None and G3.is_abelian()
    assert max(G3.element_orders()) == 6
    assert max(gamma_group(4).element_orders()) == 3


def test_first_family_stabilizer():
    Z = first_family_stabilizer()
    assert Z.order == 81
    v = cartan_point(1, 2, 3)
    for g in FIRST_FAMILY_STABILIZER:
        assert act_group(g, v) == v


def test_semisimple_equivalence_examples():
    a1, a2 = 2, 5
    s = U1.scale(a1) + U2.scale(a2)
    # the generator [[0,-1],[-1,0]] of the second family group
    assert semisimple_equivalent(s, U1.scale(-a2) + U2.scale(-a1))
    assert semisimple_equivalent(U1, U1.scale(Z3))
    assert not semisimple_equivalent(U1 + U2.scale(2), U1 + U2.scale(3))
    with pytest.raises(DifferentFamilies):
        semisimple_equivalent(U1, U1 + U2)


def test_permutation_modes_enlarge_groups():
    assert gamma_group(2, "sym2").order == 36
    assert gamma_group(4, "sym3").order == 6
    s, t = U1 + U2.scale(2), U1 + U3.scale(2)
    assert not semisimple_equivalent(s, t)
    assert semisimple_equivalent(s, t, "sym2") and semisimple_equivalent(s, t, "sym3")


def test_second_family_condition_is_gamma_stable():
    G = gamma_group(2)
    for p in ((1, 2), (3, -1), (Z3, 2)):
        assert admissible(2, p)
        for g in G.elements:
            assert admissible(2, g.apply(list(p)))
