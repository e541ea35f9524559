from fractions import Fraction

import pytest

from qutrit_orbits import catalog
from qutrit_orbits.exactfield import I, ONE
from qutrit_orbits.galois import (
    ClosureTooLarge, FiniteGroup, MatrixElt, SplitTorus, TwistNotFound, check_twist, criterion, h1,
    h1_fast, h1_torus_extension, is_cocycle, real_points_of_orbit, solve_twist, twisted_point,
)
from qutrit_orbits.mixed import classify_mixed
from qutrit_orbits.nilpotent import UnknownLabel
from qutrit_orbits.semisimple import first_family_stabilizer, gamma_group
from qutrit_orbits.tensorspace import U1, U2, U3, GroupElt, act_group, parse_tensor


def diag(*xs):
    return [[xs[i] if i == j else 0 for j in range(3)] for i in range(3)]


def stabilizer(N):
    rec = catalog.nilpotent_twist_data()[str(N)]
    return FiniteGroup([catalog.group_element(m) for m in rec["stabilizer"].values()]), rec


def test_first_family_has_trivial_h1():
    classes = h1(first_family_stabilizer())
    assert len(classes) == 1 and classes[0].representative.is_identity()


def test_gamma_two_has_two_classes():
    G = gamma_group(2)
    classes = h1(G)
    assert len(classes) == 2
    gamma = MatrixElt([[0, -1], [-1, 0]])
    assert classes[1].contains(gamma) and not classes[0].contains(gamma)


def test_case_three_stabilizer():
    G, _ = stabilizer(3)
    assert G.order == 18 and G.is_abelian()
    classes = h1(G)
    assert len(classes) == 2
    c = GroupElt(diag(1, -1, -1), diag(1, -1, -1), diag(-1, -1, 1))
    assert classes[1].contains(c)


@pytest.mark.parametrize("N", [9, 20])
def test_torus_extension_cases(N):
    F, rec = stabilizer(N)
    classes = h1_torus_extension(F, SplitTorus(rec["torus"]["cocharacters"]))
    assert len(classes) == 2
    c, _ = catalog.twist_pair(f"nilpotent:{N}")
    assert classes[1].contains(c)


def test_classes_are_irredundant():
    G, _ = stabilizer(3)
    for cl in h1(G):
        assert is_cocycle(cl.representative)
    a, b = (cl.representative for cl in h1(G))
    # no h with h^-1 a conj(h) = b
    assert all(h.inverse() * a * h.conj() != b for h in G.elements)


def test_is_cocycle_examples():
    assert is_cocycle(GroupElt.identity())
    n, _ = catalog.twist_pair("semisimple:2")
    assert is_cocycle(n)
    # unit diagonal entries always give cocycles; a real non-unit one does not
    d = diag(I, I, -ONE)
    assert is_cocycle(GroupElt(d, d, d))
    d = diag(2, Fraction(1, 2), 1)
    assert not is_cocycle(GroupElt(d, d, d))


def test_solve_twist_examples():
    c3, _ = catalog.twist_pair("nilpotent:3")
    g = solve_twist(c3, known=())
    assert check_twist(g, c3)
    assert solve_twist(c3) == GroupElt(diag(-1, I, I), diag(-1, I, I), diag(I, I, -1))
    n, _ = catalog.twist_pair("semisimple:3")
    B = [[1, -1, 0], [I, I, 0], [0, 0, -I / 2]]
    assert solve_twist(n) == GroupElt(B, B, B)
    assert solve_twist(GroupElt.identity()).is_identity()
    with pytest.raises(ValueError):
        d = diag(2, Fraction(1, 2), 1)
        solve_twist(GroupElt(d, d, d))


def test_catalog_twists_verify():
    pairs = catalog.known_twists()
    assert len(pairs) >= 5
    for c, g in pairs:
        assert is_cocycle(c) and check_twist(g, c)


def test_built_twists_give_real_points():
    c, _ = catalog.twist_pair("nilpotent:20")
    u = catalog.nilpotent_row(20).base
    v = twisted_point(u, c, known=())
    assert v.conj() == v


def test_permuting_cocycle_needs_witness():
    one = diag(1, 1, 1)
    P = GroupElt(one, one, one, perm="(12)")
    assert is_cocycle(P)
    with pytest.raises(TwistNotFound):
        solve_twist(P, known=())


def test_criteria_agree_with_brute_force():
    groups = [first_family_stabilizer(), stabilizer(3)[0]] + [gamma_group(f) for f in (1, 2, 3, 4)]
    checked = 0
    for G in groups:
        if criterion(G) is None:
            continue
        assert h1_fast(G) == len(h1(G)), G
        checked += 1
    assert checked >= 4
    assert criterion(first_family_stabilizer()) == ("odd p-group", 1)
    assert criterion(stabilizer(3)[0]) == ("order 2p^m", 2)


def test_closure_cap():
    with pytest.raises(ClosureTooLarge):
        FiniteGroup(first_family_stabilizer().generators, cap=10)


def test_real_points_examples():
    pts = dict(real_points_of_orbit("nilpotent:20:id"))
    assert list(pts) == ["nilpotent:20:id:canonical", "nilpotent:20:id:twisted"]
    assert pts["nilpotent:20:id:twisted"] == parse_tensor("2|000> - 2|011> - 2|101> - 2|110>")
    pts = dict(real_points_of_orbit("nilpotent:9:id"))
    assert pts["nilpotent:9:id:twisted"] == parse_tensor("2|210>+2|201>-1/4|022>-|011>+|000>")
    pts = dict(real_points_of_orbit("mixed:4:3"))
    extra = U2 - U3 + parse_tensor("2|000> - 2|011> - 2|101> - 2|110>")
    assert len(pts) == 2 and pts["mixed:4:3:id:twisted"] == extra
    assert len(real_points_of_orbit("semisimple:1")) == 1
    with pytest.raises(UnknownLabel):
        real_points_of_orbit("nilpotent:25:id")


@pytest.mark.parametrize("rep, moves", [
    ("|120>-|102>-|021>+|012>", False),     # group 1
    ("|012>+|021>+|102>", True),             # group 2
    ("|210>-|201>", False),                  # group 4
    ("|012>+|120>", True),                   # group 5
    ("|012>", True),                         # group 7
])
def test_mu_map_on_third_family(rep, moves):
    # mu(x) = n conj(x) on the centralizer of s0 = i u_1; a moved orbit has no real point
    n, _ = catalog.twist_pair("semisimple:3")
    s0 = U1.scale(I)
    assert act_group(n, s0.conj()) == s0
    e = parse_tensor(rep)
    mu = act_group(n, e.conj())
    same = classify_mixed(s0 + e)[1] == classify_mixed(s0 + mu)[1]
    assert same != moves
