import pytest

from conftest import random_group_element
from qutrit_orbits import catalog
from qutrit_orbits.galois import descriptor_dim
from qutrit_orbits.mixed import (
    MixedLabel, NotMixed, centralizer_grading, classify_mixed, collapse_perm, j_invariants,
    mixed_rep, quadruple_stabilizer_dim, triple_in_centralizer,
)
from qutrit_orbits.semisimple import NotSemisimple
from qutrit_orbits.tensorspace import U1, U2, U3, GroupElt, act_group, cartan_point, parse_tensor, permute


def test_classify_examples():
    fam, lab = classify_mixed(U1 + parse_tensor("|012> + |021>"))
    assert fam.family == 3 and lab == MixedLabel(3, 4, "id")
    assert classify_mixed(U1 + U2 + parse_tensor("|021>"))[1] == MixedLabel(2, 2)
    fam, lab = classify_mixed(U2 - U3 + parse_tensor("|000>"))
    assert lab == MixedLabel(4, 5)


def test_classify_rejects_pure_elements():
    with pytest.raises(NotMixed):
        classify_mixed(U1)
    with pytest.raises(NotMixed):
        classify_mixed(parse_tensor("|000>"))


def test_mixed_rep_examples():
    assert mixed_rep((2, 1)) == U1 + U2 + parse_tensor("|021> + |102>")
    assert mixed_rep((3, 1, "id")) == U1 + parse_tensor("|012>+|021>+|102>+|120>")
    assert mixed_rep((4, 3)) == U2 - U3 + parse_tensor("|000> + |111>")


def test_table_census():
    rows = catalog.mixed_rows()
    assert len(rows) == 23
    assert [sum(r.label.family == f for r in rows) for f in (2, 3, 4)] == [2, 16, 5]


def test_centralizer_dimensions():
    # oracle: floating-point rank of the ad blocks, computed separately and frozen
    assert centralizer_grading(U1).dims() == (7, 4, 7)
    assert centralizer_grading(cartan_point(1, 2, 3)).dims() == (3, 0, 3)
    assert centralizer_grading(U2 - U3).dims() == (11, 8, 11)
    with pytest.raises(NotSemisimple):
        centralizer_grading(parse_tensor("|000>"))


def test_quadruple_stabilizers_match_tables():
    for row in catalog.mixed_rows():
        s = row.representative - row.nilpotent_part
        t = triple_in_centralizer(s, row.nilpotent_part)
        assert t.is_valid()
        assert quadruple_stabilizer_dim(s, t) == descriptor_dim(row.identity_component), row.label


@pytest.mark.parametrize("label", [(2, 1), (3, 2, "(23)"), (3, 5, "(12)"), (3, 7, "(12)"), (4, 4)])
def test_round_trip_samples(label):
    row = catalog.mixed_row(label)
    assert classify_mixed(row.representative)[1] == row.label


def test_orbit_invariance(rng):
    for label in ((3, 2, "(123)"), (3, 5, "id")):
        v = act_group(random_group_element(rng), mixed_rep(label))
        assert classify_mixed(v)[1] == MixedLabel(*label)


def test_other_semisimple_parameters():
    e = catalog.mixed_row((3, 2, "(12)")).nilpotent_part
    for a in (2, 3, 7):
        fam, lab = classify_mixed(U1.scale(a) + e)
        assert fam.exact == (a,) and lab == MixedLabel(3, 2, "(12)")
    e = catalog.mixed_row((2, 1)).nilpotent_part
    assert classify_mixed(U1.scale(2) + U2.scale(-1) + e)[1] == MixedLabel(2, 1)


def test_lines_follow_the_reported_parameter():
    # (P, P, P) realises a -> -a on the third family and moves line (12) to (132)
    P = [[0, -1, 0], [-1, 0, 0], [0, 0, -1]]
    g = GroupElt(P, P, P)
    assert act_group(g, U1) == U1.scale(-1)
    e = catalog.mixed_row((3, 2, "(12)")).nilpotent_part
    x = U1.scale(-1) + e
    assert classify_mixed(x) == classify_mixed(act_group(g, x))
    assert classify_mixed(act_group(g, x))[0].exact == (1,)
    assert classify_mixed(x)[1] == MixedLabel(3, 2, "(132)")


def test_family_three_permutation_equivariance():
    for part in (1, 2, 4, 5, 7):
        base = catalog.mixed_row((3, part, "id")).nilpotent_part
        for row in catalog.mixed_rows():
            if (row.label.family, row.label.part) != (3, part):
                continue
            v = U1 + permute(row.label.perm, base)
            assert classify_mixed(v)[1] == row.label


def test_j_invariants_separate_group_five_lines():
    vals = []
    for perm in ("id", "(12)"):
        row = catalog.mixed_row((3, 5, perm))
        t = triple_in_centralizer(U1, row.nilpotent_part)
        vals.append(j_invariants(U1, t.h))
    assert vals[0] != vals[1]


def test_collapse_perm():
    lab = MixedLabel(3, 2, "(13)")
    assert collapse_perm(lab, "exact") == lab
    assert collapse_perm(lab, "sym3") == MixedLabel(3, 2, "id")
    assert collapse_perm(MixedLabel(2, 1), "sym3") == MixedLabel(2, 1)
    pair = {collapse_perm(MixedLabel(3, 4, p), "sym2") for p in ("id", "(12)", "(13)")}
    assert len(pair) == 2


def test_inexact_third_family_parameter(rng):
    # semisimple part has a^6 = 1/16, so the parameter is not in Q(zeta_12)
    v = parse_tensor("-1/3|011> + 1/2|012> - 3/2|021> + 1/3|100> + 3|111> + |112> + 3|211> + |220>"
                     " - 3/2|221>")
    fam, lab = classify_mixed(v)
    assert fam.family == 3 and fam.exact is None
    assert classify_mixed(act_group(random_group_element(rng), v))[1] == lab
