import pytest

from conftest import random_group_element
from qutrit_orbits import catalog
from qutrit_orbits.galois import descriptor_dim
from qutrit_orbits.liealg import bracket
from qutrit_orbits.nilpotent import (
    NotNilpotent, UnknownLabel, ZeroInput, characteristic, classify_nilpotent, collapse_sigma,
    fixes_triple, nilpotent_rep, sl2_triple, triple_stabilizer_dim,
)
from qutrit_orbits.tensorspace import U1, Tensor, act_group, parse_tensor, permute, phi_inv

ROW9 = "|000> + |011> + |111> + |122>"


def test_triple_through_e():
    e = parse_tensor("|001> + |010> + |100>")
    t = sl2_triple(e)
    assert t.is_valid()
    assert t.e == phi_inv(e)
    assert bracket(t.e, t.f) == t.h
    assert characteristic(t) == (1, 1, 1, 1, 1, 1)
    assert characteristic(sl2_triple(parse_tensor("|000>"))) == (1, 0, 1, 0, 1, 0)


def test_triple_errors():
    with pytest.raises(ZeroInput):
        sl2_triple(Tensor())
    with pytest.raises(NotNilpotent):
        sl2_triple(U1)


@pytest.mark.parametrize("N, char", [(1, (6, 12, 6, 6, 6, 6)), (10, (2, 2, 2, 2, 2, 2)),
                                     (8, (2, 4, 2, 4, 2, 4))])
def test_catalog_characteristics(N, char):
    assert characteristic(sl2_triple(nilpotent_rep(N))) == char


def test_row_one_and_eight_representatives():
    assert nilpotent_rep(1) == parse_tensor("|012>+|021>+|102>+|111>+|120>+|200>")
    assert nilpotent_rep(8) == parse_tensor("|002>+|020>+|111>+|200>")


def test_classify_examples(rng):
    lab = classify_nilpotent(parse_tensor(ROW9))
    assert (lab.N, lab.sigma, lab.characteristic) == (9, "id", (0, 6, 0, 0, 0, 0))
    lab = classify_nilpotent(permute("(12)", parse_tensor(ROW9)))
    assert (lab.N, lab.sigma, lab.characteristic) == (9, "(12)", (0, 0, 0, 0, 0, 6))
    g = random_group_element(rng)
    lab = classify_nilpotent(act_group(g, nilpotent_rep(2)))
    assert (lab.N, lab.sigma) == (2, "id")


def test_nilpotent_rep_examples():
    assert nilpotent_rep(24) == parse_tensor("|000>")
    assert nilpotent_rep(21) == parse_tensor("|001>+|010>+|100>")
    assert nilpotent_rep(4, "(23)") == permute("(23)", parse_tensor("|002>+|011>+|101>+|110>+|220>"))
    with pytest.raises(UnknownLabel):
        nilpotent_rep(24, "(12)")
    with pytest.raises(UnknownLabel):
        nilpotent_rep(25)


def test_census_and_distinct_characteristics():
    rows = catalog.nilpotent_rows()
    assert len(rows) == 62
    assert len({r.characteristic for r in rows}) == 62
    assert sorted({r.N for r in rows}) == list(range(1, 25))


def test_round_trip_every_row():
    for r in catalog.nilpotent_rows():
        lab = classify_nilpotent(r.representative)
        assert (lab.N, lab.sigma) == (r.N, r.sigma)
        assert lab.characteristic == r.characteristic


def test_stabilizer_dimensions_match_table():
    for r in catalog.nilpotent_rows():
        if r.sigma == "id":
            assert triple_stabilizer_dim(sl2_triple(r.base)) == descriptor_dim(r.identity_component), r.N


def test_catalog_stabilizer_generators_fix_triples():
    for N, rec in catalog.nilpotent_twist_data().items():
        t = sl2_triple(catalog.nilpotent_row(int(N)).base)
        for mats in rec["stabilizer"].values():
            assert fixes_triple(catalog.group_element(mats), t)


def test_collapse_modes():
    assert collapse_sigma(9, "(12)", "exact") == "(12)"
    # sym2 swaps factors 2 and 3; sym3 identifies every line of a row
    for N in (2, 9):
        lines = [r for r in catalog.nilpotent_rows() if r.N == N]
        assert {collapse_sigma(N, r.sigma, "sym3") for r in lines} == {"id"}
        for r in lines:
            partner = classify_nilpotent(permute("(23)", r.representative)).sigma
            assert collapse_sigma(N, r.sigma, "sym2") == collapse_sigma(N, partner, "sym2")
            assert classify_nilpotent(r.representative, "sym2").sigma == collapse_sigma(N, r.sigma, "sym2")
    with pytest.raises(ValueError):
        collapse_sigma(2, "id", "sym4")
