import json
import random

import pytest

from conftest import random_group_element
from qutrit_orbits import liealg
from qutrit_orbits.exactfield import I, ONE, ZERO, ParseError, parse_scalar
from qutrit_orbits.liealg import E6Elt, bracket, canonical_generators
from qutrit_orbits.nilpotent import characteristic, sl2_triple
from qutrit_orbits import catalog
from qutrit_orbits.tensorspace import (
    FieldMismatch, GroupElt, SL3_BASIS, Tensor, TensorError, U1, act_algebra, act_group,
    highest_weight_index, load_tensor, parse_tensor, permute, permute_group, phi, phi_inv, psi,
    psi_inv, sigma3, _sl3_matrix,
)


def _random_g1(rng):
    return E6Elt([rng.randint(-3, 3) if k in liealg.G1 else 0 for k in range(liealg.DIM)])


def _generators():
    zero = [[ZERO] * 3 for _ in range(3)]
    for k in range(3):
        for name in SL3_BASIS:
            z = [zero, zero, zero]
            z[k] = _sl3_matrix(name)
            yield z


def test_phi_highest_and_lowest_weight():
    v0 = E6Elt.basis(highest_weight_index())
    assert phi(v0) == parse_tensor("|000>")
    x0 = phi_inv(parse_tensor("|222>"))
    assert len(x0.support()) == 1
    cg = canonical_generators()
    # lowest weight: killed by the lowering generators of g_0
    assert all(bracket(cg.y[n], x0).is_zero() for n in range(1, 7))


def test_phi_rejects_other_grades():
    with pytest.raises(TensorError):
        phi(E6Elt.basis(liealg.G0[0]))


def test_phi_round_trip():
    rng = random.Random(1)
    for _ in range(20):
        x = _random_g1(rng)
        assert phi_inv(phi(x)) == x


def test_phi_equivariance_on_generators():
    rng = random.Random(2)
    gens = list(_generators())
    for _ in range(150):
        z = rng.choice(gens)
        x = _random_g1(rng)
        assert phi(bracket(psi(z), x)) == act_algebra(z, phi(x))


def test_psi_round_trip():
    for z in _generators():
        assert psi_inv(psi(z)) == z


def test_act_algebra_examples():
    u0 = parse_tensor("|000>")
    zero = [[ZERO] * 3 for _ in range(3)]
    h1, h2, e12 = _sl3_matrix("h1"), _sl3_matrix("h2"), _sl3_matrix("e12")
    for k in range(3):
        z1, z2 = [zero] * 3, [zero] * 3
        z1[k], z2[k] = h1, h2
        assert act_algebra(z1, u0) == u0
        assert act_algebra(z2, u0).is_zero()
    assert act_algebra([e12, zero, zero], parse_tensor("|100>")) == u0


def test_act_group_catalog_twists():
    B = [[1, 1, 0], [I, -I, 0], [0, 0, I * parse_scalar("1/2")]]
    g = GroupElt.diagonal(B)
    assert act_group(g, parse_tensor("|000> + |111>")) == parse_tensor(
        "2|000> - 2|011> - 2|101> - 2|110>")
    B3 = [[1, -1, 0], [I, I, 0], [0, 0, -I * parse_scalar("1/2")]]
    assert act_group(GroupElt.diagonal(B3), U1.scale(I)) == parse_tensor(
        "-2|001> - 2|010> - 2|100> + 2|111> - (1/8)|222>")


def test_group_action_properties(rng):
    v = parse_tensor("|012> + 2|120> - |201> + (1/3)|111>")
    assert act_group(GroupElt.identity(), v) == v
    for _ in range(10):
        g, h = random_group_element(rng), random_group_element(rng)
        assert act_group(g, act_group(h, v)) == act_group(g * h, v)
        assert act_group(g.inverse(), act_group(g, v)) == v
        w = v.scale(I) + parse_tensor("|000>")
        assert act_group(g.conj(), w.conj()) == act_group(g, w).conj()


def test_group_elements_are_unimodular():
    with pytest.raises(TensorError):
        GroupElt([[2, 0, 0], [0, 1, 0], [0, 0, 1]], [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
                 [[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def test_permutations():
    v = parse_tensor("|012>")
    assert permute("id", v) == v
    assert permute("(12)", v) == parse_tensor("|102>")
    rep2 = catalog.nilpotent_row(2).base
    assert characteristic(sl2_triple(permute("(123)", rep2))) == (0, 6, 6, 6, 6, 6)


def test_permutation_compatibility(rng):
    v = parse_tensor("|012> + |100> - 3|221> + |002>")
    for pi in ("(12)", "(13)", "(23)", "(123)", "(132)"):
        g = random_group_element(rng)
        assert act_group(permute_group(pi, g), permute(pi, v)) == permute(pi, act_group(g, v))


def test_sigma3(rng):
    g = random_group_element(rng)
    assert sigma3(sigma3(g)) == g
    assert sigma3(GroupElt.identity()) == GroupElt.identity()
    from qutrit_orbits.linalg import det3
    assert det3(sigma3(g).mats[2]) == ONE


def test_parse_tensor_and_str_round_trip():
    v = parse_tensor("2|210> + 2|201> - (1/4)|022> - |011> + |000>")
    assert parse_tensor(str(v)) == v
    assert parse_tensor("0").is_zero()
    assert parse_tensor("i|000> + z3|111>").entries[13] == parse_scalar("z3")
    with pytest.raises(ParseError):
        parse_tensor("|003>")


def test_tensor_file_format(tmp_path):
    rec = {"field": "real", "entries": [{"ket": "012", "value": "1/2"}, {"ket": "210", "value": "-3"}]}
    p = tmp_path / "t.json"
    p.write_text(json.dumps(rec))
    v, field = load_tensor(p)
    assert field == "real" and v == parse_tensor("(1/2)|012> - 3|210>")
    assert Tensor.from_record(v.to_record("real")) == (v, "real")
    with pytest.raises(FieldMismatch):
        Tensor.from_record({"field": "real", "entries": [{"ket": "000", "value": "i"}]})
    with pytest.raises(ParseError):
        Tensor.from_record({"field": "complex", "entries": [{"ket": "00", "value": "1"}]})
    with pytest.raises(ParseError):
        Tensor.from_record({"field": "complex", "entries": [{"ket": "000", "value": "1/"}]})
    # missing kets are zero
    assert Tensor.from_record({"entries": []})[0].is_zero()
