import pytest

from qutrit_orbits import catalog
from qutrit_orbits.catalog import LabelError, ParsedLabel, parse_label
from qutrit_orbits.nilpotent import UnknownLabel
from qutrit_orbits.tensorspace import Tensor, parse_tensor

# regression pin over the embedded data files; update deliberately
CHECKSUM = "e579aad9c172e90c98e0d450aa5415ad6e594297b77ded9b7544f33600a40f89"


def test_checksum_pinned():
    assert catalog.checksum() == CHECKSUM


def test_counts():
    cx = catalog.enumerate_entries("complex")
    assert len(cx) == 90
    assert sum(e.kind == "nilpotent" for e in cx) == 63
    assert sum(e.kind == "semisimple" for e in cx) == 4
    assert sum(e.kind == "mixed" for e in cx) == 23
    assert len(catalog.enumerate_entries("real")) == 109
    with pytest.raises(ValueError):
        catalog.enumerate_entries("rational")


def test_labels_unique_and_parse_back():
    for kind in ("complex", "real"):
        labels = [e.label for e in catalog.enumerate_entries(kind)]
        assert len(set(labels)) == len(labels)
        for lab in labels:
            assert str(parse_label(lab)) == lab


def test_lookup_examples():
    e = catalog.lookup("nilpotent:1:id")
    assert e.representative == parse_tensor("|012>+|021>+|102>+|111>+|120>+|200>")
    assert e.characteristic == (6, 12, 6, 6, 6, 6)
    assert e.anchor == "nilpotent/1:id"
    e = catalog.lookup("nilpotent:9:id:twisted")
    assert e.representative == parse_tensor("2|210>+2|201>-1/4|022>-|011>+|000>")
    e = catalog.lookup("mixed:3:4:id:twisted-s")
    s = catalog.real_semisimple_point(3, True)
    assert e.representative - s == parse_tensor("|210> - |201>")
    assert catalog.lookup("zero").representative == Tensor()


def test_lookup_unknown():
    with pytest.raises(UnknownLabel):
        catalog.lookup("nilpotent:24:(12)")
    with pytest.raises(UnknownLabel):
        catalog.lookup("mixed:3:3")


def test_parse_label_grammar():
    assert parse_label("nilpotent:9") == ParsedLabel("nilpotent", 9)
    assert parse_label("nilpotent:9:(12):twisted") == ParsedLabel("nilpotent", 9, None, "(12)", "twisted")
    assert parse_label("semisimple:2:twisted").real_form == "twisted"
    assert str(parse_label("mixed:2:2:id:twisted-s+c")) == "mixed:2:2:id:twisted-s+c"
    assert str(parse_label("mixed:4:3")) == "mixed:4:3:id"
    assert parse_label("zero:canonical").number == 0


@pytest.mark.parametrize("bad", ["", "orbit:1", "nilpotent", "nilpotent:x", "nilpotent:1:(14)",
                                 "semisimple:2:complex", "mixed:3", "mixed:3:2:(12):twisted:extra"])
def test_parse_label_errors(bad):
    with pytest.raises(LabelError):
        parse_label(bad)


def test_representatives_parse_and_characteristics_present():
    for e in catalog.enumerate_entries("complex"):
        assert isinstance(e.representative, Tensor)
        if e.kind == "nilpotent":
            assert e.characteristic is not None and len(e.characteristic) == 6


def test_real_points_listing():
    pts = catalog.real_points("nilpotent:3:(23)")
    assert [lab for lab, _ in pts] == ["nilpotent:3:(23):canonical", "nilpotent:3:(23):twisted"]
    assert len(catalog.real_points("semisimple:2")) == 2
    assert len(catalog.real_points("mixed:2:2")) == 3


def test_twisted_basis_is_real_span():
    for f, n in ((2, 2), (3, 1)):
        basis = catalog.twisted_basis(f)
        assert len(basis) == n and all(v.is_real() for v in basis)
    with pytest.raises(ValueError):
        catalog.real_semisimple_point(2, True, (1,))
