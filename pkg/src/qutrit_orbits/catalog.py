"""Embedded orbit tables: representatives, characteristics, stabilizer data.

Everything lives in ``data/`` as plain text (tab-separated tables, JSON for
matrices) in the scalar-string syntax of the tensor parser.  Labels are
``kind:N-or-family[:part][:perm][:realform]``, for instance
``nilpotent:21:id``, ``semisimple:2:twisted`` or ``mixed:3:4:(12):twisted-s``.
"""

from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .exactfield import parse_scalar
from .tensorspace import GroupElt, Tensor, parse_tensor, permute, perm_tuple, perm_name

DATA_FILES = ("nilpotent.tsv", "nilpotent_twists.json", "mixed.tsv", "mixed_real.tsv", "twists.json")

# normal-form parameters used for the semisimple entries
SEMISIMPLE_PARAMS = {1: (1, 2, 3), 2: (1, 1), 3: (1,), 4: (1,)}


@dataclass(frozen=True)
class NilpotentRow:
    N: int
    sigma: str
    base: Tensor
    characteristic: tuple
    identity_component: str
    component_group: str

    @property
    def representative(self) -> Tensor:
        return permute(self.sigma, self.base)


def _data_text(name: str) -> str:
    return resources.files(__package__).joinpath("data", name).read_text(encoding="utf-8")


@lru_cache(maxsize=1)
def nilpotent_rows() -> tuple[NilpotentRow, ...]:
    rows = []
    current = None
    lines = [ln for ln in _data_text("nilpotent.tsv").splitlines() if ln and not ln.startswith("#")]
    for rec in csv.reader(lines, delimiter="\t"):
        rec += [""] * (6 - len(rec))
        N = int(rec[0])
        if rec[1]:
            current = (parse_tensor(rec[1]), rec[4], rec[5])
        elif current is None:
            raise ValueError("continuation line before any representative")
        base, z0, comp = current
        char = tuple(int(x) for x in rec[3].split())
        rows.append(NilpotentRow(N, perm_name(perm_tuple(rec[2])), base, char, z0, comp))
    return tuple(rows)


def nilpotent_row(N: int, sigma="id") -> NilpotentRow:
    from .nilpotent import UnknownLabel
    try:
        key = perm_name(perm_tuple(sigma))
    except ValueError:
        raise UnknownLabel(f"unknown permutation {sigma!r}") from None
    for row in nilpotent_rows():
        if row.N == N and row.sigma == key:
            return row
    raise UnknownLabel(f"no nilpotent class ({N}, {key})")


def _tsv(name: str):
    lines = [ln for ln in _data_text(name).splitlines() if ln and not ln.startswith("#")]
    for rec in csv.reader(lines, delimiter="\t"):
        yield rec


@lru_cache(maxsize=1)
def mixed_rows():
    from .mixed import MixedLabel, MixedRow
    rows = []
    groups = {}
    for rec in _tsv("mixed.tsv"):
        rec += [""] * (6 - len(rec))
        fam, part = int(rec[0]), int(rec[1])
        if rec[4]:
            groups[(fam, part)] = (rec[4], rec[5])
        z0, comp = groups[(fam, part)]
        label = MixedLabel(fam, part, perm_name(perm_tuple(rec[2])))
        rows.append(MixedRow(label, parse_tensor(rec[3]), z0, comp))
    return tuple(rows)


def mixed_row(label):
    from .mixed import MixedLabel
    from .nilpotent import UnknownLabel
    if not isinstance(label, MixedLabel):
        label = MixedLabel(*label)
    for row in mixed_rows():
        if row.label == label:
            return row
    raise UnknownLabel(f"no mixed class {label}")


# -- matrices and twists ------------------------------------------------------------

def parse_matrix(text: str):
    """``"a,b,c;d,e,f;g,h,i"`` as a 3x3 list of Cyc rows."""
    return [[parse_scalar(x) for x in row.split(",")] for row in text.split(";")]


def group_element(mats) -> GroupElt:
    return GroupElt(*[parse_matrix(m) for m in mats])


@lru_cache(maxsize=None)
def _json(name: str) -> dict:
    return json.loads(_data_text(name))


def nilpotent_twist_data() -> dict:
    """Stabilizer generators, cocycle and twist for nilpotent cases 3, 9, 20."""
    return _json("nilpotent_twists.json")


def twist_data() -> dict:
    return _json("twists.json")


def twist_pair(key: str) -> tuple[GroupElt, GroupElt]:
    """(cocycle, twist) under a key such as ``"nilpotent:9"`` or ``"semisimple:3"``."""
    if key.startswith("nilpotent:"):
        rec = nilpotent_twist_data()[key.split(":")[1]]
    else:
        rec = twist_data()[key]
    return group_element(rec["cocycle"]), group_element(rec["twist"])


@lru_cache(maxsize=1)
def known_twists() -> tuple:
    """Every catalog (cocycle, twist) pair, keyed by its orbit."""
    keys = [f"nilpotent:{n}" for n in nilpotent_twist_data()] + list(twist_data())
    return tuple(twist_pair(k) for k in keys)


def twisted_basis(family: int) -> tuple[Tensor, ...]:
    return tuple(parse_tensor(t) for t in twist_data()[f"semisimple:{family}"]["real_basis"])


# -- real mixed classes ----------------------------------------------------------

@dataclass(frozen=True)
class RealMixedRow:
    label: object          # MixedLabel of the complex orbit
    real_form: str
    nilpotent_part: Tensor
    complex_nilpotent: Tensor | None

    @property
    def representative(self) -> Tensor:
        twisted_s = self.real_form.startswith("twisted-s")
        return real_semisimple_point(self.label.family, twisted_s) + self.nilpotent_part


def real_semisimple_point(family: int, twisted: bool, params=None) -> Tensor:
    """Real semisimple point, on the twisted basis when asked; fixed parameters by default."""
    from .semisimple import family_point
    if not twisted:
        return family_point(family, SEMISIMPLE_PARAMS[family] if params is None else params)
    basis = twisted_basis(family)
    params = (1,) * len(basis) if params is None else params
    if len(params) != len(basis):
        raise ValueError(f"family {family} takes {len(basis)} real parameters")
    out = Tensor()
    for b, v in zip(params, basis):
        out = out + v.scale(b)
    return out


@lru_cache(maxsize=1)
def real_mixed_rows() -> tuple[RealMixedRow, ...]:
    """The 23 canonical real mixed classes followed by the extra ones."""
    from .mixed import MixedLabel
    rows = [RealMixedRow(r.label, "canonical", r.nilpotent_part, r.nilpotent_part) for r in mixed_rows()]
    for rec in _tsv("mixed_real.tsv"):
        rec += [""] * (6 - len(rec))
        label = MixedLabel(int(rec[0]), int(rec[1]), perm_name(perm_tuple(rec[2])))
        cplx = parse_tensor(rec[5]) if rec[5] else None
        rows.append(RealMixedRow(label, rec[3], parse_tensor(rec[4]), cplx))
    return tuple(rows)


# -- labels -----------------------------------------------------------------------

class LabelError(ValueError):
    pass


REAL_FORMS = ("canonical", "twisted", "twisted-s", "twisted-s+c")


@dataclass(frozen=True)
class ParsedLabel:
    kind: str
    number: int            # N for nilpotent, family otherwise
    part: int | None = None
    perm: str = "id"
    real_form: str | None = None

    @property
    def complex_label(self) -> str:
        if self.kind == "nilpotent":
            return f"nilpotent:{self.number}:{self.perm}"
        if self.kind == "semisimple":
            return f"semisimple:{self.number}"
        return f"mixed:{self.number}:{self.part}:{self.perm}"

    def __str__(self):
        base = self.complex_label
        return base if self.real_form is None else f"{base}:{self.real_form}"


def parse_label(text: str) -> ParsedLabel:
    """Read a label string; the real form is kept only when present."""
    parts = text.strip().split(":")
    kind = parts[0]
    try:
        if kind == "zero":
            return ParsedLabel("nilpotent", 0, real_form=parts[1] if len(parts) > 1 else None)
        if kind == "nilpotent":
            N = int(parts[1])
            perm = perm_name(perm_tuple(parts[2])) if len(parts) > 2 else "id"
            rest = parts[3:]
            return ParsedLabel(kind, N, None, perm, _form(rest))
        if kind == "semisimple":
            return ParsedLabel(kind, int(parts[1]), None, "id", _form(parts[2:]))
        if kind == "mixed":
            fam, part = int(parts[1]), int(parts[2])
            perm = perm_name(perm_tuple(parts[3])) if len(parts) > 3 else "id"
            return ParsedLabel(kind, fam, part, perm, _form(parts[4:]))
    except (IndexError, ValueError) as exc:
        raise LabelError(f"malformed label {text!r}: {exc}") from None
    raise LabelError(f"unknown label kind {kind!r}")


def _form(rest):
    if not rest:
        return None
    if len(rest) != 1 or rest[0] not in REAL_FORMS:
        raise LabelError(f"unknown real form {':'.join(rest)!r}")
    return rest[0]


# -- entries ----------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    label: str
    kind: str
    representative: Tensor
    anchor: str
    characteristic: tuple | None = None
    identity_component: str = ""
    component_group: str = ""
    params: tuple | None = None


def _nilpotent_entries():
    yield CatalogEntry("nilpotent:0:id", "nilpotent", Tensor(), "nilpotent/0", (0,) * 6, "G", "1")
    for r in nilpotent_rows():
        yield CatalogEntry(f"nilpotent:{r.N}:{r.sigma}", "nilpotent", r.representative,
                           f"nilpotent/{r.N}:{r.sigma}", r.characteristic,
                           r.identity_component, r.component_group)


def _semisimple_entries():
    from .semisimple import family_point, STAB_DIM_BY_FAMILY
    for f, params in SEMISIMPLE_PARAMS.items():
        yield CatalogEntry(f"semisimple:{f}", "semisimple", family_point(f, params),
                           f"semisimple/{f}", identity_component=f"dim {STAB_DIM_BY_FAMILY[f]}",
                           params=params)


def _mixed_entries():
    for r in mixed_rows():
        yield CatalogEntry(str(r.label), "mixed", r.representative, f"mixed/{r.label.family}:"
                           f"{r.label.part}:{r.label.perm}", None, r.identity_component, r.component_group)


def _real_entries():
    twisted = nilpotent_twist_data()
    for e in _nilpotent_entries():
        yield _with_form(e, "canonical")
    for N, rec in twisted.items():
        base = parse_tensor(rec["real_rep"])
        for line in rec["lines"]:
            sigma = perm_name(perm_tuple(line))
            yield CatalogEntry(f"nilpotent:{N}:{sigma}:twisted", "nilpotent", permute(sigma, base),
                               f"real-nilpotent/{N}:{sigma}", nilpotent_row(int(N), sigma).characteristic)
    for e in _semisimple_entries():
        yield _with_form(e, "canonical")
    for f in (2, 3):
        yield CatalogEntry(f"semisimple:{f}:twisted", "semisimple", real_semisimple_point(f, True),
                           f"real-semisimple/{f}", params=(1,) * len(twisted_basis(f)))
    for r in real_mixed_rows():
        lab = f"{r.label}:{r.real_form}"
        yield CatalogEntry(lab, "mixed", r.representative, f"real-mixed/{r.label.family}:{r.label.part}:"
                           f"{r.label.perm}:{r.real_form}")


def _with_form(e: CatalogEntry, form: str) -> CatalogEntry:
    return CatalogEntry(f"{e.label}:{form}", e.kind, e.representative, e.anchor, e.characteristic,
                        e.identity_component, e.component_group, e.params)


@lru_cache(maxsize=2)
def enumerate_entries(kind: str = "complex") -> tuple[CatalogEntry, ...]:
    """All class descriptors: 90 complex or 109 real."""
    if kind == "complex":
        return tuple(_nilpotent_entries()) + tuple(_semisimple_entries()) + tuple(_mixed_entries())
    if kind == "real":
        return tuple(_real_entries())
    raise ValueError(f"kind must be 'complex' or 'real', not {kind!r}")


def lookup(label) -> CatalogEntry:
    from .nilpotent import UnknownLabel
    parsed = parse_label(str(label)) if not isinstance(label, ParsedLabel) else label
    kind = "complex" if parsed.real_form is None else "real"
    key = str(parsed)
    for e in enumerate_entries(kind):
        if e.label == key:
            return e
    raise UnknownLabel(f"no catalog entry {key}")


def real_points(label) -> list[tuple[str, Tensor]]:
    """Real classes inside a complex catalog orbit, with representatives."""
    parsed = parse_label(str(label))
    if parsed.real_form is not None:
        parsed = ParsedLabel(parsed.kind, parsed.number, parsed.part, parsed.perm)
    lookup(parsed)
    prefix = parsed.complex_label + ":"
    return [(e.label, e.representative) for e in enumerate_entries("real") if e.label.startswith(prefix)]


def checksum() -> str:
    """sha256 over the embedded data files, in a fixed order."""
    h = hashlib.sha256()
    for name in DATA_FILES:
        h.update(name.encode())
        h.update(_data_text(name).encode())
    return h.hexdigest()
