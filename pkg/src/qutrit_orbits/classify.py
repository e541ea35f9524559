"""One entry point for complex and real classification, with plain-dict records."""

from __future__ import annotations

from dataclasses import dataclass

from .jordan import _as_tensor, jordan_decompose, kind
from .mixed import classify_mixed
from .nilpotent import MODES, classify_nilpotent
from .semisimple import FamilyLabel, family_of


@dataclass(frozen=True)
class OrbitLabel:
    kind: str            # zero | nilpotent | semisimple | mixed
    label: str
    record: dict

    def __str__(self):
        return self.label


def _num(z: complex, digits: int = 12) -> list:
    # rounding keeps structured output byte-stable; -0.0 is folded to 0.0
    return [round(z.real, digits) + 0.0, round(z.imag, digits) + 0.0]


def params_record(fam: FamilyLabel) -> dict:
    return {
        "approx": [_num(complex(p)) for p in fam.params],
        "exact": None if fam.exact is None else [str(x) for x in fam.exact],
    }


def classify(v, mode: str = "exact") -> OrbitLabel:
    """Complex orbit class of any tensor."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    v = _as_tensor(v)
    k = kind(v)
    if k == "zero":
        return OrbitLabel("zero", "nilpotent:0:id", {"kind": "zero", "label": "nilpotent:0:id"})
    if k == "nilpotent":
        lab = classify_nilpotent(v, mode)
        return OrbitLabel(k, str(lab), {"kind": k, "label": str(lab), "N": lab.N, "sigma": lab.sigma,
                                        "characteristic": list(lab.characteristic)})
    if k == "semisimple":
        fam = family_of(v)
        label = f"semisimple:{fam.family}"
        return OrbitLabel(k, label, {"kind": k, "label": label, "family": fam.family,
                                     "params": params_record(fam)})
    fam, lab = classify_mixed(v, mode)
    return OrbitLabel(k, str(lab), {"kind": k, "label": str(lab), "family": lab.family, "part": lab.part,
                                    "perm": lab.perm, "params": params_record(fam)})


def classify_real_record(v, mode: str = "exact") -> dict:
    from .real import classify_real
    lab = classify_real(v, mode)
    rec = classify(v, mode).record
    rec.update({"complexLabel": lab.complex_label, "realForm": lab.real_form,
                "label": str(lab), "evidence": _plain(lab.evidence)})
    return rec


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (int, float, str)) or x is None:
        return x
    return str(x)


def split_record(v) -> dict:
    split = jordan_decompose(_as_tensor(v))
    return {"semisimple": split.s.to_record(), "nilpotent": split.e.to_record()}
