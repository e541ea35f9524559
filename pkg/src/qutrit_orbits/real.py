"""Real orbits: the complex label plus the real form, for rational tensors.

Polynomial invariants cannot separate real forms: the torus exp(t h) inside
the stabilizer of s rescales e by any complex number, so every invariant of
(s, e) is blind to e.  Signatures of real quadratic forms are used instead.
Given a real homogeneous sl2-triple (h, e, f), the lowest-weight spaces

    L(j, k) = { y in g_j : [h, y] = -k y, [f, y] = 0 }

carry the forms B(y, z) = kappa(y, ad(s)^m ad(e)^k z), symmetric when k + m is
even and nonzero only when 2j + k + m = 0 mod 3.  Their inertia is invariant
under the real group and is computed exactly over Q.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import flint

from . import catalog, liealg
from .catalog import ParsedLabel, parse_label
from .jordan import _as_tensor, jordan_decompose, kind
from .linalg import int_qmat, q_nullspace, signature
from .mixed import MixedLabel, classify_mixed, triple_in_centralizer
from .nilpotent import MODES, Sl2Triple, UnknownLabel, classify_nilpotent, collapse_sigma, sl2_triple
from .semisimple import family_of, real_class
from .tensorspace import Tensor, perm_name, perm_tuple, phi_inv

G0, G1, GM1 = list(liealg.G0), list(liealg.G1), list(liealg.GM1)
_GRADES = {0: G0, 1: G1, -1: GM1}
K_MAX = 12


class NotReal(ValueError):
    pass


class DiscriminatorInconclusive(RuntimeError):
    def __init__(self, complex_label: str, candidates, evidence=None):
        self.complex_label = complex_label
        self.candidates = list(candidates)
        self.evidence = evidence or {}
        super().__init__(f"real form of {complex_label} undecided among {self.candidates}")


@dataclass(frozen=True)
class RealOrbitLabel:
    complex_label: str
    real_form: str = "canonical"
    evidence: dict = field(default_factory=dict, compare=False, hash=False)

    def __str__(self):
        return f"{self.complex_label}:{self.real_form}"


# -- exact forms --------------------------------------------------------------------

def _qad(x) -> flint.fmpq_mat:
    den, mats = liealg.ad_int_parts(x)
    if any(m is not None and m.any() for m in mats[1:]):
        raise NotReal("element is not rational")
    return int_qmat(mats[0], den)


@lru_cache(maxsize=1)
def _killing() -> flint.fmpq_mat:
    return int_qmat(liealg.algebra().killing_matrix)


def _identity(n):
    return flint.fmpq_mat(n, n, [int(i == j) for i in range(n) for j in range(n)])


def lowest_weight_space(t: Sl2Triple, j: int, k: int, Ah=None, Af=None) -> flint.fmpq_mat:
    """Columns spanning L(j, k) inside g, as a 78 x d rational matrix."""
    Ah = _qad(t.h) if Ah is None else Ah
    Af = _qad(t.f) if Af is None else Af
    idx = _GRADES[j]
    below = _GRADES[j % 3 - 1]
    rows = [[Ah[a, b] + (k if a == b else 0) for b in idx] for a in idx]
    rows += [[Af[a, b] for b in idx] for a in below]
    M = flint.fmpq_mat(len(rows), len(idx), [x for r in rows for x in r])
    ker = q_nullspace(M)
    Y = flint.fmpq_mat(liealg.DIM, len(ker), [0] * (liealg.DIM * len(ker)))
    for c, v in enumerate(ker):
        for a, x in zip(idx, v):
            Y[a, c] = x
    return Y


def form_signatures(t: Sl2Triple, s=None, ms=(0,), k_max: int = K_MAX) -> dict:
    """{(j, k, m): (positive, negative)} over the nonzero symmetric forms."""
    Ah, Af, Ae = _qad(t.h), _qad(t.f), _qad(t.e)
    n = liealg.DIM
    E = [_identity(n)]
    for _ in range(k_max):
        E.append(Ae * E[-1])
    S = [_identity(n)]
    if s is not None:
        As = _qad(phi_inv(_as_tensor(s)))
        for _ in range(max(ms)):
            S.append(As * S[-1])
    out = {}
    KM = _killing()
    for j in (0, 1, -1):
        for k in range(k_max + 1):
            Y = None
            for m in ms:
                if (k + m) % 2 or (2 * j + k + m) % 3 or m >= len(S):
                    continue
                if Y is None:
                    Y = lowest_weight_space(t, j, k, Ah, Af)
                if Y.ncols() == 0:
                    break
                p, q, _ = signature(Y.transpose() * KM * S[m] * E[k] * Y)
                if p or q:
                    out[(j, k, m)] = (p, q)
    return out


def _check_real(v: Tensor) -> Tensor:
    v = _as_tensor(v)
    if not v.is_real():
        raise NotReal("tensor has non-real entries")
    if not v.is_rational():
        raise NotReal("real classification accepts rational entries only")
    return v


# -- nilpotent --------------------------------------------------------------------

def _twisted_lines() -> dict:
    data = catalog.nilpotent_twist_data()
    return {int(N): [perm_name(perm_tuple(p)) for p in rec["lines"]] for N, rec in data.items()}


@lru_cache(maxsize=None)
def _nilpotent_reference(N: int, sigma: str) -> dict:
    out = {}
    for form in ("canonical", "twisted"):
        rep = catalog.lookup(f"nilpotent:{N}:{sigma}:{form}").representative
        out[form] = _freeze(form_signatures(sl2_triple(rep)))
    if out["canonical"] == out["twisted"]:
        raise DiscriminatorInconclusive(f"nilpotent:{N}:{sigma}", out, {"reason": "reference forms agree"})
    return out


def _freeze(d: dict) -> tuple:
    return tuple(sorted(d.items()))


def _pick(complex_label: str, value, refs: dict) -> str:
    hits = [form for form, ref in refs.items() if ref == value]
    if len(hits) != 1:
        raise DiscriminatorInconclusive(complex_label, refs, {"signatures": dict(value)})
    return hits[0]


def _real_nilpotent(v: Tensor, mode: str) -> RealOrbitLabel:
    lab = classify_nilpotent(v)
    sigma = lab.sigma
    form, evidence = "canonical", {"characteristic": lab.characteristic}
    if sigma in _twisted_lines().get(lab.N, ()):
        value = _freeze(form_signatures(sl2_triple(v)))
        form = _pick(str(lab), value, _nilpotent_reference(lab.N, sigma))
        evidence["signatures"] = {f"{j},{k},{m}": list(pq) for (j, k, m), pq in value}
    if mode != "exact":
        sigma = collapse_sigma(lab.N, sigma, mode)
    return RealOrbitLabel(f"nilpotent:{lab.N}:{sigma}", form, evidence)


# -- semisimple ---------------------------------------------------------------------

def _real_semisimple(v: Tensor) -> RealOrbitLabel:
    fam = family_of(v)
    form = real_class(fam)
    return RealOrbitLabel(f"semisimple:{fam.family}", form, {"params": [str(p) for p in fam.params]})


# -- mixed --------------------------------------------------------------------------

# the mixed class with a twisted canonical-s real form, and the sign-split
# class over the non-canonical second family
_MIXEDCAN = (4, 3)
_SIGN_SPLIT = (2, 2)
_SIGN_KEY = (-1, 1, 1)


@lru_cache(maxsize=1)
def _mixedcan_reference() -> dict:
    out = {}
    for form in ("canonical", "twisted"):
        rep = catalog.lookup(f"mixed:4:3:id:{form}").representative
        split = jordan_decompose(rep)
        out[form] = _freeze(form_signatures(triple_in_centralizer(split.s, split.e)))
    if out["canonical"] == out["twisted"]:
        raise DiscriminatorInconclusive("mixed:4:3:id", out, {"reason": "reference forms agree"})
    return out


def sign_split_form(s: Tensor, e: Tensor) -> tuple[int, int]:
    """Inertia of kappa(y, ad(s) ad(e) z) on L(-1, 1)."""
    t = triple_in_centralizer(s, e)
    sig = form_signatures(t, s, ms=(1,), k_max=1)
    return sig.get(_SIGN_KEY, (0, 0))


def _real_mixed(v: Tensor, mode: str) -> RealOrbitLabel:
    split = jordan_decompose(v)
    fam, lab = classify_mixed(v)
    s_form = real_class(fam)
    key = (lab.family, lab.part)
    evidence = {"semisimple": s_form, "params": [str(p) for p in fam.params]}
    if s_form == "canonical":
        form = "canonical"
        if key == _MIXEDCAN:
            value = _freeze(form_signatures(triple_in_centralizer(split.s, split.e)))
            form = _pick(str(lab), value, _mixedcan_reference())
    else:
        available = {r.real_form for r in catalog.real_mixed_rows()
                     if r.label == lab and r.real_form.startswith("twisted-s")}
        if not available:
            raise DiscriminatorInconclusive(str(lab), [], {"reason": "no real class over a non-canonical s"})
        form = "twisted-s"
        if key == _SIGN_SPLIT:
            p, q = sign_split_form(split.s, split.e)
            evidence["sign_form"] = [p, q]
            if p == q:
                raise DiscriminatorInconclusive(str(lab), sorted(available), evidence)
            # orientation fixed by the catalog pair: +|102> gives more negative directions
            form = "twisted-s" if q > p else "twisted-s+c"
    lab = _collapse_mixed(lab, mode)
    return RealOrbitLabel(str(lab), form, evidence)


def _collapse_mixed(lab: MixedLabel, mode: str) -> MixedLabel:
    from .mixed import collapse_perm
    return collapse_perm(lab, mode)


# -- front door -----------------------------------------------------------------------

def classify_real(v, mode: str = "exact") -> RealOrbitLabel:
    """Real orbit of a tensor with rational entries."""
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    v = _check_real(v)
    k = kind(v)
    if k == "zero":
        return RealOrbitLabel("nilpotent:0:id")
    if k == "nilpotent":
        return _real_nilpotent(v, mode)
    if k == "semisimple":
        return _real_semisimple(v)
    return _real_mixed(v, mode)


def real_rep(label, params=None) -> Tensor:
    """Catalog representative of a real label.

    For semisimple labels, params replaces the fixed parameters (on the twisted
    basis for twisted forms).
    """
    parsed = parse_label(str(label)) if not isinstance(label, ParsedLabel) else label
    if parsed.real_form is None:
        parsed = ParsedLabel(parsed.kind, parsed.number, parsed.part, parsed.perm, "canonical")
    entry = catalog.lookup(parsed)
    if params is None:
        return entry.representative
    if parsed.kind != "semisimple":
        raise ValueError("parameters apply to semisimple labels only")
    return catalog.real_semisimple_point(parsed.number, parsed.real_form == "twisted", params)


def enumerate_real() -> list[str]:
    return [e.label for e in catalog.enumerate_entries("real")]


def discriminator_gate() -> dict:
    """Classify every real catalog representative; map label -> returned label."""
    out = {}
    for e in catalog.enumerate_entries("real"):
        out[e.label] = str(classify_real(e.representative))
    return out


__all__ = ["NotReal", "DiscriminatorInconclusive", "RealOrbitLabel", "classify_real", "real_rep",
           "enumerate_real", "form_signatures", "lowest_weight_space", "sign_split_form",
           "discriminator_gate", "UnknownLabel"]
