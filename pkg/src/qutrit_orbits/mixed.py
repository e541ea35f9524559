"""Mixed tensors x = s + e: semisimple family of s plus the class of e in z_g(s).

A class is recognised by the coarse key

    (family of s, nilpotent label of e, stab_dim(x), dim Z(s, h, e, f))

where (h, e, f) is a homogeneous sl2-triple inside a = z_g(s).  Lines of a
permutation group that share the key are told apart by the alternating
invariants J_kl = T(h_k s, h_l s, s), where T is the SL(3)^3-invariant
trilinear form built from three epsilon tensors and h_k acts on factor k.
J is cubic in s, so a candidate line is tested by evaluating it at the
same Cartan point as x.

Lines are relative to the parameter reported in the family label.  An
element of G_0 that moves the parameter within its family group can move
the lines as well: (P, P, P) with P = -(e0 <-> e1) sends -u1 + e to u1 + e'
with e' on another line.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

import numpy as np

from . import liealg
from .exactfield import ZERO
from .jordan import jordan_decompose, stab_dim, _as_tensor, kind
from .liealg import E6Elt, ad_cmat
from .linalg import kernel
from .nilpotent import (Sl2Triple, sl2_triple_in, triple_stabilizer_dim, classify_nilpotent,
                        MODES)
from .semisimple import FamilyLabel, family_of, family_point, NotSemisimple
from .tensorspace import (Tensor, phi_inv, psi_inv, perm_name, perm_compose, PERMS,
                          _apply_factor)

G0, G1, GM1 = list(liealg.G0), list(liealg.G1), list(liealg.GM1)
_GRADES = {0: G0, 1: G1, -1: GM1}

# semisimple parts used for the tabulated representatives
REFERENCE_PARAMS = {2: (1, 1), 3: (1,), 4: (1,)}


class NotMixed(ValueError):
    pass


class DiscriminatorCollision(RuntimeError):
    pass


@dataclass(frozen=True)
class MixedLabel:
    family: int
    part: int
    perm: str = "id"

    def __str__(self):
        return f"mixed:{self.family}:{self.part}:{self.perm}"


@dataclass(frozen=True)
class CentralizerGrading:
    """a_j = z_g(s) n g_j, each as a list of coordinate vectors on the grade's basis."""
    minus: list
    zero: list
    one: list

    def dims(self) -> tuple:
        return (len(self.minus), len(self.zero), len(self.one))

    def elements(self, j: int) -> list[E6Elt]:
        vecs = {-1: self.minus, 0: self.zero, 1: self.one}[j]
        idx = _GRADES[j]
        out = []
        for v in vecs:
            coords = [ZERO] * liealg.DIM
            for k, c in zip(idx, v):
                coords[k] = c
            out.append(E6Elt(coords))
        return out


def _next(j: int) -> int:
    return (j + 2) % 3 - 1


def centralizer_grading(s) -> CentralizerGrading:
    s = _as_tensor(s)
    if kind(s) not in ("semisimple", "zero"):
        raise NotSemisimple("centralizer_grading expects a semisimple tensor")
    A = ad_cmat(phi_inv(s))
    parts = {}
    for j in (-1, 0, 1):
        block = A.block(_GRADES[_next(j)], _GRADES[j]).to_rows()
        parts[j] = kernel(block, len(_GRADES[j]))
    return CentralizerGrading(parts[-1], parts[0], parts[1])


def triple_in_centralizer(s, e) -> Sl2Triple:
    """Homogeneous sl2-triple through e with h in a_0 and f in a_-1."""
    grading = centralizer_grading(s)
    return sl2_triple_in(phi_inv(_as_tensor(e)), space=grading.minus)


def quadruple_stabilizer_dim(s, t: Sl2Triple) -> int:
    return triple_stabilizer_dim(t, within=[phi_inv(_as_tensor(s))])


@dataclass(frozen=True)
class MixedRow:
    label: MixedLabel
    nilpotent_part: Tensor
    identity_component: str
    component_group: str

    @property
    def representative(self) -> Tensor:
        return family_point(self.label.family, REFERENCE_PARAMS[self.label.family]) + self.nilpotent_part


def _coarse_key(v, split) -> tuple:
    s, e = split.s, split.e
    fam = family_of(s, check=False)
    nil = classify_nilpotent(e)
    t = triple_in_centralizer(s, e)
    return (fam.family, nil.N, nil.sigma, stab_dim(v), quadruple_stabilizer_dim(s, t)), fam, t


def discriminator(v, split=None) -> tuple:
    v = _as_tensor(v)
    return _coarse_key(v, split or jordan_decompose(v))[0]


def _sign(p) -> int:
    inv = sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])
    return -1 if inv % 2 else 1


_EPS = [(p, _sign(p)) for p in permutations(range(3))]


def trilinear(a, b, c):
    """sum eps eps eps a b c, contracting slot-wise over the three factors.

    Arguments are 27-entry sequences over any ring (Cyc or complex).
    """
    out = 0
    for p, sp in _EPS:
        for q, sq in _EPS:
            for r, sr in _EPS:
                x = a[9 * p[0] + 3 * q[0] + r[0]]
                if not x:
                    continue
                y = b[9 * p[1] + 3 * q[1] + r[1]]
                if not y:
                    continue
                z = c[9 * p[2] + 3 * q[2] + r[2]]
                if z:
                    out = x * y * z * (sp * sq * sr) + out
    return out


def _factor_numeric(m, v, k):
    t = np.asarray(v, dtype=complex).reshape(3, 3, 3)
    return np.moveaxis(np.tensordot(m, t, axes=([1], [k])), 0, k).reshape(27)


def j_invariants(s, h, exact: bool = True) -> tuple:
    """(J_01, J_12, J_20) with J_kl = T(h_k s, h_l s, s).

    ``s`` is a Tensor, or a complex 27-vector when ``exact`` is False.
    """
    hs = psi_inv(h)
    if exact:
        sv = s.entries
        hv = [_apply_factor(hs[k], sv, k) for k in range(3)]
    else:
        sv = list(s)
        hv = [list(_factor_numeric(_numeric(hs[k]), sv, k)) for k in range(3)]
    out = tuple(trilinear(hv[k], hv[l], sv) for k, l in ((0, 1), (1, 2), (2, 0)))
    return tuple(ZERO + x if exact else complex(x) for x in out)


def _numeric(m):
    return np.array([[complex(*x.approx()) for x in r] for r in m])


def _cartan_numeric(family: int, params):
    if family == 2:
        a = (params[0], params[1], 0)
    elif family == 3:
        a = (params[0], 0, 0)
    elif family == 4:
        a = (0, params[0], -params[0])
    else:
        a = params
    v = np.zeros(27, dtype=complex)
    for coeff, ket in ((a[0], ("000", "111", "222")), (a[1], ("012", "120", "201")), (a[2], ("021", "210", "102"))):
        for kk in ket:
            v[9 * int(kk[0]) + 3 * int(kk[1]) + int(kk[2])] = coeff
    return v


def _j_close(x, y, tol: float = 1e-8) -> bool:
    x, y = np.array(x, dtype=complex), np.array(y, dtype=complex)
    return bool(np.max(np.abs(x - y)) <= tol * max(1.0, float(np.max(np.abs(y)))))


@lru_cache(maxsize=1)
def _table() -> dict:
    """Coarse key -> [(label, h of the tabulated triple)]."""
    from . import catalog
    table = {}
    for row in catalog.mixed_rows():
        key, _, t = _coarse_key(row.representative, jordan_decompose(row.representative))
        table.setdefault(key, []).append((row.label, t.h))
    # lines sharing a key must be separated by J at the reference point
    for key, entries in table.items():
        if len(entries) > 1:
            s = family_point(key[0], REFERENCE_PARAMS[key[0]])
            values = [j_invariants(s, h) for _, h in entries]
            if len(set(values)) != len(values):
                raise DiscriminatorCollision(f"classes {[str(l) for l, _ in entries]} are not separated")
    return table


def _resolve(key, fam: FamilyLabel, s: Tensor, t: Sl2Triple) -> MixedLabel:
    try:
        entries = _table()[key]
    except KeyError:
        raise DiscriminatorCollision(f"no tabulated class has discriminator {key}") from None
    if len(entries) == 1:
        return entries[0][0]
    jx = j_invariants(s, t.h)
    if fam.exact is not None:
        ref = family_point(fam.family, fam.exact)
        hits = [lab for lab, h in entries if j_invariants(ref, h) == jx]
    else:
        ref = _cartan_numeric(fam.family, fam.params)
        hits = [lab for lab, h in entries
                if _j_close([complex(*x.approx()) for x in jx], j_invariants(ref, h, exact=False))]
    if len(hits) != 1:
        raise DiscriminatorCollision(f"{len(hits)} tabulated lines match the invariants of this tensor")
    return hits[0]


def _lines(family: int, part: int) -> list[str]:
    from . import catalog
    return [r.label.perm for r in catalog.mixed_rows() if r.label.family == family and r.label.part == part]


def _coset_subgroup(lines):
    # lines are a left transversal of the stabilizer H of the first line
    from itertools import combinations
    order = 6 // len(lines)
    names = list(PERMS)
    for H in combinations(names, order):
        if "id" not in H:
            continue
        if any(perm_name(perm_compose(a, b)) not in H for a in H for b in H):
            continue
        cosets = [frozenset(perm_name(perm_compose(l, h)) for h in H) for l in lines]
        if len(set(cosets)) == len(lines):
            return H
    raise ValueError("permutation lines do not form a transversal")


def collapse_perm(label: MixedLabel, mode: str) -> MixedLabel:
    if mode == "exact" or label.family != 3:
        return label
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    lines = _lines(label.family, label.part)
    if mode == "sym3":
        return MixedLabel(label.family, label.part, lines[0])
    H = _coset_subgroup(lines)

    def coset(p):
        return frozenset(perm_name(perm_compose(p, h)) for h in H)
    swapped = coset(perm_compose("(23)", label.perm))
    partner = next(l for l in lines if l in swapped)
    best = min((label.perm, partner), key=lines.index)
    return MixedLabel(label.family, label.part, best)


def classify_mixed(v, mode: str = "exact") -> tuple[FamilyLabel, MixedLabel]:
    v = _as_tensor(v)
    split = jordan_decompose(v)
    if split.s.is_zero() or split.e.is_zero():
        raise NotMixed("tensor is not mixed")
    key, fam, t = _coarse_key(v, split)
    label = _resolve(key, fam, split.s, t)
    return fam, collapse_perm(label, mode)


def mixed_rep(label) -> Tensor:
    from . import catalog
    return catalog.mixed_row(label).representative
