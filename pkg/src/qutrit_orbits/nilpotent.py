"""Nilpotent tensors: homogeneous sl2-triples, characteristics, catalog labels.

For nilpotent e in g_1 we solve h = [e, y] with y in g_-1 and [h, e] = 2e,
then f in g_-1 with [e, f] = h and [h, f] = -2f.  The characteristic is
read off psi^-1(h): each sl3 component has rational eigenvalues l1 >= l2 >= l3
and contributes (l1 - l2, l2 - l3).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .exactfield import Cyc, ZERO
from . import liealg
from .liealg import E6Elt, ad_cmat, bracket
from .linalg import solve, rank
from .jordan import is_nilpotent, _as_tensor
from .tensorspace import Tensor, psi_inv, phi, phi_inv, perm_tuple, perm_name, PERMS

G0, G1, GM1 = list(liealg.G0), list(liealg.G1), list(liealg.GM1)

MODES = ("exact", "sym2", "sym3")


class NotNilpotent(ValueError):
    pass


class ZeroInput(ValueError):
    pass


class UnknownCharacteristic(LookupError):
    pass


class UnknownLabel(LookupError):
    pass


@dataclass(frozen=True)
class Sl2Triple:
    h: E6Elt
    e: E6Elt
    f: E6Elt

    def is_valid(self) -> bool:
        return (bracket(self.h, self.e) == self.e.scale(2)
                and bracket(self.h, self.f) == self.f.scale(-2)
                and bracket(self.e, self.f) == self.h)


@dataclass(frozen=True)
class NilpotentLabel:
    N: int
    sigma: str
    characteristic: tuple

    def __str__(self):
        return f"nilpotent:{self.N}:{self.sigma}"


def _vec(x: E6Elt, idx):
    return [x.coords[k] for k in idx]


def _elt(vals, idx) -> E6Elt:
    coords = [ZERO] * liealg.DIM
    for k, v in zip(idx, vals):
        coords[k] = v
    return E6Elt(coords)


def sl2_triple_in(e: E6Elt, space=None) -> Sl2Triple:
    """A homogeneous triple through e in g_1.

    ``space`` optionally restricts y and f to the span of given g_-1 vectors
    (rows of Cyc over the g_-1 coordinates), used for centralizer subalgebras.
    """
    A = ad_cmat(e)
    M1 = A.block(G1, G0)      # g_0 -> g_1
    M3 = A.block(G0, GM1)     # g_-1 -> g_0
    B = (M1 @ M3).to_rows()   # y -> [e, [e, y]]
    x = _vec(e, G1)
    basis = space
    if basis is not None:
        B = _compose_rows(B, basis)
    # [h, e] = -[e, [e, y]] = 2e
    y = solve(B, [v * -2 for v in x])
    if y is None:
        raise NotNilpotent("no homogeneous sl2-triple through this element")
    if basis is not None:
        y = _combine(basis, y)
    h = _elt(_matvec(M3.to_rows(), y), G0)
    # f: [e, f] = h and [h, f] = -2 f
    ah = ad_cmat(h).block(GM1, GM1).to_rows()
    m3 = M3.to_rows()
    rows = m3 + [[ah[i][j] + (2 if i == j else 0) for j in range(27)] for i in range(27)]
    rhs = _vec(h, G0) + [ZERO] * 27
    if basis is not None:
        rows = _compose_rows(rows, basis)
    f = solve(rows, rhs)
    if f is None:
        raise NotNilpotent("no f completing the triple")
    if basis is not None:
        f = _combine(basis, f)
    return Sl2Triple(h, e, _elt(f, GM1))


def _compose_rows(rows, basis):
    # rows acting on combinations sum_k c_k basis[k]
    return [[sum((r[j] * b[j] for j in range(len(r)) if b[j]), ZERO) for b in basis] for r in rows]


def _combine(basis, coeffs):
    n = len(basis[0])
    out = [ZERO] * n
    for c, b in zip(coeffs, basis):
        if c:
            for j in range(n):
                if b[j]:
                    out[j] = out[j] + c * b[j]
    return out


def _matvec(rows, v):
    return [sum((a * b for a, b in zip(r, v) if a and b), ZERO) for r in rows]


def sl2_triple(e) -> Sl2Triple:
    v = _as_tensor(e)
    if v.is_zero():
        raise ZeroInput("the zero tensor has no sl2-triple")
    if not is_nilpotent(v):
        raise NotNilpotent("tensor is not nilpotent")
    t = sl2_triple_in(phi_inv(v))
    return t


def _rational_eigenvalues(m) -> list[Fraction]:
    """Eigenvalues of a 3x3 Cyc matrix known to have eigenvalues in (1/3)Z."""
    num = np.array([[complex(*x.approx()) for x in r] for r in m])
    ev = np.linalg.eigvals(num)
    cands = sorted((Fraction(round(3 * z.real), 3) for z in ev), reverse=True)
    # verify exactly: the characteristic polynomial must match
    tr = m[0][0] + m[1][1] + m[2][2]
    c2 = (m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0]
          + m[1][1] * m[2][2] - m[1][2] * m[2][1])
    from .linalg import det3
    d = det3(m)
    l1, l2, l3 = cands
    if (tr != Cyc(l1 + l2 + l3) or c2 != Cyc(l1 * l2 + l1 * l3 + l2 * l3) or d != Cyc(l1 * l2 * l3)):
        raise ArithmeticError("eigenvalues of h are not in (1/3)Z")
    return cands


# The simple roots alpha_1..alpha_6 of g_0 come in pairs, one pair per sl3
# factor; the labelling used by the tables puts factor 3 before factor 2.
ROOT_PAIR_FACTORS = (0, 2, 1)


def _from_factors(pairs) -> tuple:
    return tuple(x for k in ROOT_PAIR_FACTORS for x in pairs[k])


def _to_factors(char):
    pairs = [None] * 3
    for pos, k in enumerate(ROOT_PAIR_FACTORS):
        pairs[k] = tuple(char[2 * pos:2 * pos + 2])
    return pairs


def characteristic(t: Sl2Triple) -> tuple:
    """Dominant characteristic (alpha_1(h), ..., alpha_6(h))."""
    pairs = []
    for m in psi_inv(t.h):
        l1, l2, l3 = _rational_eigenvalues(m)
        pairs.append((int(l1 - l2), int(l2 - l3)))
    return _from_factors(pairs)


def permute_characteristic(pi, char) -> tuple:
    """Characteristic of permute(pi, v) from that of v."""
    p = perm_tuple(pi)
    pairs = _to_factors(char)
    return _from_factors([pairs[p[k]] for k in range(3)])


def triple_stabilizer_dim(t: Sl2Triple, within=None) -> int:
    """dim of { z in g_0 : [z, h] = [z, e] = [z, f] = 0 } (optionally with [z, s] = 0)."""
    rows = []
    for x, grade_rows in ((t.h, G0), (t.e, G1), (t.f, GM1)):
        rows += ad_cmat(x).block(grade_rows, G0).to_rows()
    for x in within or ():
        rows += ad_cmat(x).block(G1, G0).to_rows()
    return 24 - rank(rows)


# -- table lookup ----------------------------------------------------------------

@lru_cache(maxsize=1)
def _by_characteristic():
    from . import catalog
    table = {}
    for row in catalog.nilpotent_rows():
        table[row.characteristic] = (row.N, row.sigma)
    return table


def lookup_characteristic(char) -> tuple[int, str]:
    try:
        return _by_characteristic()[tuple(char)]
    except KeyError:
        raise UnknownCharacteristic(f"characteristic {char} is not in the table") from None


def collapse_sigma(N: int, sigma: str, mode: str) -> str:
    """Representative permutation line of (N, sigma) under the mode's symmetry.

    sym2 identifies lines related by swapping factors 2 and 3, sym3 all lines.
    """
    if mode == "exact":
        return sigma
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    from . import catalog
    row = catalog.nilpotent_row(N, sigma)
    group = [PERMS["id"], PERMS["(23)"]] if mode == "sym2" else list(PERMS.values())
    lines = set()
    for pi in group:
        lines.add(lookup_characteristic(permute_characteristic(pi, row.characteristic))[1])
    order = [r.sigma for r in catalog.nilpotent_rows() if r.N == N]
    return min(lines, key=order.index)


def classify_nilpotent(v, mode: str = "exact") -> NilpotentLabel:
    v = _as_tensor(v)
    t = sl2_triple(v)
    char = characteristic(t)
    N, sigma = lookup_characteristic(char)
    if mode != "exact":
        sigma = collapse_sigma(N, sigma, mode)
    return NilpotentLabel(N, sigma, char)


def nilpotent_rep(N: int, sigma="id") -> Tensor:
    from . import catalog
    return catalog.nilpotent_row(N, perm_name(perm_tuple(sigma))).representative


def fixes_triple(g, t: Sl2Triple) -> bool:
    """Whether g in SL(3)^3 fixes e and h; f is then fixed too, being unique given (h, e)."""
    from .linalg import inv3, matmul
    from .tensorspace import act_group
    if g.perm != (0, 1, 2):
        raise ValueError("expected an element without factor permutation")
    if act_group(g, phi(t.e)) != phi(t.e):
        return False
    hs = psi_inv(t.h)
    return all(matmul(matmul(m, h), inv3(m)) == h for m, h in zip(g.mats, hs))
