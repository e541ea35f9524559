"""The 3-qutrit space V = C^3 (x) C^3 (x) C^3 as the grade-1 piece of e6.

Kets |j1 j2 j3> are indexed by 9*j1 + 3*j2 + j3.  The Lie algebra
sl3 + sl3 + sl3 is identified with g_0 by psi, which sends the matrix units
e12, e23 (and e21, e32) of factor k to the canonical generators
x_{2k-1}, x_{2k} (and y_{2k-1}, y_{2k}).  phi maps g_1 onto V and is
pinned down by sending the highest weight vector to |000>.
"""

from __future__ import annotations

import itertools
import json
import re
from functools import lru_cache

from .exactfield import Cyc, ZERO, ONE, ParseError, parse_scalar
from . import liealg
from .liealg import E6Elt, bracket, canonical_generators
from .linalg import det3, inv3

KETS = [tuple(k) for k in itertools.product(range(3), repeat=3)]


def ket_index(ket) -> int:
    a, b, c = ket
    return 9 * a + 3 * b + c


class TensorError(ValueError):
    pass


class FieldMismatch(TensorError):
    """Real field requested for complex data."""


class Tensor:
    """A vector in C^3 (x) C^3 (x) C^3 with Cyc coefficients."""

    __slots__ = ("entries",)

    def __init__(self, entries=None):
        if entries is None:
            self.entries = [ZERO] * 27
        elif isinstance(entries, dict):
            self.entries = [ZERO] * 27
            for ket, val in entries.items():
                if isinstance(ket, str):
                    ket = tuple(int(ch) for ch in ket)
                self.entries[ket_index(ket)] = self.entries[ket_index(ket)] + Cyc.coerce(val)
        else:
            if len(entries) != 27:
                raise TensorError("a tensor has 27 entries")
            self.entries = [Cyc.coerce(x) for x in entries]

    @classmethod
    def ket(cls, ket, value=1) -> Tensor:
        return cls({ket: value})

    def __getitem__(self, ket):
        if isinstance(ket, str):
            ket = tuple(int(ch) for ch in ket)
        return self.entries[ket_index(ket)]

    def __add__(self, other):
        return Tensor([a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return Tensor([a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return Tensor([-a for a in self.entries])

    def scale(self, s) -> Tensor:
        s = Cyc.coerce(s)
        return Tensor([s * a for a in self.entries])

    def __rmul__(self, s):
        return self.scale(s)

    def __eq__(self, other):
        return isinstance(other, Tensor) and self.entries == other.entries

    def __hash__(self):
        return hash(tuple(self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_real(self) -> bool:
        return all(x.is_real() for x in self.entries)

    def is_rational(self) -> bool:
        return all(x.is_rational() for x in self.entries)

    def conj(self) -> Tensor:
        return Tensor([x.conj() for x in self.entries])

    def items(self):
        for k, x in zip(KETS, self.entries):
            if x:
                yield k, x

    def __str__(self):
        parts = []
        for ket, x in self.items():
            ks = "".join(map(str, ket))
            if x == ONE:
                coef = ""
            elif x == -ONE:
                coef = "-"
            else:
                coef = f"({x})"
            parts.append(f"{coef}|{ks}>")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"Tensor('{self}')"

    # -- file format ----------------------------------------------------------
    def to_record(self, field: str = "complex") -> dict:
        return {
            "field": field,
            "entries": [{"ket": "".join(map(str, k)), "value": str(x)} for k, x in self.items()],
        }

    @classmethod
    def from_record(cls, rec: dict) -> tuple[Tensor, str]:
        field = rec.get("field", "complex")
        if field not in ("complex", "real"):
            raise TensorError(f"unknown field {field!r}")
        t = cls()
        for item in rec.get("entries", []):
            ket = item["ket"]
            if not re.fullmatch(r"[012]{3}", ket):
                raise ParseError(f"malformed ket {ket!r}")
            val = parse_scalar(str(item["value"]))
            if field == "real" and not val.is_real():
                raise FieldMismatch(f"non-real value {item['value']!r} in a real tensor")
            idx = ket_index(tuple(int(ch) for ch in ket))
            t.entries[idx] = t.entries[idx] + val
        return t, field


def load_tensor(path) -> tuple[Tensor, str]:
    with open(path) as fh:
        return Tensor.from_record(json.load(fh))


_TERM = re.compile(r"^(.*?)\|([012]{3})[>⟩]$")


def parse_tensor(text: str) -> Tensor:
    """Parse a ket sum such as ``2|210> - (1/4)|022> + |000>``."""
    text = text.replace("⟩", ">").replace("−", "-").strip()
    if text in ("", "0"):
        return Tensor()
    terms, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and cur.strip() and not cur.rstrip().endswith(("*", "/")):
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    terms.append(cur)
    out = Tensor()
    for term in terms:
        term = term.replace(" ", "")
        m = _TERM.match(term)
        if not m:
            raise ParseError(f"malformed tensor term {term!r}")
        coef, ket = m.groups()
        coef = coef.rstrip("*")
        if coef in ("", "+"):
            val = ONE
        elif coef == "-":
            val = -ONE
        else:
            val = parse_scalar(coef)
        idx = ket_index(tuple(int(ch) for ch in ket))
        out.entries[idx] = out.entries[idx] + val
    return out


# -- Lie algebra side -----------------------------------------------------------

def _unit(i, j):
    m = [[ZERO] * 3 for _ in range(3)]
    m[i][j] = ONE
    return m


SL3_BASIS = ("e12", "e23", "e13", "e21", "e32", "e31", "h1", "h2")


def _sl3_matrix(name):
    if name == "h1":
        m = _unit(0, 0)
        m[1][1] = -ONE
        return m
    if name == "h2":
        m = _unit(1, 1)
        m[2][2] = -ONE
        return m
    i, j = int(name[1]) - 1, int(name[2]) - 1
    return _unit(i, j)


@lru_cache(maxsize=1)
def _psi_basis():
    """psi of each (factor, name), as E6Elt."""
    cg = canonical_generators()
    out = {}
    for k in range(3):
        n1, n2 = {0: (1, 2), 1: (3, 4), 2: (5, 6)}[k]
        x1, x2, y1, y2 = cg.x[n1], cg.x[n2], cg.y[n1], cg.y[n2]
        out[k, "e12"] = x1
        out[k, "e23"] = x2
        out[k, "e13"] = bracket(x1, x2)
        out[k, "e21"] = y1
        out[k, "e32"] = y2
        out[k, "e31"] = bracket(y2, y1)
        out[k, "h1"] = cg.h[n1]
        out[k, "h2"] = cg.h[n2]
    return out


def _sl3_coords(m):
    """Coordinates of a traceless 3x3 matrix on SL3_BASIS."""
    tr = m[0][0] + m[1][1] + m[2][2]
    if tr:
        raise TensorError("sl3 element must be traceless")
    return {
        "e12": m[0][1], "e23": m[1][2], "e13": m[0][2],
        "e21": m[1][0], "e32": m[2][1], "e31": m[2][0],
        "h1": m[0][0], "h2": m[0][0] + m[1][1],
    }


def psi(z) -> E6Elt:
    """Map a triple of traceless 3x3 matrices into g_0."""
    basis = _psi_basis()
    out = E6Elt.zero()
    for k in range(3):
        for name, c in _sl3_coords(z[k]).items():
            if c:
                out = out + basis[k, name].scale(c)
    return out


@lru_cache(maxsize=1)
def _psi_inverse_table():
    # every psi basis image is supported on a single g_0 basis vector except
    # the Cartan part, which is solved through the 6x6 coroot block
    from fractions import Fraction
    basis = _psi_basis()
    root_map = {}
    cartan_cols = {}
    for (k, name), el in basis.items():
        sup = el.support()
        if name.startswith("h"):
            cartan_cols[k, name] = [el.coords[a] for a in range(6)]
        else:
            (idx,) = sup
            root_map[idx] = (k, name, el.coords[idx])
    import flint
    keys = sorted(cartan_cols)
    M = flint.fmpq_mat(6, 6, [flint.fmpq(int(cartan_cols[key][a].rational())) for a in range(6) for key in keys])
    Minv = M.inv()
    inv = [[Fraction(int(Minv[i, j].p), int(Minv[i, j].q)) for j in range(6)] for i in range(6)]
    return root_map, keys, inv


def psi_inv(x: E6Elt):
    """Inverse of psi on g_0: returns three 3x3 Cyc matrices."""
    root_map, keys, inv = _psi_inverse_table()
    mats = [[[ZERO] * 3 for _ in range(3)] for _ in range(3)]
    for idx in x.support():
        if idx >= 24:
            raise TensorError("psi_inv needs an element of g_0")
        if idx >= 6:
            k, name, c = root_map[idx]
            i, j = int(name[1]) - 1, int(name[2]) - 1
            mats[k][i][j] = x.coords[idx] / c
    hc = [x.coords[a] for a in range(6)]
    for r, (k, name) in enumerate(keys):
        coef = ZERO
        for a in range(6):
            if hc[a]:
                coef = coef + hc[a] * inv[r][a]
        if not coef:
            continue
        if name == "h1":
            mats[k][0][0] += coef
            mats[k][1][1] -= coef
        else:
            mats[k][1][1] += coef
            mats[k][2][2] -= coef
    return mats


def act_algebra(z, v: Tensor) -> Tensor:
    """(z1 + z2 + z3) . v by the Leibniz rule."""
    out = [ZERO] * 27
    for a, b, c in KETS:
        x = v.entries[9 * a + 3 * b + c]
        if not x:
            continue
        for i in range(3):
            m = z[0][i][a]
            if m:
                out[9 * i + 3 * b + c] += m * x
            m = z[1][i][b]
            if m:
                out[9 * a + 3 * i + c] += m * x
            m = z[2][i][c]
            if m:
                out[9 * a + 3 * b + i] += m * x
    return Tensor(out)


@lru_cache(maxsize=1)
def _phi_table():
    """Monomial map: g_1 basis index -> (ket index, scalar)."""
    cg = canonical_generators()
    # highest weight vector: killed by all x_i of g_0, weight (1,0,1,0,1,0)
    v0 = None
    for k in liealg.G1:
        e = E6Elt.basis(k)
        if all(bracket(cg.x[n], e).is_zero() for n in range(1, 7)):
            v0 = k
    if v0 is None:
        raise RuntimeError("no highest weight vector in g_1")
    table = {v0: (0, ONE)}
    frontier = [v0]
    lowering = [(k, j, cg.y[n]) for k, (n1, n2) in enumerate(((1, 2), (3, 4), (5, 6)))
                for j, n in ((0, n1), (1, n2))]
    while frontier:
        nxt = []
        for idx in frontier:
            kidx, c = table[idx]
            ket = list(KETS[kidx])
            for k, j, y in lowering:
                img = bracket(y, E6Elt.basis(idx))
                sup = img.support()
                if not sup:
                    continue
                (t,) = sup
                # e21 sends e0 -> e1, e32 sends e1 -> e2
                assert ket[k] == j
                new = list(ket)
                new[k] = j + 1
                val = c / img.coords[t]
                if t in table:
                    if table[t] != (ket_index(new), val):
                        raise RuntimeError("inconsistent phi construction")
                    continue
                table[t] = (ket_index(new), val)
                nxt.append(t)
        frontier = nxt
    if len(table) != 27:
        raise RuntimeError("phi construction did not reach all of g_1")
    inverse = {kidx: (idx, c) for idx, (kidx, c) in table.items()}
    return table, inverse, v0


def highest_weight_index() -> int:
    return _phi_table()[2]


def phi(x: E6Elt) -> Tensor:
    table, _, _ = _phi_table()
    out = [ZERO] * 27
    for idx in x.support():
        if idx not in table:
            raise TensorError("phi is defined on g_1 only")
        kidx, c = table[idx]
        out[kidx] = c * x.coords[idx]
    return Tensor(out)


def phi_inv(v: Tensor) -> E6Elt:
    _, inverse, _ = _phi_table()
    coords = [ZERO] * liealg.DIM
    for kidx, x in enumerate(v.entries):
        if x:
            idx, c = inverse[kidx]
            coords[idx] = x / c
    return E6Elt(coords)


# -- group side -----------------------------------------------------------------

PERMS = {
    "id": (0, 1, 2), "(12)": (1, 0, 2), "(13)": (2, 1, 0),
    "(23)": (0, 2, 1), "(123)": (2, 0, 1), "(132)": (1, 2, 0),
}
PERM_NAMES = {v: k for k, v in PERMS.items()}


def perm_tuple(p) -> tuple:
    """Normalize a permutation given by cycle name or 0-based tuple.

    The permutation pi moves tensor factor i to slot pi(i).  The tuple p
    records, for each slot k, the factor that lands there: p[k] = pi^-1(k+1) - 1.
    """
    if isinstance(p, str):
        key = p.replace(",", "").replace(" ", "")
        if key in ("", "()", "1", "e"):
            key = "id"
        if key not in PERMS:
            raise ValueError(f"unknown permutation {p!r}")
        return PERMS[key]
    if p is None:
        return (0, 1, 2)
    return tuple(p)


def perm_name(p) -> str:
    return PERM_NAMES[perm_tuple(p)]


def perm_compose(p, q) -> tuple:
    """The permutation acting as permute(p, permute(q, v))."""
    p, q = perm_tuple(p), perm_tuple(q)
    return tuple(q[p[k]] for k in range(3))


def perm_inverse(p) -> tuple:
    p = perm_tuple(p)
    inv = [0, 0, 0]
    for k, t in enumerate(p):
        inv[t] = k
    return tuple(inv)


def permute(pi, v: Tensor) -> Tensor:
    """Move factor i of every ket to slot pi(i); (12) sends |012> to |102>."""
    p = perm_tuple(pi)
    out = [ZERO] * 27
    for ket, x in zip(KETS, v.entries):
        if x:
            out[ket_index(tuple(ket[p[k]] for k in range(3)))] = x
    return Tensor(out)


def _mat(m):
    return [[Cyc.coerce(x) for x in row] for row in m]


def _mm(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(3)), ZERO) for j in range(3)] for i in range(3)]


class GroupElt:
    """An element (m1, m2, m3) of SL(3)^3, optionally followed by a factor permutation.

    The action is v -> permute(perm, (m1 (x) m2 (x) m3) v).
    """

    __slots__ = ("mats", "perm")

    def __init__(self, m1, m2, m3, perm=None, check=True):
        self.mats = (_mat(m1), _mat(m2), _mat(m3))
        self.perm = perm_tuple(perm)
        if check:
            for m in self.mats:
                if det3(m) != ONE:
                    raise TensorError("GroupElt factors must have determinant 1")

    @classmethod
    def identity(cls) -> GroupElt:
        eye = [[ONE if i == j else ZERO for j in range(3)] for i in range(3)]
        return cls(eye, eye, eye, check=False)

    @classmethod
    def diagonal(cls, m, perm=None) -> GroupElt:
        return cls(m, m, m, perm)

    def __mul__(self, other: GroupElt) -> GroupElt:
        # P_g M_g P_h M_h = P_g P_h M_g' M_h, with M_g' the factors of g
        # reindexed by the inverse of h's permutation
        qinv = perm_inverse(other.perm)
        mats = [_mm(self.mats[qinv[k]], other.mats[k]) for k in range(3)]
        return GroupElt(*mats, perm=perm_compose(self.perm, other.perm), check=False)

    def inverse(self) -> GroupElt:
        p = self.perm
        pinv = perm_inverse(p)
        inv = [inv3(m) for m in self.mats]
        mats = [inv[p[k]] for k in range(3)]
        return GroupElt(*mats, perm=pinv, check=False)

    def conj(self) -> GroupElt:
        return GroupElt(*[[[x.conj() for x in row] for row in m] for m in self.mats],
                        perm=self.perm, check=False)

    def __eq__(self, other):
        return isinstance(other, GroupElt) and self.mats == other.mats and self.perm == other.perm

    def __hash__(self):
        return hash((tuple(tuple(tuple(r) for r in m) for m in self.mats), self.perm))

    def is_identity(self) -> bool:
        return self == GroupElt.identity()

    def __repr__(self):
        def fm(m):
            return "[" + "; ".join(", ".join(str(x) for x in r) for r in m) + "]"
        tail = "" if self.perm == (0, 1, 2) else f", perm={perm_name(self.perm)}"
        return "GroupElt(" + ", ".join(fm(m) for m in self.mats) + tail + ")"


def _apply_factor(m, v, k):
    out = [ZERO] * 27
    stride = (9, 3, 1)[k]
    for idx, x in enumerate(v):
        if not x:
            continue
        j = (idx // stride) % 3
        base = idx - j * stride
        for i in range(3):
            c = m[i][j]
            if c:
                out[base + i * stride] += c * x
    return out


def act_group(g: GroupElt, v: Tensor) -> Tensor:
    w = v.entries
    for k in range(3):
        w = _apply_factor(g.mats[k], w, k)
    out = Tensor(w)
    if g.perm != (0, 1, 2):
        out = permute(g.perm, out)
    return out


def permute_group(pi, g: GroupElt) -> GroupElt:
    """pi(g) with pi(g) . pi(v) = pi(g . v)."""
    p = perm_tuple(pi)
    perm = perm_compose(perm_compose(p, g.perm), perm_inverse(p))
    return GroupElt(*[g.mats[p[k]] for k in range(3)], perm=perm, check=False)


def _transpose(m):
    return [[m[j][i] for j in range(3)] for i in range(3)]


def sigma3(g: GroupElt) -> GroupElt:
    """(g1, g2, g3) -> (g1, g2, g3^{-T})."""
    m1, m2, m3 = g.mats
    return GroupElt(m1, m2, _transpose(inv3(m3)), perm=g.perm, check=False)


# Cartan subspace
U1 = parse_tensor("|000> + |111> + |222>")
U2 = parse_tensor("|012> + |120> + |201>")
U3 = parse_tensor("|021> + |210> + |102>")


def cartan_point(a1, a2, a3) -> Tensor:
    return U1.scale(a1) + U2.scale(a2) + U3.scale(a3)
