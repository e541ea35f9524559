"""Finite matrix groups under complex conjugation and their first Galois cohomology.

A cocycle of a conjugation-stable group G is a g with conj(g) g = 1; two
cocycles g1, g2 are equivalent when g2 = h^-1 g1 conj(h) for some h in G.
For finite G the classes are enumerated by brute force from a Cayley table.

Twists (g with g^-1 conj(g) = c) for cocycles in SL(3)^3 are produced by a
Hilbert-90 construction, factor by factor: g = y + conj(y) conj(c) satisfies
conj(g) = g c for any y, and a real diagonal rescaling fixes the determinant.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .exactfield import Cyc, ONE, ZERO, I
from .linalg import det3, identity, inv3, matmul
from .tensorspace import GroupElt, perm_compose, perm_inverse, act_group, Tensor

TABLE_LIMIT = 6000


class ClosureTooLarge(RuntimeError):
    pass


class NotConjugationStable(ValueError):
    pass


class TwistNotFound(RuntimeError):
    pass


class MatrixElt:
    """An invertible square matrix over Q(zeta_12), hashable and immutable."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows):
        self.rows = tuple(tuple(Cyc.coerce(x) for x in r) for r in rows)
        self._hash = None

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> MatrixElt:
        return cls(identity(n))

    @classmethod
    def scalar(cls, x) -> MatrixElt:
        return cls([[x]])

    @classmethod
    def diag(cls, *xs) -> MatrixElt:
        n = len(xs)
        return cls([[xs[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    def __mul__(self, other: MatrixElt) -> MatrixElt:
        return MatrixElt(matmul(self.rows, other.rows))

    def inverse(self) -> MatrixElt:
        n = self.n
        r = self.rows
        if n == 1:
            return MatrixElt([[r[0][0].inverse()]])
        if n == 2:
            d = (r[0][0] * r[1][1] - r[0][1] * r[1][0]).inverse()
            return MatrixElt([[r[1][1] * d, -r[0][1] * d], [-r[1][0] * d, r[0][0] * d]])
        if n == 3:
            return MatrixElt(inv3(r))
        raise NotImplementedError("inverse implemented for n <= 3")

    def det(self) -> Cyc:
        r = self.rows
        if self.n == 1:
            return r[0][0]
        if self.n == 2:
            return r[0][0] * r[1][1] - r[0][1] * r[1][0]
        return det3(r)

    def trace(self) -> Cyc:
        return sum((self.rows[i][i] for i in range(self.n)), ZERO)

    def conj(self) -> MatrixElt:
        return MatrixElt([[x.conj() for x in r] for r in self.rows])

    def apply(self, vec):
        return [sum((a * x for a, x in zip(row, vec)), ZERO) for row in self.rows]

    def is_identity(self) -> bool:
        return self == MatrixElt.identity(self.n)

    def fixed_space_dim(self) -> int:
        from .linalg import rank
        n = self.n
        rows = [[self.rows[i][j] - (ONE if i == j else ZERO) for j in range(n)] for i in range(n)]
        return n - rank(rows)

    def __eq__(self, other):
        return isinstance(other, MatrixElt) and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __repr__(self):
        return "MatrixElt([" + "; ".join(", ".join(str(x) for x in r) for r in self.rows) + "])"


# -- fast internal encoding --------------------------------------------------

def _fold(P):
    # coefficients of z^0..z^6 reduced with z^4 = z^2 - 1
    return np.stack([P[..., 0] - P[..., 4] - P[..., 6], P[..., 1] - P[..., 5],
                     P[..., 2] + P[..., 4], P[..., 3] + P[..., 5]], axis=-1)


# entries stay below 2^24 so int64 products in _mul_mat cannot overflow
_LIMIT = 1 << 24


class _Codec:
    """Group elements as int64 arrays (n, n, 4) over a common denominator."""

    def __init__(self, sample):
        self.kind = "triple" if isinstance(sample, GroupElt) else "matrix"
        self.n = 3 if self.kind == "triple" else sample.n

    def _enc_mat(self, rows):
        n = self.n
        den = 1
        for r in rows:
            for x in r:
                for c in x.c:
                    den = den * c.denominator // math.gcd(den, c.denominator)
        arr = np.array([[[int(c * den) for c in x.c] for x in r] for r in rows], dtype=np.int64)
        return self._normal(arr.reshape(n, n, 4), den)

    @staticmethod
    def _normal(arr, den):
        g = int(np.gcd.reduce(arr.ravel())) if arr.any() else den
        g = math.gcd(g, den)
        if g > 1:
            arr = arr // g
            den //= g
        if np.abs(arr).max(initial=0) > _LIMIT or den > _LIMIT:
            raise ArithmeticError("group entries too large for exact closure")
        return (arr, den)

    def encode(self, x):
        if self.kind == "triple":
            return (tuple(self._enc_mat(m) for m in x.mats), x.perm)
        return ((self._enc_mat(x.rows),), None)

    def _dec_mat(self, m):
        arr, den = m
        n = self.n
        return [[Cyc(*(Fraction(int(v), den) for v in arr[i, j])) for j in range(n)] for i in range(n)]

    def decode(self, enc):
        mats, perm = enc
        rows = [self._dec_mat(m) for m in mats]
        if self.kind == "triple":
            return GroupElt(*rows, perm=perm, check=False)
        return MatrixElt(rows[0])

    def _mul_mat(self, a, b):
        (A, da), (B, db) = a, b
        n = self.n
        P = np.zeros((n, n, 7), dtype=np.int64)
        for c in range(4):
            for d in range(4):
                P[:, :, c + d] += A[:, :, c] @ B[:, :, d]
        return self._normal(_fold(P), da * db)

    def mul(self, a, b):
        ma, pa = a
        mb, pb = b
        if self.kind == "matrix":
            return ((self._mul_mat(ma[0], mb[0]),), None)
        qinv = perm_inverse(pb)
        mats = tuple(self._mul_mat(ma[qinv[k]], mb[k]) for k in range(3))
        return (mats, perm_compose(pa, pb))

    @staticmethod
    def _conj_mat(m):
        arr, den = m
        out = np.stack([arr[..., 0] + arr[..., 2], arr[..., 1], -arr[..., 2],
                        -arr[..., 1] - arr[..., 3]], axis=-1)
        return (out, den)

    def conj(self, a):
        mats, perm = a
        return (tuple(self._conj_mat(m) for m in mats), perm)

    @staticmethod
    def key(a):
        mats, perm = a
        return (perm, tuple((den, arr.tobytes()) for arr, den in mats))


def _identity_like(x):
    if isinstance(x, GroupElt):
        return GroupElt.identity()
    return MatrixElt.identity(x.n)


class FiniteGroup:
    """The closure of finitely many generators, with a lazily built Cayley table."""

    def __init__(self, generators, cap: int = 100_000, name: str = ""):
        generators = list(generators)
        if not generators:
            raise ValueError("at least one generator is required")
        self.name = name
        self.generators = generators
        self.cap = cap
        self._codec = _Codec(generators[0])
        self._closure()
        self._table = None
        self._inv = None
        self._conj = None

    def _closure(self):
        codec = self._codec
        gens = [codec.encode(g) for g in self.generators]
        e = codec.encode(_identity_like(self.generators[0]))
        enc = [e]
        index = {codec.key(e): 0}
        parent, pgen = [-1], [-1]
        rmul = [[] for _ in gens]
        i = 0
        while i < len(enc):
            for j, g in enumerate(gens):
                p = codec.mul(enc[i], g)
                k = codec.key(p)
                t = index.get(k)
                if t is None:
                    if len(enc) >= self.cap:
                        raise ClosureTooLarge(f"group closure exceeds {self.cap} elements")
                    t = len(enc)
                    index[k] = t
                    enc.append(p)
                    parent.append(i)
                    pgen.append(j)
                rmul[j].append(t)
            i += 1
        self._enc = enc
        self._index = index
        self._parent = parent
        self._pgen = pgen
        self._rmul = [np.array(r, dtype=np.int32) for r in rmul]
        self._elements = None

    # -- basic data ------------------------------------------------------
    @property
    def order(self) -> int:
        return len(self._enc)

    def __len__(self):
        return self.order

    @property
    def elements(self) -> list:
        if self._elements is None:
            self._elements = [self._codec.decode(x) for x in self._enc]
        return self._elements

    def element(self, i: int):
        return self.elements[i]

    def index(self, x) -> int | None:
        return self._index.get(self._codec.key(self._codec.encode(x)))

    def __contains__(self, x):
        return self.index(x) is not None

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            n = self.order
            if n > TABLE_LIMIT:
                raise ClosureTooLarge(f"Cayley table for order {n} exceeds the limit {TABLE_LIMIT}")
            T = np.empty((n, n), dtype=np.int32)
            T[:, 0] = np.arange(n, dtype=np.int32)
            # b = parent(b) * gen, so a*b = (a*parent(b)) * gen
            for b in range(1, n):
                T[:, b] = self._rmul[self._pgen[b]][T[:, self._parent[b]]]
            self._table = T
        return self._table

    @property
    def inverse_map(self) -> np.ndarray:
        if self._inv is None:
            self._inv = np.argmax(self.table == 0, axis=1).astype(np.int32)
        return self._inv

    @property
    def conj_map(self) -> np.ndarray:
        if self._conj is None:
            codec = self._codec
            out = np.empty(self.order, dtype=np.int32)
            for i, x in enumerate(self._enc):
                t = self._index.get(codec.key(codec.conj(x)))
                if t is None:
                    raise NotConjugationStable("complex conjugation does not preserve the group")
                out[i] = t
            self._conj = out
        return self._conj

    def is_conjugation_stable(self) -> bool:
        try:
            self.conj_map
        except NotConjugationStable:
            return False
        return True

    def is_abelian(self) -> bool:
        T = self.table
        return bool((T == T.T).all())

    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        cur = np.arange(n, dtype=np.int32)
        k = 1
        while (orders == 0).any():
            hit = (cur == 0) & (orders == 0)
            orders[hit] = k
            cur = self.table[cur, np.arange(n)]
            k += 1
        return orders

    def conjugacy_classes(self, subset=None) -> list[list[int]]:
        T, inv = self.table, self.inverse_map
        todo = list(range(self.order)) if subset is None else list(subset)
        seen = set()
        classes = []
        for x in todo:
            if x in seen:
                continue
            cls = sorted(set(T[T[inv, x], np.arange(self.order)].tolist()))
            seen.update(cls)
            classes.append(cls)
        return classes

    def __repr__(self):
        return f"FiniteGroup({self.name or 'unnamed'}, order={self.order})"


# -- cohomology ---------------------------------------------------------------

@dataclass(frozen=True)
class CocycleClass:
    group: FiniteGroup
    rep_index: int
    member_indices: tuple

    @property
    def representative(self):
        return self.group.element(self.rep_index)

    @property
    def size(self) -> int:
        return len(self.member_indices)

    def contains(self, x) -> bool:
        i = self.group.index(x)
        return i is not None and i in self.member_indices

    def __repr__(self):
        return f"[{self.representative!r}] ({self.size} cocycles)"


def is_cocycle(g) -> bool:
    """conj(g) g == 1."""
    return (g.conj() * g).is_identity()


def h1(G: FiniteGroup) -> list[CocycleClass]:
    """All cocycle classes, trivial class first, by exhaustive enumeration."""
    T, inv, cj = G.table, G.inverse_map, G.conj_map
    n = G.order
    cocycles = np.nonzero(T[cj, np.arange(n)] == 0)[0]
    assigned = set()
    out = []
    for z in cocycles.tolist():
        if z in assigned:
            continue
        members = np.unique(T[T[inv, z], cj])
        assigned.update(members.tolist())
        out.append(CocycleClass(G, z, tuple(sorted(members.tolist()))))
    return out


def _prime_power(n: int):
    """(p, m) with n = p^m for a prime p, else None."""
    if n < 2:
        return None
    p = 2
    while n % p:
        p += 1
    m = 0
    while n % p == 0:
        n //= p
        m += 1
    return (p, m) if n == 1 else None


def criterion(G: FiniteGroup):
    """Which closed-form rule predicts |H^1 G|, with its prediction.

    Returns (name, number of classes) or None.
    """
    n = G.order
    if n == 1:
        return ("trivial group", 1)
    pp = _prime_power(n)
    if pp and pp[0] > 2:
        return ("odd p-group", 1)
    if n % 2 and G.is_abelian():
        return ("odd abelian", 1)
    if n % 2 == 0:
        pp = _prime_power(n // 2)
        if pp and pp[0] > 2:
            return ("order 2p^m", 2)
    return None


def h1_fast(G: FiniteGroup) -> int | None:
    """|H^1 G| from the closed-form criteria, or None if none applies."""
    c = criterion(G)
    if c is None:
        return None
    if c[1] == 2:
        # the nontrivial class is represented by a real element of order 2
        orders = G.element_orders()
        cj = G.conj_map
        real_invol = [i for i in range(G.order) if orders[i] == 2 and cj[i] == i]
        if not real_invol:
            raise ArithmeticError("no real involution in a group of order 2p^m")
    return c[1]


_SPLIT_CONNECTED = re.compile(r"(id|T\d+|GL\d+(\^\d+)?|SL\d+(\^\d+)?)")


def identity_component_h1_trivial(descriptor: str) -> bool:
    """Split tori, GL(n) and SL(n), and products of them, have trivial H^1.

    Descriptors look like ``T2``, ``GL2^2xSL2`` or ``id``.
    """
    parts = [p.strip() for p in descriptor.replace("×", "x").split("x")]
    return all(_SPLIT_CONNECTED.fullmatch(p) for p in parts)


_DIM_OF = {"id": lambda n: 0, "T": lambda n: n, "GL": lambda n: n * n, "SL": lambda n: n * n - 1}


def descriptor_dim(descriptor: str) -> int:
    """Dimension of a connected group written like ``GL2^2 x SL2`` or ``T3``."""
    total = 0
    for p in descriptor.replace("×", "x").split("x"):
        m = re.fullmatch(r"(id|T|GL|SL)(\d*)(?:\^(\d+))?", p.strip())
        if not m:
            raise ValueError(f"unknown group descriptor {p!r}")
        name, n, power = m.group(1), int(m.group(2) or 0), int(m.group(3) or 1)
        total += _DIM_OF[name](n) * power
    return total


class SplitTorus:
    """A split torus of diagonal SL(3)^3 elements, given by integer cocharacters.

    Each cocharacter is a 9-vector of exponents (three per factor); the torus
    is the image of w -> prod_i lambda_i(w_i).
    """

    def __init__(self, cocharacters):
        self.E = [tuple(int(x) for x in c) for c in cocharacters]
        self.rank = len(self.E)
        self.cols, self._minv_t = self._unimodular_minor()

    def _unimodular_minor(self):
        from itertools import combinations
        r = self.rank
        for cols in combinations(range(9), r):
            M = np.array([[self.E[i][c] for c in cols] for i in range(r)], dtype=float)
            if r and abs(abs(np.linalg.det(M)) - 1) < 1e-9:
                inv_t = np.rint(np.linalg.inv(M.T)).astype(int)
                return cols, inv_t.tolist()
        raise ValueError("cocharacters do not span a saturated lattice via a unimodular minor")

    def element(self, w) -> GroupElt:
        d = [ONE] * 9
        for wi, e in zip(w, self.E):
            wi = Cyc.coerce(wi)
            for c in range(9):
                if e[c]:
                    d[c] = d[c] * _ipow(wi, e[c])
        return GroupElt(*[[[d[3 * k + i] if i == j else ZERO for j in range(3)] for i in range(3)]
                          for k in range(3)], check=False)

    def _diagonal(self, g):
        if g.perm != (0, 1, 2):
            return None
        d = []
        for m in g.mats:
            for i in range(3):
                for j in range(3):
                    if i != j and m[i][j]:
                        return None
                d.append(m[i][i])
        return d

    def contains(self, g) -> bool:
        d = self._diagonal(g)
        if d is None:
            return False
        w = []
        for row in self._minv_t:
            acc = ONE
            for c, a in zip(self.cols, row):
                if a:
                    acc = acc * _ipow(d[c], a)
            w.append(acc)
        return self.element(w) == g

    def lattice_action(self, z) -> np.ndarray:
        """Matrix of the action lambda -> z lambda z^-1 on the cocharacter lattice."""
        zi = z.inverse()
        out = np.zeros((self.rank, self.rank), dtype=int)
        for j in range(self.rank):
            two = [Cyc(2) if i == j else ONE for i in range(self.rank)]
            d = self._diagonal(z * self.element(two) * zi)
            if d is None:
                raise ValueError("element does not normalize the torus")
            v = [_log2(x) for x in d]
            a = [sum(row[p] * v[c] for p, c in enumerate(self.cols)) for row in self._minv_t]
            if [sum(a[i] * self.E[i][c] for i in range(self.rank)) for c in range(9)] != v:
                raise ValueError("element does not normalize the torus")
            out[:, j] = a
        return out


def _ipow(x: Cyc, e: int) -> Cyc:
    if e < 0:
        x, e = ONE / x, -e
    acc = ONE
    for _ in range(e):
        acc = acc * x
    return acc


def _log2(x: Cyc) -> int:
    if not x.is_rational():
        raise ValueError("not a power of two")
    q = x.c[0]
    k = 0
    n, d = q.numerator, q.denominator
    if n <= 0:
        raise ValueError("not a power of two")
    while n > 1:
        if n % 2:
            raise ValueError("not a power of two")
        n //= 2
        k += 1
    while d > 1:
        if d % 2:
            raise ValueError("not a power of two")
        d //= 2
        k -= 1
    return k


def _rank_mod2(M) -> int:
    A = [[int(x) % 2 for x in row] for row in M]
    rk, ncols = 0, len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((r for r in range(rk, len(A)) if A[r][c]), None)
        if piv is None:
            continue
        A[rk], A[piv] = A[piv], A[rk]
        for r in range(len(A)):
            if r != rk and A[r][c]:
                A[r] = [(x + y) % 2 for x, y in zip(A[r], A[rk])]
        rk += 1
    return rk


def torus_h1_size(sigma) -> int:
    """|H^1| of the real torus whose conjugation acts on cocharacters by sigma.

    The cocharacter lattice splits into trivial, sign and regular summands;
    only sign summands contribute, each a factor 2.
    """
    sigma = np.asarray(sigma, dtype=int)
    r = sigma.shape[0]
    if r == 0:
        return 1
    eye = np.identity(r, dtype=int)
    kernel_dim = r - np.linalg.matrix_rank(eye + sigma)
    regular = _rank_mod2(eye - sigma)
    return 2 ** (kernel_dim - regular)


def h1_torus_extension(F: FiniteGroup, torus: SplitTorus) -> list[CocycleClass]:
    """H^1 of Z = T F for a split torus T normalized by the finite group F.

    Uses 1 -> T -> Z -> K -> 1: classes of K = F/(F n T) are computed by
    brute force; each must lift to an honest cocycle of F and have a twisted
    torus with trivial H^1, which makes H^1 Z -> H^1 K bijective.
    """
    T, inv, cj = F.table, F.inverse_map, F.conj_map
    n = F.order
    normal = np.array([i for i in range(n) if torus.contains(F.element(i))], dtype=np.int32)
    label = T[:, normal].min(axis=1)
    one = label[0]
    is_k_cocycle = label[T[cj, np.arange(n)]] == one
    is_cocycle_f = T[cj, np.arange(n)] == 0
    seen = set()
    out = []
    for z in np.nonzero(is_k_cocycle)[0].tolist():
        if label[z] in seen:
            continue
        cls_labels = set(label[T[T[inv, z], cj]].tolist())
        seen.update(cls_labels)
        members = [i for i in range(n) if label[i] in cls_labels]
        lifts = [i for i in members if is_cocycle_f[i]]
        if not lifts:
            raise ArithmeticError("a component-group class does not lift to a cocycle of F")
        rep = 0 if 0 in lifts else lifts[0]
        sigma = torus.lattice_action(F.element(rep))
        if torus_h1_size(sigma) != 1:
            raise NotImplementedError("twisted torus with nontrivial H^1")
        out.append(CocycleClass(F, rep, tuple(members)))
    return out


def component_map_bijective(component_order: int, h1_identity_size: int) -> bool:
    """Odd prime-power component group and |H^1 G°| < p: H^1 G° -> H^1 G is bijective."""
    if component_order == 1:
        return True
    pp = _prime_power(component_order)
    return bool(pp and pp[0] > 2 and h1_identity_size < pp[0])


# -- twists --------------------------------------------------------------------

def _small_matrices():
    vals = (ZERO, ONE, -ONE, I)
    yield identity(3)
    # monomial matrices first: they cover every cocycle met in practice
    perms = ((0, 1, 2), (1, 0, 2), (0, 2, 1), (2, 1, 0), (1, 2, 0), (2, 0, 1))
    for p in perms:
        for d in product((ONE, I, -ONE, -I), repeat=3):
            yield [[d[i] if j == p[i] else ZERO for j in range(3)] for i in range(3)]
    for p in perms:
        for d in product((ONE, I), repeat=3):
            yield [[d[i] if j in (i, p[i]) else ZERO for j in range(3)] for i in range(3)]
    for entries in product(vals, repeat=9):
        rows = [list(entries[3 * i: 3 * i + 3]) for i in range(3)]
        yield rows


def _twist_factor(c):
    cbar = [[x.conj() for x in r] for r in c]
    for y in _small_matrices():
        ybar = [[x.conj() for x in r] for r in y]
        yc = matmul(ybar, cbar)
        g = [[y[i][j] + yc[i][j] for j in range(3)] for i in range(3)]
        d = det3(g)
        if d.is_zero():
            continue
        # d is real since det(c) = 1; a real left factor keeps conj(g) = g c
        di = d.inverse()
        g = [[x * di for x in g[0]], list(g[1]), list(g[2])]
        return g
    raise TwistNotFound("no twist found for factor")


def check_twist(g: GroupElt, c: GroupElt) -> bool:
    return g.inverse() * g.conj() == c


def solve_twist(c: GroupElt, known=None) -> GroupElt:
    """g in SL(3)^3 with g^-1 conj(g) = c.

    ``known`` is an optional iterable of (cocycle, twist) pairs tried first;
    by default the witnesses stored in the catalog are used.
    """
    if not is_cocycle(c):
        raise ValueError("not a cocycle")
    if c.is_identity():
        return GroupElt.identity()
    if known is None:
        from . import catalog
        known = catalog.known_twists()
    for cc, g in known:
        if cc == c and check_twist(g, c):
            return g
    if c.perm != (0, 1, 2):
        raise TwistNotFound("cocycles with a factor permutation need a supplied witness")
    g = GroupElt(*[_twist_factor(m) for m in c.mats], check=False)
    if not check_twist(g, c):
        raise TwistNotFound("construction failed verification")
    return g


def twisted_point(u: Tensor, c: GroupElt, known=None) -> Tensor:
    """The real point g . u attached to the cocycle class of c."""
    return act_group(solve_twist(c, known), u)


def real_points_of_orbit(label):
    """All real classes in a complex catalog orbit, as (real label, representative)."""
    from . import catalog
    return catalog.real_points(label)
