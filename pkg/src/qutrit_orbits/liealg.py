"""The Lie algebra e6 with its Z/3Z-grading g = g_-1 + g_0 + g_1.

Nodes of the extended Dynkin diagram are numbered 0..6: the chain
1 - 2 - 0 - 4 - 3, with 6 attached to the branch node 0 and 5 attached
to 6.  The simple system is {a0, a1, a2, a3, a4, a6}; a5 is minus the
highest root.  Roots are integer 6-vectors on the simple roots in the order
``SIMPLE_NODES``.  The grade of a root is its a0 coefficient mod 3.

Basis (78 vectors, fixed order):
  0..5    Cartan elements h_i = a_i^vee for i in SIMPLE_NODES
  6..23   root vectors of the 18 grade-0 roots
  24..50  root vectors of the 27 grade-1 roots
  51..77  root vectors of the 27 grade-(-1) roots
Within each root block roots are sorted by height, then coordinates.

Root vectors e_a follow the Frenkel-Kac sign convention:
[e_a, e_b] = eps(a, b) e_{a+b}, [e_a, e_-a] = -a^vee, with the
bimultiplicative cocycle eps fixed on simple roots by the orientation
i -> j for i < j (positions in SIMPLE_NODES).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

import numpy as np

from .exactfield import Cyc, ZERO, Z3

SIMPLE_NODES = (0, 1, 2, 3, 4, 6)
EDGES = ((1, 2), (2, 0), (0, 4), (4, 3), (0, 6), (6, 5))
HIGHEST_ROOT = (3, 1, 2, 1, 2, 2)

DIM = 78
G0 = range(0, 24)
G1 = range(24, 51)
GM1 = range(51, 78)


def extended_cartan_matrix() -> np.ndarray:
    C = 2 * np.identity(7, dtype=int)
    for a, b in EDGES:
        C[a, b] = C[b, a] = -1
    return C


CARTAN = extended_cartan_matrix()
# Cartan matrix of the simple system, indexed by positions in SIMPLE_NODES
_CS = CARTAN[np.ix_(SIMPLE_NODES, SIMPLE_NODES)]


def inner(a, b) -> int:
    return int(np.dot(a, _CS.dot(b)))


def _grade(root) -> int:
    g = root[0] % 3
    return -1 if g == 2 else g


@dataclass(frozen=True)
class RootSystem:
    roots: tuple
    positive: tuple
    cartan_matrix: np.ndarray
    highest_root: tuple
    alpha5: tuple

    def grade(self, root) -> int:
        return _grade(root)


def _positive_roots():
    simple = [tuple(int(i == j) for j in range(6)) for i in range(6)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i, a in enumerate(simple):
                if beta == a:
                    continue
                if inner(beta, a) == -1:
                    gamma = tuple(b + (k == i) for k, b in enumerate(beta))
                    if gamma not in found:
                        found.add(gamma)
                        nxt.append(gamma)
        frontier = nxt
    return sorted(found, key=lambda r: (sum(r), r))


def _eps(a, b) -> int:
    s = sum(x * y for x, y in zip(a, b))
    for p in range(6):
        for q in range(p + 1, 6):
            if _CS[p, q] == -1:
                s += a[p] * b[q]
    return -1 if s % 2 else 1


class E6:
    """Root system, basis and structure constants (built once)."""

    def __init__(self):
        pos = _positive_roots()
        neg = [tuple(-x for x in r) for r in pos]
        allroots = pos + neg
        key = lambda r: (abs(sum(r)), sum(r) < 0, r)
        g0 = sorted((r for r in allroots if _grade(r) == 0), key=key)
        g1 = sorted((r for r in allroots if _grade(r) == 1), key=key)
        gm = sorted((r for r in allroots if _grade(r) == -1), key=key)
        self.root_list = g0 + g1 + gm
        self.roots = RootSystem(
            roots=tuple(allroots),
            positive=tuple(pos),
            cartan_matrix=CARTAN,
            highest_root=HIGHEST_ROOT,
            alpha5=tuple(-x for x in HIGHEST_ROOT),
        )
        self.index = {r: 6 + k for k, r in enumerate(self.root_list)}
        self.grades = np.array([0] * 6 + [_grade(r) for r in self.root_list])
        self.struct = self._structure_constants()
        self._nonzero = [tuple(int(t) for t in ijk) for ijk in np.argwhere(self.struct)]
        self.killing_matrix = np.einsum("ijk,lkj->il", self.struct, self.struct)

    def basis_label(self, k: int) -> str:
        if k < 6:
            return f"h{SIMPLE_NODES[k]}"
        return "e" + str(list(self.root_list[k - 6]))

    def root_of(self, k: int):
        return None if k < 6 else self.root_list[k - 6]

    def _structure_constants(self) -> np.ndarray:
        C = np.zeros((DIM, DIM, DIM), dtype=np.int64)
        rl = self.root_list
        for j, r in enumerate(rl):
            jj = 6 + j
            for a in range(6):
                # [h_a, e_r] = <r, a_a^vee> e_r
                val = int(_CS[a].dot(r))
                C[a, jj, jj] = val
                C[jj, a, jj] = -val
        for i, r in enumerate(rl):
            for j, s in enumerate(rl):
                t = tuple(x + y for x, y in zip(r, s))
                if not any(t):
                    # [e_r, e_-r] = -r^vee
                    for a in range(6):
                        C[6 + i, 6 + j, a] = -r[a]
                elif t in self.index:
                    C[6 + i, 6 + j, self.index[t]] = _eps(r, s)
        return C

    # -- derived data -----------------------------------------------------
    def ad_int(self, k: int) -> np.ndarray:
        """Integer matrix of ad(b_k) (columns = images of basis vectors)."""
        return self.struct[k].T.copy()

    def jacobi_defect(self, sample=None) -> int:
        """Max |entry| of ad([a,b]) - [ad a, ad b] over basis pairs."""
        ads = np.transpose(self.struct, (0, 2, 1))
        idx = range(DIM) if sample is None else sample
        worst = 0
        for a in idx:
            lhs = np.einsum("bk,kij->bij", self.struct[a], ads)
            rhs = np.einsum("ij,bjl->bil", ads[a], ads) - np.einsum("bij,jl->bil", ads, ads[a])
            worst = max(worst, int(np.abs(lhs - rhs).max()))
        return worst


@lru_cache(maxsize=1)
def algebra() -> E6:
    return E6()


class E6Elt:
    """An element of e6, stored as 78 Cyc coordinates on the fixed basis."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = [Cyc.coerce(c) for c in coords]
        if len(coords) != DIM:
            raise ValueError("E6Elt needs 78 coordinates")
        self.coords = coords

    @classmethod
    def zero(cls) -> E6Elt:
        return cls([ZERO] * DIM)

    @classmethod
    def basis(cls, k: int, scale=1) -> E6Elt:
        c = [ZERO] * DIM
        c[k] = Cyc.coerce(scale)
        return cls(c)

    def __add__(self, other):
        return E6Elt([a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        return E6Elt([a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return E6Elt([-a for a in self.coords])

    def scale(self, s) -> E6Elt:
        s = Cyc.coerce(s)
        return E6Elt([s * a for a in self.coords])

    __rmul__ = scale

    def __eq__(self, other):
        return isinstance(other, E6Elt) and self.coords == other.coords

    def __hash__(self):
        return hash(tuple(self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def conj(self) -> E6Elt:
        return E6Elt([c.conj() for c in self.coords])

    def support(self):
        return [k for k, c in enumerate(self.coords) if c]

    def grade_parts(self) -> dict:
        """Components in g_-1, g_0, g_1, keyed by grade."""
        parts = {}
        for g, rng in ((0, G0), (1, G1), (-1, GM1)):
            c = [ZERO] * DIM
            for k in rng:
                c[k] = self.coords[k]
            parts[g] = E6Elt(c)
        return parts

    def homogeneous_grade(self):
        """The grade of a nonzero homogeneous element, else None."""
        grades = {int(algebra().grades[k]) for k in self.support()}
        return grades.pop() if len(grades) == 1 else None

    def __repr__(self):
        alg = algebra()
        terms = [f"({c})*{alg.basis_label(k)}" for k, c in enumerate(self.coords) if c]
        return "E6Elt(" + (" + ".join(terms) or "0") + ")"


def bracket(x: E6Elt, y: E6Elt) -> E6Elt:
    alg = algebra()
    out = [ZERO] * DIM
    xs = x.coords
    ys = y.coords
    for i, j, k in alg._nonzero:
        a = xs[i]
        if not a:
            continue
        b = ys[j]
        if not b:
            continue
        out[k] = out[k] + a * b * alg.struct[i, j, k]
    return E6Elt(out)


def coord_split(coords):
    """Split Cyc coordinates into four integer vectors over a common denominator.

    Returns (den, [X0, X1, X2, X3]) with coords[k] = sum_c X_c[k] z^c / den.
    """
    den = 1
    for c in coords:
        for q in c.c:
            den = math.lcm(den, q.denominator)
    parts = [np.array([int(c.c[d] * den) for c in coords], dtype=object) for d in range(4)]
    return den, parts


def ad_int_parts(x: E6Elt):
    """ad(x) = sum_c A_c z^c / den with integer numpy matrices A_c."""
    alg = algebra()
    den, parts = coord_split(x.coords)
    mats = []
    for X in parts:
        if not any(X):
            mats.append(None)
            continue
        if max(abs(int(t)) for t in X) < 2**40:
            # structure constants are in {-2..2}; int64 cannot overflow here
            A = np.einsum("i,ijk->kj", X.astype(np.int64), alg.struct).astype(object)
        else:
            A = np.einsum("i,ijk->kj", X, alg.struct.astype(object))
        mats.append(A)
    return den, mats


def ad_matrix(x: E6Elt):
    """ad(x) as a 78x78 list of Cyc rows (column j = [x, b_j])."""
    den, mats = ad_int_parts(x)
    rows = [[ZERO] * DIM for _ in range(DIM)]
    for d, A in enumerate(mats):
        if A is None:
            continue
        for k, j in zip(*np.nonzero(A)):
            coord = [Fraction(0)] * 4
            coord[d] = Fraction(int(A[k, j]), den)
            rows[k][j] = rows[k][j] + Cyc._raw(tuple(coord))
    return rows


def killing(x: E6Elt, y: E6Elt) -> Cyc:
    K = algebra().killing_matrix
    acc = ZERO
    for i in x.support():
        for j in y.support():
            if K[i, j]:
                acc = acc + x.coords[i] * y.coords[j] * int(K[i, j])
    return acc


def theta(x: E6Elt) -> E6Elt:
    """The order-3 automorphism acting by z3^grade."""
    g = algebra().grades
    zs = {0: Cyc(1), 1: Z3, -1: Z3 * Z3}
    return E6Elt([c * zs[int(g[k])] for k, c in enumerate(x.coords)])


@dataclass(frozen=True)
class CanonicalGenerators:
    x: tuple
    h: tuple
    y: tuple


@lru_cache(maxsize=1)
def canonical_generators() -> CanonicalGenerators:
    alg = algebra()
    xs, ys, hs = [], [], []
    for node in range(7):
        if node == 5:
            r = alg.roots.alpha5
        else:
            p = SIMPLE_NODES.index(node)
            r = tuple(int(k == p) for k in range(6))
        xg = E6Elt.basis(alg.index[r])
        yg = E6Elt.basis(alg.index[tuple(-t for t in r)], -1)
        xs.append(xg)
        ys.append(yg)
        hs.append(bracket(xg, yg))
    return CanonicalGenerators(tuple(xs), tuple(hs), tuple(ys))


def build_e6():
    """(root system, structure-constant tensor, canonical generators)."""
    alg = algebra()
    return alg.roots, alg.struct, canonical_generators()


def dump_structure_constants(path) -> int:
    """Write nonzero brackets of root vectors as lines 'alpha beta N'."""
    alg = algebra()
    n = 0
    with open(path, "w") as fh:
        for i, r in enumerate(alg.root_list):
            for j, s in enumerate(alg.root_list):
                t = tuple(x + y for x, y in zip(r, s))
                if t in alg.index:
                    N = alg.struct[6 + i, 6 + j, alg.index[t]]
                    fh.write(f"{' '.join(map(str, r))} | {' '.join(map(str, s))} | {N}\n")
                    n += 1
    return n


def ad_cmat(x: E6Elt):
    """ad(x) as a CycMat."""
    from .linalg import CycMat
    den, mats = ad_int_parts(x)
    parts = [np.zeros((DIM, DIM), dtype=object) if A is None else A for A in mats]
    return CycMat(parts, den).normalize()
