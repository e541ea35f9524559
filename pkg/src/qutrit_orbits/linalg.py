"""Exact linear algebra over Q(zeta_12), backed by FLINT over Q.

Matrices with entries in K = Q(zeta_12) are handled by restriction of
scalars: a K-matrix M of shape (m, n) becomes the rational matrix rho(M) of
shape (4m, 4n), with coordinate 4*j + c holding the z^c component of entry j.
Rational inputs skip this step.  Vectors are plain lists of ``Cyc``.
"""

from __future__ import annotations

import math
from fractions import Fraction

import flint
import numpy as np

from .exactfield import Cyc, ZERO

# rho(z^c) as integer 4x4 matrices acting on coordinate columns
_ZMUL = np.array([[0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 1], [0, 0, 1, 0]], dtype=object)
ZPOW = [np.identity(4, dtype=object)]
for _ in range(3):
    ZPOW.append(_ZMUL.dot(ZPOW[-1]))


def fmpq(x) -> flint.fmpq:
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    if isinstance(x, Cyc):
        return fmpq(x.rational())
    if isinstance(x, flint.fmpq):
        return x
    return flint.fmpq(int(x))


def to_fraction(q: flint.fmpq) -> Fraction:
    return Fraction(int(q.p), int(q.q))


def all_rational(rows) -> bool:
    return all(x.is_rational() for row in rows for x in row)


def qmat(rows, nrows=None, ncols=None) -> flint.fmpq_mat:
    """fmpq_mat from rows of rational Cyc / Fraction / int entries."""
    m = len(rows) if nrows is None else nrows
    n = (len(rows[0]) if rows else 0) if ncols is None else ncols
    flat = [fmpq(x) for row in rows for x in row]
    return flint.fmpq_mat(m, n, flat)


def int_qmat(arr: np.ndarray, den: int = 1) -> flint.fmpq_mat:
    """Rational matrix arr/den from an integer numpy array."""
    m, n = arr.shape
    mat = flint.fmpq_mat(flint.fmpz_mat(m, n, [int(v) for v in arr.ravel()]))
    if den != 1:
        mat = mat / den
    return mat


def realify(rows) -> flint.fmpq_mat:
    """rho(M) for a K-matrix given as rows of Cyc."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    out = [[0] * (4 * n) for _ in range(4 * m)]
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if x.is_zero():
                continue
            col = list(x.c)
            for d in range(4):
                if d:
                    a0, a1, a2, a3 = col
                    col = [-a3, a0, a1 + a3, a2]
                for c in range(4):
                    if col[c]:
                        out[4 * i + c][4 * j + d] = fmpq(col[c])
    flat = [v if isinstance(v, flint.fmpq) else flint.fmpq(v) for r in out for v in r]
    return flint.fmpq_mat(4 * m, 4 * n, flat)


def realify_vector(vec) -> list[flint.fmpq]:
    out = []
    for x in vec:
        out.extend(fmpq(c) for c in x.c)
    return out


def unrealify_vector(qs) -> list[Cyc]:
    vals = [to_fraction(q) if isinstance(q, flint.fmpq) else Fraction(q) for q in qs]
    return [Cyc._raw(tuple(vals[4 * j: 4 * j + 4])) for j in range(len(vals) // 4)]


def _rref_rows(mat: flint.fmpq_mat):
    R, rank = mat.rref()
    n = mat.ncols()
    pivots = []
    for i in range(rank):
        for j in range(n):
            if R[i, j] != 0:
                pivots.append(j)
                break
    return R, rank, pivots


def q_nullspace(mat: flint.fmpq_mat) -> list[list[flint.fmpq]]:
    """Basis of {x : mat x = 0} over Q."""
    n = mat.ncols()
    if mat.nrows() == 0:
        return [[flint.fmpq(int(i == j)) for i in range(n)] for j in range(n)]
    R, rank, pivots = _rref_rows(mat)
    pivset = set(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = [flint.fmpq(0)] * n
        v[f] = flint.fmpq(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i, f]
        basis.append(v)
    return basis


def _k_basis_from_q(qvecs, n) -> list[list[Cyc]]:
    # The Q-span of qvecs is a K-subspace; its Q-rref rows whose pivot sits
    # on a z^0 coordinate are exactly the K-rref rows.
    if not qvecs:
        return []
    M = flint.fmpq_mat(len(qvecs), 4 * n, [x for v in qvecs for x in v])
    R, rank, pivots = _rref_rows(M)
    out = []
    for i, p in enumerate(pivots):
        if p % 4 == 0:
            out.append(unrealify_vector([R[i, j] for j in range(4 * n)]))
    return out


def kernel(rows, ncols: int | None = None) -> list[list[Cyc]]:
    """K-basis of the right kernel of a K-matrix (rows of Cyc)."""
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    if not rows:
        return [[Cyc(int(i == j)) for i in range(n)] for j in range(n)]
    if all_rational(rows):
        basis = q_nullspace(qmat(rows))
        return [[Cyc(to_fraction(x)) for x in v] for v in basis]
    qbasis = q_nullspace(realify(rows))
    return _k_basis_from_q(qbasis, n)


def rank(rows) -> int:
    if not rows:
        return 0
    if all_rational(rows):
        return qmat(rows).rank()
    return realify(rows).rank() // 4


def solve(rows, rhs) -> list[Cyc] | None:
    """One solution x of M x = rhs, or None when the system is inconsistent."""
    m = len(rows)
    n = len(rows[0])
    if all_rational(rows) and all(x.is_rational() for x in rhs):
        aug = qmat([list(r) + [b] for r, b in zip(rows, rhs)])
        R, rk, piv = _rref_rows(aug)
        if piv and piv[-1] == n:
            return None
        x = [ZERO] * n
        for i, p in enumerate(piv):
            x[p] = Cyc(to_fraction(R[i, n]))
        return x
    A = realify(rows)
    b = realify_vector(rhs)
    N = 4 * n
    flat = []
    for i in range(4 * m):
        flat.extend(A[i, j] for j in range(N))
        flat.append(b[i])
    aug = flint.fmpq_mat(4 * m, N + 1, flat)
    R, rk, piv = _rref_rows(aug)
    if piv and piv[-1] == N:
        return None
    xq = [flint.fmpq(0)] * N
    for i, p in enumerate(piv):
        xq[p] = R[i, N]
    return unrealify_vector(xq)


def matvec(rows, vec) -> list[Cyc]:
    out = []
    for row in rows:
        acc = ZERO
        for a, b in zip(row, vec):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def matmul(A, B):
    n = len(B[0])
    Bt = [[B[k][j] for k in range(len(B))] for j in range(n)]
    return [[_dot(row, col) for col in Bt] for row in A]


def _dot(u, v):
    acc = ZERO
    for a, b in zip(u, v):
        if a and b:
            acc = acc + a * b
    return acc


def identity(n: int):
    return [[Cyc(int(i == j)) for j in range(n)] for i in range(n)]


def det3(M) -> Cyc:
    return (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
            - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
            + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))


def inv3(M):
    d = det3(M)
    if d.is_zero():
        raise ZeroDivisionError("singular 3x3 matrix")
    di = d.inverse()
    adj = [[ZERO] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [k for k in range(3) if k != j]
            c = [k for k in range(3) if k != i]
            minor = M[r[0]][c[0]] * M[r[1]][c[1]] - M[r[0]][c[1]] * M[r[1]][c[0]]
            adj[i][j] = minor if (i + j) % 2 == 0 else -minor
    return [[adj[i][j] * di for j in range(3)] for i in range(3)]


def poly_signs(coeffs) -> int:
    """Number of sign variations in a coefficient sequence."""
    signs = [c > 0 for c in coeffs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def signature(mat: flint.fmpq_mat) -> tuple[int, int, int]:
    """(positive, negative, zero) inertia of a rational symmetric matrix.

    Uses Descartes' rule on the characteristic polynomial, which is exact
    because that polynomial has only real roots.
    """
    n = mat.nrows()
    if n == 0:
        return (0, 0, 0)
    coeffs = [to_fraction(c) for c in mat.charpoly().coeffs()]
    zero = 0
    while zero < len(coeffs) and coeffs[zero] == 0:
        zero += 1
    rest = coeffs[zero:]
    pos = poly_signs(rest)
    neg = poly_signs([c * (-1) ** k for k, c in enumerate(rest)])
    return (pos, neg, zero)


def gram(basis_rows: flint.fmpq_mat, form: flint.fmpq_mat) -> flint.fmpq_mat:
    """B^T F B for column basis B."""
    return basis_rows.transpose() * form * basis_rows


class CycMat:
    """Dense K-matrix as four integer numpy arrays over a common denominator.

    The entry (i, j) equals sum_c parts[c][i, j] * z^c / den.  Products use
    z^4 = z^2 - 1, z^5 = z^3 - z and z^6 = -1.
    """

    __slots__ = ("parts", "den")

    def __init__(self, parts, den=1):
        self.parts = [np.asarray(p, dtype=object) for p in parts]
        self.den = int(den)

    @property
    def shape(self):
        return self.parts[0].shape

    @classmethod
    def zeros(cls, m, n) -> CycMat:
        return cls([np.zeros((m, n), dtype=object) for _ in range(4)])

    @classmethod
    def from_rows(cls, rows) -> CycMat:
        m = len(rows)
        n = len(rows[0]) if m else 0
        den = 1
        for row in rows:
            for x in row:
                for q in x.c:
                    den = den * q.denominator // math.gcd(den, q.denominator)
        parts = [np.zeros((m, n), dtype=object) for _ in range(4)]
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                if x:
                    for c in range(4):
                        parts[c][i, j] = int(x.c[c] * den)
        return cls(parts, den)

    def to_rows(self):
        m, n = self.shape
        d = self.den
        return [[Cyc._raw(tuple(Fraction(int(self.parts[c][i, j]), d) for c in range(4)))
                 for j in range(n)] for i in range(m)]

    def entry(self, i, j) -> Cyc:
        return Cyc._raw(tuple(Fraction(int(self.parts[c][i, j]), self.den) for c in range(4)))

    def normalize(self) -> CycMat:
        g = self.den
        for p in self.parts:
            for v in p.ravel():
                if g == 1:
                    break
                if v:
                    g = math.gcd(g, int(v))
        if g > 1:
            return CycMat([p // g for p in self.parts], self.den // g)
        return self

    def __matmul__(self, other: CycMat) -> CycMat:
        A, B = self.parts, other.parts
        P = [None] * 7
        for c in range(4):
            if not A[c].any():
                continue
            for d in range(4):
                if not B[d].any():
                    continue
                prod = A[c].dot(B[d])
                P[c + d] = prod if P[c + d] is None else P[c + d] + prod
        m, n = A[0].shape[0], B[0].shape[1]
        Z = np.zeros((m, n), dtype=object)
        P = [Z if p is None else p for p in P]
        parts = [P[0] - P[4] - P[6], P[1] - P[5], P[2] + P[4], P[3] + P[5]]
        return CycMat(parts, self.den * other.den).normalize()

    def __add__(self, other: CycMat) -> CycMat:
        d = self.den * other.den // math.gcd(self.den, other.den)
        a, b = d // self.den, d // other.den
        return CycMat([p * a + q * b for p, q in zip(self.parts, other.parts)], d).normalize()

    def __neg__(self):
        return CycMat([-p for p in self.parts], self.den)

    def __sub__(self, other):
        return self + (-other)

    def block(self, rows, cols) -> CycMat:
        r, c = list(rows), list(cols)
        return CycMat([p[np.ix_(r, c)] for p in self.parts], self.den)

    def trace(self) -> Cyc:
        return Cyc._raw(tuple(Fraction(int(np.trace(p)), self.den) for p in self.parts))

    def is_zero(self) -> bool:
        return not any(p.any() for p in self.parts)

    def is_rational(self) -> bool:
        return not any(p.any() for p in self.parts[1:])

    def transpose(self) -> CycMat:
        return CycMat([p.T for p in self.parts], self.den)

    def conj(self) -> CycMat:
        a, b, c, d = self.parts
        return CycMat([a + c, b, -c, -b - d], self.den)

    def realify(self, force: bool = False) -> flint.fmpq_mat:
        """rho(M) over Q, shape (4m, 4n); rational matrices stay (m, n) unless forced."""
        if self.is_rational() and not force:
            return int_qmat(self.parts[0], self.den)
        total = np.kron(self.parts[0], ZPOW[0])
        for c in range(1, 4):
            if self.parts[c].any():
                k = np.kron(self.parts[c], ZPOW[c])
                total = total + k
        return int_qmat(total, self.den)

    def qmat(self) -> flint.fmpq_mat:
        if not self.is_rational():
            raise ValueError("matrix is not rational")
        return int_qmat(self.parts[0], self.den)

    def rank(self) -> int:
        if self.is_rational():
            return self.qmat().rank()
        return self.realify().rank() // 4

    def kernel(self) -> list[list[Cyc]]:
        n = self.shape[1]
        if self.is_rational():
            return [[Cyc(to_fraction(x)) for x in v] for v in q_nullspace(self.qmat())]
        return _k_basis_from_q(q_nullspace(self.realify()), n)

    def matvec(self, vec) -> list[Cyc]:
        col = CycMat.from_rows([[x] for x in vec])
        return [row[0] for row in (self @ col).to_rows()]


def det(rows) -> Cyc:
    """Determinant of a small square K-matrix by Gaussian elimination."""
    M = [list(r) for r in rows]
    n = len(M)
    result = Cyc(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            return ZERO
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            result = -result
        p = M[col][col]
        result = result * p
        pinv = p.inverse()
        for r in range(col + 1, n):
            if M[r][col]:
                f = M[r][col] * pinv
                M[r] = [a - f * b if b else a for a, b in zip(M[r], M[col])]
    return result
