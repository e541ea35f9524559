"""Jordan decomposition, invariants and stabilizer dimensions for tensors.

For x in g_1 the adjoint map cycles the grades, g_0 -> g_1 -> g_-1 -> g_0,
through blocks M1, M2, M3.  Most questions reduce to the 24x24 matrix
C0 = M3 M2 M1, the restriction of ad(x)^3 to g_0:

  * ad(x) is nilpotent iff C0 is;
  * tr ad(x)^(3m) = 3 tr C0^m;
  * det(t - ad x) = t^6 det(t^3 - C0).

The semisimple part satisfies ad(x_s) = A q(A^3) for A = ad(x) and a
polynomial q built from C0 alone: Newton's iteration for the squarefree part
of its characteristic polynomial (Jordan-Chevalley over Q) gives (C0)_s, and
q is the unipotent cube root of (C0)_s C0^{-1} on the invertible part.
Applied to a regular Cartan element h, ad(x_s) h = -[h, x_s] yields x_s.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction

import flint
import numpy as np

from .exactfield import Cyc, ZERO
from . import liealg
from .liealg import E6Elt, ad_cmat, algebra
from .linalg import CycMat, det, realify_vector, unrealify_vector, to_fraction
from .tensorspace import Tensor, phi, phi_inv

G0, G1, GM1 = list(liealg.G0), list(liealg.G1), list(liealg.GM1)


class NotHomogeneous(ValueError):
    pass


@dataclass(frozen=True)
class JordanSplit:
    s: Tensor
    e: Tensor


@dataclass(frozen=True)
class InvariantTriple:
    t6: Cyc
    t9: Cyc
    t12: Cyc

    def as_tuple(self):
        return (self.t6, self.t9, self.t12)

    def is_zero(self) -> bool:
        return not (self.t6 or self.t9 or self.t12)


class _Analysis:
    """Cached grade blocks of ad(phi_inv(v))."""

    def __init__(self, v: Tensor):
        self.v = v
        self.x = phi_inv(v)
        A = ad_cmat(self.x)
        self.A = A
        self.M1 = A.block(G1, G0)
        self.M2 = A.block(GM1, G1)
        self.M3 = A.block(G0, GM1)
        self.C0 = self.M3 @ (self.M2 @ self.M1)
        self._D = None

    @property
    def D(self) -> flint.fmpq_mat:
        if self._D is None:
            self._D = self.C0.qmat() if self.scalar_degree == 1 else self.C0.realify(force=True)
        return self._D

    @property
    def scalar_degree(self) -> int:
        return 1 if self.C0.is_rational() and self.M1.is_rational() else 4


@lru_cache(maxsize=512)
def analyse(v: Tensor) -> _Analysis:
    return _Analysis(v)


def _as_tensor(v) -> Tensor:
    if isinstance(v, Tensor):
        return v
    if isinstance(v, E6Elt):
        if v.homogeneous_grade() not in (1, None) or any(v.coords[k] for k in G0 + GM1):
            raise NotHomogeneous("expected an element of g_1")
        return phi(v)
    raise TypeError("expected a Tensor")


def is_nilpotent(v) -> bool:
    v = _as_tensor(v)
    if v.is_zero():
        return True
    D = analyse(v).D
    cp = D.charpoly()
    return cp == flint.fmpq_poly([0] * D.nrows() + [1])


def trace_power(v, k: int) -> Cyc:
    """tr ad(x)^k.  Zero unless 3 | k, and zero for every odd k as well."""
    v = _as_tensor(v)
    if v.is_zero() or k % 3:
        return ZERO
    C = analyse(v).C0
    m = k // 3
    if m == 0:
        return Cyc(78)
    half = _power(C, m // 2)
    if m % 2 == 0:
        return _trace_product(half, half) * 3
    return _trace_product(half @ C, half) * 3


def _power(C: CycMat, m: int) -> CycMat:
    out = None
    base = C
    while m:
        if m & 1:
            out = base if out is None else out @ base
        m >>= 1
        if m:
            base = base @ base
    if out is None:
        n = C.shape[0]
        eye = np.identity(n, dtype=object)
        out = CycMat([eye] + [np.zeros((n, n), dtype=object)] * 3)
    return out


def strassen_invariant(v) -> Cyc:
    """Degree-9 invariant: determinant of the 9x9 Koszul flattening.

    With slices M_k = v[:, :, k] the matrix is
    [[0, M3, -M2], [-M3, 0, M1], [M2, -M1, 0]].
    """
    v = _as_tensor(v)
    M = [[[v[(i, j, k)] for j in range(3)] for i in range(3)] for k in range(3)]
    layout = ((None, (2, 1), (1, -1)), ((2, -1), None, (0, 1)), ((1, 1), (0, -1), None))
    rows = []
    for bi in range(3):
        for i in range(3):
            row = []
            for bj in range(3):
                blk = layout[bi][bj]
                for j in range(3):
                    if blk is None:
                        row.append(ZERO)
                    else:
                        k, sign = blk
                        row.append(M[k][i][j] if sign > 0 else -M[k][i][j])
            rows.append(row)
    return det(rows)


def invariants(v) -> InvariantTriple:
    """Generators of degrees 6, 9, 12: tr ad(x)^6, the Koszul determinant, tr ad(x)^12.

    tr ad(x)^9 is identically zero (ad is self-dual, so odd trace powers
    vanish), hence the degree-9 slot uses ``strassen_invariant``.
    """
    v = _as_tensor(v)
    if v.is_zero():
        return InvariantTriple(ZERO, ZERO, ZERO)
    C = analyse(v).C0
    C2 = C @ C
    t6 = _trace_product(C, C) * 3
    t12 = _trace_product(C2, C2) * 3
    return InvariantTriple(t6, strassen_invariant(v), t12)


def _trace_product(A: CycMat, B: CycMat) -> Cyc:
    # tr(AB) without forming AB
    Bt = B.transpose()
    P = [0] * 7
    for c in range(4):
        for d in range(4):
            P[c + d] += int((A.parts[c] * Bt.parts[d]).sum())
    coords = [P[0] - P[4] - P[6], P[1] - P[5], P[2] + P[4], P[3] + P[5]]
    den = A.den * B.den
    return Cyc._raw(tuple(Fraction(c, den) for c in coords))


def stab_dim(v) -> int:
    """dim { z in g_0 : [z, x] = 0 }."""
    v = _as_tensor(v)
    if v.is_zero():
        return 24
    return 24 - analyse(v).M1.rank()


@lru_cache(maxsize=1)
def regular_cartan():
    """Coefficients c on the coroot basis with alpha(h) = height(alpha)."""
    C = liealg._CS
    M = flint.fmpq_mat([[int(C[a, b]) for b in range(6)] for a in range(6)])
    c = M.solve(flint.fmpq_mat([[1]] * 6))
    return [to_fraction(c[a, 0]) for a in range(6)]


def _poly_compose_mod(P: flint.fmpq_poly, s: flint.fmpq_poly, mod: flint.fmpq_poly):
    acc = flint.fmpq_poly(0)
    for coef in reversed(P.coeffs()):
        acc = (acc * s + coef) % mod
    return acc


def semisimple_polynomial(chi: flint.fmpq_poly) -> flint.fmpq_poly:
    """p with p(M) the semisimple part of any M annihilated by chi."""
    dchi = chi.derivative()
    g = chi.gcd(dchi)
    P = chi // g
    dP = P.derivative()
    s = flint.fmpq_poly([0, 1])
    for _ in range(64):
        Ps = _poly_compose_mod(P, s, chi)
        if Ps == 0:
            return s
        dPs = _poly_compose_mod(dP, s, chi)
        gg, u, _ = dPs.xgcd(chi)
        if gg.degree() != 0:
            raise ArithmeticError("derivative not invertible during Newton iteration")
        inv = u / gg.coeffs()[0]
        s = (s - Ps * inv) % chi
    raise ArithmeticError("Newton iteration did not converge")


def _inverse_mod(f, g):
    d, u, _ = f.xgcd(g)
    if d.degree() != 0:
        raise ArithmeticError("polynomial not invertible modulo the given modulus")
    return (u / d.coeffs()[0]) % g


def cube_root_polynomial(chi: flint.fmpq_poly) -> flint.fmpq_poly:
    """q with S = A q(A^3) the semisimple part of a grade-1 operator A.

    chi annihilates A^3 on g_0.  With chi = u^a g, g(0) != 0, q vanishes
    modulo u^a and is the unipotent cube root of u_s / u modulo g.
    """
    coeffs = chi.coeffs()
    a = 0
    while coeffs[a] == 0:
        a += 1
    g = chi // flint.fmpq_poly([0] * a + [1])
    if g.degree() == 0:
        return flint.fmpq_poly(0)
    us = semisimple_polynomial(g)
    u = flint.fmpq_poly([0, 1])
    n = (us * _inverse_mod(u, g)) % g - 1
    # sum_j binom(1/3, j) n^j terminates because n is nilpotent modulo g
    c = flint.fmpq_poly(1)
    term = flint.fmpq_poly(1)
    binom = Fraction(1)
    j = 0
    while True:
        term = (term * n) % g
        if term == 0:
            break
        binom = binom * (Fraction(1, 3) - j) / (j + 1)
        j += 1
        c = c + term * flint.fmpq(binom.numerator, binom.denominator)
    if a == 0:
        return c % g
    ua = flint.fmpq_poly([0] * a + [1])
    e = (ua * _inverse_mod(ua, g)) % chi
    return (e * c) % chi


def semisimple_part(v) -> Tensor:
    v = _as_tensor(v)
    if v.is_zero():
        return v
    an = analyse(v)
    D = an.D
    q = cube_root_polynomial(D.charpoly())
    h = [Cyc(c) for c in regular_cartan()] + [ZERO] * 18
    if an.scalar_degree == 1:
        hq = flint.fmpq_mat(24, 1, [flint.fmpq(x.c[0].numerator, x.c[0].denominator) for x in h])
        M1 = an.M1.qmat()
    else:
        hq = flint.fmpq_mat(96, 1, realify_vector(h))
        M1 = an.M1.realify(force=True)
    acc = flint.fmpq_mat(hq.nrows(), 1)
    for c in reversed(q.coeffs()):
        acc = D * acc + hq * c
    # w = ad(x_s) h = -[h, x_s]
    w = M1 * acc
    if an.scalar_degree == 1:
        wv = [Cyc(to_fraction(w[i, 0])) for i in range(27)]
    else:
        wv = unrealify_vector([w[i, 0] for i in range(108)])
    alg = algebra()
    coords = [ZERO] * liealg.DIM
    for pos, k in enumerate(G1):
        coords[k] = -wv[pos] / sum(alg.root_list[k - 6])
    return phi(E6Elt(coords))


def jordan_decompose(v) -> JordanSplit:
    v = _as_tensor(v)
    s = semisimple_part(v)
    return JordanSplit(s, v - s)


def is_semisimple(v) -> bool:
    v = _as_tensor(v)
    if v.is_zero():
        return True
    return jordan_decompose(v).e.is_zero()


def kind(v) -> str:
    """'zero', 'nilpotent', 'semisimple' or 'mixed'."""
    v = _as_tensor(v)
    if v.is_zero():
        return "zero"
    if is_nilpotent(v):
        return "nilpotent"
    sp = jordan_decompose(v)
    return "semisimple" if sp.e.is_zero() else "mixed"
