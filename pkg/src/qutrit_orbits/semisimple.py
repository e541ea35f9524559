"""Semisimple tensors: the Cartan subspace, its Weyl group and the four families.

Coordinates (a1, a2, a3) refer to a1*u1 + a2*u2 + a3*u3.  The families are
told apart by the stabilizer dimension in g_0 (0, 2, 4, 8 for families 1-4),
and within a family the parameters are recovered from the invariant triple.
On the Cartan subspace the invariants are polynomials in X = a1^3, Y = a2^3,
Z = a3^3; they are frozen below and checked against the trace computation
in the test suite.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .exactfield import Cyc, ONE, ZERO, Z3, complex_to_cyc
from .galois import FiniteGroup, MatrixElt
from .jordan import invariants, is_semisimple, stab_dim, _as_tensor
from .tensorspace import GroupElt, Tensor, cartan_point

FAMILY_BY_STAB_DIM = {0: 1, 2: 2, 4: 3, 8: 4}
STAB_DIM_BY_FAMILY = {v: k for k, v in FAMILY_BY_STAB_DIM.items()}
GAMMA_ORDERS = {1: 648, 2: 18, 3: 6, 4: 3}


class NotSemisimple(ValueError):
    pass


class ZeroInput(ValueError):
    pass


class DifferentFamilies(ValueError):
    pass


class NumericFailure(ArithmeticError):
    pass


# -- restricted invariants ----------------------------------------------------
# exponents of (X, Y, Z)

F6 = {(2, 0, 0): -108, (0, 2, 0): -108, (0, 0, 2): -108,
      (1, 1, 0): 1080, (0, 1, 1): 1080, (1, 0, 1): 1080}
F9 = {(2, 1, 0): 1, (1, 2, 0): -1, (0, 2, 1): 1, (0, 1, 2): -1, (2, 0, 1): -1, (1, 0, 2): 1}
F12 = {}
for _e, _c in (((4, 0, 0), 4428), ((3, 1, 0), 11880), ((2, 2, 0), 49896), ((2, 1, 1), 997920)):
    for _p in {(_e[i], _e[j], _e[k]) for i, j, k in
               ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0))}:
        F12[_p] = _c
del _e, _c, _p

RESTRICTED = (F6, F9, F12)


def _eval_poly(poly, X, Y, Z):
    acc = 0
    for (i, j, k), c in poly.items():
        acc = acc + (X ** i) * (Y ** j) * (Z ** k) * c
    return acc


def restricted_invariants(a1, a2, a3):
    """(t6, t9, t12) of a1*u1 + a2*u2 + a3*u3 from the frozen polynomials.

    Works for Cyc, Fraction, int or complex arguments.
    """
    X, Y, Z = a1 ** 3, a2 ** 3, a3 ** 3
    return tuple(_eval_poly(p, X, Y, Z) for p in RESTRICTED)


def _poly_grad(poly, X, Y, Z):
    g = [0j, 0j, 0j]
    for (i, j, k), c in poly.items():
        if i:
            g[0] += c * i * X ** (i - 1) * Y ** j * Z ** k
        if j:
            g[1] += c * j * X ** i * Y ** (j - 1) * Z ** k
        if k:
            g[2] += c * k * X ** i * Y ** j * Z ** (k - 1)
    return g


def restricted_jacobian(a1, a2, a3):
    """Exact 3x3 Jacobian of the restricted invariants in (a1, a2, a3)."""
    a = [Cyc.coerce(x) for x in (a1, a2, a3)]
    X, Y, Z = (x ** 3 for x in a)
    rows = []
    for poly in RESTRICTED:
        row = [ZERO, ZERO, ZERO]
        for (i, j, k), c in poly.items():
            e = (i, j, k)
            for v in range(3):
                if e[v]:
                    lower = list(e)
                    lower[v] -= 1
                    term = (X ** lower[0]) * (Y ** lower[1]) * (Z ** lower[2]) * (c * e[v])
                    row[v] = row[v] + term * 3 * a[v] ** 2
        rows.append(row)
    return rows


# -- groups -------------------------------------------------------------------

def _third(x):
    return x * Fraction(1, 3)


WEYL_GENERATORS = (
    MatrixElt.diag(Z3, ONE, ONE),
    MatrixElt.diag(ONE, Z3, ONE),
    MatrixElt([[_third(2 + Z3), _third(-1 - 2 * Z3), _third(2 + Z3)],
               [_third(2 + Z3), _third(2 + Z3), _third(-1 - 2 * Z3)],
               [_third(-1 - 2 * Z3), _third(2 + Z3), _third(2 + Z3)]]),
)

# (a1, a2, a3) -> (a1, a3, a2): swapping two tensor factors exchanges u2 and u3
FACTOR_SWAP = MatrixElt([[1, 0, 0], [0, 0, 1], [0, 1, 0]])


@lru_cache(maxsize=1)
def weyl_group() -> FiniteGroup:
    return FiniteGroup(WEYL_GENERATORS, name="W_C")


def reflections(G: FiniteGroup | None = None) -> list[int]:
    """Indices of the non-identity elements fixing a hyperplane pointwise."""
    G = weyl_group() if G is None else G
    return [i for i, g in enumerate(G.elements) if i and g.fixed_space_dim() == 2]


def reflection_classes(G: FiniteGroup | None = None) -> list[list[int]]:
    G = weyl_group() if G is None else G
    return G.conjugacy_classes(reflections(G))


def gamma_generators(family: int, mode: str = "exact") -> list[MatrixElt]:
    if family == 1:
        gens = list(WEYL_GENERATORS)
        extra = [FACTOR_SWAP]
    elif family == 2:
        gens = [MatrixElt([[0, -1], [-1, 0]]), MatrixElt.diag(ONE, Z3)]
        extra = [MatrixElt([[0, 1], [1, 0]])]
    elif family == 3:
        gens = [MatrixElt.scalar(-Z3)]
        extra = []
    elif family == 4:
        gens = [MatrixElt.scalar(Z3)]
        extra = [MatrixElt.scalar(-1)]
    else:
        raise ValueError(f"no family {family}")
    if mode != "exact":
        gens = gens + extra
    return gens


@lru_cache(maxsize=None)
def gamma_group(family: int, mode: str = "exact") -> FiniteGroup:
    """The group acting on the parameters of a family.

    Family 1 carries all of W_C; permutation modes add the factor swap.
    """
    _check_mode(mode)
    if family == 1 and mode == "exact":
        return weyl_group()
    return FiniteGroup(gamma_generators(family, mode), name=f"Gamma_{family}/{mode}")


def _check_mode(mode):
    if mode not in ("exact", "sym2", "sym3"):
        raise ValueError(f"unknown mode {mode!r}")


# tabulated stabilizer of a first-family element
def _d(*xs):
    return [[xs[i] if i == j else ZERO for j in range(3)] for i in range(3)]


_Z2 = Z3 * Z3
FIRST_FAMILY_STABILIZER = (
    GroupElt(_d(Z3, _Z2, ONE), _d(Z3, _Z2, ONE), _d(Z3, _Z2, ONE)),
    GroupElt(_d(_Z2, _Z2, _Z2), _d(ONE, ONE, ONE), _d(Z3, Z3, Z3)),
    GroupElt([[0, 0, _Z2], [1, 0, 0], [0, Z3, 0]],
             [[0, 0, Z3], [_Z2, 0, 0], [0, 1, 0]],
             [[0, 0, 1], [Z3, 0, 0], [0, _Z2, 0]]),
)


@lru_cache(maxsize=1)
def first_family_stabilizer() -> FiniteGroup:
    return FiniteGroup(FIRST_FAMILY_STABILIZER, name="Z(first family)")


# -- Cartan coordinates -------------------------------------------------------

def cartan_coordinates(v: Tensor):
    """(a1, a2, a3) if v lies in span(u1, u2, u3), else None."""
    v = _as_tensor(v)
    a = (v["000"], v["012"], v["021"])
    if cartan_point(*a) == v:
        return a
    return None


def admissible(family: int, params) -> bool:
    """The open condition defining each family, on its normal form."""
    if family == 1:
        a1, a2, a3 = params
        s = a1 ** 3 + a2 ** 3 + a3 ** 3
        p = a1 * a2 * a3
        return bool(p) and bool(s ** 3 - (p * 3) ** 3)
    if family == 2:
        a1, a2 = params
        return bool(a1 * a2 * (a1 ** 3 + a2 ** 3))
    return bool(params[0])


def family_point(family: int, params) -> Tensor:
    """The tensor of a family in normal form."""
    if family == 1:
        return cartan_point(*params)
    if family == 2:
        return cartan_point(params[0], params[1], 0)
    if family == 3:
        return cartan_point(params[0], 0, 0)
    if family == 4:
        return cartan_point(0, params[0], -Cyc.coerce(params[0]))
    raise ValueError(f"no family {family}")


def _pattern(family: int, a) -> tuple | None:
    """Family normal-form parameters if the point a has that shape."""
    a1, a2, a3 = a
    if family == 1:
        return tuple(a)
    if family == 2 and a3 == 0 and a1 and a2:
        return (a1, a2)
    if family == 3 and a1 and a2 == 0 and a3 == 0:
        return (a1,)
    if family == 4 and a1 == 0 and a2 and a3 == -a2:
        return (a2,)
    return None


# -- labels -------------------------------------------------------------------

@dataclass(frozen=True)
class FamilyLabel:
    family: int
    params: tuple                     # complex approximations
    exact: tuple | None = None        # Cyc values when known
    real_class: str | None = None
    evidence: dict = field(default_factory=dict, compare=False, hash=False)

    def rounded(self, digits: int = 8):
        return tuple(complex(round(z.real, digits), round(z.imag, digits)) for z in self.params)


def _approx(x) -> complex:
    return complex(x) if not isinstance(x, Cyc) else complex(*x.approx())


def _key(values, digits: int = 7):
    # deterministic choice among candidates: most real coordinates, then largest
    zs = [_approx(z) for z in values]
    out = [sum(abs(z.imag) < 1e-9 * max(1.0, abs(z)) for z in zs)]
    for z in zs:
        out.extend((round(z.real, digits), round(z.imag, digits)))
    return tuple(out)


@lru_cache(maxsize=1)
def _weyl_numeric() -> np.ndarray:
    G = weyl_group()
    return np.array([[[_approx(x) for x in r] for r in g.rows] for g in G.elements])


def exact_orbit(group: FiniteGroup, point) -> list[tuple]:
    seen = []
    keys = set()
    for g in group.elements:
        img = tuple(g.apply(list(point)))
        if img not in keys:
            keys.add(img)
            seen.append(img)
    return seen


def _close(p, q, tol=1e-9) -> bool:
    p, q = np.asarray(p, dtype=complex), np.asarray(q, dtype=complex)
    return bool(np.max(np.abs(p - q)) <= tol * max(1.0, float(np.max(np.abs(q)))))


def _numeric_pattern(family, p, tol=1e-9):
    scale = max(1.0, float(np.max(np.abs(p))))
    small = [abs(z) <= tol * scale for z in p]
    if family == 1:
        return tuple(p)
    if family == 2 and small[2] and not small[0] and not small[1]:
        return (p[0], p[1])
    if family == 3 and not small[0] and small[1] and small[2]:
        return (p[0],)
    if family == 4 and small[0] and not small[1] and abs(p[1] + p[2]) <= tol * scale:
        return (p[1],)
    return None


def family_of(s, check: bool = True) -> FamilyLabel:
    """Family and normal-form parameters of a semisimple tensor."""
    s = _as_tensor(s)
    if s.is_zero():
        raise ZeroInput("the zero tensor is not in a family")
    if check and not is_semisimple(s):
        raise NotSemisimple("tensor is not semisimple")
    d = stab_dim(s)
    try:
        family = FAMILY_BY_STAB_DIM[d]
    except KeyError:
        raise NotSemisimple(f"unexpected stabilizer dimension {d}") from None
    a = cartan_coordinates(s)
    if a is not None:
        return _label_from_cartan(family, a)
    return _label_from_invariants(family, invariants(s).as_tuple())


def _label_from_cartan(family, a) -> FamilyLabel:
    W = weyl_group()
    images = numeric_orbit([_approx(x) for x in a])
    cands = []
    for idx, p in enumerate(images):
        pat = _numeric_pattern(family, p)
        if pat is not None:
            cands.append((_key(pat), idx))
    for _, idx in sorted(cands, reverse=True):
        exact = _pattern(family, tuple(W.element(idx).apply(list(a))))
        if exact is not None:
            return FamilyLabel(family, tuple(_approx(x) for x in exact), tuple(exact))
    raise NumericFailure("no normal form found in the Weyl orbit")


def _cube_roots(w: complex):
    if w == 0:
        return [0j]
    r = abs(w) ** (1 / 3)
    t = cmath.phase(w) / 3
    return [r * cmath.exp(1j * (t + 2 * math.pi * k / 3)) for k in range(3)]


def _exact_root(value: Cyc, k: int, approx: complex):
    """An exact k-th root of value near approx, if one is in the field."""
    cand = complex_to_cyc(approx)
    if cand is not None and cand ** k == value:
        return cand
    return None


def _label_from_invariants(family, inv) -> FamilyLabel:
    t6, t9, t12 = inv
    if family == 4:
        Y = t9 * 648 / t6
        roots = _cube_roots(_approx(Y))
        a = max(roots, key=lambda z: _key([z]))
        ex = _exact_root(Y, 3, a)
        return FamilyLabel(4, (a,), (ex,) if ex is not None else None, evidence={"a^3": Y})
    if family == 3:
        X2 = -t6 / 108
        w = _approx(X2)
        roots = [r * cmath.exp(1j * math.pi * k / 3) for k in range(6) for r in [abs(w) ** (1 / 6) * cmath.exp(1j * cmath.phase(w) / 6)]]
        a = max(roots, key=lambda z: _key([z]))
        ex = _exact_root(X2, 6, a)
        return FamilyLabel(3, (a,), (ex,) if ex is not None else None, evidence={"a^6": X2})
    if family == 2:
        P, Q = family2_invariants(inv)
        return _family2_label(P, Q)
    return _family1_label(inv)


# -- family 2 ------------------------------------------------------------------

def _poly_trim(p):
    while p and p[-1].is_zero():
        p = p[:-1]
    return p


def _poly_mod(a, b):
    a = list(a)
    while len(a) >= len(b):
        if a[-1].is_zero():
            a.pop()
            continue
        f = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = a[shift + i] - f * c
        a.pop()
    return _poly_trim(a)


def _poly_gcd(a, b):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b)
    return [c / a[-1] for c in a]


def _family2_f12(P, Q):
    S = P * P + Q * 2
    return (S * S - Q * Q * 2) * 4428 + Q * S * 11880 + Q * Q * 49896


def family2_invariants(inv):
    """(P, Q) = (X - Y, XY) for a1*u1 + a2*u2, exactly, from (t6, t9, t12).

    P is a root of 108 P^3 + t6 P - 864 t9 = 0 and Q = (t6 + 108 P^2) / 864;
    the t12 relation singles out the root.
    """
    t6, t9, t12 = (Cyc.coerce(x) for x in inv)
    cubic = [-t9 * 864, t6, ZERO, Cyc(108)]
    # f12 after substituting Q(P), as a polynomial in P
    # Q = q0 + q2 P^2 with q0 = t6/864, q2 = 1/8
    q0, q2 = t6 / 864, Cyc(Fraction(1, 8))
    # S = P^2 + 2Q = 2 q0 + (1 + 2 q2) P^2, polynomials in P as coefficient lists
    S = [q0 * 2, ZERO, 1 + q2 * 2]
    Qp = [q0, ZERO, q2]
    quartic = _padd(_padd(_pscale(_psub(_pmul(S, S), _pscale(_pmul(Qp, Qp), 2)), 4428),
                          _pscale(_pmul(Qp, S), 11880)), _pscale(_pmul(Qp, Qp), 49896))
    quartic[0] = quartic[0] - t12
    g = _poly_gcd(cubic, quartic)
    if len(g) == 2:
        P = -g[0]
        return P, (t6 + P * P * 108) / 864
    # fall back to numerics: pick the cubic root that best fits t12
    roots = np.roots([float(108), 0.0, _approx(t6), -864 * _approx(t9)])
    best = min(roots, key=lambda p: abs(_family2_f12(p, (_approx(t6) + 108 * p * p) / 864) - _approx(t12)))
    return complex(best), (_approx(t6) + 108 * best * best) / 864


def _padd(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else ZERO) + (b[i] if i < len(b) else ZERO) for i in range(n)]


def _psub(a, b):
    return _padd(a, [-x for x in b])


def _pscale(a, c):
    return [x * c for x in a]


def _pmul(a, b):
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _family2_label(P, Q) -> FamilyLabel:
    Pc, Qc = _approx(P), _approx(Q)
    disc = cmath.sqrt(Pc * Pc + 4 * Qc)
    # X and -Y are the roots of T^2 - P T - Q
    cands = []
    for r1, r2 in (((Pc + disc) / 2, (Pc - disc) / 2), ((Pc - disc) / 2, (Pc + disc) / 2)):
        X, Y = r1, -r2
        a1 = max(_cube_roots(X), key=lambda z: _key([z]))
        a2 = max(_cube_roots(Y), key=lambda z: _key([z]))
        cands.append((a1, a2))
    a1, a2 = max(cands, key=_key)
    exact = None
    e1, e2 = complex_to_cyc(a1), complex_to_cyc(a2)
    if e1 is not None and e2 is not None and isinstance(P, Cyc):
        if e1 ** 3 - e2 ** 3 == P and (e1 * e2) ** 3 == Q:
            exact = (e1, e2)
    return FamilyLabel(2, (a1, a2), exact, evidence={"P": P, "Q": Q})


# -- family 1 -----------------------------------------------------------------

def _newton_xyz(target, start, iters=80):
    x = np.array(start, dtype=complex)
    scale = np.array([max(1.0, abs(t)) for t in target])
    for _ in range(iters):
        f = np.array([_eval_poly(p, *x) for p in RESTRICTED]) - target
        if np.all(np.abs(f) <= 1e-13 * scale):
            return x, 0.0
        J = np.array([_poly_grad(p, *x) for p in RESTRICTED])
        try:
            step = np.linalg.solve(J, f)
        except np.linalg.LinAlgError:
            return x, float("inf")
        x = x - step
        if not np.all(np.isfinite(x)):
            return x, float("inf")
    f = np.array([_eval_poly(p, *x) for p in RESTRICTED]) - target
    return x, float(np.max(np.abs(f) / scale))


# residual bound for numeric parameter recovery; the CLI --tolerance option sets it
RECOVERY_TOL = 1e-8


def solve_restricted(inv, tol: float | None = None, starts: int = 60, seed: int = 0):
    """A point (a1, a2, a3) with restricted invariants equal to inv (numeric)."""
    tol = RECOVERY_TOL if tol is None else tol
    target = np.array([_approx(t) for t in inv])
    mag = max(abs(target[0]) / 1296, abs(target[2]) / 1e6, 1e-12) ** 0.5
    rng = np.random.default_rng(seed)
    best = (None, float("inf"))
    for _ in range(starts):
        start = mag * (rng.normal(size=3) + 1j * rng.normal(size=3))
        x, res = _newton_xyz(target, start)
        if res < best[1]:
            best = (x, res)
        if res <= tol * 1e-3:
            break
    x, res = best
    if x is None or res > tol:
        raise NumericFailure(f"parameter recovery did not converge (residual {res:.3g})")
    return tuple(_cube_roots(w)[0] for w in x), res


def numeric_orbit(a) -> np.ndarray:
    return _weyl_numeric() @ np.array(a, dtype=complex)


def _family1_label(inv) -> FamilyLabel:
    a, res = solve_restricted(inv)
    orbit = numeric_orbit(a)
    best = max((tuple(p) for p in orbit), key=_key)
    exact = tuple(complex_to_cyc(z) for z in best)
    if any(e is None for e in exact) or tuple(restricted_invariants(*exact)) != tuple(Cyc.coerce(t) for t in inv):
        exact = None
    return FamilyLabel(1, best, exact, evidence={"residual": res})


def cartan_params(s, tol: float | None = None) -> list[tuple]:
    """The W_C-orbit of parameters of a semisimple tensor, as complex triples."""
    s = _as_tensor(s)
    a = cartan_coordinates(s)
    if a is not None:
        point = [_approx(x) for x in a]
    else:
        if not is_semisimple(s):
            raise NotSemisimple("tensor is not semisimple")
        point, _ = solve_restricted(invariants(s).as_tuple(), tol=tol)
    out = []
    for p in numeric_orbit(point):
        if not any(_close(p, q, 1e-7) for q in out):
            out.append(tuple(p))
    return out


def in_orbit(points, target, tol=1e-7) -> bool:
    t = np.array(target, dtype=complex)
    return any(np.max(np.abs(np.array(p) - t)) <= tol * max(1.0, np.max(np.abs(t))) for p in points)


# -- equivalence ----------------------------------------------------------------

def semisimple_equivalent(s1, s2, mode: str = "exact") -> bool:
    """Whether two elements of the Cartan subspace are conjugate.

    Points already in a family's normal form are compared with the group
    acting on that family; other points of the Cartan subspace with W_C.
    """
    _check_mode(mode)
    a, b = cartan_coordinates(s1), cartan_coordinates(s2)
    if a is None or b is None:
        raise ValueError("both tensors must lie in the Cartan subspace")
    f1, f2 = FAMILY_BY_STAB_DIM.get(stab_dim(s1)), FAMILY_BY_STAB_DIM.get(stab_dim(s2))
    if f1 != f2:
        raise DifferentFamilies(f"families {f1} and {f2}")
    pa, pb = _pattern(f1, a), _pattern(f1, b)
    if pa is not None and pb is not None:
        G, x, y = gamma_group(f1, mode), pa, pb
    else:
        G, x, y = (weyl_group() if mode == "exact" else gamma_group(1, mode)), a, b
    yn = [_approx(t) for t in y]
    for g, gn in zip(G.elements, _numeric(G)):
        if _close(gn @ np.array([_approx(t) for t in x]), yn, 1e-8) and tuple(g.apply(list(x))) == tuple(y):
            return True
    return False


def _numeric(G: FiniteGroup) -> np.ndarray:
    if G is weyl_group():
        return _weyl_numeric()
    return np.array([[[_approx(x) for x in r] for r in g.rows] for g in G.elements])


# -- real forms -----------------------------------------------------------------

def real_class(label: FamilyLabel) -> str:
    """'canonical' or 'twisted' for a real semisimple tensor with this label."""
    f = label.family
    if f in (1, 4):
        return "canonical"
    if f == 3:
        x = label.evidence.get("a^6")
        if x is None:
            x = Cyc.coerce(label.exact[0]) ** 6 if label.exact else None
        v = _approx(x) if x is not None else label.params[0] ** 6
        return "canonical" if v.real > 0 else "twisted"
    P, Q = label.evidence.get("P"), label.evidence.get("Q")
    if P is None:
        a1, a2 = label.exact if label.exact else label.params
        P, Q = a1 ** 3 - a2 ** 3, (a1 * a2) ** 3
    disc = P * P + Q * 4
    d = _approx(disc).real
    if isinstance(disc, Cyc) and disc.is_rational():
        d = disc.rational()
    return "canonical" if d > 0 else "twisted"


def twisted_basis(family: int):
    """Real spanning tensors of the twisted real forms of families 2 and 3."""
    from . import catalog
    if family not in (2, 3):
        raise ValueError("only families 2 and 3 have twisted real forms")
    return catalog.twisted_basis(family)


def twisted_admissible(family: int, params) -> bool:
    if family == 2:
        a1, a2 = params
        return bool(a1 * a1 + a2 * a2) and bool(a2 * (a2 * a2 - a1 * a1 * 3))
    return bool(params[0])
