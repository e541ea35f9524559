"""Exact arithmetic in the cyclotomic field Q(z), z = exp(pi*i/6).

Elements are stored by their coordinates on the power basis 1, z, z^2, z^3,
always reduced modulo the minimal polynomial x^4 - x^2 + 1.  Every scalar
needed for 3-qutrit computations lives here: the cube root of unity
``Z3 = z^4``, the imaginary unit ``I = z^3`` and all rationals.
"""

from __future__ import annotations

import ast
import math
from fractions import Fraction
from numbers import Rational

__all__ = ["Cyc", "ZERO", "ONE", "Z3", "I", "Z12", "SQRT3", "parse_scalar", "conj", "approx"]

_Z_NUM = complex(math.sqrt(3) / 2, 0.5)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


class ParseError(ValueError):
    """Malformed scalar text."""


class Cyc:
    """An element of Q(zeta_12)."""

    __slots__ = ("c", "_hash")

    def __init__(self, *coords):
        if len(coords) == 1 and isinstance(coords[0], Cyc):
            self.c = coords[0].c
        elif len(coords) == 1:
            self.c = (_frac(coords[0]), Fraction(0), Fraction(0), Fraction(0))
        elif len(coords) == 4:
            self.c = tuple(_frac(x) for x in coords)
        elif len(coords) == 0:
            self.c = (Fraction(0),) * 4
        else:
            raise ValueError("Cyc takes 0, 1 or 4 coordinates")
        self._hash = None

    @classmethod
    def _raw(cls, c):
        obj = cls.__new__(cls)
        obj.c = c
        obj._hash = None
        return obj

    @staticmethod
    def coerce(x) -> Cyc:
        if isinstance(x, Cyc):
            return x
        return Cyc._raw((_frac(x), Fraction(0), Fraction(0), Fraction(0)))

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self) -> bool:
        return any(self.c)

    def is_rational(self) -> bool:
        return not (self.c[1] or self.c[2] or self.c[3])

    def is_real(self) -> bool:
        a, b, c, d = self.c
        return c == 0 and b == -2 * d

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Cyc):
            try:
                other = Cyc.coerce(other)
            except TypeError:
                return NotImplemented
        a, b = self.c, other.c
        return Cyc._raw((a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]))

    __radd__ = __add__

    def __neg__(self):
        a = self.c
        return Cyc._raw((-a[0], -a[1], -a[2], -a[3]))

    def __sub__(self, other):
        if not isinstance(other, Cyc):
            try:
                other = Cyc.coerce(other)
            except TypeError:
                return NotImplemented
        a, b = self.c, other.c
        return Cyc._raw((a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if not isinstance(other, Cyc):
            if isinstance(other, (int, Fraction)):
                f = Fraction(other)
                a = self.c
                return Cyc._raw((a[0] * f, a[1] * f, a[2] * f, a[3] * f))
            return NotImplemented
        a0, a1, a2, a3 = self.c
        b0, b1, b2, b3 = other.c
        # rational factors are the common case and need no reduction
        if not (b1 or b2 or b3):
            return Cyc._raw((a0 * b0, a1 * b0, a2 * b0, a3 * b0))
        if not (a1 or a2 or a3):
            return Cyc._raw((a0 * b0, a0 * b1, a0 * b2, a0 * b3))
        # coefficients of z^0..z^6 before reduction
        p0 = a0 * b0
        p1 = a0 * b1 + a1 * b0
        p2 = a0 * b2 + a1 * b1 + a2 * b0
        p3 = a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0
        p4 = a1 * b3 + a2 * b2 + a3 * b1
        p5 = a2 * b3 + a3 * b2
        p6 = a3 * b3
        # z^4 = z^2 - 1, z^5 = z^3 - z, z^6 = -1
        return Cyc._raw((p0 - p4 - p6, p1 - p5, p2 + p4, p3 + p5))

    __rmul__ = __mul__

    def conj(self) -> Cyc:
        a, b, c, d = self.c
        return Cyc._raw((a + c, b, -c, -b - d))

    def _real_norm(self):
        # x * conj(x) = p + q*sqrt(3), with sqrt(3) = 2z - z^3
        n = self * self.conj()
        a, b, c, d = n.c
        return a, -d

    def inverse(self) -> Cyc:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta12)")
        if self.is_rational():
            return Cyc._raw((1 / self.c[0], Fraction(0), Fraction(0), Fraction(0)))
        p, q = self._real_norm()
        den = p * p - 3 * q * q
        # (p + q sqrt3)^-1 = (p - q sqrt3) / den ; sqrt3 -> (0, 2, 0, -1)
        inv_n = Cyc._raw((p / den, -2 * q / den, Fraction(0), q / den))
        return self.conj() * inv_n

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(1, 1) / Fraction(other)
            return self * f
        if not isinstance(other, Cyc):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Cyc.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison / hashing -------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Cyc):
            return self.c == other.c
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.c[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.c[0])
            else:
                self._hash = hash(self.c)
        return self._hash

    # -- numerics --------------------------------------------------------
    def __complex__(self):
        a, b, c, d = (float(x) for x in self.c)
        z = _Z_NUM
        return a + z * (b + z * (c + z * d))

    def approx(self) -> tuple[float, float]:
        """Floating value (real, imag) at z = exp(pi*i/6)."""
        # Exact real/imag parts lie in Q(sqrt3): evaluate them separately to
        # avoid cancellation between basis terms.
        re, im = self.real_imag_parts()
        return _q_sqrt3_float(*re), _q_sqrt3_float(*im)

    def real_imag_parts(self):
        """Return (p, q), (r, s) with self = p + q*sqrt3 + i*(r + s*sqrt3)."""
        a, b, c, d = self.c
        # z = sqrt3/2 + i/2, z^2 = 1/2 + i sqrt3/2, z^3 = i
        p = a + c / 2
        q = b / 2
        r = b / 2 + d
        s = c / 2
        return (p, q), (r, s)

    # -- formatting ------------------------------------------------------
    def to_basis(self):
        """Coordinates (a, b, c, d) with self = a + b*z3 + c*i + d*i*z3."""
        a0, a1, a2, a3 = self.c
        return a0 + a2, a2, a3, -a1

    @classmethod
    def from_basis(cls, a, b, c, d) -> Cyc:
        return (Cyc(a) + Cyc(b) * Z3 + Cyc(c) * I + Cyc(d) * I * Z3)

    def __str__(self):
        terms = []
        for coeff, sym in zip(self.to_basis(), ("", "z3", "i", "i*z3")):
            if coeff == 0:
                continue
            if sym == "":
                body = str(abs(coeff))
            elif abs(coeff) == 1:
                body = sym
            else:
                body = f"{abs(coeff)}*{sym}"
            terms.append(("-" if coeff < 0 else "+", body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Cyc({str(self)!r})"


def _q_sqrt3_float(p: Fraction, q: Fraction) -> float:
    if q == 0:
        return float(p)
    val = float(p) + float(q) * math.sqrt(3)
    if p and q and (p > 0) != (q > 0):
        # p + q sqrt3 = (p^2 - 3q^2) / (p - q sqrt3), no cancellation
        den = float(p) - float(q) * math.sqrt(3)
        return float(p * p - 3 * q * q) / den
    return val


ZERO = Cyc()
ONE = Cyc(1)
Z12 = Cyc(0, 1, 0, 0)
I = Cyc(0, 0, 0, 1)
Z3 = Cyc(-1, 0, 1, 0)
SQRT3 = Cyc(0, 2, 0, -1)


def conj(x) -> Cyc:
    """Complex conjugation, the automorphism z -> z^-1."""
    return Cyc.coerce(x).conj()


def approx(x) -> tuple[float, float]:
    return Cyc.coerce(x).approx()


_SYMBOLS = {"z3": Z3, "i": I, "z12": Z12, "sqrt3": SQRT3, "s3": SQRT3}


def parse_scalar(text: str) -> Cyc:
    """Parse scalar syntax such as ``1/2 + 2*z3 - i``.

    Accepts integer and ``p/q`` literals, the symbols ``z3``, ``i``
    (plus ``z12`` and ``sqrt3``), the operators ``+ - * /`` and ``**`` with an
    integer exponent, and parentheses.
    """
    if not isinstance(text, str):
        return Cyc.coerce(text)
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"malformed scalar {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return Cyc(node.value)
        if isinstance(node, ast.Name):
            try:
                return _SYMBOLS[node.id]
            except KeyError:
                raise ParseError(f"unknown symbol {node.id!r} in {text!r}") from None
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = ev(node.operand)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = node.right
                if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                    exp_val = -_int_const(exp.operand)
                else:
                    exp_val = _int_const(exp)
                return ev(node.left) ** exp_val
            left, right = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if right.is_zero():
                    raise ParseError(f"division by zero in {text!r}")
                return left / right
        raise ParseError(f"unsupported syntax in scalar {text!r}")

    def _int_const(node):
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        raise ParseError(f"exponent must be an integer literal in {text!r}")

    return ev(tree)


def _real_candidate(t: float, max_den: int, tol: float):
    # p or p*sqrt3 with the smaller denominator wins
    best = None
    for factor, unit in ((1.0, ONE), (math.sqrt(3), SQRT3)):
        q = Fraction(t / factor).limit_denominator(max_den)
        if abs(float(q) * factor - t) <= tol:
            if best is None or q.denominator < best[0].denominator:
                best = (q, unit)
    return None if best is None else Cyc(best[0]) * best[1]


def complex_to_cyc(value: complex, max_den: int = 10**6, tol: float = 1e-9):
    """Best-effort exact candidate for a float, with parts in Q or Q*sqrt3.

    Returns None when no such candidate reproduces the value within ``tol``.
    """
    scale = tol * max(1.0, abs(value))
    for den in (1000, max_den):
        re = _real_candidate(value.real, den, scale)
        im = _real_candidate(value.imag, den, scale)
        if re is not None and im is not None:
            return re + im * I
    return None


def root_of_unity(k: int, n: int = 12) -> Cyc:
    """exp(2*pi*i*k/n) for n dividing 12."""
    if 12 % n:
        raise ValueError("only roots of unity of order dividing 12 are available")
    return Z12 ** ((k * (12 // n)) % 12)
