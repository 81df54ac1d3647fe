"""Exact coefficient arithmetic: rationals, rationals with a primitive cube
root of unity adjoined, and polynomials in the curve parameters l3, l6, l9,
l12.

Everything here is immutable and exact.  Series code treats coefficients
generically through the arithmetic dunders plus the helpers at the bottom
(`coef_is_zero`, `coef_weight`, `coef_to_complex`, `coef_str`).
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from numbers import Rational

LAMBDA_NAMES = ("l3", "l6", "l9", "l12")
LAMBDA_WEIGHTS = (-3, -6, -9, -12)

_ZETA_COMPLEX = cmath.exp(2j * cmath.pi / 3)


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to Fraction")


class QZeta:
    """Element a + b*zeta of Q(zeta), zeta a primitive cube root of unity.

    Reduction rule: zeta^2 = -1 - zeta.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", _as_fraction(a))
        object.__setattr__(self, "b", _as_fraction(b))

    def __setattr__(self, *_):
        raise AttributeError("QZeta is immutable")

    # -- queries ---------------------------------------------------------
    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self):
        return not self.b

    def __eq__(self, other):
        if isinstance(other, QZeta):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Rational)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b))

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, QZeta):
            return QZeta(self.a + other.a, self.b + other.b)
        if isinstance(other, (int, Rational)):
            return QZeta(self.a + other, self.b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return QZeta(-self.a, -self.b)

    def __sub__(self, other):
        if isinstance(other, (QZeta, int, Rational)):
            return self + (-other if isinstance(other, QZeta) else QZeta(-_as_fraction(other)))
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Rational)):
            return QZeta(_as_fraction(other) - self.a, -self.b)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, QZeta):
            # (a + b z)(c + d z) = ac - bd + (ad + bc - bd) z
            a, b, c, d = self.a, self.b, other.a, other.b
            bd = b * d
            return QZeta(a * c - bd, a * d + b * c - bd)
        if isinstance(other, (int, Rational)):
            return QZeta(self.a * other, self.b * other)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self):
        # norm of a + b z is a^2 - ab + b^2; conjugate is a + b zbar = (a-b) - b z
        n = self.a * self.a - self.a * self.b + self.b * self.b
        if not n:
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        return QZeta((self.a - self.b) / n, -self.b / n)

    def __truediv__(self, other):
        if isinstance(other, QZeta):
            return self * other.inverse()
        if isinstance(other, (int, Rational)):
            inv = Fraction(1, 1) / _as_fraction(other)
            return QZeta(self.a * inv, self.b * inv)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Rational)):
            return QZeta(other) * self.inverse()
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = QZeta(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- conversions -----------------------------------------------------
    def conjugate(self):
        return QZeta(self.a - self.b, -self.b)

    def to_complex(self):
        return float(self.a) + float(self.b) * _ZETA_COMPLEX

    def __repr__(self):
        return f"QZeta({self.a!r}, {self.b!r})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}*zeta" if self.b != 1 else "zeta"
        sign = "+" if self.b > 0 else "-"
        mag = abs(self.b)
        zterm = "zeta" if mag == 1 else f"{mag}*zeta"
        return f"{self.a}{sign}{zterm}"


ZETA = QZeta(0, 1)


def zeta_pow(j):
    """zeta^j reduced into {1, zeta, -1-zeta}."""
    j %= 3
    if j == 0:
        return QZeta(1)
    if j == 1:
        return ZETA
    return QZeta(-1, -1)


class LamPoly:
    """Sparse polynomial in l3, l6, l9, l12 with Fraction or QZeta values.

    Keys are exponent 4-tuples aligned with LAMBDA_NAMES.  The Sato weight
    of a monomial is -3*k3 - 6*k6 - 9*k9 - 12*k12.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for exps, c in terms.items():
                if isinstance(c, int):
                    c = Fraction(c)
                if c:
                    cleaned[tuple(exps)] = c
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, *_):
        raise AttributeError("LamPoly is immutable")

    # -- constructors ----------------------------------------------------
    @staticmethod
    def const(c):
        if isinstance(c, LamPoly):
            return c
        return LamPoly({(0, 0, 0, 0): c})

    @staticmethod
    def var(name):
        i = LAMBDA_NAMES.index(name)
        e = [0, 0, 0, 0]
        e[i] = 1
        return LamPoly({tuple(e): Fraction(1)})

    # -- queries ---------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, LamPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Rational, QZeta)):
            if not other:
                return not self.terms
            return self.terms == {(0, 0, 0, 0): other} or (
                len(self.terms) == 1 and self.terms.get((0, 0, 0, 0)) == other
            )
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_constant(self):
        return not self.terms or set(self.terms) == {(0, 0, 0, 0)}

    def constant_value(self):
        return self.terms.get((0, 0, 0, 0), Fraction(0))

    def weight(self):
        """Common Sato weight of all monomials, or None if inhomogeneous.

        The zero polynomial returns None.
        """
        w = None
        for exps in self.terms:
            mw = sum(k * lw for k, lw in zip(exps, LAMBDA_WEIGHTS))
            if w is None:
                w = mw
            elif w != mw:
                return None
        return w

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Rational, QZeta)):
            other = LamPoly.const(other)
        if not isinstance(other, LamPoly):
            return NotImplemented
        out = dict(self.terms)
        for exps, c in other.terms.items():
            s = out.get(exps, 0) + c
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return LamPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LamPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Rational, QZeta)):
            other = LamPoly.const(other)
        if not isinstance(other, LamPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational, QZeta)):
            if not other:
                return LamPoly()
            return LamPoly({e: c * other for e, c in self.terms.items()})
        if not isinstance(other, LamPoly):
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3])
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LamPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = LamPoly.const(Fraction(1))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self * (Fraction(1, 1) / _as_fraction(other))
        if isinstance(other, QZeta):
            return self * other.inverse()
        if isinstance(other, LamPoly) and other.is_constant():
            c = other.constant_value()
            return self / c if not isinstance(c, QZeta) else self * c.inverse()
        return NotImplemented

    # -- conversions -----------------------------------------------------
    def evaluate(self, values):
        """Evaluate at a mapping name -> Fraction/QZeta.  Stays exact."""
        out = Fraction(0)
        vals = [values[n] for n in LAMBDA_NAMES]
        for exps, c in self.terms.items():
            term = c
            for v, k in zip(vals, exps):
                for _ in range(k):
                    term = term * v
            out = out + term
        return out

    def to_complex(self, values):
        """Evaluate at a mapping name -> complex."""
        out = 0j
        vals = [complex(values[n]) for n in LAMBDA_NAMES]
        for exps, c in self.terms.items():
            term = coef_to_complex(c)
            for v, k in zip(vals, exps):
                term *= v**k
            out += term
        return out

    def __repr__(self):
        return f"LamPoly({self.terms!r})"

    def __str__(self):
        return coef_str(self)


def _monomial_str(exps):
    parts = []
    for name, k in zip(LAMBDA_NAMES, exps):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _scalar_str(c):
    if isinstance(c, QZeta):
        s = str(c)
        return f"({s})" if ("+" in s[1:] or "-" in s[1:]) else s
    return str(c)


def coef_str(c):
    """Canonical string for any coefficient (deterministic term order)."""
    if isinstance(c, LamPoly):
        if not c.terms:
            return "0"
        keys = sorted(
            c.terms,
            key=lambda e: (-sum(k * lw for k, lw in zip(e, LAMBDA_WEIGHTS)), e),
        )
        parts = []
        for e in keys:
            mono = _monomial_str(e)
            val = c.terms[e]
            vs = _scalar_str(val)
            if mono:
                if vs == "1":
                    parts.append(mono)
                elif vs == "-1":
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{vs}*{mono}")
            else:
                parts.append(vs)
        out = parts[0]
        for p in parts[1:]:
            out += f" + {p}" if not p.startswith("-") else f" - {p[1:]}"
        return out
    return _scalar_str(c)


def coef_is_zero(c):
    return not c


def coef_weight(c):
    """Sato weight contributed by a coefficient (0 for scalars)."""
    if isinstance(c, LamPoly):
        return c.weight()
    return 0 if c else None


def coef_to_complex(c, lam_values=None):
    if isinstance(c, LamPoly):
        if lam_values is None:
            raise ValueError("lambda values required to evaluate LamPoly")
        return c.to_complex(lam_values)
    if isinstance(c, QZeta):
        return c.to_complex()
    return complex(c)


def coef_conjugate_zeta(c):
    """Apply the Galois conjugation zeta -> zeta^2 to a coefficient."""
    if isinstance(c, QZeta):
        return c.conjugate()
    if isinstance(c, LamPoly):
        return LamPoly({e: coef_conjugate_zeta(v) for e, v in c.terms.items()})
    return c
