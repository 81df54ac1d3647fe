"""The purely trigonal quartic curve y^3 = x^4 + l3 x^3 + l6 x^2 + l9 x + l12.

Also carries the nine-parameter generalization
f(x,y) = y^3 - (l1 x + l4) y^2 - (l2 x^2 + l5 x + l8) y - (x^4 + ... + l12)
for evaluation and discriminant support; sigma and identity machinery is
built only for the purely trigonal case.

Sato weights: u1,u2,u3 -> 5,2,1; lj -> -j; x -> -3, y -> -4.  The swapped
assignment (x: -4, y: -3) fails to make f homogeneous and is reported by
homogeneity_report for reference.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .coefficients import LAMBDA_NAMES, LamPoly, QZeta, zeta_pow
from .errors import SingularCurveError
from .series import WeightedSeries, zeta_scale

SATO_WEIGHTS = {
    "u1": 5,
    "u2": 2,
    "u3": 1,
    "x": -3,
    "y": -4,
    "z": -3,
    "w": -4,
}

# weights printed with x and y swapped; kept only to document that the
# assignment fails homogeneity
SWAPPED_XY_WEIGHTS = dict(SATO_WEIGHTS, x=-4, y=-3, z=-4, w=-3)


def weight_of(var, table=None):
    table = table or SATO_WEIGHTS
    if var in table:
        return table[var]
    if var[0] in ("t", "s"):  # jet parameters: t, t1, t2, ..., s
        return 1
    raise KeyError(f"no Sato weight for variable {var!r}")


def make_universe(names, table=None):
    names = tuple(names)
    return names, tuple(weight_of(v, table) for v in names)


def _coerce(v):
    if isinstance(v, (LamPoly, Fraction)):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise TypeError(f"curve coefficient must be exact, got {v!r}")


@dataclass(frozen=True)
class TrigonalCurve:
    lambda3: object = Fraction(0)
    lambda6: object = Fraction(0)
    lambda9: object = Fraction(0)
    lambda12: object = Fraction(0)
    # general-model coefficients; must vanish for sigma/identity features
    lambda1: object = Fraction(0)
    lambda2: object = Fraction(0)
    lambda4: object = Fraction(0)
    lambda5: object = Fraction(0)
    lambda8: object = Fraction(0)

    def __post_init__(self):
        for name in (
            "lambda3",
            "lambda6",
            "lambda9",
            "lambda12",
            "lambda1",
            "lambda2",
            "lambda4",
            "lambda5",
            "lambda8",
        ):
            object.__setattr__(self, name, _coerce(getattr(self, name)))

    # -- constructors ------------------------------------------------
    @staticmethod
    def symbolic():
        """Curve with l3, l6, l9, l12 as indeterminates."""
        return TrigonalCurve(
            LamPoly.var("l3"), LamPoly.var("l6"), LamPoly.var("l9"), LamPoly.var("l12")
        )

    @staticmethod
    def from_json_obj(obj):
        return TrigonalCurve(
            lambda3=Fraction(obj.get("lambda3", "0")),
            lambda6=Fraction(obj.get("lambda6", "0")),
            lambda9=Fraction(obj.get("lambda9", "0")),
            lambda12=Fraction(obj.get("lambda12", "0")),
        )

    @staticmethod
    def load(path):
        with open(path) as fh:
            return TrigonalCurve.from_json_obj(json.load(fh))

    def to_json_obj(self):
        return {
            "lambda3": str(self.lambda3),
            "lambda6": str(self.lambda6),
            "lambda9": str(self.lambda9),
            "lambda12": str(self.lambda12),
        }

    # -- queries -------------------------------------------------------
    def is_purely_trigonal(self):
        return not any(
            (self.lambda1, self.lambda2, self.lambda4, self.lambda5, self.lambda8)
        )

    def is_symbolic(self):
        return any(
            isinstance(v, LamPoly)
            for v in (self.lambda3, self.lambda6, self.lambda9, self.lambda12)
        )

    def require_purely_trigonal(self):
        if not self.is_purely_trigonal():
            raise ValueError(
                "operation requires the purely trigonal curve (l1=l2=l4=l5=l8=0)"
            )

    def lambda_values(self):
        """Mapping l3/l6/l9/l12 -> exact values (for LamPoly evaluation)."""
        return {
            "l3": self.lambda3,
            "l6": self.lambda6,
            "l9": self.lambda9,
            "l12": self.lambda12,
        }

    def lambda_complex(self):
        return {k: complex(v) for k, v in self.lambda_values().items()}

    def quartic_coeffs(self):
        """Coefficients of g(x), descending: [1, l3, l6, l9, l12]."""
        return [Fraction(1), self.lambda3, self.lambda6, self.lambda9, self.lambda12]


def _mul(c, v):
    """coefficient * (scalar or series), skipping exact zeros."""
    if isinstance(v, WeightedSeries):
        return v.scale(c)
    return c * v


def evaluate_f(curve, x, y):
    """f(x, y) for the general nine-parameter model; scalars or series."""
    y2 = y * y
    y3 = y2 * y
    x2 = x * x
    x3 = x2 * x
    x4 = x3 * x
    out = (
        y3
        - _mul(curve.lambda1, x * y2)
        - _mul(curve.lambda4, y2)
        - _mul(curve.lambda2, x2 * y)
        - _mul(curve.lambda5, x * y)
        - _mul(curve.lambda8, y)
        - x4
        - _mul(curve.lambda3, x3)
        - _mul(curve.lambda6, x2)
        - _mul(curve.lambda9, x)
    )
    if isinstance(out, WeightedSeries):
        return out - WeightedSeries.const(out.vars, out.weights, curve.lambda12)
    return out - curve.lambda12


def partials_f(curve, x, y):
    """(df/dx, df/dy) for the general model."""
    y2 = y * y
    x2 = x * x
    x3 = x2 * x
    fx = (
        -_mul(curve.lambda1, y2)
        - _mul(2 * curve.lambda2, x * y)
        - _mul(curve.lambda5, y)
        - _mul(Fraction(4), x3)
        - _mul(3 * curve.lambda3, x2)
        - _mul(2 * curve.lambda6, x)
    )
    if isinstance(fx, WeightedSeries):
        fx = fx - WeightedSeries.const(fx.vars, fx.weights, curve.lambda9)
    else:
        fx = fx - curve.lambda9
    fy = (
        _mul(Fraction(3), y2)
        - _mul(2 * curve.lambda1, x * y)
        - _mul(2 * curve.lambda4, y)
        - _mul(curve.lambda2, x2)
        - _mul(curve.lambda5, x)
    )
    if isinstance(fy, WeightedSeries):
        fy = fy - WeightedSeries.const(fy.vars, fy.weights, curve.lambda8)
    else:
        fy = fy - curve.lambda8
    return fx, fy


def f_series(curve):
    """f(x, y) as an exact polynomial series in (x, y)."""
    vars_, wts = make_universe(("x", "y"))
    x = WeightedSeries.variable(vars_, wts, "x")
    y = WeightedSeries.variable(vars_, wts, "y")
    return evaluate_f(curve, x, y)


# ---------------------------------------------------------------------------
# resultants / discriminant
# ---------------------------------------------------------------------------

def _det_laplace(rows):
    """Determinant over a commutative ring, division-free.

    Laplace expansion along the first column with memoization on
    (row_start, frozenset of live columns); fine for the 7x7 Sylvester
    matrices used here.
    """
    n = len(rows)
    cache = {}

    def go(i, cols):
        if i == n:
            return Fraction(1)
        key = (i, cols)
        if key in cache:
            return cache[key]
        total = Fraction(0)
        sign = 1
        for idx, j in enumerate(cols):
            a = rows[i][j]
            if not (isinstance(a, (int, Fraction)) and a == 0) and a:
                sub = go(i + 1, cols[:idx] + cols[idx + 1 :])
                term = a * sub
                total = total + (term if sign > 0 else -term)
            sign = -sign
        cache[key] = total
        return total

    return go(0, tuple(range(n)))


def sylvester_matrix(p, q):
    """Sylvester matrix of two coefficient lists (descending powers)."""
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + list(p) + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + list(q) + [Fraction(0)] * (size - n - 1 - i))
    return rows


def resultant(p, q):
    return _det_laplace(sylvester_matrix(p, q))


def discriminant(curve):
    """disc_x(g) = Res_x(g, g') / lc(g) for the quartic g; zero iff g has a
    repeated root iff the affine curve is singular."""
    curve.require_purely_trigonal()
    g = curve.quartic_coeffs()
    dg = [4 * g[0], 3 * g[1], 2 * g[2], 1 * g[3]]
    res = resultant(g, dg)
    # monic quartic: disc = (-1)^(4*3/2) Res / lc = Res
    return res


def assert_nonsingular(curve):
    if not discriminant(curve):
        raise SingularCurveError("discriminant vanishes; curve is singular")


# ---------------------------------------------------------------------------
# order-3 automorphism action and grading
# ---------------------------------------------------------------------------

def zeta_act(j, u):
    """[zeta^j] u = (zeta^j u1, zeta^j u2, zeta^(2j) u3).

    Components may be exact scalars, complex numbers, or series.
    """
    j %= 3
    if j == 0:
        return tuple(u)
    zj, z2j = zeta_pow(j), zeta_pow(2 * j)
    out = []
    for comp, factor in zip(u, (zj, zj, z2j)):
        if isinstance(comp, WeightedSeries):
            out.append(comp.scale(factor))
        elif isinstance(comp, complex) or isinstance(comp, float):
            out.append(complex(comp) * factor.to_complex())
        else:
            out.append(factor * comp)
    return tuple(out)


def zeta_act_series(j, series):
    """Action on a series in (u1, u2, u3): the monomial u1^a u2^b u3^c picks
    up zeta^(j(a+b+2c))."""
    i1 = series.vars.index("u1")
    i2 = series.vars.index("u2")
    i3 = series.vars.index("u3")
    return zeta_scale(series, j, lambda e: e[i1] + e[i2] + 2 * e[i3])


def sato_weight(expr, table=None):
    """Common Sato weight of all terms of expr, or None if inhomogeneous.

    Accepts WeightedSeries (variable weights plus lambda coefficient
    weights), LamPoly, or exact scalars (weight 0).
    """
    if isinstance(expr, WeightedSeries):
        if table is None:
            return expr.sato_weight()
        reweighted = WeightedSeries(
            expr.vars, tuple(table[v] for v in expr.vars), expr.terms, None
        )
        return reweighted.sato_weight()
    if isinstance(expr, LamPoly):
        return expr.weight()
    if isinstance(expr, (int, Fraction, QZeta)):
        return 0 if expr else None
    raise TypeError(f"cannot grade {expr!r}")


def homogeneity_report(curve):
    """Weight diagnostics for f under the adopted table and the swapped one."""
    f = f_series(curve if curve.is_symbolic() else TrigonalCurve.symbolic())
    adopted = sato_weight(f)
    swapped = sato_weight(f, SWAPPED_XY_WEIGHTS)
    d = discriminant(TrigonalCurve.symbolic())
    return {
        "f_weight_adopted_table": adopted,  # -12
        "f_weight_swapped_xy_table": swapped,  # None: assignment fails
        "discriminant_weight": d.weight(),  # -36
    }
