"""Exact truncated multivariate Laurent series graded by Sato weight.

A WeightedSeries is a sparse map from integer exponent vectors to exact
coefficients (Fraction, QZeta, or LamPoly).  Each variable carries an
integer Sato weight; the *variable weight* of a term is sum(exp * weight).
Truncation is tracked explicitly: ``cutoff`` means "all terms of variable
weight <= cutoff are present and reliable"; ``cutoff=None`` marks an exact
(polynomial) object.  Arithmetic propagates the weakest reliable cutoff
rather than padding with zeros, so a zero result of a subtraction is a
proof of equality through the reported cutoff.

For series in pure jet parameters (weight-1 variables) the variable weight
is just the total degree.  Negative exponents are allowed throughout.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as _iproduct

from .coefficients import (
    LamPoly,
    QZeta,
    coef_is_zero,
    coef_str,
    coef_to_complex,
    coef_weight,
    zeta_pow,
)
from .errors import (
    IncompatibleSeriesError,
    LeadingTermError,
    ResidueError,
    ReversionError,
    RootBranchError,
)

_INF = float("inf")


def _min_cut(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _cut_add(cut, shift):
    """cutoff + weight shift, None acting as +infinity."""
    if cut is None:
        return None
    if shift == _INF:
        return None
    return cut + shift


class WeightedSeries:
    __slots__ = ("vars", "weights", "terms", "cutoff")

    def __init__(self, vars, weights, terms=None, cutoff=None):
        vars = tuple(vars)
        if isinstance(weights, dict):
            weights = tuple(weights[v] for v in vars)
        else:
            weights = tuple(weights)
        if len(weights) != len(vars):
            raise ValueError("weights must align with vars")
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "weights", weights)
        cleaned = {}
        if terms:
            for exps, c in terms.items():
                if isinstance(c, int):
                    c = Fraction(c)
                if coef_is_zero(c):
                    continue
                exps = tuple(exps)
                if len(exps) != len(vars):
                    raise ValueError("exponent length mismatch")
                if cutoff is not None and self._wt(exps) > cutoff:
                    continue
                cleaned[exps] = c
        object.__setattr__(self, "terms", cleaned)
        object.__setattr__(self, "cutoff", cutoff)

    def __setattr__(self, *_):
        raise AttributeError("WeightedSeries is immutable")

    # ------------------------------------------------------------------
    # basic structure
    # ------------------------------------------------------------------
    def _wt(self, exps):
        return sum(e * w for e, w in zip(exps, self.weights))

    def term_weight(self, exps):
        return self._wt(exps)

    def universe(self):
        return self.vars, self.weights

    def same_universe(self, other):
        return self.vars == other.vars and self.weights == other.weights

    def _require_universe(self, other):
        if not self.same_universe(other):
            raise IncompatibleSeriesError(
                f"universe mismatch: {self.vars}/{self.weights} vs "
                f"{other.vars}/{other.weights}"
            )

    def is_zero(self):
        return not self.terms

    def order(self):
        """Minimal variable weight among terms (inf for the zero series)."""
        if not self.terms:
            return _INF
        return min(self._wt(e) for e in self.terms)

    def max_weight(self):
        if not self.terms:
            return -_INF
        return max(self._wt(e) for e in self.terms)

    def sorted_terms(self):
        """Canonical graded-lex iteration: (variable weight, exponents)."""
        return sorted(self.terms.items(), key=lambda kv: (self._wt(kv[0]), kv[0]))

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), Fraction(0))

    def leading(self):
        """(exps, coef) of the minimal-weight term; graded-lex tie break."""
        if not self.terms:
            raise LeadingTermError("zero series has no leading term")
        return min(self.terms.items(), key=lambda kv: (self._wt(kv[0]), kv[0]))

    def leading_is_monomial(self):
        if not self.terms:
            return False
        w0 = self.order()
        return sum(1 for e in self.terms if self._wt(e) == w0) == 1

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------
    @staticmethod
    def zero(vars, weights, cutoff=None):
        return WeightedSeries(vars, weights, {}, cutoff)

    @staticmethod
    def const(vars, weights, c, cutoff=None):
        z = tuple(0 for _ in vars)
        return WeightedSeries(vars, weights, {z: c}, cutoff)

    @staticmethod
    def monomial(vars, weights, exps, c=1, cutoff=None):
        return WeightedSeries(vars, weights, {tuple(exps): c}, cutoff)

    @staticmethod
    def variable(vars, weights, name, cutoff=None):
        i = tuple(vars).index(name)
        exps = tuple(1 if j == i else 0 for j in range(len(vars)))
        return WeightedSeries(vars, weights, {exps: Fraction(1)}, cutoff)

    def with_cutoff(self, cutoff):
        return WeightedSeries(self.vars, self.weights, self.terms, cutoff)

    # ------------------------------------------------------------------
    # ring operations
    # ------------------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction, QZeta, LamPoly)):
            other = WeightedSeries.const(self.vars, self.weights, other)
        if not isinstance(other, WeightedSeries):
            return NotImplemented
        self._require_universe(other)
        cut = _min_cut(self.cutoff, other.cutoff)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if coef_is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return WeightedSeries(self.vars, self.weights, out, cut)

    __radd__ = __add__

    def __neg__(self):
        return WeightedSeries(
            self.vars, self.weights, {e: -c for e, c in self.terms.items()}, self.cutoff
        )

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, QZeta, LamPoly)):
            other = WeightedSeries.const(self.vars, self.weights, other)
        if not isinstance(other, WeightedSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        if coef_is_zero(c):
            return WeightedSeries.zero(self.vars, self.weights, self.cutoff)
        return WeightedSeries(
            self.vars, self.weights, {e: c * v for e, v in self.terms.items()}, self.cutoff
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QZeta, LamPoly)):
            return self.scale(other)
        if not isinstance(other, WeightedSeries):
            return NotImplemented
        self._require_universe(other)
        cut = _min_cut(_cut_add(self.cutoff, other.order()), _cut_add(other.cutoff, self.order()))
        out = {}
        if len(self.terms) > len(other.terms):
            big, small = self.terms, other.terms
        else:
            big, small = other.terms, self.terms
        w = self.weights
        for e2, c2 in small.items():
            for e1, c1 in big.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if cut is not None and sum(x * y for x, y in zip(e, w)) > cut:
                    continue
                s = out.get(e, 0) + c1 * c2
                if coef_is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return WeightedSeries(self.vars, self.weights, out, cut)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.invert() ** (-k)
        out = WeightedSeries.const(self.vars, self.weights, Fraction(1), None)
        base = self
        first = True
        while k:
            if k & 1:
                out = base if first else out * base
                first = False
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, WeightedSeries):
            return self.same_universe(other) and self.terms == other.terms
        return NotImplemented

    # ------------------------------------------------------------------
    # inversion, roots, calculus
    # ------------------------------------------------------------------
    def invert(self):
        """Multiplicative inverse of c*m*(1 + h), ord h > 0.

        Exact when h == 0 (pure monomial); otherwise requires a finite
        cutoff to bound the geometric series.
        """
        if not self.terms:
            raise LeadingTermError("cannot invert the zero series")
        if not self.leading_is_monomial():
            raise LeadingTermError(
                "lowest-weight part is not a single monomial; cross-multiply instead"
            )
        (e0, c0) = self.leading()
        if isinstance(c0, LamPoly):
            if not c0.is_constant():
                raise LeadingTermError("leading coefficient is a non-constant lambda-polynomial")
            c0v = c0.constant_value()
            inv_c0 = LamPoly.const(
                c0v.inverse() if isinstance(c0v, QZeta) else Fraction(1, 1) / c0v
            )
        elif isinstance(c0, QZeta):
            inv_c0 = c0.inverse()
        else:
            inv_c0 = Fraction(1, 1) / c0
        inv_mono = WeightedSeries.monomial(
            self.vars, self.weights, tuple(-e for e in e0), inv_c0
        )
        h = (self * inv_mono) - 1  # ord >= 1 in weight
        if h.is_zero():
            return inv_mono.with_cutoff(
                None if self.cutoff is None else self.cutoff - 2 * self._wt(e0)
            )
        if self.cutoff is None:
            raise LeadingTermError(
                "exact inverse of a non-monomial series is infinite; set a cutoff"
            )
        # geometric series sum (-h)^k, truncation handled by cutoff tracking
        rel = self.cutoff - self._wt(e0)  # reliable weight span of 1 + h
        acc = WeightedSeries.const(self.vars, self.weights, Fraction(1), rel)
        term = acc
        hord = h.order()
        k = 1
        while k * hord <= rel:
            term = (term * h).scale(Fraction(-1))
            acc = acc + term
            k += 1
        return (acc * inv_mono).with_cutoff(self.cutoff - 2 * self._wt(e0))

    def _leading_root(self, n, c0):
        """Exact principal n-th root of a Fraction leading coefficient."""
        if isinstance(c0, LamPoly):
            if not c0.is_constant():
                raise RootBranchError("leading coefficient must be constant")
            c0 = c0.constant_value()
        if isinstance(c0, QZeta):
            if not c0.is_rational():
                raise RootBranchError("leading coefficient must be rational")
            c0 = c0.a
        c0 = Fraction(c0)
        sign = 1
        if c0 < 0:
            if n % 2 == 0:
                raise RootBranchError(f"negative leading coefficient has no rational {n}-th root")
            sign, c0 = -1, -c0
        num, den = c0.numerator, c0.denominator
        rn = round(num ** (1.0 / n)) if num > 1 else num
        rd = round(den ** (1.0 / n)) if den > 1 else den
        for cand in (rn - 1, rn, rn + 1):
            if cand > 0 and cand**n == num:
                rn = cand
                break
        else:
            raise RootBranchError(f"{num} is not an exact {n}-th power")
        for cand in (rd - 1, rd, rd + 1):
            if cand > 0 and cand**n == den:
                rd = cand
                break
        else:
            raise RootBranchError(f"{den} is not an exact {n}-th power")
        return sign * Fraction(rn, rd)

    def nth_root(self, n, branch=0):
        """Principal n-th root of c*m^n*(1 + h); optional root-of-unity branch.

        branch != 0 is supported for n in (2, 3): the result is scaled by
        (-1)^branch resp. zeta^branch.
        """
        if n <= 0:
            raise ValueError("n must be positive")
        if not self.terms:
            raise RootBranchError("zero series has no distinguished root")
        if not self.leading_is_monomial():
            raise RootBranchError("lowest-weight part is not a single monomial")
        e0, c0 = self.leading()
        if any(e % n for e in e0):
            raise RootBranchError(f"leading monomial exponents {e0} not divisible by {n}")
        root_c = self._leading_root(n, c0)
        root_mono = WeightedSeries.monomial(
            self.vars, self.weights, tuple(e // n for e in e0), root_c
        )
        inv_lead = WeightedSeries.monomial(
            self.vars, self.weights, tuple(-e for e in e0), Fraction(1, 1) / Fraction(c0)
            if not isinstance(c0, (QZeta, LamPoly))
            else Fraction(1),
        )
        if isinstance(c0, (QZeta, LamPoly)):
            # only reachable when c0 reduced to a Fraction in _leading_root
            inv_lead = WeightedSeries.monomial(
                self.vars, self.weights, tuple(-e for e in e0), Fraction(1, 1) / root_c**n
            )
        h = (self * inv_lead) - 1
        if h.is_zero():
            out = root_mono.with_cutoff(
                None
                if self.cutoff is None
                else self.cutoff - self._wt(e0) + self._wt(tuple(e // n for e in e0))
            )
        else:
            if self.cutoff is None:
                raise RootBranchError("exact root of a non-monomial series is infinite; set a cutoff")
            rel = self.cutoff - self._wt(e0)
            # binomial series (1+h)^(1/n) = sum C(1/n, k) h^k
            alpha = Fraction(1, n)
            acc = WeightedSeries.const(self.vars, self.weights, Fraction(1), rel)
            hpow = WeightedSeries.const(self.vars, self.weights, Fraction(1), rel)
            coef = Fraction(1)
            hord = h.order()
            k = 1
            while k * hord <= rel:
                coef = coef * (alpha - (k - 1)) / k
                hpow = hpow * h
                acc = acc + hpow.scale(coef)
                k += 1
            out = acc * root_mono
        if branch:
            if n == 2:
                out = out.scale(Fraction(-1) if branch % 2 else Fraction(1))
            elif n == 3:
                out = out.scale(zeta_pow(branch))
            else:
                raise RootBranchError("branch selection implemented for n in (2, 3)")
        return out

    def differentiate_in(self, var):
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k == 0:
                continue
            ne = list(e)
            ne[i] = k - 1
            out[tuple(ne)] = c * k
        cut = None if self.cutoff is None else self.cutoff - self.weights[i]
        return WeightedSeries(self.vars, self.weights, out, cut)

    def integrate_in(self, var):
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k == -1:
                raise ResidueError(f"residue term (exponent -1 in {var}) blocks integration")
            ne = list(e)
            ne[i] = k + 1
            out[tuple(ne)] = c * Fraction(1, k + 1)
        cut = None if self.cutoff is None else self.cutoff + self.weights[i]
        return WeightedSeries(self.vars, self.weights, out, cut)

    def revert(self):
        """Compositional inverse of a univariate series c1*v + O(v^2)."""
        if len(self.vars) != 1:
            raise ReversionError("reversion is univariate")
        v = self.vars[0]
        c1 = self.coefficient((1,))
        if coef_is_zero(c1):
            raise ReversionError("vanishing linear coefficient")
        if any(e[0] <= 0 for e in self.terms):
            raise ReversionError("series must vanish at 0 with a simple zero")
        if isinstance(c1, LamPoly):
            if not c1.is_constant():
                raise ReversionError("linear coefficient must be invertible")
            c1 = c1.constant_value()
        inv_c1 = c1.inverse() if isinstance(c1, QZeta) else Fraction(1, 1) / c1
        cut = self.cutoff
        if cut is None:
            if len(self.terms) == 1:
                return WeightedSeries(self.vars, self.weights, {(1,): inv_c1}, None)
            raise ReversionError("exact reversion of a nonlinear series is infinite; set a cutoff")
        tail = self - WeightedSeries(self.vars, self.weights, {(1,): c1}, cut)
        g = WeightedSeries(self.vars, self.weights, {(1,): inv_c1}, cut)
        ident = WeightedSeries.variable(self.vars, self.weights, v, cut)
        for _ in range(max(0, cut - 1)):
            # g <- (v - tail(g)) / c1
            g_new = (ident - tail.substitute({v: g})).scale(inv_c1)
            if g_new.terms == g.terms:
                g = g_new
                break
            g = g_new
        return g

    # ------------------------------------------------------------------
    # substitution / composition
    # ------------------------------------------------------------------
    def substitute(self, assignments, universe=None):
        """Substitute series for variables; unassigned vars must exist in the
        target universe and are kept as variables.

        All assigned series must share one universe.  Cutoff propagation is
        inherited from the engine operations used to build the result.
        """
        target = None
        for s in assignments.values():
            if isinstance(s, WeightedSeries):
                if target is None:
                    target = s.universe()
                elif (s.vars, s.weights) != target:
                    raise IncompatibleSeriesError("assigned series universes differ")
        if target is None:
            target = universe if universe is not None else self.universe()
        tvars, tweights = target
        base = {}
        for v in self.vars:
            if v in assignments:
                a = assignments[v]
                if not isinstance(a, WeightedSeries):
                    a = WeightedSeries.const(tvars, tweights, a)
                base[v] = a
            else:
                base[v] = WeightedSeries.variable(tvars, tweights, v)
        pow_cache = {v: {0: WeightedSeries.const(tvars, tweights, Fraction(1))} for v in self.vars}

        def vpow(v, k):
            cache = pow_cache[v]
            if k in cache:
                return cache[k]
            if k < 0:
                inv = cache.get(-1)
                if inv is None:
                    inv = base[v].invert()
                    cache[-1] = inv
                cache[k] = vpow(v, k + 1) * inv if k != -1 else inv
                return cache[k]
            cache[k] = vpow(v, k - 1) * base[v]
            return cache[k]

        acc = WeightedSeries.zero(tvars, tweights, None)
        for e, c in self.terms.items():
            term = None
            for v, k in zip(self.vars, e):
                if k == 0:
                    continue
                p = vpow(v, k)
                term = p if term is None else term * p
            if term is None:
                term = WeightedSeries.const(tvars, tweights, Fraction(1))
            acc = acc + term.scale(c)
        if self.cutoff is not None:
            # the host's own truncation caps reliability: a dropped host term
            # of weight > cutoff maps to weight > cutoff when all assigned
            # series have order >= their variable weights (jet usage); be
            # conservative and cap at the host cutoff.
            acc = acc.with_cutoff(_min_cut(acc.cutoff, self.cutoff))
        return acc

    def rename_vars(self, mapping):
        """Rename variables (weights preserved)."""
        nvars = tuple(mapping.get(v, v) for v in self.vars)
        return WeightedSeries(nvars, self.weights, self.terms, self.cutoff)

    def lift(self, vars, weights):
        """Embed into a larger universe (exponent injection)."""
        vars = tuple(vars)
        if isinstance(weights, dict):
            weights = tuple(weights[v] for v in vars)
        idx = []
        for v, w in zip(self.vars, self.weights):
            j = vars.index(v)
            if weights[j] != w:
                raise IncompatibleSeriesError(f"weight of {v} changed in lift")
            idx.append(j)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for j, k in zip(idx, e):
                ne[j] = k
            out[tuple(ne)] = c
        return WeightedSeries(vars, weights, out, self.cutoff)

    # ------------------------------------------------------------------
    # grading, evaluation, serialization
    # ------------------------------------------------------------------
    def sato_weight(self):
        """Common total Sato weight (variables plus lambda coefficients) of
        all terms, or None if inhomogeneous or zero."""
        w = None
        for e, c in self.terms.items():
            cw = coef_weight(c)
            if cw is None:
                return None
            tw = self._wt(e) * 1 + cw
            if w is None:
                w = tw
            elif w != tw:
                return None
        return w

    def is_homogeneous(self):
        return bool(self.terms) and self.sato_weight() is not None

    def map_coefficients(self, f):
        out = {}
        for e, c in self.terms.items():
            nc = f(e, c)
            if not coef_is_zero(nc):
                out[e] = nc
        return WeightedSeries(self.vars, self.weights, out, self.cutoff)

    def evaluate(self, point, lam_values=None):
        """Numeric evaluation at complex variable values."""
        vals = [complex(point[v]) for v in self.vars]
        out = 0j
        for e, c in self.terms.items():
            term = coef_to_complex(c, lam_values)
            for v, k in zip(vals, e):
                term *= v**k
            out += term
        return out

    def evaluate_exact(self, point):
        """Exact evaluation at Fraction/QZeta variable values (coefficients
        must be scalar or LamPoly with exact lambda values supplied inside
        the point mapping under the lambda names)."""
        out = Fraction(0)
        for e, c in self.terms.items():
            if isinstance(c, LamPoly):
                c = c.evaluate(point)
            term = c
            for v, k in zip(self.vars, e):
                x = point[v]
                if k >= 0:
                    for _ in range(k):
                        term = term * x
                else:
                    inv = x.inverse() if isinstance(x, QZeta) else Fraction(1, 1) / x
                    for _ in range(-k):
                        term = term * inv
            out = out + term
        return out

    def to_json_obj(self):
        return {
            "vars": list(self.vars),
            "terms": [
                {"exp": list(e), "coef": coef_str(c)} for e, c in self.sorted_terms()
            ],
            "cutoff": self.cutoff,
        }

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"{v}^{k}" if k != 1 else v for v, k in zip(self.vars, e) if k
            )
            cs = coef_str(c)
            if mono:
                need_paren = isinstance(c, LamPoly) and len(c.terms) > 1
                cs = f"({cs})" if need_paren else cs
                parts.append(mono if cs == "1" else f"-{mono}" if cs == "-1" else f"{cs}*{mono}")
            else:
                parts.append(cs)
        out = parts[0]
        for p in parts[1:]:
            out += f" + {p}" if not p.startswith("-") else f" - {p[1:]}"
        return out

    def __repr__(self):
        return f"<WeightedSeries {self} (cutoff={self.cutoff})>"


def zeta_scale(series, j, exponent_action):
    """Multiply each term by zeta^(j * exponent_action(exps)).

    Used for the order-3 automorphism action on series whose variables
    carry known transformation characters.
    """
    if j % 3 == 0:
        return series
    return series.map_coefficients(lambda e, c: zeta_pow(j * exponent_action(e)) * c)
