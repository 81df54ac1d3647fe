"""Holomorphic differentials, the rational kernel Omega, and the symmetric
second-kind kernel F with its eta numerators.

The assembled 2-form is

    R((x,y),(z,w)) = F((x,y),(z,w)) / ((x-z)^2 * 3y^2 * 3w^2),

F = 3 y^2 w^2 + 3 g(z)(y + w) + (y + 2w) g'(z)(x - z)
    + (x - z)^2 (h1(z,w) + x h2(z,w) + y h3(z,w)),

with h1, h2, h3 polynomial numerators of the second-kind differentials
eta_j = h_j dx / (3y^2) determined by the symmetry F(P,Q) = F(Q,P) on the
curve, plus a minimal-term-count normalization on the residual omega-span
freedom.  R has a double pole with unit coefficient on the diagonal and no
other poles; this is verified by jet substitution in the test suite rather
than imposed.

At lambda = 0 the solved numerators are h = (5 z^2 w, 2 z w, z^2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as _iproduct

from .coefficients import LAMBDA_NAMES, LAMBDA_WEIGHTS, LamPoly, coef_str
from .curve import TrigonalCurve, make_universe
from .errors import EtaSolveError
from .exactlinalg import in_span, solve_affine
from .series import WeightedSeries

XYZW = make_universe(("x", "y", "z", "w"))
XY = make_universe(("x", "y"))
ZW = make_universe(("z", "w"))


@dataclass(frozen=True)
class DifferentialForm:
    """numerator(x, y) * dx / (df/dy); df/dy = 3y^2 on the trigonal curve."""

    numerator: WeightedSeries

    def jet_coefficient(self, jet):
        """Pullback coefficient series: numerator(x(t), y(t)) x'(t) / (3 y^2)."""
        sub = {"x": jet.x, "y": jet.y}
        num = self.numerator.substitute(sub)
        dxdt = jet.x.differentiate_in(jet.var)
        inv = (jet.y * jet.y).scale(Fraction(3)).invert()
        return num * dxdt * inv


def omega_basis(curve):
    """Holomorphic basis dx/3y^2, x dx/3y^2, y dx/3y^2."""
    curve.require_purely_trigonal()
    vars_, wts = XY
    one = WeightedSeries.const(vars_, wts, Fraction(1))
    x = WeightedSeries.variable(vars_, wts, "x")
    y = WeightedSeries.variable(vars_, wts, "y")
    return (DifferentialForm(one), DifferentialForm(x), DifferentialForm(y))


@dataclass(frozen=True)
class OmegaExpr:
    """numerator(x,y,z,w) / ((x - z) * df/dy(x,y)) as a formal expression."""

    numerator: WeightedSeries


def _f_zw_series(curve):
    vars_, wts = XYZW
    z = WeightedSeries.variable(vars_, wts, "z")
    w = WeightedSeries.variable(vars_, wts, "w")
    from .curve import evaluate_f

    return evaluate_f(curve, z, w)


def build_Omega(curve, general=False):
    """The kernel Omega((x,y),(z,w)).

    For the purely trigonal curve the numerator is y^2 + y w + w^2.  With
    general=True it is assembled from the nine-parameter model as
    sum_k y^(3-k) [f(z,w)/w^(4-k)]_w, keeping only non-negative w-powers,
    which specializes to the trigonal numerator when the extra lambdas
    vanish.
    """
    vars_, wts = XYZW
    if not general:
        curve.require_purely_trigonal()
        num = WeightedSeries(
            vars_, wts, {(0, 2, 0, 0): 1, (0, 1, 0, 1): 1, (0, 0, 0, 2): 1}
        )
        return OmegaExpr(num)
    f_zw = _f_zw_series(curve)
    iy = vars_.index("y")
    iw = vars_.index("w")
    total = WeightedSeries.zero(vars_, wts)
    for k in (1, 2, 3):
        shift = 4 - k
        terms = {}
        for e, c in f_zw.terms.items():
            ew = e[iw] - shift
            if ew < 0:
                continue
            ne = list(e)
            ne[iw] = ew
            ne[iy] += 3 - k
            terms[tuple(ne)] = c
        total = total + WeightedSeries(vars_, wts, terms)
    return OmegaExpr(total)


# ---------------------------------------------------------------------------
# curve reduction and slot swap on (x, y, z, w) polynomials
# ---------------------------------------------------------------------------

def _g_series(curve, var):
    vars_, wts = XYZW
    i = vars_.index(var)

    def mono(k, c):
        e = [0, 0, 0, 0]
        e[i] = k
        return (tuple(e), c)

    g = curve.quartic_coeffs()
    return WeightedSeries(vars_, wts, dict([mono(4 - j, g[j]) for j in range(5)]))


def _dg_series(curve, var):
    vars_, wts = XYZW
    i = vars_.index(var)
    g = curve.quartic_coeffs()
    terms = {}
    for j in range(4):
        k = 4 - j
        e = [0, 0, 0, 0]
        e[i] = k - 1
        terms[tuple(e)] = k * g[j]
    return WeightedSeries(vars_, wts, terms)


def reduce_on_curve(series, curve):
    """Reduce y-powers >= 3 via y^3 = g(x) and w-powers >= 3 via w^3 = g(z)."""
    vars_, wts = XYZW
    iy, iw = vars_.index("y"), vars_.index("w")
    gx = _g_series(curve, "x")
    gz = _g_series(curve, "z")
    cur = series
    while True:
        high = {e: c for e, c in cur.terms.items() if e[iy] >= 3 or e[iw] >= 3}
        if not high:
            return cur
        keep = {e: c for e, c in cur.terms.items() if e[iy] < 3 and e[iw] < 3}
        cur = WeightedSeries(vars_, wts, keep, cur.cutoff)
        for e, c in high.items():
            ne = list(e)
            piece = WeightedSeries(vars_, wts, {tuple(e): c})
            if e[iy] >= 3:
                ne[iy] = e[iy] - 3
                piece = WeightedSeries(vars_, wts, {tuple(ne): c}) * gx
            elif e[iw] >= 3:
                ne[iw] = e[iw] - 3
                piece = WeightedSeries(vars_, wts, {tuple(ne): c}) * gz
            cur = cur + piece


def swap_slots(series):
    """(x, y) <-> (z, w)."""
    vars_, wts = XYZW
    return WeightedSeries(
        vars_, wts, {(e[2], e[3], e[0], e[1]): c for e, c in series.terms.items()},
        series.cutoff,
    )


# ---------------------------------------------------------------------------
# eta solve
# ---------------------------------------------------------------------------

def lambda_monomials(weight):
    """Exponent tuples (k3, k6, k9, k12) of the given (non-positive) weight."""
    out = []
    if weight > 0:
        return out
    target = -weight
    for k12 in range(target // 12 + 1):
        for k9 in range((target - 12 * k12) // 9 + 1):
            for k6 in range((target - 12 * k12 - 9 * k9) // 6 + 1):
                rem = target - 12 * k12 - 9 * k9 - 6 * k6
                if rem % 3 == 0:
                    out.append((rem // 3, k6, k9, k12))
    return sorted(out)


_H_WEIGHTS = (-10, -7, -6)  # so that F is homogeneous (of weight -16)


def _eta_ansatz():
    """Unknown slots (j, a, b, lam_exps): h_j gains lam^exps * z^a w^b."""
    slots = []
    for j, hw in enumerate(_H_WEIGHTS):
        for b in range(3):
            for a in range(5):
                lw = hw + 3 * a + 4 * b
                for lexp in lambda_monomials(lw):
                    slots.append((j, a, b, lexp))
    return slots


def _zw_monomial(a, b, coef):
    vars_, wts = XYZW
    iz, iw = vars_.index("z"), vars_.index("w")
    e = [0, 0, 0, 0]
    e[iz], e[iw] = a, b
    return WeightedSeries(vars_, wts, {tuple(e): coef})


def _m_xy(j):
    vars_, wts = XYZW
    if j == 0:
        return WeightedSeries.const(vars_, wts, Fraction(1))
    return WeightedSeries.variable(vars_, wts, "x" if j == 1 else "y")


def _gauge_directions(slots):
    """Omega-span freedom: h_j += sum_k c_{jk} m_k(z,w), c symmetric.

    Returns coefficient vectors over the ansatz slots for each independent
    symmetric gauge direction that is weight-compatible.
    """
    # m_k(z, w) as (a, b) exponents: m_1 = 1, m_2 = z, m_3 = w
    m_exp = {0: (0, 0), 1: (1, 0), 2: (0, 1)}
    m_wt = {0: 0, 1: -3, 2: -4}
    index = {slot: i for i, slot in enumerate(slots)}
    dirs = []
    seen = set()
    for j in range(3):
        for k in range(3):
            if (k, j) in seen:
                continue
            seen.add((j, k))
            lw = _H_WEIGHTS[j] - m_wt[k]
            # symmetric requirement: same lambda factor must fit h_k += c m_j
            if _H_WEIGHTS[k] - m_wt[j] != lw:
                continue
            for lexp in lambda_monomials(lw):
                vec = [Fraction(0)] * len(slots)
                a, b = m_exp[k]
                s1 = (j, a, b, lexp)
                if s1 not in index:
                    continue
                vec[index[s1]] += 1
                a, b = m_exp[j]
                s2 = (k, a, b, lexp)
                if s2 not in index:
                    continue
                vec[index[s2]] += 1
                if any(vec):
                    dirs.append(vec)
    # deduplicate (j,k) and (k,j) give the same vector for j == k
    uniq = []
    for d in dirs:
        if d not in uniq:
            uniq.append(d)
    return uniq


@dataclass(frozen=True)
class KleinKernel:
    curve: object
    F: WeightedSeries
    h1: WeightedSeries
    h2: WeightedSeries
    h3: WeightedSeries

    def eta_numerators(self):
        return (self.h1, self.h2, self.h3)

    def eta_numerators_xy(self):
        """h_j rewritten in the (x, y) slot for period integrands."""
        out = []
        for h in self.eta_numerators():
            out.append(
                WeightedSeries(
                    XY[0], XY[1],
                    {(e[2], e[3]): c for e, c in h.terms.items()},
                )
            )
        return tuple(out)

    def to_json_obj(self):
        return {
            "h1": str(self.h1),
            "h2": str(self.h2),
            "h3": str(self.h3),
            "F": str(self.F),
        }


def _kernel_base(curve):
    """F contribution of the Omega derivative: 3y^2w^2 + 3g(z)(y+w)
    + (y+2w) g'(z) (x-z), reduced on the curve."""
    vars_, wts = XYZW
    x = WeightedSeries.variable(vars_, wts, "x")
    y = WeightedSeries.variable(vars_, wts, "y")
    z = WeightedSeries.variable(vars_, wts, "z")
    w = WeightedSeries.variable(vars_, wts, "w")
    H = _g_series(curve, "z")
    dH = _dg_series(curve, "z")
    t1 = ((y * y) * (w * w)).scale(Fraction(3))
    t2 = (H * (y + w)).scale(Fraction(3))
    t3 = (y + w.scale(Fraction(2))) * dH * (x - z)
    return reduce_on_curve(t1 + t2 + t3, curve)


@lru_cache(maxsize=None)
def _solve_eta_symbolic():
    curve = TrigonalCurve.symbolic()
    vars_, wts = XYZW
    x = WeightedSeries.variable(vars_, wts, "x")
    y = WeightedSeries.variable(vars_, wts, "y")
    z = WeightedSeries.variable(vars_, wts, "z")
    xz2 = (x - z) * (x - z)
    base = _kernel_base(curve)
    r0 = reduce_on_curve(swap_slots(base) - base, curve)
    slots = _eta_ansatz()
    contribs = []
    for (j, a, b, lexp) in slots:
        lam = LamPoly({lexp: Fraction(1)})
        term = xz2 * _m_xy(j) * _zw_monomial(a, b, lam)
        red = reduce_on_curve(term, curve)
        contribs.append(reduce_on_curve(swap_slots(red) - red, curve))
    # assemble the linear system over slots keyed by (exps, lambda exps)
    slot_keys = {}

    def keys_of(series):
        for e, c in series.terms.items():
            if isinstance(c, LamPoly):
                for lex in c.terms:
                    yield (e, lex)
            else:
                yield (e, (0, 0, 0, 0))

    for s in [r0, *contribs]:
        for k in keys_of(s):
            slot_keys.setdefault(k, len(slot_keys))

    def column(series):
        col = [Fraction(0)] * len(slot_keys)
        for e, c in series.terms.items():
            if isinstance(c, LamPoly):
                for lex, v in c.terms.items():
                    col[slot_keys[(e, lex)]] = Fraction(v)
            else:
                col[slot_keys[(e, (0, 0, 0, 0))]] = Fraction(c)
        return col

    b0 = column(r0)
    cols = [column(s) for s in contribs]
    rows = [[cols[m][r] for m in range(len(slots))] for r in range(len(slot_keys))]
    rhs = [-v for v in b0]
    particular, nullspace, rank, ok = solve_affine(rows, rhs)
    if not ok:
        raise EtaSolveError("symmetry system inconsistent; enlarge the ansatz")
    gauge = _gauge_directions(slots)
    for v in nullspace:
        if not in_span(v, gauge):
            raise EtaSolveError(
                "underdetermined beyond the omega-span freedom; ansatz/rank bug"
            )
    solution = _select_minimal_terms(particular, nullspace)
    return slots, solution


def _select_minimal_terms(particular, nullspace):
    """Pick the solution with the fewest nonzero coefficients; deterministic
    graded-lex style tie break on the support signature."""
    if not nullspace:
        return particular
    candidates = {tuple(particular)}
    axis_values = []
    for v in nullspace:
        vals = {Fraction(0)}
        for p, d in zip(particular, v):
            if d:
                vals.add(-p / d)
        axis_values.append(sorted(vals))
    for combo in _iproduct(*axis_values):
        c = list(particular)
        for alpha, v in zip(combo, nullspace):
            if alpha:
                c = [ci + alpha * vi for ci, vi in zip(c, v)]
        candidates.add(tuple(c))

    def score(c):
        support = tuple(i for i, v in enumerate(c) if v)
        return (len(support), support, tuple(map(str, c)))

    return list(min(candidates, key=score))


def solve_eta(curve):
    """Solve for the eta numerators and assemble the symmetric kernel F."""
    curve.require_purely_trigonal()
    slots, solution = _solve_eta_symbolic()
    vars_, wts = XYZW
    hs = [WeightedSeries.zero(*ZW) for _ in range(3)]
    zvars, zwts = ZW
    for (j, a, b, lexp), cval in zip(slots, solution):
        if not cval:
            continue
        lam = LamPoly({lexp: cval})
        if not curve.is_symbolic():
            lam_val = lam.evaluate(curve.lambda_values())
            if not lam_val:
                continue
            coef = lam_val
        else:
            coef = lam
        hs[j] = hs[j] + WeightedSeries(zvars, zwts, {(a, b): coef})
    h1, h2, h3 = hs
    x = WeightedSeries.variable(vars_, wts, "x")
    y = WeightedSeries.variable(vars_, wts, "y")
    z = WeightedSeries.variable(vars_, wts, "z")
    xz2 = (x - z) * (x - z)
    hsum = (
        h1.lift(vars_, wts)
        + x * h2.lift(vars_, wts)
        + y * h3.lift(vars_, wts)
    )
    F = reduce_on_curve(_kernel_base(curve) + xz2 * hsum, curve)
    return KleinKernel(curve, F, h1, h2, h3)


def F_on_jets(kernel, jet1, jet2):
    """F with slot 1 at jet1 and slot 2 at jet2 (distinct parameter names)."""
    u = make_universe((jet1.var, jet2.var))
    sub = {
        "x": jet1.x.lift(*u),
        "y": jet1.y.lift(*u),
        "z": jet2.x.lift(*u),
        "w": jet2.y.lift(*u),
    }
    return kernel.F.substitute(sub)
