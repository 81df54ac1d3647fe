"""Determination of the sigma expansion from its characterizing properties.

The expansion is a Sato-weight-5 homogeneous series in (u1, u2, u3) over
Q[l3, l6, l9, l12] whose lambda-free part is the fixed quintic
u1 - u3 u2^2 + u3^5/20.  Candidate monomials are filtered by parity (odd
under u -> -u) and by equivariance under the order-3 action (character
e1 + e2 + 2 e3 = 1 mod 3), then determined grade by grade in the lambda
weight:

  * primary constraints: vanishing of sigma on two-point jet sums
    u(t1) + u(t2);
  * the vanishing system is rank-deficient at every grade (multiplying
    sigma by any even invariant weight-0 series preserves it), so the
    nullspace is resolved by the two-point Klein pairing: the matrix of
    second log-derivatives against the holomorphic numerators must
    reproduce F((x,y),(z,w)) / (x-z)^2 on difference jets u(t) - u(s).

Ranks per grade are recorded on the result.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .coefficients import LAMBDA_WEIGHTS, LamPoly
from .curve import TrigonalCurve, make_universe
from .errors import SigmaSolveError, SigmaUnderdeterminedError
from .exactlinalg import solve_affine
from .forms import F_on_jets, lambda_monomials, solve_eta
from .jets import abel_jet
from .series import WeightedSeries

U_UNIVERSE = make_universe(("u1", "u2", "u3"))
U_WEIGHTS = (5, 2, 1)


def schur_quintic():
    """u1 - u3 u2^2 + u3^5 / 20 (the fixed lambda-free part)."""
    vars_, wts = U_UNIVERSE
    return WeightedSeries(
        vars_, wts, {(1, 0, 0): 1, (0, 2, 1): -1, (0, 0, 5): Fraction(1, 20)}
    )


def sigma_u_monomials(weight):
    """u-exponent triples of the given weight passing parity and
    equivariance filters."""
    out = []
    for e in range(weight // 5 + 1):
        for f in range((weight - 5 * e) // 2 + 1):
            g = weight - 5 * e - 2 * f
            if (e + f + g) % 2 != 1:
                continue
            if (e + f + 2 * g) % 3 != 1:
                continue
            out.append((e, f, g))
    return out


def partial_series(series, idx):
    """d/du_idx (idx in 1..3)."""
    return series.differentiate_in(f"u{idx}")


def sigma_partial(expansion, multi_index):
    """Formal partial derivative by a sequence of indices in 1..3."""
    s = expansion.series if isinstance(expansion, SigmaExpansion) else expansion
    for i in multi_index:
        s = partial_series(s, i)
    return s


# ---------------------------------------------------------------------------
# jet restriction
# ---------------------------------------------------------------------------

class JetRestrictor:
    """Substitution u_i -> U_i for fixed component series U_i, with a shared
    power-product cache over u-monomials."""

    def __init__(self, U1, U2, U3):
        self.components = (U1, U2, U3)
        self.universe = U1.universe()
        one = WeightedSeries.const(*self.universe, Fraction(1))
        self._cache = {(0, 0, 0): one}

    def monomial(self, key):
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        e, f, g = key
        if g > 0:
            prev = self.monomial((e, f, g - 1))
            out = prev * self.components[2]
        elif f > 0:
            prev = self.monomial((e, f - 1, 0))
            out = prev * self.components[1]
        else:
            prev = self.monomial((e - 1, 0, 0))
            out = prev * self.components[0]
        self._cache[key] = out
        return out

    def restrict(self, series_in_u):
        vars_, wts = self.universe
        acc = WeightedSeries.zero(vars_, wts, None)
        for exps, c in series_in_u.terms.items():
            acc = acc + self.monomial(exps).scale(c)
        if series_in_u.cutoff is not None:
            cut = acc.cutoff
            acc = acc.with_cutoff(
                series_in_u.cutoff if cut is None else min(cut, series_in_u.cutoff)
            )
        return acc


def restrictor_for(jets, scales=None, cutoff=None):
    """Restrictor for u = sum_r diag(scales_r) . u(jet_r).

    jets carry distinct parameter names; scales_r is a triple of exact
    scalars (default all 1).  cutoff caps the component series.
    """
    jets = list(jets)
    if scales is None:
        scales = [(1, 1, 1)] * len(jets)
    names = [j.var for j in jets]
    if len(set(names)) != len(names):
        raise ValueError("jets must use distinct parameter names")
    uni = make_universe(tuple(names))
    comps = []
    for i in range(3):
        acc = WeightedSeries.zero(*uni)
        for jet, sc in zip(jets, scales):
            comp = jet.components()[i].lift(*uni)
            s = sc[i]
            if s != 1:
                comp = comp.scale(s if not isinstance(s, int) else Fraction(s))
            acc = acc + comp
        if cutoff is not None:
            acc = acc.with_cutoff(min(cutoff, acc.cutoff) if acc.cutoff is not None else cutoff)
        comps.append(acc)
    return JetRestrictor(*comps)


def restrict(series_in_u, jets, scales=None, cutoff=None):
    """Compose a series in (u1,u2,u3) with a sum of jets."""
    return restrictor_for(jets, scales, cutoff).restrict(series_in_u)


# ---------------------------------------------------------------------------
# formal quotients (for the wp functions)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FormalQuotient:
    """num/den as series in (u1, u2, u3); supports differentiation and jet
    restriction (the latter divides and so needs a monomial-led
    denominator; cross-multiply against it otherwise)."""

    num: WeightedSeries
    den: WeightedSeries

    def differentiate(self, idx):
        dn = partial_series(self.num, idx)
        dd = partial_series(self.den, idx)
        return FormalQuotient(dn * self.den - self.num * dd, self.den * self.den)

    def restrict(self, restrictor):
        num = restrictor.restrict(self.num)
        den = restrictor.restrict(self.den)
        return num * den.invert()


def wp(expansion, i, j, *more):
    """-d^2/du_i du_j log sigma (and higher derivatives) as a formal
    quotient of series."""
    s = expansion.series if isinstance(expansion, SigmaExpansion) else expansion
    si = partial_series(s, i)
    sj = partial_series(s, j)
    sij = partial_series(si, j)
    q = FormalQuotient(si * sj - s * sij, s * s)
    for k in more:
        q = q.differentiate(k)
    return q


# ---------------------------------------------------------------------------
# grade-by-grade solve
# ---------------------------------------------------------------------------

def _lambda_grade(lexp):
    return -sum(k * w for k, w in zip(lexp, LAMBDA_WEIGHTS)) // 3


def _slots_of_grade(series, grade):
    """Map (exps, lambda-exps) -> Fraction for terms whose lambda part has
    the given grade."""
    out = {}
    for exps, c in series.terms.items():
        if isinstance(c, LamPoly):
            for lexp, v in c.terms.items():
                if _lambda_grade(lexp) == grade:
                    out[(exps, lexp)] = Fraction(v)
        elif grade == 0 and c:
            out[(exps, (0, 0, 0, 0))] = Fraction(c)
    return out


def _bilinear_residual(sigma_series, restr, m_t, m_s, C, D):
    """A*D - C*B for the Klein pairing on difference jets.

    A = sum_{i,j} (s_i s_j - s s_ij) m_i(t) m_j(s), B = s^2, both composed
    at u(t) - u(s); C = F(P(t), P(s)); D = (x(t) - x(s))^2.
    """
    s = restr.restrict(sigma_series)
    si = [restr.restrict(partial_series(sigma_series, i)) for i in (1, 2, 3)]
    sij = {}
    for i in (1, 2, 3):
        for j in range(i, 4):
            sij[(i, j)] = restr.restrict(
                partial_series(partial_series(sigma_series, i), j)
            )
    vars_, wts = restr.universe
    A = WeightedSeries.zero(vars_, wts)
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            key = (i, j) if i <= j else (j, i)
            P = si[i - 1] * si[j - 1] - s * sij[key]
            A = A + P * m_t[i - 1] * m_s[j - 1]
    return A * D - C * (s * s)


@dataclass(frozen=True)
class GradeReport:
    grade: int
    unknowns: int
    rank_vanishing: int
    nullity: int
    augmented: bool
    free_after_augment: int


@dataclass(frozen=True)
class SigmaExpansion:
    curve: object
    series: WeightedSeries
    weight_cutoff: int
    grade_reports: tuple

    def to_json_obj(self):
        obj = self.series.to_json_obj()
        obj["weight_cutoff"] = self.weight_cutoff
        obj["grade_ranks"] = [
            {
                "grade": r.grade,
                "unknowns": r.unknowns,
                "rank_vanishing": r.rank_vanishing,
                "nullity": r.nullity,
                "augmented": r.augmented,
            }
            for r in self.grade_reports
        ]
        return obj


@lru_cache(maxsize=None)
def _sigma_symbolic(weight_cutoff):
    curve = TrigonalCurve.symbolic()
    kernel = solve_eta(curve)
    jet_cut = max(weight_cutoff, 6)
    j1 = abel_jet(curve, cutoff=jet_cut, var="t1")
    j2 = abel_jet(curve, cutoff=jet_cut, var="t2")
    sum_restr = restrictor_for([j1, j2], cutoff=weight_cutoff)

    # difference-jet machinery for the Klein pairing (low order suffices:
    # grade-k slots live at total degree 3k - 6)
    max_grade = max(0, (weight_cutoff - 5) // 3)
    bil_cut = 3 * max_grade - 6 + 10
    jt = abel_jet(curve, cutoff=bil_cut + 8, var="t1")
    js = abel_jet(curve, cutoff=bil_cut + 8, var="t2")
    diff_restr = restrictor_for([jt, js], scales=[(1, 1, 1), (-1, -1, -1)], cutoff=bil_cut)
    uni2 = make_universe(("t1", "t2"))
    one2 = WeightedSeries.const(*uni2, Fraction(1))
    m_t = (one2, jt.x.lift(*uni2), jt.y.lift(*uni2))
    m_s = (one2, js.x.lift(*uni2), js.y.lift(*uni2))
    D = (jt.x.lift(*uni2) - js.x.lift(*uni2)) ** 2
    C = F_on_jets(kernel, jt, js)

    uvars, uwts = U_UNIVERSE
    sigma = schur_quintic()
    known_res = sum_restr.restrict(sigma)
    if any(sum(e) <= weight_cutoff for e in known_res.terms):
        low = {e: c for e, c in known_res.terms.items() if sum(e) == 5}
        if low:
            raise SigmaSolveError("two-point vanishing fails for the quintic part")

    reports = []
    for grade in range(1, max_grade + 1):
        w = 5 + 3 * grade
        u_monos = sigma_u_monomials(w)
        lam_monos = lambda_monomials(-3 * grade)
        unknowns = [(lexp, um) for lexp in lam_monos for um in u_monos]
        if not unknowns:
            reports.append(GradeReport(grade, 0, 0, 0, False, 0))
            continue
        # columns: slots of lambda^lexp * restrict(u^um) at degree w, grade k
        slot_index = {}
        cols = []
        for lexp, um in unknowns:
            lam = LamPoly({lexp: Fraction(1)})
            ser = sum_restr.monomial(um).scale(lam)
            slots = {
                key: v
                for key, v in _slots_of_grade(ser, grade).items()
                if sum(key[0]) == w
            }
            cols.append(slots)
            for key in slots:
                slot_index.setdefault(key, len(slot_index))
        rhs_slots = {
            key: v
            for key, v in _slots_of_grade(known_res, grade).items()
            if sum(key[0]) == w
        }
        for key in rhs_slots:
            slot_index.setdefault(key, len(slot_index))
        nrows = len(slot_index)
        rows = [[Fraction(0)] * len(unknowns) for _ in range(nrows)]
        for m, slots in enumerate(cols):
            for key, v in slots.items():
                rows[slot_index[key]][m] = v
        rhs = [Fraction(0)] * nrows
        for key, v in rhs_slots.items():
            rhs[slot_index[key]] = -v
        particular, nullspace, rank, ok = solve_affine(rows, rhs)
        if not ok:
            raise SigmaSolveError(f"vanishing system inconsistent at grade {grade}")

        augmented = False
        if nullspace:
            augmented = True
            particular = _resolve_nullspace(
                sigma, unknowns, particular, nullspace, grade,
                diff_restr, m_t, m_s, C, D,
            )

        grade_terms = {}
        for (lexp, um), cval in zip(unknowns, particular):
            if cval:
                grade_terms[um] = grade_terms.get(um, LamPoly()) + LamPoly({lexp: cval})
        grade_series = WeightedSeries(uvars, uwts, grade_terms)
        sigma = sigma + grade_series
        if grade_terms:
            known_res = known_res + sum_restr.restrict(grade_series)
        reports.append(
            GradeReport(grade, len(unknowns), rank, len(nullspace), augmented, 0)
        )

    # residual of the final expansion vanishes through the cutoff
    bad = [e for e in known_res.terms if sum(e) <= weight_cutoff]
    if bad:
        raise SigmaSolveError(f"two-point residual survives at degrees {sorted(set(map(sum, bad)))}")
    return SigmaExpansion(curve, sigma.with_cutoff(weight_cutoff), weight_cutoff, tuple(reports))


def _resolve_nullspace(sigma, unknowns, particular, nullspace, grade,
                       diff_restr, m_t, m_s, C, D):
    uvars, uwts = U_UNIVERSE

    def build(coeffs):
        terms = {}
        for (lexp, um), cval in zip(unknowns, coeffs):
            if cval:
                terms[um] = terms.get(um, LamPoly()) + LamPoly({lexp: cval})
        return WeightedSeries(uvars, uwts, terms)

    base = sigma + build(particular)
    res0 = _bilinear_residual(base, diff_restr, m_t, m_s, C, D)
    slots0 = _slots_of_grade(res0, grade)
    col_slots = []
    keys = set(slots0)
    for v in nullspace:
        pert = sigma + build([p + dv for p, dv in zip(particular, v)])
        res = _bilinear_residual(pert, diff_restr, m_t, m_s, C, D)
        delta = {}
        slots = _slots_of_grade(res, grade)
        for key in set(slots) | set(slots0):
            d = slots.get(key, Fraction(0)) - slots0.get(key, Fraction(0))
            if d:
                delta[key] = d
        col_slots.append(delta)
        keys |= set(delta)
    key_index = {k: i for i, k in enumerate(sorted(keys))}
    rows = [[Fraction(0)] * len(nullspace) for _ in range(len(key_index))]
    rhs = [Fraction(0)] * len(key_index)
    for l, delta in enumerate(col_slots):
        for key, v in delta.items():
            rows[key_index[key]][l] = v
    for key, v in slots0.items():
        rhs[key_index[key]] = -v
    alphas, null2, rank2, ok = solve_affine(rows, rhs)
    if not ok:
        raise SigmaSolveError(f"pairing augmentation inconsistent at grade {grade}")
    if null2:
        free = []
        for v in null2:
            for (lexp, um), dv in zip(unknowns, _combine(nullspace, v)):
                if dv:
                    free.append((lexp, um))
        raise SigmaUnderdeterminedError(grade, free)
    out = list(particular)
    for alpha, v in zip(alphas, nullspace):
        if alpha:
            out = [o + alpha * dv for o, dv in zip(out, v)]
    return out


def _combine(basis, coeffs):
    out = [Fraction(0)] * len(basis[0])
    for c, v in zip(coeffs, basis):
        out = [o + c * vi for o, vi in zip(out, v)]
    return out


def sigma_expand(curve, weight_cutoff=20, kernel=None):
    """Sigma expansion for the given curve (symbolic or exact rational).

    The determination is universal in the curve parameters, so the symbolic
    solution is cached and specialized.
    """
    curve.require_purely_trigonal()
    if weight_cutoff < 5:
        raise ValueError("weight_cutoff must be >= 5")
    sym = _sigma_symbolic(weight_cutoff)
    if curve.is_symbolic():
        return sym
    values = curve.lambda_values()
    uvars, uwts = U_UNIVERSE
    terms = {}
    for exps, c in sym.series.terms.items():
        val = c.evaluate(values) if isinstance(c, LamPoly) else c
        if val:
            terms[exps] = val
    return SigmaExpansion(curve, WeightedSeries(uvars, uwts, terms), weight_cutoff, sym.grade_reports)
