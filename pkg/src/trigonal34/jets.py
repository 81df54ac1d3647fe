"""Branch expansions at the point at infinity.

The canonical parametrization takes u3 as local parameter: orientation and
cube-root branch are fixed so that u3(t) = t + O(t^2).  This forces

    x(t) = -t^-3 (exactly),    y(t) = t^-4 * (1 - l3 t^3 + l6 t^6 - ...)^(1/3)

and, at lambda = 0, the closed forms u = (t^5/5, -t^2/2, t).  Leading signs
of x and u2 then differ from the all-plus display sometimes used for these
expansions; every identity downstream is checked convention-stably (both
sides built in this convention), so the orientation choice cancels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curve import evaluate_f, make_universe
from .errors import Trigonal34Error
from .series import WeightedSeries


@dataclass(frozen=True)
class CurveJet:
    curve: object
    var: str
    cutoff: int
    branch: int
    x: WeightedSeries
    y: WeightedSeries
    u1: WeightedSeries
    u2: WeightedSeries
    u3: WeightedSeries

    def components(self):
        return (self.u1, self.u2, self.u3)

    def rename(self, var):
        """Same jet in a different parameter name (for multi-point work)."""
        m = {self.var: var}
        return CurveJet(
            self.curve,
            var,
            self.cutoff,
            self.branch,
            self.x.rename_vars(m),
            self.y.rename_vars(m),
            self.u1.rename_vars(m),
            self.u2.rename_vars(m),
            self.u3.rename_vars(m),
        )

    def evaluate(self, tval):
        """Numeric point: (x, y, u) at a small complex parameter value."""
        lam = self.curve.lambda_complex()
        pt = {self.var: tval}
        return (
            self.x.evaluate(pt, lam),
            self.y.evaluate(pt, lam),
            tuple(c.evaluate(pt, lam) for c in self.components()),
        )


def branch_expansion(curve, cutoff, var="t"):
    """x(t), y(t) with x exactly the monomial -t^-3 and f(x, y) = 0 to cutoff.

    y is reliable through t-weight `cutoff`.
    """
    curve.require_purely_trigonal()
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    vars_, wts = make_universe((var,))
    x = WeightedSeries.monomial(vars_, wts, (-3,), Fraction(-1))
    # g(x(t)) = t^-12 (1 - l3 t^3 + l6 t^6 - l9 t^9 + l12 t^12)
    radicand = WeightedSeries(
        vars_,
        wts,
        {
            (-12,): Fraction(1),
            (-9,): -curve.lambda3,
            (-6,): curve.lambda6,
            (-3,): -curve.lambda9,
            (0,): curve.lambda12,
        },
        cutoff=cutoff - 8,
    )
    y = radicand.nth_root(3)
    return x, y


def abel_jet(curve, cutoff=24, var="t", branch=0):
    """Integrate the holomorphic differentials along the branch at infinity.

    Returns a CurveJet with u3 = t + O(t^2); all u-components reliable
    through t-weight `cutoff`.  The three cube-root branches give the same
    normalized jet (reparametrizing t -> zeta^k t undoes the branch twist),
    so `branch` only tags the output.
    """
    if cutoff < 6:
        raise ValueError("cutoff must be >= 6")
    margin = cutoff + 14
    x, y = branch_expansion(curve, margin, var=var)
    vars_, wts = x.vars, x.weights
    dxdt = x.differentiate_in(var)  # 3 t^-4, exact
    inv_3y2 = (y * y).scale(Fraction(3)).invert()
    base = dxdt * inv_3y2  # dx / (3 y^2) coefficient series
    integrands = (base, base * x, base * y)
    us = []
    for integ in integrands:
        us.append(integ.integrate_in(var).with_cutoff(cutoff))
    u1, u2, u3 = us
    if u3.coefficient((1,)) != 1:
        raise Trigonal34Error("jet normalization failed: u3 != t + O(t^2)")
    return CurveJet(
        curve,
        var,
        cutoff,
        branch,
        x,
        y.with_cutoff(cutoff),
        u1,
        u2,
        u3,
    )


def xy_on_curve(curve, cutoff=24):
    """x and y re-expanded in the local parameter u3 (orders -3 and -4)."""
    jet = abel_jet(curve, cutoff + 6)
    t_of_u = jet.u3.rename_vars({jet.var: "u3"}).revert()
    x_u = jet.x.rename_vars({jet.var: "u3"}).substitute({"u3": t_of_u})
    y_u = jet.y.rename_vars({jet.var: "u3"}).substitute({"u3": t_of_u})
    return x_u.with_cutoff(cutoff), y_u.with_cutoff(cutoff)
