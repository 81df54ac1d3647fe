"""Local expansion tests.

The lambda = 0 closed forms used as oracles are solved directly from
du1/du3 = 1/y, du2/du3 = x/y and the curve relation y^3 = x^4 with the
normalization u3 = t + O(t^2): x = -t^-3, y = t^-4,
u = (t^5/5, -t^2/2, t).
"""

from fractions import Fraction

import pytest

from trigonal34.coefficients import LamPoly
from trigonal34.curve import TrigonalCurve, evaluate_f, sato_weight
from trigonal34.jets import abel_jet, branch_expansion, xy_on_curve
from trigonal34.series import WeightedSeries

SYM = TrigonalCurve.symbolic()
ZERO = TrigonalCurve()


def binomial_cbrt_coeffs(n):
    """C(1/3, k) for k < n, exact."""
    out = [Fraction(1)]
    c = Fraction(1)
    for k in range(1, n):
        c = c * (Fraction(1, 3) - (k - 1)) / k
        out.append(c)
    return out


class TestBranchExpansion:
    def test_lambda0_exact_monomials(self):
        x, y = branch_expansion(ZERO, 12)
        assert x == WeightedSeries(("t",), (1,), {(-3,): -1})
        assert y.terms == {(-4,): Fraction(1)}

    def test_y_lambda3_coefficient_binomial_oracle(self):
        # radicand 1 - l3 t^3 + ...: cbrt gives -l3/3 at t^-1; the magnitude
        # matches the binomial oracle coefficient C(1/3,1) of the radicand
        _, y = branch_expansion(SYM, 12)
        l3 = LamPoly.var("l3")
        oracle = binomial_cbrt_coeffs(2)[1]
        assert y.coefficient((-1,)) == -l3 * oracle

    def test_construction_residual_zero(self):
        x, y = branch_expansion(SYM, 15)
        res = evaluate_f(SYM, x, y)
        assert res.is_zero()

    def test_rational_curve_residual_zero(self):
        c = TrigonalCurve(lambda3=2, lambda6=Fraction(-1, 3), lambda9=1, lambda12=-1)
        x, y = branch_expansion(c, 20)
        assert evaluate_f(c, x, y).is_zero()


class TestAbelJet:
    def test_lambda0_closed_form(self):
        jet = abel_jet(ZERO, cutoff=18)
        assert jet.u1.terms == {(5,): Fraction(1, 5)}
        assert jet.u2.terms == {(2,): Fraction(-1, 2)}
        assert jet.u3.terms == {(1,): Fraction(1)}
        assert jet.x.terms == {(-3,): Fraction(-1)}
        assert jet.y.terms == {(-4,): Fraction(1)}

    def test_u1_leading_coefficient_one_fifth(self):
        jet = abel_jet(SYM, cutoff=14)
        assert jet.u1.coefficient((5,)) == Fraction(1, 5)

    def test_u3_normalization_and_first_correction(self):
        jet = abel_jet(SYM, cutoff=14)
        assert jet.u3.coefficient((1,)) == 1
        assert jet.u3.coefficient((4,)) == LamPoly.var("l3") / 12

    def test_sato_homogeneity(self):
        jet = abel_jet(SYM, cutoff=17)
        assert sato_weight(jet.u1) == 5
        assert sato_weight(jet.u2) == 2
        assert sato_weight(jet.u3) == 1
        assert sato_weight(jet.y) == -4

    def test_differential_ratios(self):
        # du1/du3 = 1/y and du2/du3 = x/y, convention independent
        jet = abel_jet(SYM, cutoff=16)
        du1 = jet.u1.differentiate_in("t")
        du2 = jet.u2.differentiate_in("t")
        du3 = jet.u3.differentiate_in("t")
        assert (du1 * jet.y - du3).is_zero()
        assert (du2 * jet.y - jet.x * du3).is_zero()

    def test_branches_agree_after_normalization(self):
        a = abel_jet(SYM, cutoff=12, branch=0)
        b = abel_jet(SYM, cutoff=12, branch=1)
        assert a.u1 == b.u1 and a.u2 == b.u2 and a.u3 == b.u3


class TestXYOnCurve:
    def test_lambda0_exact(self):
        x_u, y_u = xy_on_curve(ZERO, cutoff=12)
        assert x_u.terms == {(-3,): Fraction(-1)}
        assert y_u.terms == {(-4,): Fraction(1)}

    def test_orders_and_unit_leading(self):
        x_u, y_u = xy_on_curve(SYM, cutoff=12)
        ex, cx = x_u.leading()
        assert ex == (-3,) and abs(Fraction(cx)) == 1
        ey, _ = y_u.leading()
        assert ey == (-4,)

    def test_on_curve_residual(self):
        x_u, y_u = xy_on_curve(SYM, cutoff=12)
        assert evaluate_f(SYM, x_u, y_u).is_zero()

    def test_reversion_consistency(self):
        jet = abel_jet(SYM, cutoff=14)
        t_of_u = jet.u3.rename_vars({"t": "u3"}).revert()
        u3_var = WeightedSeries.variable(("u3",), (1,), "u3", t_of_u.cutoff)
        roundtrip = jet.u3.rename_vars({"t": "u3"}).substitute({"u3": t_of_u})
        assert (roundtrip - u3_var).is_zero()


def test_jet_rename_and_numeric_eval():
    jet = abel_jet(TrigonalCurve(lambda12=-1), cutoff=30)
    j2 = jet.rename("t2")
    assert j2.u3.vars == ("t2",)
    x, y, u = jet.evaluate(0.3)
    # x = -t^-3 exactly, y^3 = x^4 - 1
    assert abs(x + 0.3**-3) < 1e-12
    assert abs(y**3 - (x**4 - 1)) < 1e-6
