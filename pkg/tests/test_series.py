"""Series engine tests.

Derived expected values are produced by independent oracles defined here
(generalized binomial series, Lagrange inversion) rather than by the engine
paths they check.
"""

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from trigonal34.coefficients import LamPoly, QZeta, ZETA
from trigonal34.errors import (
    IncompatibleSeriesError,
    LeadingTermError,
    ResidueError,
    ReversionError,
    RootBranchError,
)
from trigonal34.series import WeightedSeries

T = ("t",)
TW = (1,)


def tser(terms, cutoff=None):
    return WeightedSeries(T, TW, terms, cutoff)


def t_var(cutoff=None):
    return WeightedSeries.variable(T, TW, "t", cutoff)


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------

def binomial_series_coeffs(alpha, nterms):
    """Coefficients of (1+h)^alpha as exact Fractions: C(alpha, k)."""
    out = [Fraction(1)]
    c = Fraction(1)
    for k in range(1, nterms):
        c = c * (alpha - (k - 1)) / k
        out.append(c)
    return out


def lagrange_revert_coeffs(a_coeffs, nterms):
    """Compositional inverse coefficients via Lagrange inversion.

    a_coeffs maps exponent -> Fraction for a = c1 t + ...; returns g with
    a(g(u)) = u through order nterms, using
    [u^n] g = (1/n) [t^(n-1)] (t / a(t))^n.
    """
    # phi = t / a(t) as a truncated power series in t (list of coeffs)
    c1 = a_coeffs[1]
    # series for a(t)/t
    at = [a_coeffs.get(k + 1, Fraction(0)) for k in range(nterms + 1)]
    # invert power series with constant term c1
    inv = [Fraction(1, 1) / c1]
    for n in range(1, nterms + 1):
        s = Fraction(0)
        for k in range(1, n + 1):
            s += at[k] * inv[n - k]
        inv.append(-s / c1)
    phi = inv  # phi = t/a(t)
    g = {}
    for n in range(1, nterms + 1):
        # (t/a)^n coefficient of t^(n-1)
        p = [Fraction(1)] + [Fraction(0)] * nterms
        for _ in range(n):
            q = [Fraction(0)] * (nterms + 1)
            for i in range(nterms + 1):
                if p[i] == 0:
                    continue
                for j in range(nterms + 1 - i):
                    q[i + j] += p[i] * phi[j]
            p = q
        g[n] = p[n - 1] / n
    return g


# ---------------------------------------------------------------------------
# add / mul / scale
# ---------------------------------------------------------------------------

class TestRingOps:
    def test_monomial_product(self):
        t = t_var()
        assert t * t == tser({(2,): 1})

    def test_telescoping_product_at_cutoff(self):
        one_plus = tser({(0,): 1, (1,): 1}, 5)
        one_minus = tser({(0,): 1, (1,): -1}, 5)
        prod = one_plus * one_minus
        assert prod == tser({(0,): 1, (2,): -1}, 5)

    def test_lambda_cube_leading_term(self):
        # (t^-4 (1 + l3 t^3))^3 carries 3*l3 at t^-9
        l3 = LamPoly.var("l3")
        a = tser({(-4,): 1, (-1,): l3})
        cube = a**3
        assert cube.coefficient((-9,)) == 3 * l3
        assert cube.coefficient((-12,)) == Fraction(1)

    def test_universe_mismatch(self):
        a = t_var()
        b = WeightedSeries.variable(("s",), (1,), "s")
        with pytest.raises(IncompatibleSeriesError):
            a + b
        with pytest.raises(IncompatibleSeriesError):
            a * b

    def test_cutoff_propagation_min(self):
        a = tser({(0,): 1}, 5)
        b = tser({(0,): 1}, 3)
        assert (a + b).cutoff == 3
        assert (a * b).cutoff == 3

    def test_mul_cutoff_shifts_with_order(self):
        a = tser({(2,): 1}, 5)   # reliable through weight 5, order 2
        b = tser({(3,): 1}, 7)   # order 3
        # product reliable through min(5+3, 7+2) = 8
        assert (a * b).cutoff == 8

    def test_scale_by_zero_gives_zero(self):
        a = tser({(1,): 1, (4,): 2}, 9)
        z = a.scale(Fraction(0))
        assert z.is_zero() and z.cutoff == 9


# ---------------------------------------------------------------------------
# invert
# ---------------------------------------------------------------------------

class TestInvert:
    def test_geometric(self):
        a = tser({(0,): 1, (1,): -1}, 6)
        inv = a.invert()
        assert inv == tser({(k,): 1 for k in range(7)}, 6)

    def test_pure_monomial(self):
        a = tser({(2,): 1})
        assert a.invert() == tser({(-2,): 1})

    def test_unit_lambda_series(self):
        # 1/(3 t^-4 (1 + l3 t^3 / 3)): lambda-free part is t^4/3
        l3 = LamPoly.var("l3")
        a = tser({(-4,): 3, (-1,): l3}, 6)
        inv = a.invert()
        assert inv.coefficient((4,)) == LamPoly.const(Fraction(1, 3))
        check = (a * inv) - 1
        assert check.is_zero()

    def test_roundtrip(self):
        a = tser({(0,): 2, (1,): 5, (3,): -1}, 8)
        assert (a.invert().invert() - a).is_zero()

    def test_zero_leading_error(self):
        with pytest.raises(LeadingTermError):
            tser({}, 4).invert()

    def test_non_monomial_leading_error(self):
        ts2 = WeightedSeries(("t", "s"), (1, 1), {(1, 0): 1, (0, 1): -1}, 5)
        with pytest.raises(LeadingTermError):
            ts2.invert()


# ---------------------------------------------------------------------------
# nth_root
# ---------------------------------------------------------------------------

class TestNthRoot:
    def test_cbrt_monomial(self):
        a = tser({(-12,): 1})
        assert a.nth_root(3) == tser({(-4,): 1})

    def test_cbrt_unit_series_vs_binomial_oracle(self):
        l3 = LamPoly.var("l3")
        a = tser({(0,): 1, (3,): l3}, 12)
        r = a.nth_root(3)
        oracle = binomial_series_coeffs(Fraction(1, 3), 5)
        for k, ck in enumerate(oracle):
            want = LamPoly.const(ck) * l3**k if k else LamPoly.const(ck)
            got = r.coefficient((3 * k,))
            assert got == want, (k, got, want)
        assert ((r**3 - a)).is_zero()

    def test_sqrt_perfect_square(self):
        a = tser({(0,): 1, (1,): 2, (2,): 1}, 8)
        r = a.nth_root(2)
        assert r == tser({(0,): 1, (1,): 1}, 8)

    def test_branch_selection(self):
        a = tser({(3,): 8}, 6)
        r0 = a.nth_root(3)
        assert r0 == tser({(1,): 2}, 7)
        r1 = a.nth_root(3, branch=1)
        assert r1.coefficient((1,)) == 2 * ZETA

    def test_root_errors(self):
        with pytest.raises(RootBranchError):
            tser({(2,): 1}).nth_root(3)
        with pytest.raises(RootBranchError):
            tser({(0,): 2}, 4).nth_root(2)


# ---------------------------------------------------------------------------
# revert
# ---------------------------------------------------------------------------

class TestRevert:
    def test_identity(self):
        assert t_var(6).revert() == t_var(6)
        assert tser({(1,): 1}).revert() == tser({(1,): 1})

    def test_against_lagrange_inversion_oracle(self):
        a = tser({(1,): 1, (2,): 1}, 8)
        g = a.revert()
        oracle = lagrange_revert_coeffs({1: Fraction(1), 2: Fraction(1)}, 8)
        for n, cn in oracle.items():
            assert g.coefficient((n,)) == cn, n
        # catalan signs: u - u^2 + 2u^3 - 5u^4 + 14u^5
        assert [g.coefficient((n,)) for n in range(1, 6)] == [1, -1, 2, -5, 14]

    def test_negative_identity(self):
        a = tser({(1,): -1})
        assert a.revert() == tser({(1,): -1})

    def test_roundtrip_both_ways(self):
        a = tser({(1,): 2, (3,): -1, (4,): Fraction(1, 3)}, 10)
        g = a.revert()
        t = t_var(10)
        assert (a.substitute({"t": g}) - t).is_zero()
        assert (g.substitute({"t": a}) - t).is_zero()
        assert (g.revert() - a).is_zero()

    def test_revert_errors(self):
        with pytest.raises(ReversionError):
            tser({(2,): 1}, 5).revert()


# ---------------------------------------------------------------------------
# calculus
# ---------------------------------------------------------------------------

class TestCalculus:
    def test_integrate_power(self):
        a = tser({(4,): 1}, 9)
        assert a.integrate_in("t") == tser({(5,): Fraction(1, 5)}, 10)

    def test_derivative_of_half_t_squared(self):
        a = tser({(2,): Fraction(1, 2)})
        assert a.differentiate_in("t") == tser({(1,): 1})

    def test_residue_error(self):
        with pytest.raises(ResidueError):
            tser({(-1,): 1}).integrate_in("t")

    def test_roundtrip(self):
        a = tser({(-3,): 2, (0,): 1, (5,): Fraction(7, 2)}, 9)
        assert (a.integrate_in("t").differentiate_in("t") - a).is_zero()


# ---------------------------------------------------------------------------
# weights, substitution, serialization
# ---------------------------------------------------------------------------

class TestGradingAndMisc:
    def test_sato_weight_homogeneous(self):
        uvars = ("u1", "u2", "u3")
        uw = (5, 2, 1)
        s = WeightedSeries(
            uvars, uw, {(1, 0, 0): 1, (0, 2, 1): -1, (0, 0, 5): Fraction(1, 20)}
        )
        assert s.sato_weight() == 5
        l3 = LamPoly.var("l3")
        s2 = WeightedSeries(uvars, uw, {(1, 1, 1): l3})
        assert s2.sato_weight() == 5  # 5+2+1-3

    def test_inhomogeneous_flagged(self):
        s = tser({(1,): 1, (2,): 1})
        assert s.sato_weight() is None

    def test_weight_additivity_under_mul(self):
        uvars, uw = ("u2", "u3"), (2, 1)
        a = WeightedSeries(uvars, uw, {(1, 0): 1, (0, 2): 3})
        b = WeightedSeries(uvars, uw, {(1, 1): Fraction(1, 2), (0, 3): -2})
        assert a.sato_weight() == 2 and b.sato_weight() == 3
        assert (a * b).sato_weight() == 5

    def test_substitute_multivariate(self):
        uvars, uw = ("t", "s"), (1, 1)
        host = tser({(2,): 1, (1,): 1})
        t_plus_s = WeightedSeries(uvars, uw, {(1, 0): 1, (0, 1): 1})
        out = host.substitute({"t": t_plus_s})
        assert out == WeightedSeries(
            uvars, uw, {(2, 0): 1, (1, 1): 2, (0, 2): 1, (1, 0): 1, (0, 1): 1}
        )

    def test_lift_and_rename(self):
        a = tser({(3,): 5})
        big = a.lift(("t", "s"), (1, 1))
        assert big == WeightedSeries(("t", "s"), (1, 1), {(3, 0): 5})
        assert a.rename_vars({"t": "s"}).vars == ("s",)

    def test_json_round_shape(self):
        s = WeightedSeries(
            ("u1", "u2", "u3"),
            (5, 2, 1),
            {(1, 0, 0): 1, (0, 2, 1): -1, (0, 0, 5): Fraction(1, 20)},
            cutoff=5,
        )
        obj = s.to_json_obj()
        assert obj["vars"] == ["u1", "u2", "u3"]
        assert obj["cutoff"] == 5
        assert obj["terms"] == [
            {"exp": [0, 0, 5], "coef": "1/20"},
            {"exp": [0, 2, 1], "coef": "-1"},
            {"exp": [1, 0, 0], "coef": "1"},
        ]

    def test_evaluate_numeric(self):
        l3 = LamPoly.var("l3")
        s = tser({(2,): l3, (0,): 1})
        val = s.evaluate({"t": 2.0}, {"l3": 3.0, "l6": 0, "l9": 0, "l12": 0})
        assert abs(val - 13.0) < 1e-12


# ---------------------------------------------------------------------------
# property tests
# ---------------------------------------------------------------------------

coef_strategy = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def series_strategy(max_terms=4, exp_range=(0, 5), cutoff=8):
    return st.dictionaries(
        st.tuples(st.integers(*exp_range)),
        coef_strategy,
        min_size=0,
        max_size=max_terms,
    ).map(lambda d: tser(d, cutoff))


class TestProperties:
    @settings(max_examples=60, deadline=None)
    @given(series_strategy(), series_strategy(), series_strategy())
    def test_ring_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert ((a * b) * c).terms == (a * (b * c)).terms
        lhs = a * (b + c)
        rhs = a * b + a * c
        assert lhs.terms == rhs.terms

    @settings(max_examples=40, deadline=None)
    @given(series_strategy(max_terms=3, exp_range=(0, 3)))
    def test_invert_involution(self, a):
        unit = tser({(0,): 1}, 8) + a * t_var(8)  # force unit constant term
        assert (unit.invert().invert() - unit).is_zero()

    @settings(max_examples=40, deadline=None)
    @given(series_strategy(max_terms=3, exp_range=(1, 4)), st.sampled_from([2, 3]))
    def test_root_power_roundtrip(self, a, n):
        unit = tser({(0,): 1}, 8) + a
        root = unit.nth_root(n)
        assert ((root**n) - unit).is_zero()

    @settings(max_examples=40, deadline=None)
    @given(series_strategy(max_terms=3, exp_range=(2, 5)))
    def test_revert_involution(self, tail):
        a = t_var(8) + tail
        assert (a.revert().revert() - a).is_zero()

    @settings(max_examples=40, deadline=None)
    @given(
        st.integers(min_value=-2, max_value=3),
        st.integers(min_value=-2, max_value=3),
        coef_strategy,
        coef_strategy,
    )
    def test_homogeneous_mul_weights_add(self, e1, e2, c1, c2):
        uvars, uw = ("u2", "u3"), (2, 1)
        if c1 == 0 or c2 == 0:
            return
        a = WeightedSeries(uvars, uw, {(e1, 0): c1, (0, 2 * e1): c2})
        b = WeightedSeries(uvars, uw, {(e2, e2): c1})
        wa, wb = a.sato_weight(), b.sato_weight()
        assert wa is not None and wb is not None
        assert (a * b).sato_weight() == wa + wb
