"""Unit tests for the exact coefficient rings."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from trigonal34.coefficients import (
    LamPoly,
    QZeta,
    ZETA,
    coef_str,
    coef_weight,
    zeta_pow,
)

small_fracs = st.fractions(
    min_value=-4, max_value=4, max_denominator=6
)


class TestQZeta:
    def test_reduction_rule(self):
        assert ZETA * ZETA == QZeta(-1, -1)
        assert ZETA**3 == QZeta(1)
        assert 1 + ZETA + ZETA**2 == QZeta(0)

    def test_inverse(self):
        z = QZeta(Fraction(2, 3), Fraction(-1, 5))
        assert z * z.inverse() == QZeta(1)
        with pytest.raises(ZeroDivisionError):
            QZeta(0).inverse()

    def test_mixed_arithmetic_with_fractions(self):
        z = QZeta(1, 2)
        assert z + Fraction(1, 2) == QZeta(Fraction(3, 2), 2)
        assert Fraction(1, 2) + z == QZeta(Fraction(3, 2), 2)
        assert 3 * z == QZeta(3, 6)
        assert z / 2 == QZeta(Fraction(1, 2), 1)

    def test_zeta_pow(self):
        assert zeta_pow(0) == QZeta(1)
        assert zeta_pow(4) == ZETA
        assert zeta_pow(2) == QZeta(-1, -1)
        assert zeta_pow(-1) == zeta_pow(2)

    def test_to_complex(self):
        z = ZETA.to_complex()
        assert abs(z**3 - 1) < 1e-14
        assert abs(1 + z + z * z) < 1e-14

    @given(small_fracs, small_fracs, small_fracs, small_fracs)
    def test_conjugation_is_multiplicative(self, a, b, c, d):
        x, y = QZeta(a, b), QZeta(c, d)
        assert (x * y).conjugate() == x.conjugate() * y.conjugate()


class TestLamPoly:
    def test_weights(self):
        l3, l12 = LamPoly.var("l3"), LamPoly.var("l12")
        assert l3.weight() == -3
        assert (l3 * l3 * l12).weight() == -18
        assert (l3 + l12).weight() is None
        assert coef_weight(l3 * 2) == -3
        assert coef_weight(Fraction(5)) == 0

    def test_arithmetic(self):
        l3, l6 = LamPoly.var("l3"), LamPoly.var("l6")
        p = (l3 + 1) * (l3 - 1)
        assert p == l3 * l3 - 1
        assert (l3 * l6) * 0 == LamPoly()
        assert not (l3 - l3)

    def test_scalar_interop(self):
        l3 = LamPoly.var("l3")
        assert 2 * l3 == l3 + l3
        assert (l3 / 2) * 2 == l3
        z = ZETA * l3
        assert z == l3 * ZETA

    def test_evaluate(self):
        l3, l12 = LamPoly.var("l3"), LamPoly.var("l12")
        p = 2 * l3 * l3 + l12
        vals = {"l3": Fraction(1, 2), "l6": 0, "l9": 0, "l12": Fraction(-1)}
        assert p.evaluate(vals) == Fraction(-1, 2)
        assert abs(p.to_complex({k: complex(v) for k, v in vals.items()}) + 0.5) < 1e-15

    def test_canonical_string(self):
        l3, l6 = LamPoly.var("l3"), LamPoly.var("l6")
        p = l6 - 2 * l3 * l3 + LamPoly.const(Fraction(1, 2))
        # graded by descending lambda-weight contribution: constant first
        assert coef_str(p) == "1/2 + l6 - 2*l3^2"

    @given(small_fracs, small_fracs, small_fracs)
    def test_distributivity(self, a, b, c):
        l3, l9 = LamPoly.var("l3"), LamPoly.var("l9")
        p, q, r = a * l3 + b, b * l9 + c, c * l3 * l9 + a
        assert p * (q + r) == p * q + p * r
