"""Curve arithmetic: canonical forms, valuations, and chart splitting."""

from fractions import Fraction

import pytest

from pbundle.curve import (
    PointSpec,
    as_scalar,
    chart_split,
    is_regular_U,
    is_regular_V,
    make_curve,
    omega,
    val_at_O,
    val_at_point,
)
from pbundle.field import PrimeField, Rationals


@pytest.fixture
def curve():
    return make_curve(Rationals(), 2)


def test_legendre_parameter_validation():
    with pytest.raises(ValueError):
        make_curve(Rationals(), 0)
    with pytest.raises(ValueError):
        make_curve(Rationals(), 1)
    with pytest.raises(ValueError):
        PrimeField(3)


def test_curve_relation(curve):
    x, y = curve.x(), curve.y()
    assert y * y == x * (x - 1) * (x - 2)


def test_canonical_form_reduces_lowest_terms(curve):
    x, y = curve.x(), curve.y()
    q = x * (x - 1) * (x - 2)
    # q(x)/y = y in lowest terms
    h = q * curve.y_inv()
    assert h == y
    assert h.m == 0
    assert curve.y_inv() * y == curve.one()


def test_arithmetic_and_exact_division(curve):
    x, y = curve.x(), curve.y()
    h = (x + y) * (x - y)
    assert h == x * x - x * (x - 1) * (x - 2)
    g = (x + y) ** 2
    assert g.exact_div(x + y) == x + y
    with pytest.raises(ArithmeticError):
        x.exact_div(y)


def test_evaluate_on_curve_points(curve):
    x, y = curve.x(), curve.y()
    # (x0, y0) = (2, 0) is a branch point; (lam = 2)
    assert x.evaluate(Fraction(2), Fraction(0)) == 2
    h = x * x * curve.y_inv()
    # a point with y != 0: x0 = -1 gives y^2 = -6, not rational; use x0 = 4: 4*3*2 = 24
    with pytest.raises(ZeroDivisionError):
        h.evaluate(Fraction(2), Fraction(0))


def test_omega_divisor(curve):
    w = omega(curve)
    assert val_at_point(w, PointSpec.T(0)) == 3
    assert val_at_point(w, PointSpec.T(1)) == -1
    assert val_at_point(w, PointSpec.T(2)) == -1
    assert val_at_O(w) == -1
    # degree of the divisor of a function is zero: 3 - 1 - 1 - 1 = 0
    assert 3 - 1 - 1 + val_at_O(w) == 0


def test_val_at_affine_point(curve):
    x = curve.x()
    with pytest.raises(ValueError):
        val_at_point(x, PointSpec.affine(5, 1))  # not on the curve
    # x vanishes doubly at the branch point T0 = (0,0)
    assert val_at_point(x, PointSpec.T(0)) == 2
    assert val_at_point(curve.y(), PointSpec.T(1)) == 1


def test_regularity_predicates(curve):
    x, y = curve.x(), curve.y()
    w = omega(curve)
    assert is_regular_U(x) and is_regular_U(y)
    assert not is_regular_U(w)
    assert not is_regular_V(x) and not is_regular_V(y)
    assert not is_regular_V(w)
    assert is_regular_V(curve.y_inv())
    assert is_regular_V(curve.one())
    assert as_scalar(curve.const(7)) == 7
    assert as_scalar(x) is None


def test_chart_split_of_omega_powers(curve):
    w = omega(curve)
    u, c, v = chart_split(w)
    assert u.is_zero() and v.is_zero() and c == 1
    # even powers of omega are rational in x, so no omega class survives
    for e in (2, 4, 6):
        u, c, v = chart_split(w ** e)
        assert c == 0
        assert is_regular_U(u) and is_regular_V(v)
        assert u + v == w ** e
    u3, c3, v3 = chart_split(w ** 3)
    assert c3 == 6
    assert u3 + 6 * w + v3 == w ** 3
    u5, c5, v5 = chart_split(w ** 5)
    assert c5 == 48


def test_chart_split_recombines(curve):
    x, y = curve.x(), curve.y()
    w = omega(curve)
    h = x * x * y * curve.y_inv() ** 3 + 5 * w + x
    u, c, v = chart_split(h)
    assert is_regular_U(u)
    assert is_regular_V(v)
    assert u + curve.const(c) * w + v == h


def test_omega_fifth_power_reduction_char5():
    curve = make_curve(PrimeField(5), 2)
    x, y = curve.x(), curve.y()
    w = omega(curve)
    yi = curve.y_inv()
    expected = (
        -y + x * y + x * x * yi ** 5 + 2 * x * x * yi ** 3 - x * yi + yi - 2 * w
    )
    assert w ** 5 == expected
    u, c, v = chart_split(w ** 5)
    assert c == -2
    assert u == x * y - y
    assert v == x * x * yi ** 5 + 2 * x * x * yi ** 3 - x * yi + yi
