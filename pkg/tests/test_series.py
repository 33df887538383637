"""Truncated series sanity checks."""

from fractions import Fraction

import pytest

from virlog.errors import DomainError
from virlog.polynomial import UniPoly
from virlog.series import TruncatedSeries, exp_series, log1p_series


def test_exp_series_coefficients():
    e = exp_series("t", 5)
    assert [e.coeff(k) for k in range(5)] == [
        1,
        1,
        Fraction(1, 2),
        Fraction(1, 6),
        Fraction(1, 24),
    ]


def test_log_series_coefficients():
    l = log1p_series("t", 5)
    assert [l.coeff(k) for k in range(5)] == [
        0,
        1,
        Fraction(-1, 2),
        Fraction(1, 3),
        Fraction(-1, 4),
    ]


def test_log_inverts_exp_to_truncation_order():
    order = 9
    x = TruncatedSeries(UniPoly.x("t"), order)
    composed = log1p_series("t", order).compose(exp_series("t", order) - 1)
    assert composed == x


def test_exp_is_multiplicative():
    # exp(x)*exp(x) == exp(2x) termwise
    order = 8
    e = exp_series("t", order)
    doubled = TruncatedSeries(
        UniPoly("t", [Fraction(2**k, 1) for k in range(order)]), order
    )
    two_x_exp = exp_series("t", order)
    scaled = TruncatedSeries(
        UniPoly("t", [c * Fraction(2) ** k for k, c in enumerate(two_x_exp.poly.coeffs)]),
        order,
    )
    assert e * e == scaled


def test_truncation_guard():
    e = exp_series("t", 3)
    with pytest.raises(DomainError):
        e.coeff(3)


def test_compose_requires_zero_constant_term():
    e = exp_series("t", 4)
    with pytest.raises(DomainError):
        e.compose(e)
