"""Truncated formal power series with exact rational coefficients.

A TruncatedSeries is a UniPoly together with a truncation order: terms of
degree >= order are unknown and silently dropped by every operation.  This is
enough for the series manipulations the package needs (exp, log(1+x), products
and compositions checked to finite order in tests).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .errors import DomainError
from .polynomial import UniPoly


class TruncatedSeries:
    __slots__ = ("poly", "order")

    def __init__(self, poly: UniPoly, order: int):
        if order < 0:
            raise DomainError("truncation order must be nonnegative")
        self.order = order
        self.poly = UniPoly(poly.var, poly.coeffs[:order])

    @classmethod
    def from_coeffs(cls, var: str, coeffs, order: int) -> "TruncatedSeries":
        return cls(UniPoly(var, coeffs), order)

    @property
    def var(self) -> str:
        return self.poly.var

    def coeff(self, k: int):
        if k >= self.order:
            raise DomainError(f"coefficient {k} is beyond truncation order {self.order}")
        return self.poly.coeff(k)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries(UniPoly.const(self.var, other), self.order)
        order = min(self.order, other.order)
        return TruncatedSeries(self.poly + other.poly, order)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(-self.poly, self.order)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries(UniPoly.const(self.var, other), self.order)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries(self.poly * other, self.order)
        order = min(self.order, other.order)
        return TruncatedSeries(self.poly * other.poly, order)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.poly == other.poly

    def __hash__(self):
        return hash((self.order, self.poly))

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """self(inner); inner must have zero constant term."""
        if inner.poly.coeff(0) != 0:
            raise DomainError("series composition needs zero constant term")
        order = min(self.order, inner.order)
        acc = TruncatedSeries(UniPoly.zero(inner.var), order)
        power = TruncatedSeries(UniPoly.const(inner.var, 1), order)
        for k in range(min(order, self.poly.degree() + 1)):
            acc = acc + power * self.poly.coeff(k)
            power = power * inner
        return acc

    def render(self) -> str:
        text = self.poly.render()
        return f"{text} + O({self.var}^{self.order})"

    __repr__ = render


def exp_series(var: str, order: int) -> TruncatedSeries:
    """exp(x) truncated: sum x^k / k! for k < order."""
    coeffs = [Fraction(1, factorial(k)) for k in range(order)]
    return TruncatedSeries.from_coeffs(var, coeffs, order)


def log1p_series(var: str, order: int) -> TruncatedSeries:
    """log(1+x) truncated: sum (-1)^(k+1) x^k / k for 1 <= k < order."""
    coeffs = [Fraction(0)] + [
        Fraction((-1) ** (k + 1), k) for k in range(1, order)
    ]
    return TruncatedSeries.from_coeffs(var, coeffs, order)
