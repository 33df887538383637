"""Exact rational scalars.

The scalar type is the stdlib Fraction: arbitrary precision, always in lowest
terms with positive denominator, and `str()` already renders the canonical
"p/q" (or "p" when q == 1).  This module adds the strict parser used at every
external boundary: only integer or p/q literals are accepted, never floats,
so no value in the package can silently pass through binary floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse "p" or "p/q" into a Fraction; anything else raises ParseError."""
    if isinstance(text, Fraction):
        return text
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ParseError(f"not an exact rational literal: {text!r}")
    num = int(m.group(1))
    if m.group(2) is None:
        return Fraction(num)
    den = int(m.group(2))
    if den == 0:
        raise ParseError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def render_rational(q: Fraction) -> str:
    # Fraction.__str__ is already the canonical form.
    return str(q)
