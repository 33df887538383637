"""The logarithmic Witt algebra, its central extensions, and vacuum
expectation values.

Generators t^(i)(m) carry a log index i and a mode m, with bracket

    [t^(i)(m), t^(j)(n)] = (m-n) t^(i+j)(m+n) + (j-i) t^(i+j-1)(m+n)

plus an optional central term: either the printed closed-form cocycle
(valid only for log indices <= 1) or the Gelfand-Fuchs residue cocycle
(1/12) Res(f''' g) computed through the vector-field realization
t^(i)(m) -> t^i exp(-mt) d/dt, which is defined everywhere and serves as
ground truth.  The two differ by a global sign on every nonzero pair we
can compare; wlog_deviations collects those pairs.

The vacuum vector v_b is annihilated by every generator with mode m >= 0,
generators with m < 0 create, and the central element acts by the symbol
b.  This is the convention under which the printed pairing value 2b/3
comes out on the nose; see the vacuum_expectation docstring.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations_with_replacement

from .errors import DomainError, ParseError
from .polynomial import (
    Coeff,
    MultiPoly,
    coeff_from_json,
    coeff_to_json,
    is_zero_coeff,
    render_coeff,
    sym,
)
from .rational import render_rational

CENTRAL = "b"


def _check_generator(gen):
    if gen == CENTRAL:
        return gen
    try:
        i, m = gen
    except (TypeError, ValueError) as exc:
        raise DomainError(f"not a generator: {gen!r}") from exc
    if not (isinstance(i, int) and isinstance(m, int)):
        raise DomainError(f"generator indices must be integers, got {gen!r}")
    return (i, m)


class WLogElement:
    """Finite combination of generators plus a central coefficient."""

    __slots__ = ("terms", "central")

    def __init__(self, terms=None, central=Fraction(0)):
        clean: dict = {}
        for gen, coeff in (terms or {}).items():
            if gen == CENTRAL:
                raise DomainError("central coefficient goes in the central slot")
            i, m = _check_generator(gen)
            if not is_zero_coeff(coeff):
                clean[(i, m)] = coeff
        self.terms = clean
        self.central = central if not is_zero_coeff(central) else Fraction(0)

    @classmethod
    def generator(cls, i: int, m: int, coeff=Fraction(1)) -> "WLogElement":
        return cls({(i, m): coeff})

    @classmethod
    def central_element(cls, coeff=Fraction(1)) -> "WLogElement":
        return cls({}, coeff)

    def is_zero(self) -> bool:
        return not self.terms and is_zero_coeff(self.central)

    def __eq__(self, other):
        if not isinstance(other, WLogElement):
            return NotImplemented
        return self.terms == other.terms and self.central == other.central

    def __add__(self, other: "WLogElement") -> "WLogElement":
        out = dict(self.terms)
        for gen, coeff in other.terms.items():
            s = out.get(gen, Fraction(0)) + coeff
            if is_zero_coeff(s):
                out.pop(gen, None)
            else:
                out[gen] = s
        return WLogElement(out, self.central + other.central)

    def __sub__(self, other: "WLogElement") -> "WLogElement":
        return self + other.scale(Fraction(-1))

    def scale(self, factor) -> "WLogElement":
        if is_zero_coeff(factor):
            return WLogElement()
        return WLogElement(
            {gen: c * factor for gen, c in self.terms.items()},
            self.central * factor,
        )

    def _ordered(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def render(self) -> str:
        if self.is_zero():
            return "0"
        chunks = []
        for (i, m), coeff in self._ordered():
            body = f"t^({i})({m})"
            text = render_coeff(coeff)
            if isinstance(coeff, MultiPoly) and not coeff.is_constant():
                chunks.append(f"({text})*{body}")
            elif text == "1":
                chunks.append(body)
            elif text == "-1":
                chunks.append(f"-{body}")
            else:
                chunks.append(f"{text}*{body}")
        if not is_zero_coeff(self.central):
            text = render_coeff(self.central)
            if isinstance(self.central, MultiPoly) and not self.central.is_constant():
                chunks.append(f"({text})*b")
            elif text == "1":
                chunks.append("b")
            elif text == "-1":
                chunks.append("-b")
            else:
                chunks.append(f"{text}*b")
        return " + ".join(chunks).replace("+ -", "- ")

    __repr__ = render

    def to_json(self) -> dict:
        return {
            "terms": [
                {"i": i, "m": m, "coeff": coeff_to_json(c)}
                for (i, m), c in self._ordered()
            ],
            "central": coeff_to_json(self.central),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "WLogElement":
        try:
            return cls(
                {(t["i"], t["m"]): coeff_from_json(t["coeff"]) for t in obj["terms"]},
                coeff_from_json(obj["central"]),
            )
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed element object: {exc}") from exc


# -- cocycles ---------------------------------------------------------------


def cocycle_closed_form(a, b) -> Fraction:
    """The printed closed-form cocycle.

    The formula parametrizes generators as t^(1-i)(-m) with i, j >= 0, so
    it only covers log indices <= 1; outside that it has no unambiguous
    meaning and we refuse (use the residue cocycle there).
    """
    a, b = _check_generator(a), _check_generator(b)
    if a == CENTRAL or b == CENTRAL:
        return Fraction(0)
    (a1, p1), (a2, p2) = a, b
    i, m = 1 - a1, -p1
    j, n = 1 - a2, -p2
    if i < 0 or j < 0:
        raise DomainError("log index above 1: use residue cocycle")
    total = Fraction(0)
    for r in range(i + j + 1):
        kernel = (i - r) ** 3 - (i - r)
        if kernel == 0:
            continue
        total += Fraction(m**r * n ** (i + j - r) * kernel) / (
            12 * math.factorial(i + j - r) * math.factorial(r)
        )
    return total


class LaurentField:
    """Finite combination of t^k exp(s t); supports exactly the operations
    the residue cocycle needs."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: dict = {}
        for (k, s), coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff != 0:
                clean[(int(k), Fraction(s))] = coeff
        self.terms = clean

    @classmethod
    def from_generator(cls, gen) -> "LaurentField":
        i, m = _check_generator(gen)
        return cls({(i, Fraction(-m)): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, LaurentField):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "LaurentField") -> "LaurentField":
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            s = out.get(key, Fraction(0)) + coeff
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
        return LaurentField(out)

    def scale(self, factor) -> "LaurentField":
        factor = Fraction(factor)
        if factor == 0:
            return LaurentField()
        return LaurentField({key: c * factor for key, c in self.terms.items()})

    def __sub__(self, other: "LaurentField") -> "LaurentField":
        return self + other.scale(-1)

    def __mul__(self, other: "LaurentField") -> "LaurentField":
        out: dict = {}
        for (k1, s1), c1 in self.terms.items():
            for (k2, s2), c2 in other.terms.items():
                key = (k1 + k2, s1 + s2)
                s = out.get(key, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(key, None)
                else:
                    out[key] = s
        return LaurentField(out)

    def derivative(self) -> "LaurentField":
        out: dict = {}
        for (k, s), c in self.terms.items():
            for key, q in (((k - 1, s), k * c), ((k, s), s * c)):
                if q == 0:
                    continue
                acc = out.get(key, Fraction(0)) + q
                if acc == 0:
                    out.pop(key, None)
                else:
                    out[key] = acc
        return LaurentField(out)

    def residue(self) -> Fraction:
        """Exact coefficient of t^(-1) after expanding every exponential."""
        total = Fraction(0)
        for (k, s), c in self.terms.items():
            if s == 0:
                if k == -1:
                    total += c
            elif k <= -1:
                # t^k exp(st): the t^(-1) coefficient is s^(-1-k)/(-1-k)!
                order = -1 - k
                total += c * s**order / math.factorial(order)
        return total

    def bracket(self, other: "LaurentField") -> "LaurentField":
        """Vector-field bracket [f d/dt, g d/dt] = (f g' - g f') d/dt."""
        return self * other.derivative() - other * self.derivative()


def cocycle_residue(a, b) -> Fraction:
    """(1/12) Res(f''' g) through the vector-field realization; ground truth."""
    a, b = _check_generator(a), _check_generator(b)
    if a == CENTRAL or b == CENTRAL:
        return Fraction(0)
    f = LaurentField.from_generator(a)
    g = LaurentField.from_generator(b)
    f3 = f.derivative().derivative().derivative()
    return (f3 * g).residue() / 12


_COCYCLES = {
    "none": lambda a, b: Fraction(0),
    "closed": cocycle_closed_form,
    "residue": cocycle_residue,
}


def _cocycle_fn(mode: str):
    try:
        return _COCYCLES[mode]
    except KeyError:
        raise DomainError(f"unknown cocycle mode {mode!r}") from None


def wlog_bracket(a, b, cocycle: str = "none") -> WLogElement:
    """Bracket of two generators (or elements, extended bilinearly)."""
    fn = _cocycle_fn(cocycle)
    if isinstance(a, WLogElement) or isinstance(b, WLogElement):
        if not isinstance(a, WLogElement):
            a = _element_of(a)
        if not isinstance(b, WLogElement):
            b = _element_of(b)
        out = WLogElement()
        for g1, c1 in a.terms.items():
            for g2, c2 in b.terms.items():
                out = out + wlog_bracket(g1, g2, cocycle).scale(c1 * c2)
        return out  # central parts bracket to zero
    a, b = _check_generator(a), _check_generator(b)
    if a == CENTRAL or b == CENTRAL:
        return WLogElement()
    (i, m), (j, n) = a, b
    terms: dict = {}
    if m != n:
        terms[(i + j, m + n)] = Fraction(m - n)
    if i != j:
        key = (i + j - 1, m + n)
        terms[key] = terms.get(key, Fraction(0)) + (j - i)
    return WLogElement(terms, fn(a, b))


def _element_of(gen) -> WLogElement:
    gen = _check_generator(gen)
    if gen == CENTRAL:
        return WLogElement.central_element()
    return WLogElement.generator(*gen)


def antiinvolution(e) -> WLogElement:
    """t^(i)(m) -> (-1)^i t^(i)(-m), linearly; fixes the central element."""
    if not isinstance(e, WLogElement):
        e = _element_of(e)
    out: dict = {}
    for (i, m), coeff in e.terms.items():
        sign = Fraction(-1) if i % 2 else Fraction(1)
        key = (i, -m)
        s = out.get(key, Fraction(0)) + coeff * sign
        if is_zero_coeff(s):
            out.pop(key, None)
        else:
            out[key] = s
    return WLogElement(out, e.central)


def antiinvolution_word(word) -> tuple:
    """Reverse a word of generators and map each through the involution;
    returns (sign, mapped word) since each generator maps to a signed
    generator."""
    sign = Fraction(1)
    out = []
    for gen in reversed([_check_generator(g) for g in word]):
        if gen == CENTRAL:
            out.append(gen)
            continue
        i, m = gen
        if i % 2:
            sign = -sign
        out.append((i, -m))
    return sign, tuple(out)


# -- jacobi and deviation scans ---------------------------------------------


def check_jacobi(bound: int, cocycle: str = "none") -> dict:
    """Scan [[x,y],z] + [[y,z],x] + [[z,x],y] = 0 over all generator triples
    with |i|, |m| <= bound.  With a cocycle the central component of the sum
    is exactly the 2-cocycle identity, so one scan verifies both.

    Pairs outside the closed form's domain are skipped and counted."""
    if bound < 1:
        raise DomainError("jacobi scan needs bound >= 1")
    gens = [
        (i, m)
        for i in range(-bound, bound + 1)
        for m in range(-bound, bound + 1)
    ]
    checked = skipped = 0
    violations = []
    for x, y, z in combinations_with_replacement(gens, 3):
        try:
            total = (
                wlog_bracket(wlog_bracket(x, y, cocycle), _element_of(z), cocycle)
                + wlog_bracket(wlog_bracket(y, z, cocycle), _element_of(x), cocycle)
                + wlog_bracket(wlog_bracket(z, x, cocycle), _element_of(y), cocycle)
            )
        except DomainError:
            skipped += 1
            continue
        checked += 1
        if not total.is_zero():
            violations.append([list(x), list(y), list(z)])
    return {
        "bound": bound,
        "cocycle": cocycle,
        "checked": checked,
        "skipped": skipped,
        "violations": violations,
    }


def wlog_deviations(bound: int = 3) -> list:
    """Pairs within the closed form's domain where it disagrees with the
    residue cocycle, over |i|, |m| <= bound."""
    out = []
    gens = [
        (i, m)
        for i in range(-bound, bound + 1)
        for m in range(-bound, bound + 1)
    ]
    for a in gens:
        for b in gens:
            try:
                closed = cocycle_closed_form(a, b)
            except DomainError:
                continue
            residue = cocycle_residue(a, b)
            if closed != residue:
                out.append(
                    {
                        "pair": [list(a), list(b)],
                        "closed": render_rational(closed),
                        "residue": render_rational(residue),
                    }
                )
    return out


# -- vacuum expectation -----------------------------------------------------


def vacuum_expectation(word, cocycle: str = "residue") -> Coeff:
    """Scalar coefficient of the vacuum after applying a word of generators.

    The vacuum v_b is killed by every t^(i)(m) with m >= 0 and the central
    element acts by the symbol b; generators with m < 0 create.  The word
    acts rightmost factor first, annihilators commute rightward through
    creation strings via the bracket (with the chosen cocycle), and any
    state still carrying creation factors pairs to zero.
    """
    fn = _cocycle_fn(cocycle)

    def apply_gen(gen, state):
        out: dict = {}

        def add(tup, coeff):
            s = out.get(tup, Fraction(0)) + coeff
            if is_zero_coeff(s):
                out.pop(tup, None)
            else:
                out[tup] = s

        for tup, coeff in state.items():
            for tup2, c2 in _gen_on_tuple(gen, tup, fn).items():
                add(tup2, coeff * c2)
        return out

    state = {(): Fraction(1)}
    for gen in reversed([_check_generator(g) for g in word]):
        state = apply_gen(gen, state)
    return state.get((), Fraction(0))


def _gen_on_tuple(gen, tup: tuple, fn) -> dict:
    """One generator applied to a creation string; {creation tuple: Coeff}."""
    if gen == CENTRAL:
        return {tup: sym("b")}
    i, m = gen
    if m < 0:
        return {(gen,) + tup: Fraction(1)}
    if not tup:
        return {}
    head, rest = tup[0], tup[1:]
    out: dict = {}

    def add(tup2, coeff):
        s = out.get(tup2, Fraction(0)) + coeff
        if is_zero_coeff(s):
            out.pop(tup2, None)
        else:
            out[tup2] = s

    # commutator part: [gen, head] acting on the rest
    (hi, hm) = head
    if m != hm:
        for tup2, c2 in _gen_on_tuple((i + hi, m + hm), rest, fn).items():
            add(tup2, Fraction(m - hm) * c2)
    if i != hi:
        for tup2, c2 in _gen_on_tuple((i + hi - 1, m + hm), rest, fn).items():
            add(tup2, Fraction(hi - i) * c2)
    central = fn(gen, head)
    if central != 0:
        add(rest, central * sym("b"))
    # straight-through part: head (a creator) times gen acting deeper
    for tup2, c2 in _gen_on_tuple(gen, rest, fn).items():
        add((head,) + tup2, c2)
    return out


def wlog_pairing(left_word, right_word, cocycle: str = "residue") -> Coeff:
    """Shapovalov-style pairing <(left word) v_b, (right word) v_b> through
    the anti-involution."""
    sign, mapped = antiinvolution_word(left_word)
    value = vacuum_expectation(list(mapped) + list(right_word), cocycle)
    return value * sign
