"""Virasoro enveloping-algebra calculus: PBW words, normal ordering,
and the transpose anti-involution.

Generators L(n), n an integer, with the relation

    [L(m), L(n)] = (m - n) L(m+n) + delta_{m+n,0} (m^3 - m)/12 C

and C central.  A word is a tuple of mode indices read left to right as an
operator product; the canonical (PBW) form has nondecreasing indices, so
creation modes L(-n) sit leftmost.  Straightening rewrites any word into
canonical form by repeated swaps; each swap either removes an inversion or
shortens the word, so the rewriting terminates.  Results per word are cached
since the structure constants do not depend on any module.

An UEAElement keeps only canonical words (the constructor straightens), which
makes normal_order idempotent and multiplication automatically canonical.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .errors import ParseError
from .polynomial import (
    Coeff,
    MultiPoly,
    coeff_from_json,
    coeff_to_json,
    is_zero_coeff,
    render_coeff,
)

Word = tuple  # tuple of mode indices


def bracket_modes(m: int, n: int):
    """[L(m), L(n)] as a list of (word, cpow, Fraction) triples."""
    out = []
    if m != n:
        out.append(((m + n,), 0, Fraction(m - n)))
    if m + n == 0:
        central = Fraction(m**3 - m, 12)
        if central != 0:
            out.append(((), 1, central))
    return out


_STRAIGHTEN_MEMO: dict = {}


def straighten_word(word: Word) -> dict:
    """Expand a raw word over canonical words: {(word, cpow): Fraction}."""
    word = tuple(word)
    cached = _STRAIGHTEN_MEMO.get(word)
    if cached is not None:
        return cached
    descent = next(
        (i for i in range(len(word) - 1) if word[i] > word[i + 1]), None
    )
    if descent is None:
        result = {(word, 0): Fraction(1)}
    else:
        i = descent
        a, b = word[i], word[i + 1]
        result = {}
        swapped = word[:i] + (b, a) + word[i + 2:]
        for key, q in straighten_word(swapped).items():
            result[key] = result.get(key, Fraction(0)) + q
        for mid, dpow, scale in bracket_modes(a, b):
            shorter = word[:i] + mid + word[i + 2:]
            for (w, p), q in straighten_word(shorter).items():
                key = (w, p + dpow)
                s = result.get(key, Fraction(0)) + q * scale
                if s == 0:
                    result.pop(key, None)
                else:
                    result[key] = s
    _STRAIGHTEN_MEMO[word] = result
    return result


def word_degree(word: Word) -> int:
    """L(0)-degree of the word: L(-n) raises by n."""
    return -sum(word)


class UEAElement:
    """Linear combination of canonical PBW words with Coeff coefficients.

    Keys are (word, central_power); the central element stays symbolic until
    a module specializes it.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        clean: dict = {}
        if terms:
            for (word, cpow), coeff in terms.items():
                if is_zero_coeff(coeff):
                    continue
                for (w, p), q in straighten_word(word).items():
                    key = (w, p + cpow)
                    s = clean.get(key, Fraction(0)) + coeff * q
                    if is_zero_coeff(s):
                        clean.pop(key, None)
                    else:
                        clean[key] = s
        self.terms = clean

    @classmethod
    def from_word(cls, modes: Iterable[int], coeff=Fraction(1), cpow: int = 0):
        return cls({(tuple(modes), cpow): coeff})

    @classmethod
    def generator(cls, n: int) -> "UEAElement":
        return cls.from_word((n,))

    @classmethod
    def central(cls) -> "UEAElement":
        return cls({((), 1): Fraction(1)})

    @classmethod
    def one(cls) -> "UEAElement":
        return cls({((), 0): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, UEAElement):
            return NotImplemented
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            s = out.get(key, Fraction(0)) + coeff
            if is_zero_coeff(s):
                out.pop(key, None)
            else:
                out[key] = s
        e = UEAElement()
        e.terms = out  # both inputs canonical, no restraightening needed
        return e

    def __neg__(self):
        e = UEAElement()
        e.terms = {k: -c for k, c in self.terms.items()}
        return e

    def __sub__(self, other):
        if not isinstance(other, UEAElement):
            return NotImplemented
        return self + (-other)

    def scale(self, factor) -> "UEAElement":
        if is_zero_coeff(factor):
            return UEAElement()
        e = UEAElement()
        e.terms = {k: c * factor for k, c in self.terms.items()}
        return e

    def __mul__(self, other):
        if not isinstance(other, UEAElement):
            return NotImplemented
        raw: dict = {}
        for (w1, p1), c1 in self.terms.items():
            for (w2, p2), c2 in other.terms.items():
                key = (w1 + w2, p1 + p2)
                s = raw.get(key, Fraction(0)) + c1 * c2
                raw[key] = s
        return UEAElement(raw)

    def bracket(self, other: "UEAElement") -> "UEAElement":
        return self * other - other * self

    def transpose(self) -> "UEAElement":
        """Anti-involution: L(n) -> L(-n), words reversed, C fixed."""
        raw = {}
        for (word, p), coeff in self.terms.items():
            flipped = tuple(-m for m in reversed(word))
            raw[(flipped, p)] = raw.get((flipped, p), Fraction(0)) + coeff
        return UEAElement(raw)

    def specialize_central(self, value) -> "UEAElement":
        """Replace C by a scalar (Rational or MultiPoly)."""
        raw: dict = {}
        for (word, p), coeff in self.terms.items():
            scaled = coeff * value**p if p else coeff
            key = (word, 0)
            s = raw.get(key, Fraction(0)) + scaled
            raw[key] = s
        return UEAElement(raw)

    def degrees(self):
        return sorted({word_degree(w) for (w, _p) in self.terms})

    def __eq__(self, other):
        if not isinstance(other, UEAElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _sorted_terms(self):
        return sorted(
            self.terms.items(), key=lambda kv: (len(kv[0][0]), kv[0][0], kv[0][1])
        )

    def render(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for (word, cpow), coeff in self._sorted_terms():
            factors = []
            idx = 0
            while idx < len(word):
                run = 1
                while idx + run < len(word) and word[idx + run] == word[idx]:
                    run += 1
                factors.append(
                    f"L({word[idx]})" if run == 1 else f"L({word[idx]})^{run}"
                )
                idx += run
            if cpow == 1:
                factors.append("C")
            elif cpow > 1:
                factors.append(f"C^{cpow}")
            body = "".join(factors) if factors else "1"
            coeff_text = render_coeff(coeff)
            if isinstance(coeff, MultiPoly) and not coeff.is_constant():
                chunks.append(f"({coeff_text})*{body}")
            elif coeff_text == "1" and factors:
                chunks.append(body)
            elif coeff_text == "-1" and factors:
                chunks.append(f"-{body}")
            elif factors:
                chunks.append(f"{coeff_text}*{body}")
            else:
                chunks.append(coeff_text)
        return " + ".join(chunks).replace("+ -", "- ")

    __repr__ = render

    def to_json(self) -> list:
        return [
            {"word": list(word), "cpow": cpow, "coeff": coeff_to_json(coeff)}
            for (word, cpow), coeff in self._sorted_terms()
        ]

    @classmethod
    def from_json(cls, obj: list) -> "UEAElement":
        try:
            raw = {
                (tuple(t["word"]), t.get("cpow", 0)): coeff_from_json(t["coeff"])
                for t in obj
            }
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed enveloping-algebra element: {exc}") from exc
        return cls(raw)


def normal_order(e: UEAElement) -> UEAElement:
    """Canonical form; UEAElements are already canonical, so this is identity
    on them, but it also accepts a raw {(word, cpow): coeff} dict."""
    if isinstance(e, UEAElement):
        return e
    return UEAElement(e)


def transpose(e: UEAElement) -> UEAElement:
    return e.transpose()
