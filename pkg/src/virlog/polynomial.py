"""Sparse multivariate and dense univariate polynomials over exact rationals.

MultiPoly is a sparse polynomial over a fixed symbol registry:

    terms: dict mapping exponent tuples to nonzero Fraction coefficients
    vars:  the symbols in play, always kept in registry order

All arithmetic is exact; there is no floating point anywhere in this package.
The canonical term order is graded lexicographic (total degree first, then
lexicographic on the exponent vector, most significant variable first), used
both for deterministic serialization and for the leading term in exact
division.  Exact division is what makes fraction-free (Bareiss) elimination
work over the polynomial ring.

UniPoly is a dense univariate polynomial (coefficient list indexed by power)
whose coefficients are Fractions or MultiPolys.  Root finding and gcd require
Fraction coefficients.

Coefficients elsewhere in the package are "Coeff" = Fraction | MultiPoly; the
operator overloads below make the two interoperate (Fraction op MultiPoly
falls back to the reflected MultiPoly method).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

from .errors import DomainError, ParseError, SymbolError
from .rational import parse_rational, render_rational

# The fixed symbol registry.  Order matters: it is the significance order for
# the graded-lex term order, and vars tuples are always subsequences of it.
REGISTRY = ("c", "h", "h1", "t", "b", "lam", "mu", "beta", "s")
_REG_INDEX = {name: i for i, name in enumerate(REGISTRY)}

Coeff = Union[Fraction, "MultiPoly"]


def _check_vars(vars: tuple) -> tuple:
    idx = -1
    for v in vars:
        if v not in _REG_INDEX:
            raise SymbolError(f"unknown symbol {v!r}; registry is {REGISTRY}")
        if _REG_INDEX[v] <= idx:
            raise SymbolError(f"vars not in registry order: {vars}")
        idx = _REG_INDEX[v]
    return tuple(vars)


def _merge_vars(a: tuple, b: tuple) -> tuple:
    if a == b:
        return a
    merged = sorted(set(a) | set(b), key=_REG_INDEX.__getitem__)
    return tuple(merged)


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: Iterable[str] = (), terms: dict | None = None):
        self.vars = _check_vars(tuple(vars))
        clean = {}
        if terms:
            width = len(self.vars)
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != width or any(e < 0 for e in exps):
                    raise SymbolError(f"bad exponent tuple {exps} for vars {self.vars}")
                q = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
                if q != 0:
                    clean[exps] = clean.get(exps, Fraction(0)) + q
                    if clean[exps] == 0:
                        del clean[exps]
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, value) -> "MultiPoly":
        q = Fraction(value)
        if q == 0:
            return cls((), {})
        return cls((), {(): q})

    @classmethod
    def symbol(cls, name: str) -> "MultiPoly":
        if name not in _REG_INDEX:
            raise SymbolError(f"unknown symbol {name!r}; registry is {REGISTRY}")
        return cls((name,), {(1,): Fraction(1)})

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exps) for exps in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise SymbolError(f"not a constant: {self.render()}")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        # degree of the zero polynomial is -1 by convention
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: str) -> int:
        if var not in self.vars:
            return 0 if self.terms else -1
        i = self.vars.index(var)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def sorted_terms(self):
        """Terms in descending graded-lex order (canonical listing)."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def leading(self):
        """(exps, coeff) of the graded-lex leading term; zero poly raises."""
        if not self.terms:
            raise DomainError("zero polynomial has no leading term")
        exps = max(self.terms, key=lambda e: (sum(e), e))
        return exps, self.terms[exps]

    def _aligned(self, vars: tuple) -> dict:
        """Re-express terms over a superset variable tuple."""
        if vars == self.vars:
            return self.terms
        pos = [vars.index(v) for v in self.vars]
        width = len(vars)
        out = {}
        for exps, coeff in self.terms.items():
            new = [0] * width
            for p, e in zip(pos, exps):
                new[p] = e
            out[tuple(new)] = coeff
        return out

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        vars = _merge_vars(self.vars, other.vars)
        a = self._aligned(vars)
        b = other._aligned(vars)
        out = dict(a)
        for exps, coeff in b.items():
            s = out.get(exps, Fraction(0)) + coeff
            if s == 0:
                out.pop(exps, None)
            else:
                out[exps] = s
        return MultiPoly(vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_constant():
            q = other.constant_value()
            if q == 0:
                return MultiPoly(self.vars, {})
            return MultiPoly(self.vars, {e: c * q for e, c in self.terms.items()})
        if self.is_constant():
            return other * self
        vars = _merge_vars(self.vars, other.vars)
        a = self._aligned(vars)
        b = other._aligned(vars)
        out = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return MultiPoly(vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise DomainError(f"polynomial power must be a nonnegative int, got {n!r}")
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __truediv__(self, other):
        # scalar division only; polynomial division goes through divexact
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if q == 0:
                raise ZeroDivisionError("division by zero scalar")
            return self * Fraction(1, 1) * Fraction(q.denominator, q.numerator)
        return NotImplemented

    def divexact(self, other) -> "MultiPoly":
        """Exact polynomial division; raises DomainError if not divisible."""
        other = self._coerce(other)
        if other is None or other.is_zero():
            raise DomainError("division by zero polynomial")
        if other.is_constant():
            return self / other.constant_value()
        vars = _merge_vars(self.vars, other.vars)
        rem = MultiPoly(vars, self._aligned(vars))
        den = MultiPoly(vars, other._aligned(vars))
        dl_exps, dl_coeff = den.leading()
        quot: dict = {}
        while not rem.is_zero():
            rl_exps, rl_coeff = rem.leading()
            diff = tuple(a - b for a, b in zip(rl_exps, dl_exps))
            if any(d < 0 for d in diff):
                raise DomainError("inexact polynomial division")
            q = rl_coeff / dl_coeff
            quot[diff] = quot.get(diff, Fraction(0)) + q
            rem = rem - MultiPoly(vars, {diff: q}) * den
        return MultiPoly(vars, quot)

    # -- calculus and substitution ----------------------------------------

    def derivative(self, var: str) -> "MultiPoly":
        if var not in _REG_INDEX:
            raise SymbolError(f"unknown symbol {var!r}")
        if var not in self.vars:
            return MultiPoly(self.vars, {})
        i = self.vars.index(var)
        out = {}
        for exps, coeff in self.terms.items():
            e = exps[i]
            if e == 0:
                continue
            new = exps[:i] + (e - 1,) + exps[i + 1:]
            s = out.get(new, Fraction(0)) + coeff * e
            if s == 0:
                out.pop(new, None)
            else:
                out[new] = s
        return MultiPoly(self.vars, out)

    def subs(self, mapping: dict) -> Coeff:
        """Substitute symbols by Coeff values; unmapped symbols stay symbolic."""
        acc: Coeff = Fraction(0)
        for exps, coeff in self.sorted_terms():
            factor: Coeff = coeff
            for v, e in zip(self.vars, exps):
                if e == 0:
                    continue
                val = mapping.get(v)
                if val is None:
                    val = MultiPoly.symbol(v)
                if isinstance(val, int):
                    val = Fraction(val)
                factor = factor * val ** e
            acc = acc + factor
        return acc

    def evaluate(self, mapping: dict) -> Fraction:
        """Full numeric evaluation; all variables must be mapped to rationals."""
        missing = [v for v in self.vars if self.degree_in(v) > 0 and v not in mapping]
        if missing:
            raise SymbolError(f"unassigned symbols in evaluation: {missing}")
        result = self.subs({k: Fraction(v) for k, v in mapping.items()})
        return as_fraction(result)

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        if not isinstance(other, MultiPoly):
            return NotImplemented
        vars = _merge_vars(self.vars, other.vars)
        return self._aligned(vars) == other._aligned(vars)

    def __hash__(self):
        # hash must agree with == across different vars paddings: reduce to
        # the support variables only
        used = [i for i in range(len(self.vars)) if any(e[i] for e in self.terms)]
        key = frozenset(
            (tuple(e[i] for i in used), c) for e, c in self.terms.items()
        )
        if not key:
            return hash(Fraction(0))
        if self.is_constant():
            return hash(self.constant_value())
        return hash((tuple(self.vars[i] for i in used), key))

    def __bool__(self):
        return bool(self.terms)

    # -- rendering ---------------------------------------------------------

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in self.sorted_terms():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}"
                for v, e in zip(self.vars, exps)
                if e > 0
            )
            if not mono:
                body = render_rational(abs(coeff))
            elif abs(coeff) == 1:
                body = mono
            else:
                body = f"{render_rational(abs(coeff))}*{mono}"
            sign = "-" if coeff < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    __repr__ = render

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [
                {"coeff": render_rational(c), "exps": list(e)}
                for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "MultiPoly":
        try:
            vars = tuple(obj["vars"])
            terms = {
                tuple(t["exps"]): parse_rational(t["coeff"]) for t in obj["terms"]
            }
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed polynomial object: {exc}") from exc
        return cls(vars, terms)


def sym(name: str) -> MultiPoly:
    return MultiPoly.symbol(name)


def as_fraction(x) -> Fraction:
    """Collapse a Coeff known to be constant to a Fraction."""
    if isinstance(x, MultiPoly):
        return x.constant_value()
    if isinstance(x, int):
        return Fraction(x)
    return x


def is_zero_coeff(x) -> bool:
    if isinstance(x, MultiPoly):
        return x.is_zero()
    return x == 0


def coeff_to_json(x):
    """Rational -> "p/q" string; polynomial -> schema object."""
    if isinstance(x, MultiPoly):
        return x.to_json()
    return render_rational(x)


def coeff_from_json(obj) -> Coeff:
    if isinstance(obj, str):
        return parse_rational(obj)
    if isinstance(obj, dict):
        return MultiPoly.from_json(obj)
    raise ParseError(f"expected rational string or polynomial object, got {obj!r}")


def render_coeff(x) -> str:
    return x.render() if isinstance(x, MultiPoly) else render_rational(x)


# ---------------------------------------------------------------------------
# dense univariate polynomials


class UniPoly:
    """Dense univariate polynomial; coeffs[k] is the coefficient of var**k."""

    __slots__ = ("var", "coeffs")

    def __init__(self, var: str, coeffs: Iterable = ()):
        self.var = str(var)
        cs = list(coeffs)
        while cs and is_zero_coeff(cs[-1]):
            cs.pop()
        self.coeffs = [
            c if isinstance(c, MultiPoly) else Fraction(c) for c in cs
        ]

    @classmethod
    def zero(cls, var: str) -> "UniPoly":
        return cls(var, ())

    @classmethod
    def const(cls, var: str, value) -> "UniPoly":
        return cls(var, (value,))

    @classmethod
    def x(cls, var: str) -> "UniPoly":
        return cls(var, (0, 1))

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def leading(self):
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def all_rational(self) -> bool:
        return all(not isinstance(c, MultiPoly) for c in self.coeffs)

    def _same_var(self, other: "UniPoly"):
        if self.var != other.var:
            raise SymbolError(f"variable mismatch: {self.var} vs {other.var}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = UniPoly.const(self.var, other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        self._same_var(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.var, [self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly(self.var, [-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = UniPoly.const(self.var, other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            return UniPoly(self.var, [c * other for c in self.coeffs])
        if not isinstance(other, UniPoly):
            return NotImplemented
        self._same_var(other)
        if self.is_zero() or other.is_zero():
            return UniPoly.zero(self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if is_zero_coeff(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(self.var, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise DomainError("power must be a nonnegative int")
        result = UniPoly.const(self.var, 1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = UniPoly.const(self.var, other)
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.var == other.var and len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.var, tuple(self.coeffs)))

    def derivative(self) -> "UniPoly":
        return UniPoly(self.var, [k * c for k, c in enumerate(self.coeffs)][1:])

    def evaluate(self, point):
        """Horner evaluation; point may be a Fraction or MultiPoly."""
        acc: Coeff = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def shift(self, b) -> "UniPoly":
        """Return p(x + b)."""
        acc = UniPoly.zero(self.var)
        xpb = UniPoly(self.var, (b, 1))
        for c in reversed(self.coeffs):
            acc = acc * xpb + c
        return acc

    def rename(self, var: str) -> "UniPoly":
        return UniPoly(var, self.coeffs)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lead = self.leading()
        if isinstance(lead, MultiPoly):
            raise DomainError("monic normalization needs rational coefficients")
        return self * Fraction(1, 1) * Fraction(lead.denominator, lead.numerator)

    def divmod(self, other: "UniPoly"):
        """Long division over rational coefficients: self = q*other + r."""
        self._same_var(other)
        if other.is_zero():
            raise DomainError("division by zero polynomial")
        if not (self.all_rational() and other.all_rational()):
            raise DomainError("polynomial division needs rational coefficients")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        d = other.coeffs
        while len(rem) >= len(d):
            factor = rem[-1] / d[-1]
            pos = len(rem) - len(d)
            q[pos] = factor
            for i, dc in enumerate(d):
                rem[pos + i] -= factor * dc
            while rem and rem[-1] == 0:
                rem.pop()
            if not rem:
                break
        return UniPoly(self.var, q), UniPoly(self.var, rem)

    def divexact(self, other: "UniPoly") -> "UniPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise DomainError("inexact univariate division")
        return q

    def render(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if is_zero_coeff(c):
                continue
            if k == 0:
                mono = ""
            elif k == 1:
                mono = self.var
            else:
                mono = f"{self.var}^{k}"
            if isinstance(c, MultiPoly):
                body = f"({c.render()})" + (f"*{mono}" if mono else "")
                parts.append(("+", body))
                continue
            if not mono:
                body = render_rational(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{render_rational(abs(c))}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        sign0, body0 = parts[0]
        text = ("-" if sign0 == "-" else "") + body0
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    __repr__ = render

    def to_json(self) -> dict:
        # same schema as MultiPoly: a single-variable term list
        return {
            "vars": [self.var],
            "terms": [
                {"coeff": coeff_to_json(c), "exps": [k]}
                for k in range(len(self.coeffs) - 1, -1, -1)
                if not is_zero_coeff(c := self.coeffs[k])
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "UniPoly":
        try:
            (var,) = obj["vars"]
            pairs = [(t["exps"][0], coeff_from_json(t["coeff"])) for t in obj["terms"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed univariate polynomial object: {exc}") from exc
        coeffs = [Fraction(0)] * (max((k for k, _ in pairs), default=-1) + 1)
        for k, c in pairs:
            coeffs[k] = coeffs[k] + c
        return cls(var, coeffs)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over the rationals (Euclid with monic normalization)."""
    if a.var != b.var:
        raise SymbolError(f"variable mismatch: {a.var} vs {b.var}")
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r
    if a.is_zero():
        return a
    return a.monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    """Monic product of the distinct irreducible factors of p."""
    if p.is_zero():
        raise DomainError("squarefree part of the zero polynomial")
    if p.degree() == 0:
        return UniPoly.const(p.var, 1)
    g = poly_gcd(p, p.derivative())
    if g.degree() == 0:
        return p.monic()
    return p.divexact(g).monic()


def _divisors(n: int):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: UniPoly):
    """All rational roots with multiplicities, plus the rootless residual.

    Returns (roots, residual) with roots a list of (Fraction, multiplicity)
    sorted by value and residual monic with no rational roots, so that
    p = lc * prod (x - r)^m * residual.
    """
    if p.is_zero():
        raise DomainError("root finding on the zero polynomial")
    if not p.all_rational():
        raise DomainError("root finding needs rational coefficients")
    var = p.var
    roots = []
    work = p.monic()

    # split off the power of x first
    k = 0
    while work.degree() >= 1 and work.coeff(0) == 0:
        work = work.divexact(UniPoly.x(var))
        k += 1
    if k:
        roots.append((Fraction(0), k))

    if work.degree() >= 1:
        # integerize: candidates a/b with a | trailing, b | leading
        from math import lcm

        den = lcm(*[c.denominator for c in work.coeffs])
        ints = [int(c * den) for c in work.coeffs]
        from math import gcd
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g:
            ints = [v // g for v in ints]
        trailing, leading = ints[0], ints[-1]
        seen = set()
        for a in _divisors(trailing):
            for b in _divisors(leading):
                for cand in (Fraction(a, b), Fraction(-a, b)):
                    if cand in seen:
                        continue
                    seen.add(cand)
                    if work.evaluate(cand) == 0:
                        mult = 0
                        factor = UniPoly(var, (-cand, 1))
                        while True:
                            q, r = work.divmod(factor)
                            if not r.is_zero():
                                break
                            work = q
                            mult += 1
                        roots.append((cand, mult))
    roots.sort(key=lambda rm: rm[0])
    residual = work.monic() if not work.is_zero() else work
    return roots, residual


def mpoly_derivative(p: MultiPoly, var: str) -> MultiPoly:
    return p.derivative(var)
