"""Generalized Verma modules with Jordan top level, their Shapovalov forms,
singular vectors, radicals, homomorphism certificates, and density modules.

M_n(c,h) has top vectors v_1..v_n with

    L(k).v_i = 0 for k > 0,
    L(0).v_1 = h v_1,
    L(0).v_i = h v_i + v_{i-1} for i >= 2,

and C acting by the scalar c.  A basis vector at level N is labeled by a
partition of N (a weakly decreasing tuple) and a top index; the attached
vector multiplies mode operators smallest part first:

    B((2,1)) v_i = L(-1) L(-2) v_i

Basis order at a level: partitions listed in lexicographic order of their
decreasing part tuples, so (1,1,1) < (2,1) < (3), all paired with top index 1
first, then top index 2, etc.  This exact order (and the B convention above)
is what makes the jordan-size-2 level-3 Gram matrix come out block
upper-triangular with the L(-1)^3 norm 24h(h+1)(1+2h) in the corner.

The mode action is computed by a straightening recursion on the label, not
through the enveloping algebra; the two routes agree (tested) and this one
memoizes per (module, mode, label).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import DomainError, ParseError, ShapeError, SymbolError
from .linalg import ExactMatrix
from .polynomial import (
    Coeff,
    MultiPoly,
    coeff_from_json,
    coeff_to_json,
    is_zero_coeff,
    render_coeff,
    sym,
)
from .rational import parse_rational, render_rational

Param = Union[Fraction, str]


def _check_param(value, allowed_symbols) -> Param:
    if isinstance(value, str):
        if value not in allowed_symbols:
            raise SymbolError(
                f"symbolic parameter must be one of {allowed_symbols}, got {value!r}"
            )
        return value
    return Fraction(value)


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> tuple:
    """All partitions of n as weakly decreasing tuples."""
    if n < 0:
        raise DomainError("partitions of a negative integer")
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


@dataclass(frozen=True)
class JordanVermaModule:
    c: Param
    h: Param
    jordan: int = 1

    def __post_init__(self):
        if self.jordan < 1:
            raise DomainError("jordan size must be at least 1")
        object.__setattr__(self, "c", _check_param(self.c, ("c",)))
        object.__setattr__(self, "h", _check_param(self.h, ("h",)))

    @property
    def symbolic(self) -> bool:
        return isinstance(self.c, str) or isinstance(self.h, str)

    def c_value(self) -> Coeff:
        return sym(self.c) if isinstance(self.c, str) else self.c

    def h_value(self) -> Coeff:
        return sym(self.h) if isinstance(self.h, str) else self.h

    def require_numeric(self, what: str):
        if self.symbolic:
            raise DomainError(f"{what} needs numeric parameters")

    def require_unmixed(self):
        # either fully symbolic or fully numeric inside one Gram computation
        if isinstance(self.c, str) != isinstance(self.h, str):
            raise SymbolError(
                "mixing symbolic and numeric module parameters is not supported here"
            )

    def describe(self) -> str:
        c = self.c if isinstance(self.c, str) else render_rational(self.c)
        h = self.h if isinstance(self.h, str) else render_rational(self.h)
        base = f"M_{self.jordan}" if self.jordan > 1 else "M"
        return f"{base}({c},{h})"

    def to_json(self) -> dict:
        return {
            "c": self.c if isinstance(self.c, str) else render_rational(self.c),
            "h": self.h if isinstance(self.h, str) else render_rational(self.h),
            "jordan": self.jordan,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "JordanVermaModule":
        def param(text):
            if text in ("c", "h"):
                return text
            return parse_rational(text)

        try:
            return cls(param(obj["c"]), param(obj["h"]), obj.get("jordan", 1))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed module object: {exc}") from exc


def level_basis(mod: JordanVermaModule, level: int) -> list:
    """Ordered basis labels (partition, top_index) at the given level."""
    if level < 0:
        raise DomainError("negative level")
    parts = sorted(partitions(level))
    return [(lam, i) for i in range(1, mod.jordan + 1) for lam in parts]


# -- mode action ------------------------------------------------------------

# L(-p)·B(mu) expanded over basis words; pure structure constants, so the
# cache is global and the values are integers.
_PREPEND_MEMO: dict = {}


def _prepend(p: int, mu: tuple) -> dict:
    if p < 1:
        raise DomainError("prepend needs a positive part")
    key = (p, mu)
    cached = _PREPEND_MEMO.get(key)
    if cached is not None:
        return cached
    if not mu or p <= mu[-1]:
        result = {mu + (p,): Fraction(1)}
    else:
        s2, rho2 = mu[-1], mu[:-1]
        result = {}
        for nu, q in _prepend(p, rho2).items():
            k2 = nu + (s2,)
            result[k2] = result.get(k2, Fraction(0)) + q
        for nu, q in _prepend(p + s2, rho2).items():
            s = result.get(nu, Fraction(0)) + (s2 - p) * q
            if s == 0:
                result.pop(nu, None)
            else:
                result[nu] = s
    _PREPEND_MEMO[key] = result
    return result


_ACTION_MEMO: dict = {}


def _apply_single(mod: JordanVermaModule, k: int, lam: tuple, top: int) -> dict:
    """L(k) on the basis vector (lam, top): {(mu, j): Coeff}."""
    key = (mod, k, lam, top)
    cached = _ACTION_MEMO.get(key)
    if cached is not None:
        return cached
    out: dict = {}

    def add(label, coeff):
        s = out.get(label, Fraction(0)) + coeff
        if is_zero_coeff(s):
            out.pop(label, None)
        else:
            out[label] = s

    if lam == ():
        if k == 0:
            add(((), top), mod.h_value())
            if top > 1:
                add(((), top - 1), Fraction(1))
        elif k < 0:
            add(((-k,), top), Fraction(1))
        # k > 0 annihilates the top level
    else:
        s, rho = lam[-1], lam[:-1]
        # L(k) L(-s) = L(-s) L(k) + (k+s) L(k-s) + delta_{k,s} (k^3-k)/12 C
        for (mu, j), q in _apply_single(mod, k, rho, top).items():
            for nu, w in _prepend(s, mu).items():
                add((nu, j), q * w)
        if k + s != 0:
            for (mu, j), q in _apply_single(mod, k - s, rho, top).items():
                add((mu, j), (k + s) * q)
        if k == s:
            central = Fraction(k**3 - k, 12)
            if central != 0:
                add((rho, top), central * mod.c_value())
    _ACTION_MEMO[key] = out
    return out


@dataclass
class ModuleVector:
    module: JordanVermaModule
    level: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (lam, top), coeff in self.terms.items():
            lam = tuple(lam)
            if sum(lam) != self.level or any(
                lam[i] < lam[i + 1] for i in range(len(lam) - 1)
            ):
                raise ShapeError(f"label {lam} is not a partition of level {self.level}")
            if not 1 <= top <= self.module.jordan:
                raise ShapeError(f"top index {top} outside 1..{self.module.jordan}")
            if not is_zero_coeff(coeff):
                clean[(lam, top)] = coeff
        self.terms = clean

    def is_zero(self) -> bool:
        return not self.terms

    def _same_home(self, other: "ModuleVector"):
        # the zero vector is shared between levels, so only nonzero vectors
        # pin the level
        if self.module != other.module:
            raise ShapeError("vectors from different modules")
        if self.level != other.level and self.terms and other.terms:
            raise ShapeError("vectors at mismatched levels")

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        self._same_home(other)
        if not self.terms:
            return ModuleVector(other.module, other.level, dict(other.terms))
        if not other.terms:
            return ModuleVector(self.module, self.level, dict(self.terms))
        out = dict(self.terms)
        for label, coeff in other.terms.items():
            s = out.get(label, Fraction(0)) + coeff
            if is_zero_coeff(s):
                out.pop(label, None)
            else:
                out[label] = s
        return ModuleVector(self.module, self.level, out)

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        return self + other.scale(Fraction(-1))

    def scale(self, factor) -> "ModuleVector":
        if is_zero_coeff(factor):
            return ModuleVector(self.module, self.level, {})
        return ModuleVector(
            self.module, self.level, {k: c * factor for k, c in self.terms.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, ModuleVector):
            return NotImplemented
        if self.module != other.module:
            return False
        if not self.terms and not other.terms:
            return True
        return self.level == other.level and self.terms == other.terms

    def coeff(self, label) -> Coeff:
        return self.terms.get((tuple(label[0]), label[1]), Fraction(0))

    def coefficients(self) -> list:
        return [
            self.terms.get(label, Fraction(0))
            for label in level_basis(self.module, self.level)
        ]

    def apply_mode(self, k: int) -> "ModuleVector":
        new_level = self.level - k
        if new_level < 0:
            return ModuleVector(self.module, 0, {})
        out: dict = {}
        for (lam, top), coeff in self.terms.items():
            for label, q in _apply_single(self.module, k, lam, top).items():
                s = out.get(label, Fraction(0)) + coeff * q
                if is_zero_coeff(s):
                    out.pop(label, None)
                else:
                    out[label] = s
        return ModuleVector(self.module, new_level, out)

    def apply_word(self, modes) -> "ModuleVector":
        """Apply a sequence of modes, first element acting first."""
        vec = self
        for k in modes:
            vec = vec.apply_mode(k)
        return vec

    def top_projection(self, top: int) -> "ModuleVector":
        """Keep only the terms with the given top index, relabeled into the
        ordinary Verma module with the same parameters."""
        target = JordanVermaModule(self.module.c, self.module.h, 1)
        return ModuleVector(
            target,
            self.level,
            {(lam, 1): c for (lam, t), c in self.terms.items() if t == top},
        )

    def normalize_leading(self) -> "ModuleVector":
        """Scale so the first nonzero coefficient in basis order is 1."""
        for label in level_basis(self.module, self.level):
            coeff = self.terms.get(label)
            if coeff is not None and not is_zero_coeff(coeff):
                if isinstance(coeff, MultiPoly):
                    raise DomainError("cannot normalize a symbolic vector")
                return self.scale(Fraction(1) / coeff)
        return self

    def render(self) -> str:
        if not self.terms:
            return "0"
        names = (
            {1: "v"}
            if self.module.jordan == 1
            else {1: "v", 2: "w"}
            if self.module.jordan == 2
            else {i: f"v{i}" for i in range(1, self.module.jordan + 1)}
        )
        chunks = []
        for label in level_basis(self.module, self.level):
            coeff = self.terms.get(label)
            if coeff is None or is_zero_coeff(coeff):
                continue
            lam, top = label
            factors = []
            for part in sorted(set(lam)):
                mult = lam.count(part)
                factors.append(
                    f"L(-{part})" if mult == 1 else f"L(-{part})^{mult}"
                )
            body = "".join(factors) + names[top]
            text = render_coeff(coeff)
            if isinstance(coeff, MultiPoly) and not coeff.is_constant():
                chunks.append(f"({text})*{body}")
            elif text == "1":
                chunks.append(body)
            elif text == "-1":
                chunks.append(f"-{body}")
            else:
                chunks.append(f"{text}*{body}")
        return " + ".join(chunks).replace("+ -", "- ")

    __repr__ = render

    def to_json(self) -> dict:
        ordered = [
            (label, self.terms[label])
            for label in level_basis(self.module, self.level)
            if label in self.terms
        ]
        return {
            "module": self.module.to_json(),
            "level": self.level,
            "terms": [
                {"word": list(lam), "top": top, "coeff": coeff_to_json(c)}
                for (lam, top), c in ordered
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ModuleVector":
        try:
            mod = JordanVermaModule.from_json(obj["module"])
            terms = {
                (tuple(t["word"]), t["top"]): coeff_from_json(t["coeff"])
                for t in obj["terms"]
            }
            return cls(mod, obj["level"], terms)
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed module vector: {exc}") from exc


def basis_vector(mod: JordanVermaModule, lam, top: int = 1) -> ModuleVector:
    lam = tuple(lam)
    return ModuleVector(mod, sum(lam), {(lam, top): Fraction(1)})


def apply_mode(mod: JordanVermaModule, k: int, vec: ModuleVector) -> ModuleVector:
    if vec.module != mod:
        raise ShapeError("vector does not belong to the given module")
    return vec.apply_mode(k)


# -- Shapovalov form --------------------------------------------------------


def shapovalov_matrix(mod: JordanVermaModule, level: int) -> ExactMatrix:
    """Gram matrix of (a, b) = coefficient of the paired top vector in
    (transpose word of a) applied to b, on the level basis order."""
    mod.require_unmixed()
    parts = sorted(partitions(level))
    basis = level_basis(mod, level)
    p = len(parts)
    n = mod.jordan
    size = n * p
    entries = [[Fraction(0)] * size for _ in range(size)]
    for li, lam in enumerate(parts):
        word = sorted(lam)  # ascending parts act first
        for col, b in enumerate(basis):
            dropped = basis_vector(mod, b[0], b[1]).apply_word(word)
            for i in range(1, n + 1):
                entries[(i - 1) * p + li][col] = dropped.coeff(((), i))
    return ExactMatrix(entries)


def shapovalov_determinant(mod: JordanVermaModule, level: int) -> Coeff:
    return shapovalov_matrix(mod, level).determinant()


def radical_dimension(mod: JordanVermaModule, level: int) -> int:
    """Dimension of the right radical of the form at the given level."""
    mod.require_numeric("radical computation")
    return len(shapovalov_matrix(mod, level).null_space())


def singular_vectors(mod: JordanVermaModule, level: int) -> list:
    """Basis of the joint kernel of L(1) and L(2) at the given level,
    each vector scaled so its first nonzero coefficient is 1.

    L(1), L(2) generate all positive modes under bracketing, so this kernel
    is exactly the space of singular vectors.
    """
    mod.require_numeric("singular vector computation")
    if level < 1:
        raise DomainError("singular vectors live at positive levels")
    basis = level_basis(mod, level)
    rows = []
    for gen in (1, 2):
        if level - gen < 0:
            continue
        target = level_basis(mod, level - gen)
        images = [
            basis_vector(mod, lam, top).apply_mode(gen) for lam, top in basis
        ]
        for t in target:
            rows.append([img.terms.get(t, Fraction(0)) for img in images])
    kernel = ExactMatrix(rows).null_space() if rows else []
    out = []
    for vec in kernel:
        terms = {
            label: coeff
            for label, coeff in zip(basis, vec)
            if coeff != 0
        }
        out.append(ModuleVector(mod, level, terms).normalize_leading())
    return out


def check_hom_pair(s1: ModuleVector, s2: ModuleVector) -> bool:
    """Certify that v' -> s1, w' -> s2 extends to a homomorphism
    M_2(c, h+N) -> M_2(c, h).

    Conditions: both vectors annihilated by L(1) and L(2); L(0)s1 = (h+N)s1;
    L(0)s2 = (h+N)s2 + s1.
    """
    if s1.module != s2.module:
        raise ShapeError("target vectors live in different modules")
    if s1.level != s2.level:
        raise ShapeError("target vectors at mismatched levels")
    mod = s1.module
    if mod.jordan != 2:
        raise DomainError("homomorphism certificate needs a jordan-size-2 target")
    mod.require_numeric("homomorphism certificate")
    weight = mod.h_value() + s1.level
    for s in (s1, s2):
        if not s.apply_mode(1).is_zero() or not s.apply_mode(2).is_zero():
            return False
    if s1.apply_mode(0) != s1.scale(weight):
        return False
    if s2.apply_mode(0) != s2.scale(weight) + s1:
        return False
    return True


# -- density modules --------------------------------------------------------


@dataclass(frozen=True)
class DensityModule:
    lam: Param
    mu: Param
    beta: Param
    depth: int = 0

    def __post_init__(self):
        if self.depth < 0:
            raise DomainError("log depth must be nonnegative")
        object.__setattr__(self, "lam", _check_param(self.lam, ("lam",)))
        object.__setattr__(self, "mu", _check_param(self.mu, ("mu",)))
        object.__setattr__(self, "beta", _check_param(self.beta, ("beta",)))

    def _coeffs(self):
        conv = lambda v: sym(v) if isinstance(v, str) else v
        return conv(self.lam), conv(self.mu), conv(self.beta)


def density_action(mod: DensityModule, m: int, label) -> dict:
    """L_m on u_r^(i): {(r-m, i): mu+r+lam(m+1)} plus the beta shift term.

    Labels are (r, i) pairs with 0 <= i <= depth; the result maps labels to
    coefficients.
    """
    r, i = label
    if not 0 <= i <= mod.depth:
        raise DomainError(f"log layer {i} outside 0..{mod.depth}")
    lam, mu, beta = mod._coeffs()
    out = {}
    main = mu + r + lam * (m + 1)
    if not is_zero_coeff(main):
        out[(r - m, i)] = main
    if i > 0:
        shift = beta * i
        if not is_zero_coeff(shift):
            out[(r - m, i - 1)] = shift
    return out


def density_apply(mod: DensityModule, m: int, vec: dict) -> dict:
    """Extend density_action linearly to {label: Coeff} combinations."""
    out: dict = {}
    for label, coeff in vec.items():
        for lab2, q in density_action(mod, m, label).items():
            s = out.get(lab2, Fraction(0)) + coeff * q
            if is_zero_coeff(s):
                out.pop(lab2, None)
            else:
                out[lab2] = s
    return out
