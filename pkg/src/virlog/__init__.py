"""Exact-arithmetic calculus for Virasoro modules, logarithmic fusion,
and a logarithmic extension of the Witt algebra.

Everything computes over the rationals, or over rational polynomials in
the symbolic parameters c, h, b.  No floating point anywhere.
"""

from .errors import (
    DomainError,
    ParseError,
    ShapeError,
    SymbolError,
    VirlogError,
)
from .fusion import (
    EulerOperator,
    IndicialData,
    LogSeries,
    determine_b,
    fixture_polynomial,
    fusion_indicial,
    ope_level2_coefficient,
    solve_euler,
)
from .linalg import ExactMatrix
from .modules import (
    DensityModule,
    JordanVermaModule,
    ModuleVector,
    basis_vector,
    check_hom_pair,
    density_action,
    density_apply,
    level_basis,
    radical_dimension,
    shapovalov_determinant,
    shapovalov_matrix,
    singular_vectors,
)
from .polynomial import MultiPoly, UniPoly, sym
from .rational import parse_rational, render_rational
from .serialize import deserialize, serialize
from .virasoro import UEAElement, bracket_modes
from .wlog import (
    CENTRAL,
    LaurentField,
    WLogElement,
    antiinvolution,
    antiinvolution_word,
    check_jacobi,
    cocycle_closed_form,
    cocycle_residue,
    vacuum_expectation,
    wlog_bracket,
    wlog_deviations,
    wlog_pairing,
)

__version__ = "0.1.0"

__all__ = [
    "CENTRAL",
    "DensityModule",
    "DomainError",
    "EulerOperator",
    "ExactMatrix",
    "IndicialData",
    "JordanVermaModule",
    "LaurentField",
    "LogSeries",
    "ModuleVector",
    "MultiPoly",
    "ParseError",
    "ShapeError",
    "SymbolError",
    "UEAElement",
    "UniPoly",
    "VirlogError",
    "WLogElement",
    "antiinvolution",
    "antiinvolution_word",
    "basis_vector",
    "bracket_modes",
    "check_hom_pair",
    "check_jacobi",
    "cocycle_closed_form",
    "cocycle_residue",
    "density_action",
    "density_apply",
    "deserialize",
    "determine_b",
    "fixture_polynomial",
    "fusion_indicial",
    "level_basis",
    "ope_level2_coefficient",
    "parse_rational",
    "radical_dimension",
    "render_rational",
    "serialize",
    "shapovalov_determinant",
    "shapovalov_matrix",
    "singular_vectors",
    "solve_euler",
    "sym",
    "vacuum_expectation",
    "wlog_bracket",
    "wlog_deviations",
    "wlog_pairing",
]
