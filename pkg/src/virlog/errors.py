"""Exception types shared across the package.

Everything raised deliberately derives from VirlogError so the CLI can map
expected failures to exit code 1 without catching arbitrary bugs.
"""


class VirlogError(Exception):
    """Base class for anticipated errors (bad input, unsupported case)."""


class SymbolError(VirlogError):
    """Unknown symbol, or symbolic input where a number is required."""


class ShapeError(VirlogError):
    """Dimension or homogeneity mismatch."""


class DomainError(VirlogError):
    """Input outside the validity domain of a formula or algorithm."""


class ParseError(VirlogError):
    """Malformed textual or JSON input."""
