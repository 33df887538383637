"""Uniform text/JSON serialization for every public result type.

Text output uses each type's render method; JSON output uses its to_json
schema.  Both are byte-deterministic: dict keys are emitted sorted and
every rational prints in lowest terms as "p/q".
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import DomainError
from .fusion import EulerOperator, LogSeries
from .linalg import ExactMatrix
from .modules import JordanVermaModule, ModuleVector
from .polynomial import MultiPoly, UniPoly
from .rational import parse_rational, render_rational
from .virasoro import UEAElement
from .wlog import WLogElement


def to_document(value):
    """Plain JSON-serializable object for a public result value."""
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, (Fraction, int)):
        return render_rational(Fraction(value))
    if isinstance(value, str):
        return value
    if isinstance(value, (list, tuple)):
        return [to_document(v) for v in value]
    if isinstance(value, dict):
        return {str(k): to_document(v) for k, v in value.items()}
    to_json = getattr(value, "to_json", None)
    if to_json is not None:
        return to_json()
    raise DomainError(f"cannot serialize {type(value).__name__} to JSON")


def to_text(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, (Fraction, int)):
        return render_rational(Fraction(value))
    if isinstance(value, str):
        return value
    if isinstance(value, (list, tuple)):
        return "\n".join(to_text(v) for v in value)
    if isinstance(value, dict):
        return "\n".join(
            f"{k}: {to_text(v)}"
            for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))
        )
    render = getattr(value, "render", None)
    if render is not None:
        return render()
    raise DomainError(f"cannot serialize {type(value).__name__} to text")


def serialize(value, format: str = "text") -> str:
    if format == "json":
        return json.dumps(to_document(value), indent=2, sort_keys=True)
    if format == "text":
        return to_text(value)
    raise DomainError(f"unknown serialization format {format!r}")


_PARSERS = {
    "rational": lambda doc: parse_rational(doc),
    "multipoly": MultiPoly.from_json,
    "unipoly": UniPoly.from_json,
    "matrix": ExactMatrix.from_json,
    "module": JordanVermaModule.from_json,
    "module-vector": ModuleVector.from_json,
    "enveloping": UEAElement.from_json,
    "euler-operator": EulerOperator.from_json,
    "log-series": LogSeries.from_json,
    "wlog-element": WLogElement.from_json,
}


def deserialize(document: str, kind: str):
    """Inverse of serialize(value, "json") given the value's kind."""
    try:
        parser = _PARSERS[kind]
    except KeyError:
        raise DomainError(f"unknown value kind {kind!r}") from None
    doc = json.loads(document)
    return parser(doc)
