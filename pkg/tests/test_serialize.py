"""Round-trip and determinism tests for the serialization layer.

Every public result type must survive serialize -> deserialize by kind,
and identical inputs must produce identical bytes.
"""

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from virlog.errors import DomainError
from virlog.fusion import EulerOperator, LogSeries, fusion_indicial
from virlog.linalg import ExactMatrix
from virlog.modules import JordanVermaModule, basis_vector, shapovalov_matrix
from virlog.polynomial import MultiPoly, UniPoly, sym
from virlog.serialize import deserialize, serialize, to_document, to_text
from virlog.virasoro import UEAElement
from virlog.wlog import WLogElement, wlog_bracket

rationals = st.fractions(min_value=-100, max_value=100, max_denominator=10**4)


def roundtrip(value, kind):
    return deserialize(serialize(value, "json"), kind)


# -- scalars ----------------------------------------------------------------


def test_rational_text_and_json_forms():
    assert serialize(Fraction(5, 2), "text") == "5/2"
    assert serialize(Fraction(5, 2), "json") == '"5/2"'
    assert serialize(Fraction(-7), "text") == "-7"


@given(rationals)
def test_rational_roundtrip(q):
    assert roundtrip(q, "rational") == q


def test_bool_and_none_forms():
    assert to_text(True) == "true"
    assert to_text(False) == "false"
    assert to_text(None) == ""
    assert to_document(True) is True
    assert to_document(None) is None


def test_int_serializes_as_rational():
    assert serialize(3, "text") == "3"
    assert serialize(3, "json") == '"3"'


def test_unknown_format_rejected():
    with pytest.raises(DomainError):
        serialize(Fraction(1), "yaml")


def test_unknown_kind_rejected():
    with pytest.raises(DomainError):
        deserialize('"1"', "no-such-kind")


# -- structured types -------------------------------------------------------


@given(st.lists(rationals, min_size=1, max_size=6))
def test_unipoly_roundtrip(coeffs):
    p = UniPoly("x", coeffs)
    assert roundtrip(p, "unipoly") == p


def test_multipoly_roundtrip():
    h, c = sym("h"), sym("c")
    p = 3 * h * h * c - Fraction(7, 2) * h + 1
    assert roundtrip(p, "multipoly") == p


def test_matrix_roundtrip_symbolic():
    mod = JordanVermaModule("c", "h", 2)
    m = shapovalov_matrix(mod, 2)
    assert roundtrip(m, "matrix") == m


@given(st.integers(1, 3), st.integers(0, 3))
def test_module_and_vector_roundtrip(jordan, level):
    mod = JordanVermaModule(Fraction(1, 2), Fraction(-3, 4), jordan)
    assert roundtrip(mod, "module") == mod
    vec = basis_vector(mod, (1,) * level, 1)
    assert roundtrip(vec, "module-vector") == vec


def test_enveloping_roundtrip():
    e = UEAElement.generator(-2).bracket(UEAElement.generator(1))
    assert roundtrip(e, "enveloping") == e


def test_euler_operator_and_series_roundtrip():
    op = EulerOperator(
        {(0, 2): Fraction(1), (1, 1): Fraction(3, 2), (2, 0): Fraction(-15, 16)}
    )
    assert roundtrip(op, "euler-operator") == op
    series = LogSeries({(Fraction(3, 4), 1): Fraction(1, 3) * sym("b")})
    assert roundtrip(series, "log-series") == series


def test_wlog_element_roundtrip():
    e = wlog_bracket((-1, 2), (1, -2), "residue")
    assert roundtrip(e, "wlog-element") == e


# -- determinism ------------------------------------------------------------


def test_byte_determinism_on_rebuilt_values():
    def build():
        rng = random.Random(20260822)
        h = sym("h")
        entries = [
            [
                Fraction(rng.randint(-9, 9)) + rng.randint(0, 3) * h
                for _ in range(3)
            ]
            for _ in range(3)
        ]
        return ExactMatrix(entries)

    a, b = serialize(build(), "json"), serialize(build(), "json")
    assert a == b
    assert serialize(build(), "text") == serialize(build(), "text")


def test_json_output_is_valid_json_with_sorted_keys():
    data = fusion_indicial(Fraction(-2), Fraction(-1, 8), Fraction(-1, 8))
    doc = serialize(data, "json")
    parsed = json.loads(doc)
    assert parsed["logarithmic"] is True
    assert list(parsed) == sorted(parsed)


def test_text_dict_lines_sorted():
    out = to_text({"z": Fraction(1), "a": Fraction(2)})
    assert out == "a: 2\nz: 1"
