"""Tests for the document format."""

import json

import pytest

from hlr_toolkit.cat1 import cm_to_cat1
from hlr_toolkit.errors import ParseError
from hlr_toolkit.library import EXAMPLES, crossed_ideal, leibniz_dim2, load_example
from hlr_toolkit.linalg import Matrix
from hlr_toolkit.serialization import (
    AlgebraDocument,
    decode_rational,
    dumps,
    encode_matrix,
    from_document,
    load,
    parse,
    to_document,
)


def _leibniz_text(**edits: str) -> str:
    """Document text of leibniz-dim2 with bracket coefficients replaced."""
    data = to_document(leibniz_dim2()).to_dict()
    for key, value in edits.items():
        k, i, j = (int(c) for c in key[1:])
        data["payload"]["bracket"]["coeffs"][k][i][j] = value
    return json.dumps(data)


@pytest.mark.parametrize("name", [example.name for example in EXAMPLES])
def test_library_documents_are_canonical(name: str) -> None:
    """Test every library document survives dump and parse unchanged."""
    doc = load_example(name)
    text = dumps(doc)
    assert parse(text) == doc
    assert dumps(parse(text)) == text
    assert to_document(from_document(doc)) == doc


def test_dumps_layout() -> None:
    """Test sorted keys, two-space indent and a trailing newline."""
    text = dumps(AlgebraDocument("hom-leibniz", {"b": 1, "a": 2}))
    assert text.endswith("}\n")
    assert text.startswith('{\n  "kind": "hom-leibniz",\n  "payload": {\n    "a": 2')
    assert '"schema_version": "1"' in text


def test_rationals_are_canonicalised() -> None:
    """Test non-canonical spellings are rewritten on parse."""
    doc = parse(_leibniz_text(c011="2/2"))
    assert doc.payload["bracket"]["coeffs"][0][1][1] == "1"
    assert encode_matrix(Matrix.from_rows([[1, "2/4"]])) == {
        "shape": [1, 2],
        "rows": [["1", "1/2"]],
    }


def test_zero_denominator_reports_path() -> None:
    """Test a 1/0 coefficient names its location."""
    with pytest.raises(ParseError) as excinfo:
        parse(_leibniz_text(c011="1/0"))
    assert excinfo.value.path == "payload.bracket.coeffs[0][1][1]"


def test_numbers_must_be_strings() -> None:
    """Test JSON numbers are refused as rationals."""
    with pytest.raises(ParseError, match="must be strings"):
        decode_rational(1, "payload.alpha.rows[0][0]")
    with pytest.raises(ParseError) as excinfo:
        decode_rational("x", "here")
    assert excinfo.value.path == "here"


def test_envelope_errors() -> None:
    """Test invalid JSON, unknown kinds and schema versions."""
    with pytest.raises(ParseError, match="line 1 column"):
        parse("{not json")
    data = json.loads(_leibniz_text())
    data["kind"] = "lie-group"
    with pytest.raises(ParseError, match="unknown kind"):
        parse(json.dumps(data))
    data["kind"] = "hom-leibniz"
    data["schema_version"] = "2"
    with pytest.raises(ParseError, match="schema version"):
        parse(json.dumps(data))


def test_shape_mismatch_reports_path() -> None:
    """Test an alpha of the wrong size is located."""
    data = json.loads(_leibniz_text())
    data["payload"]["alpha"] = {"shape": [1, 1], "rows": [["1"]]}
    with pytest.raises(ParseError) as excinfo:
        parse(json.dumps(data))
    assert excinfo.value.path == "payload.alpha"


def test_missing_field() -> None:
    """Test a missing field names the enclosing object."""
    data = json.loads(_leibniz_text())
    del data["payload"]["bracket"]
    with pytest.raises(ParseError, match="missing field 'bracket'"):
        parse(json.dumps(data))


def test_load_returns_object() -> None:
    """Test load gives the canonical document and the decoded object."""
    doc, obj = load(_leibniz_text())
    assert doc.kind == "hom-leibniz"
    assert obj == leibniz_dim2()


def test_unsupported_object() -> None:
    """Test objects without a document kind are refused."""
    with pytest.raises(TypeError):
        to_document(object())


def test_cat1_derivation_shape_reports_path() -> None:
    """Test a stored derivation of the wrong size is located."""
    data = to_document(cm_to_cat1(crossed_ideal())).to_dict()
    assert data["payload"]["derivation"]["shape"] == [1, 2]
    data["payload"]["derivation"] = {"shape": [2, 2], "rows": [["0", "0"], ["0", "0"]]}
    with pytest.raises(ParseError) as excinfo:
        parse(json.dumps(data))
    assert excinfo.value.path == "payload.derivation"
