# tests/io/test_reader.py

import json

import pytest

from semiarith.core.errors import DeterminantError, DocumentError
from semiarith.fuchsian.words import Word
from semiarith.io.reader import canonical_rational, load_document, parse_document, read_document

SQRT2_DOC = {
    "label": "sqrt2-demo",
    "field": {"minpoly": [1, 0, -2], "root_selector": [1, 2]},
    "labels": ["x", "y"],
    "generators": [
        [[["1", "1"], []], [[], ["-1", "1"]]],
        [[["1", "1"], ["1"]], [[0, 1], ["1"]]],
    ],
    "relators": [],
}


def test_parse_document():
    """
    A well-formed document builds its group over Q(√2).
    """
    doc = parse_document(json.dumps(SQRT2_DOC))
    assert doc.label == "sqrt2-demo"
    assert doc.field.degree == 2
    rep = doc.to_group()
    assert rep.name == "sqrt2-demo"
    assert list(rep.labels) == ["x", "y"]
    assert rep.trace(Word.generator(0)) == rep.field.gen * 2


@pytest.mark.parametrize(
    "value, expected",
    [(3, "3"), ("-6/4", "-3/2"), ("7", "7")],
)
def test_canonical_rational(value, expected):
    """
    Integers and p/q strings are normalized.
    """
    assert canonical_rational(value) == expected


@pytest.mark.parametrize("value", [0.5, "0.5", "1e3", True, "1/0", "x"])
def test_canonical_rational_rejects(value):
    """
    Floats, booleans and junk are not exact rationals.
    """
    with pytest.raises(ValueError):
        canonical_rational(value)


def test_malformed_json_location():
    """
    JSON syntax errors carry line and column.
    """
    with pytest.raises(DocumentError) as exc:
        parse_document('{\n  "field": ,\n}')
    assert exc.value.line == 2
    assert exc.value.column == 12
    assert "line 2, column 12" in str(exc.value)


@pytest.mark.parametrize(
    "patch",
    [
        {"generators": [[[[1.5], [0]], [[0], [1]]]]},
        {"field": {"minpoly": [1.0, 0, -2], "root_selector": [1, 2]}},
        {"labels": ["x"]},
        {"generators": []},
        {"generators": [[[[1], [0]]]]},
        {"generators": [[[["1", "2", "3"], [0]], [[0], [1]]]]},
    ],
)
def test_invalid_documents(patch):
    """
    Floats, shape errors, surplus coordinates and label mismatches are refused.
    """
    with pytest.raises(DocumentError):
        parse_document(json.dumps({**SQRT2_DOC, **patch}))


def test_non_object_document():
    """
    The top level must be an object.
    """
    with pytest.raises(DocumentError) as exc:
        parse_document("[]")
    assert exc.value.line == 1


def test_semantic_errors_surface_from_to_group():
    """
    Determinants are checked when the group is built, not when parsed.
    """
    patched = {**SQRT2_DOC, "generators": [[[[2], [0]], [[0], [1]]]], "labels": None}
    doc = parse_document(json.dumps(patched))
    with pytest.raises(DeterminantError):
        doc.to_group()


def test_read_document_from_file(tmp_path):
    """
    Files are read as UTF-8; a missing path is a DocumentError.
    """
    path = tmp_path / "group.json"
    path.write_text(json.dumps(SQRT2_DOC), encoding="utf-8")
    assert read_document(path).label == "sqrt2-demo"
    assert load_document(str(path)).n_generators == 2
    with pytest.raises(DocumentError):
        read_document(tmp_path / "missing.json")
