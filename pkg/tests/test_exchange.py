"""The document format: round trips and diagnostics."""

import json

import pytest

from complicial import exchange, fixtures, lifting, nerve, orientals, shapes
from complicial.exchange import FormatError, parse, print_document
from complicial.lifting import CheckReport


def round_trip(obj):
    text = print_document(obj)
    doc = parse(text)
    assert print_document(doc.payload) == text
    return doc


def test_complex_round_trip():
    X = nerve.nerve(fixtures.get("two-iso"), 3, "saturated2")
    doc = round_trip(X)
    assert doc.kind == "complex" and doc.payload == X


def test_admissible_document_has_one_marked_simplex():
    data = json.loads(print_document(shapes.admissible(2, 1)))
    assert [s["id"] for s in data["simplices"] if s["marked"]] == ["012"]
    assert data["format"] == "complicial" and data["version"] == 1


def test_degenerate_faces_are_objects():
    data = json.loads(print_document(nerve.nerve(fixtures.get("iso"), 2)))
    faces = [f for s in data["simplices"] for f in s["faces"] if isinstance(f, dict)]
    assert faces and all(set(f) == {"target", "degeneracies"} for f in faces)


def test_map_round_trip():
    doc = round_trip(shapes.admissible_horn_inclusion(3, 1))
    assert doc.kind == "map"


def test_omega_round_trip():
    C = fixtures.get("two-iso")
    doc = round_trip(C)
    assert doc.payload == C


def test_cells_round_trip():
    cells = frozenset(orientals.build_oriental(3).cells)
    doc = round_trip(cells)
    assert doc.payload == cells


def test_report_round_trip():
    report = lifting.is_saturated(nerve.nerve(fixtures.get("iso"), 3), 3)
    doc = round_trip(report)
    assert doc.payload.verdict == "fail" and doc.payload.witness.replay()
    round_trip(CheckReport("complicial", "pass", 3, None, 12, {"n": 1}))


def test_unknown_field_is_named():
    data = json.loads(print_document(shapes.standard(1)))
    data["simplices"][2]["colour"] = "red"
    with pytest.raises(FormatError, match="colour"):
        parse(json.dumps(data))


def test_syntax_errors_carry_positions():
    with pytest.raises(FormatError, match=r"line 2, column \d+"):
        parse('{\n  "format": }')


@pytest.mark.parametrize("patch,message", [
    ({"format": "other"}, "not a complicial document"),
    ({"version": 7}, "unsupported version"),
    ({"kind": "poem"}, "unknown kind"),
])
def test_header_errors(patch, message):
    data = json.loads(print_document(shapes.standard(1)))
    data.update(patch)
    with pytest.raises(FormatError, match=message):
        parse(json.dumps(data))


def test_missing_and_malformed_fields():
    data = json.loads(print_document(shapes.standard(1)))
    del data["bound"]
    with pytest.raises(FormatError, match="bound"):
        parse(json.dumps(data))
    data = json.loads(print_document(shapes.standard(1)))
    data["simplices"][2]["faces"][0] = {"target": "1", "degeneracies": ["x"]}
    with pytest.raises(FormatError):
        parse(json.dumps(data))


def test_unserializable_object():
    with pytest.raises(TypeError):
        exchange.print_document(42)
