import json
from fractions import Fraction as F

import pytest

from conftest import FIXTURES, example_c
from parcones.corpus import with_explicit_hn
from parcones.document import (
    DocumentError,
    document_from_spec,
    document_to_dict,
    parse_document,
    serialize_document,
)
from parcones.parabolic import resolve_hn


def fixture_dict(name):
    return json.loads((FIXTURES / f"{name}.json").read_text())


def test_parse_example_b():
    doc = parse_document((FIXTURES / "example_B.json").read_bytes())
    assert doc.name == "example_B"
    assert doc.spec.rank == 2 and doc.spec.degree == 1
    assert resolve_hn(doc.spec).pieces == ((1, F(1, 2)), (1, F(1)))
    assert doc.warnings == []


def test_weight_out_of_range():
    data = fixture_dict("example_B")
    data["points"][0]["weights"][1] = {"num": 3, "den": 2, "mult": 1}
    with pytest.raises(DocumentError, match=r"points\[0\]\.weights\[1\]: weight 3/2 not in \[0,1\)"):
        parse_document(json.dumps(data))


def test_non_increasing_hn():
    data = {
        "schema_version": 1, "name": "bad", "rank": 2, "degree": 1, "points": [],
        "hn": [{"rank": 1, "deg_num": 1, "deg_den": 1}, {"rank": 1, "deg_num": 0, "deg_den": 1}],
    }
    with pytest.raises(DocumentError, match="HN slopes must be strictly increasing"):
        parse_document(json.dumps(data))


def test_syntax_error_location():
    text = '{\n  "rank": 2,\n  "degree": 1,,\n}'
    with pytest.raises(DocumentError, match="line 3 column 15"):
        parse_document(text, source="broken.json")


def test_all_errors_reported():
    data = fixture_dict("example_B")
    data["rank"] = "two"
    data["points"][0]["weights"][0]["mult"] = 0
    data["split"][0]["weights"]["x"] = {"num": 5, "den": 4}
    with pytest.raises(DocumentError) as info:
        parse_document(json.dumps(data))
    text = "\n".join(info.value.issues)
    assert "rank" in text and "mult" in text and "5/4" in text
    assert len(info.value.issues) >= 3


def test_underdetermined_document():
    data = {"schema_version": 1, "name": "u", "rank": 2, "degree": 0, "points": []}
    with pytest.raises(DocumentError, match="underdetermined"):
        parse_document(json.dumps(data))


def test_split_and_hn_exclusive():
    data = fixture_dict("example_B")
    data["hn"] = [{"rank": 2, "deg_num": 3, "deg_den": 2}]
    with pytest.raises(DocumentError, match="at most one"):
        parse_document(json.dumps(data))


def test_unsupported_schema_version():
    data = fixture_dict("example_A")
    data["schema_version"] = 9
    with pytest.raises(DocumentError, match="unsupported version"):
        parse_document(json.dumps(data))


def test_warnings():
    data = fixture_dict("example_B")
    del data["name"]
    data["split"][0]["weights"]["x"] = {"num": 2, "den": 4}
    data["points"][0]["weights"][1] = {"num": 2, "den": 4, "mult": 1}
    doc = parse_document(json.dumps(data), source="dir/my_bundle.json")
    assert doc.name == "my_bundle"
    assert any("name" in w for w in doc.warnings)
    assert any("2/4" in w or "reduced" in w for w in doc.warnings)


@pytest.mark.parametrize("path", sorted(FIXTURES.glob("*.json")), ids=lambda p: p.stem)
def test_round_trip(path):
    text = path.read_text()
    doc = parse_document(text)
    assert serialize_document(doc) == text
    again = parse_document(serialize_document(doc))
    assert document_to_dict(again) == document_to_dict(doc)


def test_explicit_hn_document_matches_split():
    split_doc = document_from_spec(example_c())
    hn_doc = document_from_spec(with_explicit_hn(example_c()))
    assert "hn" in document_to_dict(hn_doc) and "split" not in document_to_dict(hn_doc)
    parsed = parse_document(serialize_document(hn_doc))
    assert resolve_hn(parsed.spec) == resolve_hn(split_doc.spec)
