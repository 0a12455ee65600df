import json

import pytest
from segal import corpus
from segal.core import InvalidObjectError, MalformedInputError, Status, Verdict
from segal.groups.finite import FiniteGroup, cyclic
from segal.groups.straightening import bar_action, bar_group
from segal.homotopy.chains import homology
from segal.schemas import SCHEMA_VERSION
from segal.serialization import (
    build_report,
    decode,
    detect_kind,
    encode,
    encode_ref,
    load,
    read_document,
    report_status,
)
from segal.simplicial.sset import SimplexRef, SimplicialSet, basic_complex
from test.utils import write_document, write_object

CIRCLE = {"generators": [["v"], ["e"]], "faces": {"e": ["v", "v"]}}


def test_decode_circle() -> None:
    X = decode(json.loads(json.dumps(CIRCLE)))

    assert isinstance(X, SimplicialSet)
    assert X.counts() == [1, 1]
    assert X.truncation == 5
    assert homology(X, 2).summary() == homology(basic_complex("circle", truncation=2), 2).summary()


def test_decode_degenerate_faces() -> None:
    document = {
        "truncation": 2,
        "generators": [["v"], ["e"], ["t"]],
        "faces": {"e": ["v", "v"], "t": ["e", "e", {"generator": "v", "word": [0]}]},
    }

    X = decode(document)
    assert X.faces["t"][2] == SimplexRef("v", (0,), 1)
    assert X.violations() == []


def test_invalid_faces() -> None:
    with pytest.raises(InvalidObjectError) as ex:
        decode({"generators": [["v"], ["e"]], "faces": {"e": ["v"]}})
    assert "generator e needs 2 faces" in ex.value.violations

    with pytest.raises(InvalidObjectError):
        decode({"generators": [["v"], ["e"]], "faces": {"e": ["v", "w"]}})


def test_generators_above_truncation() -> None:
    with pytest.raises(InvalidObjectError):
        decode({"truncation": 0, "generators": [["v"], ["e"]], "faces": {"e": ["v", "v"]}})


def test_invalid_group() -> None:
    with pytest.raises(InvalidObjectError):
        decode({"elements": ["a", "b"], "table": [[0, 0], [0, 0]]})


def test_malformed_documents() -> None:
    with pytest.raises(MalformedInputError):
        decode(["v", "e"])
    with pytest.raises(MalformedInputError):
        decode({"kind": "graph"})
    with pytest.raises(MalformedInputError):
        decode({"colour": "red"})
    with pytest.raises(MalformedInputError):
        decode({"generators": "v"})
    with pytest.raises(MalformedInputError):
        decode(CIRCLE, expected="finite_group")


def test_detect_kind() -> None:
    assert detect_kind(CIRCLE) == "simplicial_set"
    assert detect_kind(cyclic(2).as_dict()) == "finite_group"
    assert detect_kind({"space": {}, "group": {}}) == "gspace"
    assert detect_kind({"source": {}, "target": {}, "levels": []}) == "space_map"
    assert detect_kind({"levels": []}) == "simplicial_space"


def test_encode_ref() -> None:
    assert encode_ref(SimplexRef("v", (), 0)) == {"s": [], "g": "v"}
    assert encode_ref(SimplexRef("v", (1, 0), 2)) == {"s": [1, 0], "g": "v"}
    assert encode_ref(SimplexRef((0, 1), (), 1)) == {"s": [], "g": "(0,1)"}


def test_decode_ref_records() -> None:
    document = {
        "truncation": 3,
        "generators": [["v"], ["e"]],
        "faces": {"e": [{"s": [], "g": "v"}, {"s": [], "g": "v"}]},
    }
    X = decode(document)
    assert X.counts() == [1, 1]
    assert list(X.faces["e"]) == [SimplexRef("v", (), 0)] * 2

    # s0 s0 v is written s1 s0 v in normal form.
    corner = {"s": [0, 0], "g": "v"}
    document = {"truncation": 3, "generators": [["v"], [], [], ["t"]], "faces": {"t": [corner] * 4}}
    assert decode(document).faces["t"][0] == SimplexRef("v", (1, 0), 2)

    with pytest.raises(InvalidObjectError):
        decode({"generators": [["v"], ["e"]], "faces": {"e": [{"s": [3], "g": "v"}, "v"]}})
    with pytest.raises(InvalidObjectError):
        decode({"generators": [["v"], ["e"]], "faces": {"e": [{"s": []}, "v"]}})


def test_decode_space_field_names() -> None:
    document = encode(bar_group(cyclic(2), 1, 1))
    assert {"ext_truncation", "ext_faces", "ext_degen"} <= set(document)
    assert "faces" not in document

    B = decode(json.loads(json.dumps(document)))
    assert B.ext_truncation == 1
    assert B.violations() == []

    renamed = json.loads(json.dumps(document))
    renamed["faces"] = renamed.pop("ext_faces")
    renamed["degeneracies"] = renamed.pop("ext_degen")
    del renamed["ext_truncation"]
    assert decode(renamed).violations() == []

    mismatch = json.loads(json.dumps(document))
    mismatch["ext_truncation"] = 2
    with pytest.raises(InvalidObjectError):
        decode(mismatch)


def test_saved_objects_load_back(tmp_path) -> None:
    path = write_object(tmp_path, "bar.json", bar_group(cyclic(2), 2, 2))
    B = load(path, "simplicial_space")

    assert [level.counts() for level in B.levels] == [[1], [2], [4]]
    assert B.violations() == []

    G = load(write_object(tmp_path, "group.json", corpus.group("S3")))
    assert isinstance(G, FiniteGroup) and G.order == 6

    swap = load(write_object(tmp_path, "swap.json", corpus.gspace("swap", cyclic(2), 2)))
    assert swap.is_free()

    pi = load(write_object(tmp_path, "action.json", bar_action(corpus.gspace("translation", cyclic(2), 1), 1)))
    assert pi.violations() == []


def test_gspace_action_rows() -> None:
    document = {
        "space": {"truncation": 1, "generators": [["a", "b"]]},
        "group": cyclic(2).as_dict(),
        "action": {"a": ["a"], "b": ["b", "a"]},
    }

    with pytest.raises(InvalidObjectError) as ex:
        decode(document)
    assert ex.value.violations == ["action of Z/2 on a needs 2 images"]


def test_trivial_action_by_default() -> None:
    document = {"space": {"truncation": 1, "generators": [["a", "b"]]}, "group": cyclic(2).as_dict()}

    X = decode(document)
    assert not X.is_free()


def test_yaml_documents(tmp_path) -> None:
    path = tmp_path / "circle.yaml"
    path.write_text("generators:\n  - [v]\n  - [e]\nfaces:\n  e: [v, v]\n")

    assert load(str(path)).counts() == [1, 1]


def test_missing_file(tmp_path) -> None:
    with pytest.raises(MalformedInputError):
        read_document(str(tmp_path / "nothing.json"))


def test_report(tmp_path) -> None:
    job = {"command": "homology", "inputs": [], "settings": {"truncation": 3}, "options": {}}
    report = build_report(
        job,
        {"a": Verdict.certify(3), "b": Verdict.consistent(3, "pi_1 unknown")},
        {"circle": homology(basic_complex("circle", truncation=3), 3)},
        {"counts": [1, 1]},
        0.12345,
    )

    assert report["schema_version"] == SCHEMA_VERSION
    assert report["status"] == "CONSISTENT"
    assert report_status(report) is Status.CONSISTENT
    assert report["checks"]["b"]["notes"] == ["pi_1 unknown"]
    assert report["timing"] == 0.123
    assert report["objects"] == {"counts": [1, 1]}

    # Reports are plain JSON
    write_document(tmp_path, "report.json", report)
