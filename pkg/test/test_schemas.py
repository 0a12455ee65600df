import pytest
from segal.core import DEFAULT_BUDGET, DEFAULT_EX_STAGE, DEFAULT_TRUNCATION, DEFAULT_UP_TO
from segal.schemas import (
    REF_SCHEMA,
    SETTINGS_SCHEMA,
    SIMPLICIAL_SET_SCHEMA,
    SIMPLICIAL_SPACE_SCHEMA,
    Bool,
    Dict,
    Int,
    InvalidTypeError,
    List,
    Object,
    OneOf,
    Optional,
    RequiredAttributeError,
    Str,
    UnexpectedAttributesError,
)


def test_happy() -> None:
    schema = Object({
        "name": Str,
        "truncation": Int(min=0, max=8),
    })

    schema.validate({
        "name": "circle",
        "truncation": 3,
    })


def test_default_values() -> None:
    data: dict = {}
    # Every setting has a default
    SETTINGS_SCHEMA.validate(data)

    assert data == {
        "truncation": DEFAULT_TRUNCATION,
        "up_to": DEFAULT_UP_TO,
        "ex_stage": DEFAULT_EX_STAGE,
        "budget": DEFAULT_BUDGET,
    }


def test_callable_defaults_are_fresh() -> None:
    schema = Object({"faces": Dict(Str, List(Str), default=dict)})
    a: dict = {}
    b: dict = {}

    schema.validate(a)
    schema.validate(b)
    assert a["faces"] == {}
    assert a["faces"] is not b["faces"]


def test_missing_key() -> None:
    schema = Object({
        "name": Str,
        "generators": List(List(Str)),
    })

    with pytest.raises(RequiredAttributeError):
        schema.validate({
            "name": "circle",
        })


def test_nested_missing_key() -> None:
    with pytest.raises(RequiredAttributeError) as ex:
        SIMPLICIAL_SPACE_SCHEMA.validate({"levels": [{"name": "B0"}]})

    assert ex.value.attr == "levels.generators"


def test_unexpected_key() -> None:
    with pytest.raises(UnexpectedAttributesError):
        SIMPLICIAL_SET_SCHEMA.validate({"generators": [["v"]], "colour": "red"})


def test_optional_key() -> None:
    schema = Object({
        "name": Optional(Str),
    })

    schema.validate({})
    schema.validate({
        "name": "test",
    })
    schema.validate({
        "name": None,
    })


def test_lists() -> None:
    schema = Object({
        "values": List(Str),
    })

    schema.validate({
        "values": ["a", "b"],
    })

    with pytest.raises(InvalidTypeError):
        schema.validate({
            "values": ["a", 1],
        })


def test_int_bounds() -> None:
    schema = Int(min=0, max=8)

    schema.validate(0)
    schema.validate(8)
    for value in (-1, 9, True, "3"):
        with pytest.raises(InvalidTypeError):
            schema.validate(value)


def test_bool() -> None:
    Bool().validate(False)
    with pytest.raises(InvalidTypeError):
        Bool().validate("yes")


def test_one_of() -> None:
    schema = OneOf("simplicial_set", "gspace")

    schema.validate("gspace")
    with pytest.raises(InvalidTypeError):
        schema.validate("graph")


def test_invalid_property_names_the_property() -> None:
    with pytest.raises(InvalidTypeError) as ex:
        SETTINGS_SCHEMA.validate({"truncation": 20})

    assert ex.value.property == "truncation"
    assert "truncation" in str(ex.value)


def test_simplex_refs() -> None:
    REF_SCHEMA.validate("v")
    REF_SCHEMA.validate("s1 s0 v")
    REF_SCHEMA.validate({"s": [1, 0], "g": "v"})
    REF_SCHEMA.validate({"s": [], "g": "v"})
    REF_SCHEMA.validate({"generator": "v", "word": [0]})

    with pytest.raises(InvalidTypeError):
        REF_SCHEMA.validate(3)
    with pytest.raises(InvalidTypeError):
        REF_SCHEMA.validate({"s": [-1], "g": "v"})
    with pytest.raises(UnexpectedAttributesError):
        REF_SCHEMA.validate({"g": "v", "colour": "red"})


def test_simplicial_space_field_names() -> None:
    level = {"generators": [["v"]]}
    SIMPLICIAL_SPACE_SCHEMA.validate(
        {"ext_truncation": 0, "levels": [level], "ext_faces": [], "ext_degen": []}
    )
    SIMPLICIAL_SPACE_SCHEMA.validate({"levels": [dict(level)], "faces": [], "degeneracies": []})

    with pytest.raises(InvalidTypeError):
        SIMPLICIAL_SPACE_SCHEMA.validate({"ext_truncation": -1, "levels": [dict(level)]})


def test_simplicial_set_document() -> None:
    document = {
        "kind": "simplicial_set",
        "generators": [["v"], ["e"]],
        "faces": {"e": ["v", "v"]},
    }

    SIMPLICIAL_SET_SCHEMA.validate(document)
    assert document["truncation"] == DEFAULT_TRUNCATION
    assert document["name"] == ""
