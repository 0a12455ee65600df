import pytest
from segal.core import SimplicialIndexError
from segal.expressions import evaluate, minimal_dimension, normalize, parse_ref, parse_word
from segal.simplicial.sset import basic_complex


def test_parse_word() -> None:
    word = parse_word("d3 s1 x")

    assert word.operators == (("d", 3), ("s", 1))
    assert word.generator == "x"
    assert not word.is_degeneracy
    assert str(parse_word("s0s0x")) == "s0 s0 x"
    assert parse_word("(0,1)").generator == "(0,1)"


@pytest.mark.parametrize("text", ["", "d1", "s0 d1", "3 x", "x y"])
def test_parse_errors(text: str) -> None:
    with pytest.raises(ValueError):
        parse_word(text)


def test_minimal_dimension() -> None:
    assert minimal_dimension(parse_word("x")) == 0
    assert minimal_dimension(parse_word("s2 x")) == 2
    assert minimal_dimension(parse_word("d0 d0 x")) == 2
    assert minimal_dimension(parse_word("d1 s0 x")) == 0


@pytest.mark.parametrize(
    "text, expected",
    [
        ("d3 s1 x", "s1 d2 x"),
        ("s0 s0 x", "s1 s0 x"),
        ("d1 s0 x", "x"),
        ("d0 d0 x", "d0 d1 x"),
        ("d1 d2 x", "d1 d2 x"),
        ("s0 d1 x", "s0 d1 x"),
    ],
)
def test_normalize(text: str, expected: str) -> None:
    assert str(normalize(text)) == expected


def test_normalize_in_a_given_dimension() -> None:
    form = normalize("d0 x", 3)

    assert form.faces == (0,)
    assert form.degeneracies == ()
    with pytest.raises(SimplicialIndexError):
        normalize("d3 x", 1)


def test_evaluate() -> None:
    circle = basic_complex("circle", truncation=3)

    assert evaluate("d0 e", circle).generator == "v"
    assert str(evaluate("s1 s0 v", circle)) == "s1s0v"
    assert str(evaluate("d1 s0 e", circle)) == "e"
    assert evaluate("s0 e", circle).dim == 2


def test_evaluate_errors() -> None:
    circle = basic_complex("circle", truncation=3)

    with pytest.raises(ValueError):
        evaluate("d0 w", circle)
    with pytest.raises(SimplicialIndexError):
        evaluate("d2 e", circle)


def test_parse_ref() -> None:
    ref = parse_ref("s1 s0 v", {"v": 0})

    assert ref.word == (1, 0)
    assert ref.dim == 2
    with pytest.raises(ValueError):
        parse_ref("d0 e", {"e": 1})
    with pytest.raises(ValueError):
        parse_ref("s0 w", {"v": 0})
