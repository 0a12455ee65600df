import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from segal.core import SimplicialIndexError
from segal.simplicial import operators as ops


@st.composite
def monotone_maps(draw: st.DrawFn) -> tuple[ops.Monotone, int]:
    n = draw(st.integers(min_value=0, max_value=5))
    k = draw(st.integers(min_value=0, max_value=5))
    values = draw(st.lists(st.integers(min_value=0, max_value=n), min_size=k + 1, max_size=k + 1))
    return tuple(sorted(values)), n


def test_coface_and_codegeneracy() -> None:
    assert ops.coface(0, 2) == (1, 2)
    assert ops.coface(2, 2) == (0, 1)
    assert ops.codegeneracy(1, 2) == (0, 1, 1, 2)


def test_out_of_range_indices() -> None:
    with pytest.raises(SimplicialIndexError):
        ops.coface(3, 2)

    with pytest.raises(SimplicialIndexError):
        ops.codegeneracy(3, 2)


@given(st.integers(min_value=2, max_value=6), st.data())
def test_face_identities(n: int, data: st.DataObject) -> None:
    j = data.draw(st.integers(min_value=1, max_value=n))
    i = data.draw(st.integers(min_value=0, max_value=j - 1))

    # d_i d_j = d_(j-1) d_i
    assert ops.compose(ops.coface(j, n), ops.coface(i, n - 1)) == ops.compose(
        ops.coface(i, n), ops.coface(j - 1, n - 1)
    )


@given(st.integers(min_value=0, max_value=5), st.data())
def test_degeneracy_then_face_is_identity(n: int, data: st.DataObject) -> None:
    j = data.draw(st.integers(min_value=0, max_value=n))

    for i in (j, j + 1):
        assert ops.compose(ops.codegeneracy(j, n), ops.coface(i, n + 1)) == ops.identity(n)


@given(monotone_maps())
def test_epi_mono_factorization(case: tuple[ops.Monotone, int]) -> None:
    theta, _ = case
    epi, mono = ops.epi_mono(theta)

    assert ops.compose(mono, epi) == theta
    assert ops.is_injective(mono)
    assert set(epi) == set(range(len(mono)))


@given(monotone_maps())
def test_degeneracy_words_are_decreasing(case: tuple[ops.Monotone, int]) -> None:
    theta, _ = case
    epi, _ = ops.epi_mono(theta)
    word = ops.word_from_surjection(epi)

    assert all(a > b for a, b in zip(word, word[1:]))
    assert ops.surjection_from_word(word, len(epi) - 1) == epi


def test_counting_operators() -> None:
    assert len(list(ops.surjections(3, 1))) == 3
    assert len(list(ops.injections(1, 3))) == 6
    assert len(list(ops.monotone_maps(1, 2))) == 6


def test_operator_words() -> None:
    theta, dim = ops.operator_from_word([("d", 3), ("s", 1)], 2)

    assert dim == 2
    assert theta == (0, 1, 1)
    assert str(ops.normal_form(theta, 2, "x")) == "s1 d2 x"


def test_operator_word_out_of_range() -> None:
    with pytest.raises(SimplicialIndexError):
        ops.operator_from_word([("d", 2)], 1)


@st.composite
def operator_words(draw: st.DrawFn) -> tuple[list[tuple[str, int]], int]:
    n = draw(st.integers(min_value=0, max_value=4))
    applied: list[tuple[str, int]] = []
    dim = n
    for _ in range(draw(st.integers(min_value=0, max_value=8))):
        kind = "s" if dim == 0 else draw(st.sampled_from("ds"))
        applied.append((kind, draw(st.integers(min_value=0, max_value=dim))))
        dim += 1 if kind == "s" else -1
    return applied[::-1], n


def _rewrites_to_its_normal_form(case: tuple[list[tuple[str, int]], int]) -> None:
    word, n = case
    theta, dim = ops.operator_from_word(word, n)
    nf = ops.normal_form(theta, n, "x")
    rewritten = [("s", j) for j in nf.degeneracies] + [("d", i) for i in nf.faces]

    assert ops.operator_from_word(rewritten, n) == (theta, dim)
    assert len(theta) == dim + 1


@settings(max_examples=200)
@given(operator_words())
def test_words_rewrite_to_normal_form(case: tuple[list[tuple[str, int]], int]) -> None:
    _rewrites_to_its_normal_form(case)


@pytest.mark.slow
@settings(max_examples=10_000, deadline=None)
@given(operator_words())
def test_words_rewrite_to_normal_form_long_run(case: tuple[list[tuple[str, int]], int]) -> None:
    _rewrites_to_its_normal_form(case)
