import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from segal import corpus
from segal.groups.constructions import wbar
from segal.groups.finite import constant_group, cyclic
from segal.homotopy.chains import (
    ChainComplex,
    homology,
    invariant_factors,
    mapping_cone,
    normalized_chains,
    smith_normal_form,
)
from segal.simplicial.sset import basic_complex, delta, identity_map
from sympy import Matrix

matrices = st.integers(min_value=1, max_value=8).flatmap(
    lambda columns: st.lists(
        st.lists(st.integers(min_value=-9, max_value=9), min_size=columns, max_size=columns),
        min_size=1,
        max_size=8,
    )
)


def _multiply(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    return [[sum(x * y for x, y in zip(row, column)) for column in zip(*b)] for row in a]


def _check_smith_normal_form(M: list[list[int]]) -> None:
    U, S, V = smith_normal_form(M)

    assert _multiply(_multiply(U, M), V) == S
    assert abs(Matrix(U).det()) == 1
    assert abs(Matrix(V).det()) == 1
    assert all(S[r][c] == 0 for r in range(len(S)) for c in range(len(S[0])) if r != c)
    diagonal = [abs(S[k][k]) for k in range(min(len(M), len(M[0])))]
    nonzero = [d for d in diagonal if d]
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


def test_smith_normal_form() -> None:
    M = [[2, 4], [6, 8]]
    U, S, V = smith_normal_form(M)

    assert [abs(S[0][0]), abs(S[1][1])] == [2, 4]
    assert S[0][1] == S[1][0] == 0
    assert _multiply(_multiply(U, M), V) == S
    assert invariant_factors(M, 2) == [2, 4]


@settings(max_examples=50, deadline=None)
@given(matrices)
def test_unit_elimination_keeps_invariant_factors(M: list[list[int]]) -> None:
    columns = len(M[0])
    chains = ChainComplex([len(M), columns], [[], M])

    assert sorted(chains.factors(1)) == sorted(invariant_factors(M, columns))


@settings(max_examples=50, deadline=None)
@given(matrices)
def test_smith_normal_form_is_a_factorization(M: list[list[int]]) -> None:
    _check_smith_normal_form(M)


@pytest.mark.slow
@settings(max_examples=1000, deadline=None)
@given(matrices)
def test_smith_normal_form_long_run(M: list[list[int]]) -> None:
    _check_smith_normal_form(M)


def test_boundary_squares_to_zero() -> None:
    normalized_chains(corpus.space("torus", 3)).verify()


def test_homology_of_torus() -> None:
    H = homology(corpus.space("torus", 3))

    assert H.through(2) == ((1, ()), (2, ()), (1, ()))
    assert H.summary() == "(Z; Z^2; Z)"
    assert not H[3].safe
    assert H.euler_characteristic() == 0


def test_homology_of_sphere() -> None:
    H = homology(basic_complex("boundary", 3, truncation=3))

    assert H.through(2) == ((1, ()), (0, ()), (1, ()))


def test_homology_of_circle_and_simplex() -> None:
    assert homology(basic_complex("circle", truncation=2)).through(1) == ((1, ()), (1, ()))
    assert homology(delta(2, 3)).through(2) == ((1, ()), (0, ()), (0, ()))


def test_homology_of_classifying_space() -> None:
    H = homology(wbar(constant_group(cyclic(2), 4)).sset)

    assert H.through(3) == ((1, ()), (0, (2,)), (0, ()), (0, (2,)))
    assert str(H[1]) == "Z/2"


def test_mismatch() -> None:
    circle = homology(basic_complex("circle", truncation=3))
    point = homology(delta(0, 3))

    assert circle.mismatch(point) == 1
    assert point.mismatch(homology(delta(1, 3))) is None


def test_cone_of_identity_is_acyclic() -> None:
    S = basic_complex("circle", truncation=3)

    assert mapping_cone(identity_map(S)).homology().acyclic(2)
