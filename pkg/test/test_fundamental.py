import pytest
from segal import corpus
from segal.groups.constructions import wbar
from segal.groups.finite import constant_group, cyclic, symmetric
from segal.core import Status
from segal.homotopy.fundamental import (
    GroupInvariants,
    compare_groups,
    components,
    finite_invariants,
    pi0,
    pi1_presentation,
    table_presentation,
)
from segal.simplicial.sset import basic_complex, delta, discrete, empty


def test_components() -> None:
    assert pi0(discrete(["a", "b"], 2)) == 2
    assert pi0(basic_complex("circle", truncation=2)) == 1
    assert components(discrete(["b", "a"], 2)) == [["b"], ["a"]]


def test_circle() -> None:
    P = pi1_presentation(basic_complex("circle", truncation=2))

    assert len(P.generators) == 1
    assert P.relators == ()
    assert P.abelianization == (1, ())
    assert P.order() is None


def test_torus() -> None:
    P = pi1_presentation(corpus.space("torus", 2))

    assert len(P.generators) == 3
    assert P.abelianization == (2, ())
    assert P.order() is None


def test_simplex_is_simply_connected() -> None:
    P = pi1_presentation(delta(2, 2))

    assert P.order() == 1
    assert P.as_dict()["basepoint"] == "(0)"


def test_empty_space() -> None:
    with pytest.raises(ValueError):
        pi1_presentation(empty(2))


def test_classifying_space_of_z2() -> None:
    X = wbar(constant_group(cyclic(2), 3)).sset
    invariants = pi1_presentation(X).invariants()

    assert invariants.order == 2
    assert invariants.abelianization == (0, (2,))
    assert invariants.hom_counts == (4, 10)
    assert compare_groups(finite_invariants(cyclic(2)), invariants, 3).certified


def test_table_presentation() -> None:
    assert table_presentation(cyclic(3)).abelianization == (0, (3,))
    assert table_presentation(symmetric(3)).abelianization == (0, (2,))


def test_compare_groups() -> None:
    z2, z3 = finite_invariants(cyclic(2)), finite_invariants(cyclic(3))

    verdict = compare_groups(z2, z3, 2)

    assert verdict.refuted
    assert verdict.witness["invariant"] == "order"
    assert compare_groups(z3, z3, 2).certified


def test_unknown_order_is_never_certified() -> None:
    known = GroupInvariants(1, (0, ()), (1, 1))
    unknown = GroupInvariants(None, (0, ()), (1, 1))

    assert compare_groups(known, unknown, 3).status is Status.CONSISTENT
    assert compare_groups(unknown, known, 3).status is Status.CONSISTENT
    assert compare_groups(unknown, unknown, 3).status is Status.CONSISTENT
