import pytest

from segal import corpus
from segal.groups.constructions import (
    GMap,
    borel,
    borel_projection,
    disjoint_copies,
    from_generator_action,
    orbit_space,
    point_space,
    translation,
    trivial_action,
    w,
    w_to_wbar,
    wbar,
)
from segal.groups.finite import (
    FiniteGroup,
    constant_group,
    count_homomorphisms,
    cyclic,
    max_monoid,
    symmetric,
)
from segal.homotopy.chains import homology
from segal.simplicial.kan import is_fibration
from segal.simplicial.sset import basic_complex, constant_map, discrete, to_point

ACYCLIC = ((1, ()), (0, ()), (0, ()))


def test_cyclic() -> None:
    G = cyclic(3)

    assert G.violations() == []
    assert G.elements == ("0", "1", "2")
    assert G.identity == 0
    assert G.inv(1) == 2
    assert G.product(1, 1, 1) == 0
    assert G.is_abelian


def test_symmetric() -> None:
    S3 = symmetric(3)

    assert S3.violations() == []
    assert S3.order == 6
    assert not S3.is_abelian
    assert len(S3.closure(S3.generating_set())) == 6


def test_not_a_group() -> None:
    assert max_monoid().violations() == ["1 has no inverse"]
    assert FiniteGroup(("a", "b"), ((0, 0), (0, 0))).violations() == ["no identity element"]
    assert FiniteGroup(("a",), ((0, 0),)).violations() == ["table must be 1x1"]


def test_count_homomorphisms() -> None:
    assert count_homomorphisms(cyclic(2), symmetric(3)) == 4
    assert count_homomorphisms(cyclic(3), symmetric(3)) == 3
    assert count_homomorphisms(symmetric(3), cyclic(2)) == 2
    assert count_homomorphisms(cyclic(2), cyclic(3)) == 1


def test_constant_group() -> None:
    G = constant_group(cyclic(2), 3)

    assert G.is_constant
    assert G.truncation == 3
    assert G.violations() == []


def test_w_is_free_and_acyclic() -> None:
    W = w(constant_group(cyclic(2), 3))

    assert [W.sset.count(n) for n in range(4)] == [2, 4, 8, 16]
    assert W.violations() == []
    assert W.is_free()
    assert homology(W.sset, 3).through(2) == ACYCLIC


def test_wbar() -> None:
    B = wbar(constant_group(cyclic(2), 3)).sset

    assert B.counts() == [1, 1, 1, 1]
    assert w_to_wbar(constant_group(cyclic(2), 3)).violations() == []


def test_translation() -> None:
    X = translation(cyclic(3), 2)

    assert X.violations() == []
    assert X.is_free()
    assert X.act_ref(X.sset.ref("1"), 2).generator == "0"


def test_trivial_action_is_not_free() -> None:
    X = trivial_action(basic_complex("circle", truncation=2), cyclic(2))

    assert X.violations() == []
    assert not X.is_free()


def test_bad_action() -> None:
    X = discrete(["a", "b"], 2, "2pts")
    broken = from_generator_action(X, cyclic(2), {"a": ("b", "b"), "b": ("a", "a")})

    assert broken.violations()[0].startswith("identity does not fix")


def test_orbit_space() -> None:
    quotient, q = orbit_space(translation(cyclic(3), 2))
    assert quotient.sset.counts() == [1]
    assert q.violations() == []

    quotient, _ = orbit_space(disjoint_copies(cyclic(2), 2, 2))
    assert quotient.sset.counts() == [2]


def test_borel_of_a_point() -> None:
    G = cyclic(2)

    assert borel(point_space(G, 3)).counts() == wbar(constant_group(G, 3)).sset.counts()


def test_borel_of_a_free_action() -> None:
    X = translation(cyclic(2), 3)

    assert homology(borel(X), 3).through(2) == ACYCLIC
    assert is_fibration(borel_projection(X), 2).certified


def test_equivariant_maps() -> None:
    G = cyclic(2)
    X, pt = translation(G, 2), point_space(G, 2)
    assert GMap(X, pt, to_point(X.sset, pt.sset)).violations() == []

    collapse = constant_map(X.sset, X.sset, X.sset.ref("0"))
    assert GMap(X, X, collapse).violations()


def test_corpus_groups() -> None:
    assert corpus.group("Z/5").order == 5
    assert corpus.group("S3").order == 6
    assert corpus.group("1").order == 1
    with pytest.raises(ValueError):
        corpus.group("Q8")


def test_corpus_spaces() -> None:
    assert corpus.space("horn2_1", 2).counts() == [3, 2]
    assert corpus.space("boundary3", 3).counts() == [4, 6, 4]
    with pytest.raises(ValueError):
        corpus.space("sphere")


def test_corpus_gspaces() -> None:
    swap = corpus.gspace("swap", cyclic(2), 2)
    assert swap.violations() == []
    assert swap.is_free()

    with pytest.raises(ValueError):
        corpus.gspace("swap", cyclic(3))
    with pytest.raises(ValueError):
        corpus.gspace("mobius", cyclic(2))
