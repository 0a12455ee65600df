import pytest
from segal import corpus
from segal.core import BudgetExceededError, InvalidObjectError, NonSaturatingRelationError
from segal.simplicial.constructions import (
    Coskeleton,
    Ex,
    count_maps,
    product,
    search_order,
    skeleton,
    subdivision,
    truncate,
)
from segal.simplicial.kan import is_fibration, kan_check
from segal.simplicial.sset import (
    SimplexRef,
    SimplicialMap,
    SimplicialSet,
    basic_complex,
    compose_maps,
    delta,
    discrete,
    identity_map,
    point,
    quotient,
    to_point,
)


def test_circle() -> None:
    S = basic_complex("circle", truncation=3)
    e = S.ref("e")

    assert S.counts() == [1, 1]
    assert S.face(0, e) == SimplexRef("v", (), 0)
    assert S.face(1, S.degeneracy(0, e)) == e
    assert S.count(2) == 3
    assert S.violations() == []


def test_simplex_and_its_boundary() -> None:
    assert delta(2, 3).counts() == [3, 3, 1]
    assert delta(1, 3).count(2) == 4
    assert basic_complex("boundary", 2, truncation=3).counts() == [3, 3]
    assert basic_complex("horn", 2, 1, 3).counts() == [3, 2]
    assert basic_complex("boundary", 3, truncation=3).counts() == [4, 6, 4]


def test_delta_faces_are_vertex_tuples() -> None:
    D = delta(2, 2)

    assert D.faces[(0, 1, 2)] == (
        SimplexRef((1, 2), (), 1),
        SimplexRef((0, 2), (), 1),
        SimplexRef((0, 1), (), 1),
    )


def test_horn_index_out_of_range() -> None:
    with pytest.raises(IndexError):
        basic_complex("horn", 2, 3, 3)


def test_missing_faces() -> None:
    X = SimplicialSet(1, [["v"], ["e"]], {})

    with pytest.raises(InvalidObjectError) as ex:
        X.validate()

    assert ex.value.violations == ["generator e needs 2 faces"]


def test_unknown_face() -> None:
    v, w = SimplexRef("v", (), 0), SimplexRef("w", (), 0)
    X = SimplicialSet(1, [["v"], ["e"]], {"e": (v, w)})

    assert X.violations() == ["d1e refers to unknown generator w"]


def test_simplicial_identity_violation() -> None:
    a, b = SimplexRef("a", (), 0), SimplexRef("b", (), 0)
    f = SimplexRef("f", (), 1)
    X = SimplicialSet(2, [["a", "b"], ["f"], ["t"]], {"f": (b, a), "t": (f, f, f)})

    problems = X.violations()

    assert "d0d2t = b but d1d0t = a" in problems


def test_product_of_intervals() -> None:
    I = delta(1, 3)
    P = product(I, I)

    assert P.sset.counts() == [4, 5, 2]
    assert P.left.violations() == []
    assert P.right.violations() == []


def test_torus() -> None:
    assert corpus.space("torus", 3).counts() == [1, 3, 2]


def test_budget_exceeded() -> None:
    with pytest.raises(BudgetExceededError):
        product(delta(2, 3), delta(2, 3), budget=10)


def test_quotient_of_interval_is_circle() -> None:
    I = delta(1, 3)
    S, q = quotient(I, [((0,), (1,))], "S^1")

    assert S.counts() == [1, 1]
    assert S.violations() == []
    assert q.violations() == []


def test_quotient_must_saturate() -> None:
    I = delta(1, 3)

    with pytest.raises(NonSaturatingRelationError):
        quotient(I, [((0,), (0, 1))])


def test_maps() -> None:
    S = basic_complex("circle", truncation=3)
    f = to_point(S)

    assert identity_map(S).is_isomorphism()
    assert not f.is_isomorphism()
    assert compose_maps(f, identity_map(S)).images == f.images
    assert f.violations() == []


def test_map_that_does_not_commute_with_faces() -> None:
    I = delta(1, 2)
    images = {
        (0,): SimplexRef((0,), (), 0),
        (1,): SimplexRef((0,), (), 0),
        (0, 1): SimplexRef((0, 1), (), 1),
    }

    assert SimplicialMap(I, I, images).violations() == ["map does not commute with d0 on (0,1)"]


def test_counting_maps() -> None:
    S = basic_complex("circle", truncation=2)

    assert count_maps(S, S) == 2
    assert count_maps(delta(1, 2), delta(1, 2)) == 3
    assert count_maps(basic_complex("boundary", 2, truncation=2), delta(1, 2)) == 4


def test_skeleton_and_truncation() -> None:
    D = delta(2, 3)

    assert skeleton(D, 1).counts() == [3, 3]
    assert truncate(D, 1).counts() == [3, 3]
    assert truncate(D, 1).truncation == 1


def test_coskeleton_of_circle() -> None:
    C = Coskeleton(basic_complex("circle", truncation=2), 1)

    assert C.sset.count(1) == 2
    assert C.sset.count(2) == 8
    assert C.unit().violations() == []


def test_subdivision() -> None:
    assert subdivision(1).counts() == [3, 2]
    assert subdivision(2).counts() == [7, 12, 6]


def test_ex_of_circle() -> None:
    E = Ex(basic_complex("circle", truncation=2))

    assert E.sset.count(0) == 1
    assert E.sset.count(1) == 4
    assert E.unit().violations() == []


def test_kan() -> None:
    assert kan_check(point(3), 3).certified

    verdict = kan_check(basic_complex("circle", truncation=3), 3)

    assert verdict.refuted
    assert verdict.witness["dimension"] == 2


def test_fibration() -> None:
    I = delta(1, 3)

    assert is_fibration(identity_map(I), 2).certified
    assert is_fibration(to_point(point(3)), 2).certified


def test_search_order_places_faces_first() -> None:
    K = basic_complex("horn", 3, 0, 3)
    order = search_order(K)
    position = {g: k for k, (_, g) in enumerate(order)}

    assert len(order) == sum(K.counts())
    for n, g in order:
        if n:
            assert all(position[f.generator] < position[g] for f in K.faces[g])


def test_horns_into_a_discrete_set() -> None:
    X = discrete([str(k) for k in range(40)], 3)

    assert count_maps(basic_complex("horn", 3, 0, 3), X) == 40
    assert kan_check(X, 3).certified
    assert is_fibration(to_point(X), 3).certified
