import pytest

from segal import corpus
from segal.core import StraighteningError
from segal.groups.constructions import disjoint_copies, point_space, translation
from segal.groups.finite import cyclic
from segal.groups.straightening import (
    bar_action,
    bar_group,
    bar_space,
    borel_holim_check,
    round_trip,
    straighten,
    unstraighten,
)


def test_bar_space_levels() -> None:
    A = bar_space(translation(cyclic(2), 2), 2)

    assert [level.counts() for level in A.levels] == [[2], [4], [8]]
    assert A.violations() == []


def test_bar_space_first_face_acts() -> None:
    A = bar_space(translation(cyclic(3), 1), 1)
    x = A.level(1).ref(("1", ("2",)))

    assert A.face(1, 0)(x).generator == ("0", ())
    assert A.face(1, 1)(x).generator == ("1", ())


def test_bar_action_forgets_the_space() -> None:
    pi = bar_action(translation(cyclic(2), 2), 2)

    assert pi.violations() == []
    assert pi.target.name == "Bar(Z/2)"
    assert pi.level(2)(pi.source.level(2).ref(("1", ("0", "1")))).generator == ("0", "1")


def test_unstraighten_translation() -> None:
    pi, report = unstraighten(translation(cyclic(2), 3), up_to=2, N=3)

    assert pi.source.ext_truncation == 2
    assert report.label.startswith("unstraighten")
    assert "cross_last_vertex_2" in report.checks
    assert report.overall.certified


def test_straighten_is_free() -> None:
    X = straighten(bar_action(translation(cyclic(2), 2), 2), cyclic(2))

    assert X.violations() == []
    assert X.is_free()


def test_straighten_needs_the_bar_construction() -> None:
    pi = bar_action(translation(cyclic(2), 2), 2)

    with pytest.raises(StraighteningError):
        straighten(pi, cyclic(3))


def test_round_trip_of_a_point() -> None:
    result = round_trip(point_space(cyclic(2), 3), 3)

    assert result.report.checks["underlying"].certified
    assert result.report.checks["quotient"].certified
    assert result.borel.through(1) == ((1, ()), (0, (2,)))
    assert set(result.as_dict()) == {"source", "straightened", "borel", "quotient", "checks"}


def test_round_trip_of_a_free_action() -> None:
    result = round_trip(translation(cyclic(2), 2), 2)

    assert result.source.through(0) == ((2, ()),)
    assert result.report.overall.certified


def test_borel_holim_on_corpus_cospans() -> None:
    G = cyclic(2)

    for name, (f, g) in corpus.cospans(G, 2).items():
        assert not borel_holim_check(f, g, 2, label=name).refuted, name


def test_bar_group_name() -> None:
    assert bar_group(cyclic(3), 1, 1).name == "Bar(Z/3)"


def test_bar_space_faces_on_every_element() -> None:
    G = cyclic(3)
    A = bar_space(translation(G, 2), 2)

    for x in G.elements:
        for g1 in G.elements:
            for g2 in G.elements:
                xg1 = G.elements[G.mul(G.index(x), G.index(g1))]
                g1g2 = G.elements[G.mul(G.index(g1), G.index(g2))]
                simplex = A.level(2).ref((x, (g1, g2)))

                assert A.face(2, 0)(simplex).generator == (xg1, (g2,))
                assert A.face(2, 1)(simplex).generator == (x, (g1g2,))
                assert A.face(2, 2)(simplex).generator == (x, (g1,))


def test_round_trip_of_two_copies() -> None:
    result = round_trip(disjoint_copies(cyclic(2), 2, 3), 3)

    assert result.source.through(0) == ((4, ()),)
    assert result.report.overall.certified


@pytest.mark.slow
def test_round_trip_of_a_trivial_circle() -> None:
    result = round_trip(corpus.gspace("circle_trivial", cyclic(2), 3), 3)

    assert result.source.through(1) == ((1, ()), (1, ()))
    assert result.report.checks["underlying"].certified
    assert result.report.checks["quotient"].certified
