import pytest

from segal import corpus
from segal.groups.constructions import translation
from segal.groups.finite import cyclic
from segal.groups.straightening import bar_action, unstraighten
from segal.monoidal.functors import (
    CoskeletonFunctor,
    EmptyFunctor,
    ExFunctor,
    IdentityFunctor,
    PostnikovFunctor,
    apply_levelwise,
    apply_to_space,
    functor_audit,
    functor_by_name,
    truncate_action,
)
from segal.monoidal.tower import build_tower
from segal.simplicial.sset import basic_complex, delta, identity_map, point, to_point


def test_functor_by_name() -> None:
    assert isinstance(functor_by_name("identity"), IdentityFunctor)
    assert isinstance(functor_by_name("empty"), EmptyFunctor)

    ex = functor_by_name("ex", k=2)
    assert isinstance(ex, ExFunctor) and ex.k == 2
    assert functor_by_name("ex3", k=2).name == "ex3"

    cosk = functor_by_name("cosk2")
    assert isinstance(cosk, CoskeletonFunctor) and cosk.n == 2

    postnikov = functor_by_name("postnikov1", k=0)
    assert isinstance(postnikov, PostnikovFunctor)
    assert postnikov.name == "P1"
    assert postnikov.cosk.n == 2


def test_unknown_functor() -> None:
    with pytest.raises(ValueError):
        functor_by_name("sheafify")


def test_ex_stage_zero_is_the_identity() -> None:
    circle = basic_complex("circle", truncation=2)
    L = ExFunctor(0)

    assert L.apply(circle) is circle
    assert L.fmap(identity_map(circle)).differences(identity_map(circle)) == []
    unit = L.unit(circle)
    assert unit is not None and unit.differences(identity_map(circle)) == []


def test_images_are_memoized() -> None:
    L = CoskeletonFunctor(1)
    circle = basic_complex("circle", truncation=2)

    assert L.apply(circle) is L.apply(circle)
    f = L.fmap(identity_map(circle))
    assert f.source is L.apply(circle)
    assert f.target is L.apply(circle)


def test_identity_passes_the_audit() -> None:
    spaces, equivalences = corpus.audit_corpus(2)
    report = functor_audit(IdentityFunctor(), spaces, equivalences, 2)

    assert set(report.checks) == {"point", "equivalences", "products", "functoriality"}
    assert report.overall.certified


def test_empty_fails_the_audit() -> None:
    spaces, equivalences = corpus.audit_corpus(2)
    report = functor_audit(EmptyFunctor(), spaces, equivalences, 2)

    assert report.checks["point"].refuted
    assert report.overall.refuted


def test_ex_audit_on_contractible_spaces() -> None:
    pt, interval = point(2), delta(1, 2)
    report = functor_audit(ExFunctor(1), [pt, interval], [to_point(interval, pt)], 2)

    assert report.checks["point"].certified
    assert report.checks["functoriality"].certified
    assert not report.overall.refuted


def test_apply_to_space_keeps_levels() -> None:
    pi = bar_action(translation(cyclic(2), 2), 2)
    B = apply_to_space(ExFunctor(0), pi.source)

    assert [level.counts() for level in B.levels] == [level.counts() for level in pi.source.levels]
    assert B.violations() == []


def test_apply_identity_levelwise() -> None:
    pi = bar_action(translation(cyclic(2), 2), 2)
    image, report = apply_levelwise(IdentityFunctor(), pi, 2, 2)

    assert image is pi
    assert report.label == f"identity({pi.source.name})"
    assert report.overall.certified


def test_truncate_action() -> None:
    pi = bar_action(translation(cyclic(2), 3), 1)

    assert truncate_action(pi, 5) is pi
    cut = truncate_action(pi, 2)
    assert cut.source.truncation == 2
    assert cut.target.truncation == 2


def test_tower_commutes() -> None:
    X = corpus.gspace("circle_trivial", cyclic(2), 2)
    tower = build_tower(X, n_max=1, k=0, up_to=1, N=2, check_stages=False)

    assert len(tower.stages) == 2
    assert set(tower.connecting) == {1}
    assert {"natural_tau_0", "tau_0", "natural_tau_1", "tau_1", "natural_p_1", "p_1", "p_1_tau"} == set(
        tower.checks.checks
    )
    assert tower.checks.overall.certified
    assert [stage["n"] for stage in tower.as_dict()["stages"]] == [0, 1]


def test_postnikov_levelwise_on_a_trivial_circle() -> None:
    pi, _ = unstraighten(corpus.gspace("circle_trivial", cyclic(2), 2), up_to=1, N=2)
    image, report = apply_levelwise(functor_by_name("postnikov1", k=0), pi, 1, 2)

    assert image.source.ext_truncation == 1
    assert not report.overall.refuted


@pytest.mark.slow
def test_tower_of_height_two() -> None:
    X = corpus.gspace("circle_trivial", cyclic(2), 2)
    tower = build_tower(X, n_max=2, k=0, up_to=1, N=2, check_stages=True)

    assert len(tower.stages) == 3
    assert set(tower.connecting) == {1, 2}
    assert {"p_1", "p_1_tau", "p_2", "p_2_tau", "tau_2"} <= set(tower.checks.checks)
    assert tower.checks.overall.certified
    assert all(not stage.report.overall.refuted for stage in tower.stages)
