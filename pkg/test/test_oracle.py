import pytest

from segal.core import Status, Verdict
from segal.groups.finite import FiniteGroup
from segal.homotopy.fundamental import Pi1Presentation, counting_groups
from segal.homotopy.oracle import is_homotopy_cartesian, softened, weak_equivalence_verdict
from segal.simplicial.constructions import HomotopySquare
from segal.simplicial.sset import basic_complex, delta, discrete, identity_map, point, quotient, to_point


def test_isomorphism_is_certified() -> None:
    S = basic_complex("circle", truncation=3)

    verdict = weak_equivalence_verdict(identity_map(S), 3)

    assert verdict.certified
    assert verdict.witness == {"isomorphism": True}


def test_contractible_simplex() -> None:
    verdict = weak_equivalence_verdict(to_point(delta(1, 3)), 3)

    assert verdict.certified
    assert verdict.witness["simply_connected"]


def test_circle_is_not_a_point() -> None:
    verdict = weak_equivalence_verdict(to_point(basic_complex("circle", truncation=3)), 3)

    assert verdict.refuted
    assert verdict.witness["invariant"] == "homology"
    assert verdict.witness["degree"] == 1


def test_two_points_are_not_one() -> None:
    verdict = weak_equivalence_verdict(to_point(discrete(["a", "b"], 3)), 3)

    assert verdict.refuted
    assert verdict.witness["invariant"] == "pi0"


def test_interval_onto_circle() -> None:
    _, q = quotient(delta(1, 3), [((0,), (1,))])

    assert weak_equivalence_verdict(q, 3).refuted


def test_low_truncation_is_only_consistent() -> None:
    verdict = weak_equivalence_verdict(to_point(delta(1, 1)), 1)

    assert verdict.status is Status.CONSISTENT


def _square_over_points(W_points: list[str]) -> HomotopySquare:
    W = discrete(W_points, 3)
    X, Y, Z = point(3), point(3), point(3)
    return HomotopySquare(to_point(W, Y), to_point(W, X), to_point(Y, Z), to_point(X, Z), "points")


def test_cartesian_square() -> None:
    verdict = is_homotopy_cartesian(_square_over_points(["*"]), 3)

    assert verdict.certified
    assert verdict.witness["strict_pullback"]


def test_square_that_is_not_cartesian() -> None:
    verdict = is_homotopy_cartesian(_square_over_points(["a", "b"]), 3)

    assert verdict.refuted
    assert verdict.witness["invariant"] == "pi0"


def test_softened_refutation_is_a_hint() -> None:
    verdict = softened(Verdict.refute(3, label="x", degree=1), "not Kan")

    assert verdict.status is Status.CONSISTENT
    assert verdict.witness == {"hint": {"degree": 1}}
    assert verdict.notes == ("not Kan",)


def test_pi1_is_counted_into_every_group(monkeypatch: pytest.MonkeyPatch) -> None:
    seen = []
    count = Pi1Presentation.count_homomorphisms

    def recording(self: Pi1Presentation, K: FiniteGroup) -> int:
        seen.append(K.name)
        return count(self, K)

    monkeypatch.setattr(Pi1Presentation, "count_homomorphisms", recording)
    verdict = weak_equivalence_verdict(to_point(delta(1, 3)), 3)

    assert verdict.certified
    assert set(seen) == {K.name for K in counting_groups()}
