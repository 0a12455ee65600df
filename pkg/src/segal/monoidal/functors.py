"""Endofunctors of truncated simplicial sets and their weakly monoidal audit.

Every functor memoizes its object images, so that the image of a map always
runs between the images already handed out for its source and target.
"""

import re
from typing import Any

from segal.bisimplicial.segal import SegalReport, action_report
from segal.bisimplicial.space import SimplicialSpace, SpaceMap, truncate_space, truncate_space_map
from segal.core import DEFAULT_BUDGET, DEFAULT_EX_STAGE, DEFAULT_UP_TO, MalformedInputError, Verdict, combine
from segal.homotopy.oracle import weak_equivalence_verdict
from segal.logging import debug, info
from segal.simplicial.constructions import Coskeleton, Ex, product
from segal.simplicial.sset import (
    SimplicialMap,
    SimplicialSet,
    compose_maps,
    empty,
    identity_map,
    point,
    to_point,
)

DEFAULT_AUDIT_TRUNCATION = 3


class EndoFunctor:
    name = "functor"

    def __init__(self, budget: int = DEFAULT_BUDGET) -> None:
        self.budget = budget
        self._objects: dict[int, tuple[SimplicialSet, Any]] = {}

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"

    def summary(self) -> str:
        return self.name

    def _construct(self, X: SimplicialSet) -> Any:
        raise NotImplementedError()

    def _image(self, construction: Any) -> SimplicialSet:
        raise NotImplementedError()

    def _map(self, f: SimplicialMap, source: Any, target: Any) -> SimplicialMap:
        raise NotImplementedError()

    def _unit(self, X: SimplicialSet, construction: Any) -> SimplicialMap | None:
        return None

    def construction(self, X: SimplicialSet) -> Any:
        key = id(X)
        if key not in self._objects:
            self._objects[key] = (X, self._construct(X))
            debug(f"{self.name}({X.name}) computed")
        return self._objects[key][1]

    def apply(self, X: SimplicialSet) -> SimplicialSet:
        return self._image(self.construction(X))

    def fmap(self, f: SimplicialMap) -> SimplicialMap:
        return self._map(f, self.construction(f.source), self.construction(f.target))

    def unit(self, X: SimplicialSet) -> SimplicialMap | None:
        """The natural map X -> LX, when the functor has one."""
        return self._unit(X, self.construction(X))

    def product_comparison(self, X: SimplicialSet, Y: SimplicialSet) -> SimplicialMap:
        """L(X x Y) -> LX x LY."""

        P = product(X, Y, self.budget)
        Q = product(self.apply(X), self.apply(Y), self.budget)
        return Q.induced(self.apply(P.sset), self.fmap(P.left), self.fmap(P.right), f"{self.name}(x)")


class IdentityFunctor(EndoFunctor):
    name = "identity"

    def _construct(self, X: SimplicialSet) -> SimplicialSet:
        return X

    def _image(self, construction: SimplicialSet) -> SimplicialSet:
        return construction

    def _map(self, f: SimplicialMap, source: Any, target: Any) -> SimplicialMap:
        return f

    def _unit(self, X: SimplicialSet, construction: Any) -> SimplicialMap:
        return identity_map(X)


class ExFunctor(EndoFunctor):
    """Ex^k; stage k = 0 is the identity."""

    def __init__(self, k: int = DEFAULT_EX_STAGE, budget: int = DEFAULT_BUDGET) -> None:
        super().__init__(budget)
        self.k = k
        self.name = f"ex{k}"

    def _construct(self, X: SimplicialSet) -> list[Ex]:
        stages: list[Ex] = []
        current = X
        for _ in range(self.k):
            stages.append(Ex(current, self.budget))
            current = stages[-1].sset
        return stages

    def _image(self, construction: list[Ex]) -> SimplicialSet:
        return construction[-1].sset

    def apply(self, X: SimplicialSet) -> SimplicialSet:
        return X if self.k == 0 else super().apply(X)

    def _map(self, f: SimplicialMap, source: list[Ex], target: list[Ex]) -> SimplicialMap:
        for a, b in zip(source, target):
            f = a.functorial(f, b)
        return f

    def _unit(self, X: SimplicialSet, construction: list[Ex]) -> SimplicialMap:
        if not construction:
            return identity_map(X)
        return compose_maps(*reversed([stage.unit() for stage in construction]))


class CoskeletonFunctor(EndoFunctor):
    def __init__(self, n: int, budget: int = DEFAULT_BUDGET) -> None:
        super().__init__(budget)
        self.n = n
        self.name = f"cosk{n}"

    def _construct(self, X: SimplicialSet) -> Coskeleton:
        return Coskeleton(X, self.n, self.budget)

    def _image(self, construction: Coskeleton) -> SimplicialSet:
        return construction.sset

    def _map(self, f: SimplicialMap, source: Coskeleton, target: Coskeleton) -> SimplicialMap:
        return source.functorial(f, target)

    def _unit(self, X: SimplicialSet, construction: Coskeleton) -> SimplicialMap:
        return construction.unit()


class ComposedFunctor(EndoFunctor):
    """outer o inner."""

    def __init__(self, outer: EndoFunctor, inner: EndoFunctor, name: str = "") -> None:
        super().__init__(outer.budget)
        self.outer = outer
        self.inner = inner
        self.name = name or f"{outer.name}.{inner.name}"

    def _construct(self, X: SimplicialSet) -> SimplicialSet:
        return self.outer.apply(self.inner.apply(X))

    def _image(self, construction: SimplicialSet) -> SimplicialSet:
        return construction

    def _map(self, f: SimplicialMap, source: Any, target: Any) -> SimplicialMap:
        return self.outer.fmap(self.inner.fmap(f))

    def _unit(self, X: SimplicialSet, construction: Any) -> SimplicialMap | None:
        first = self.inner.unit(X)
        second = self.outer.unit(self.inner.apply(X))
        if first is None or second is None:
            return None
        return compose_maps(second, first)


class PostnikovFunctor(ComposedFunctor):
    """cosk_(n+1) o Ex^k, standing in for the n-th Postnikov section."""

    def __init__(self, n: int, k: int = DEFAULT_EX_STAGE, budget: int = DEFAULT_BUDGET, ex: ExFunctor | None = None) -> None:
        self.n = n
        self.ex = ex or ExFunctor(k, budget)
        self.cosk = CoskeletonFunctor(n + 1, budget)
        super().__init__(self.cosk, self.ex, f"P{n}")

    def restriction(self, lower: "PostnikovFunctor", X: SimplicialSet) -> SimplicialMap:
        """p: P_n X -> P_m X for m < n, sharing the Ex stage."""

        E = self.ex.apply(X)
        return self.cosk.construction(E).restriction(lower.cosk.construction(E))


class EmptyFunctor(EndoFunctor):
    """Sends everything to the empty simplicial set."""

    name = "empty"

    def _construct(self, X: SimplicialSet) -> SimplicialSet:
        return empty(X.truncation)

    def _image(self, construction: SimplicialSet) -> SimplicialSet:
        return construction

    def _map(self, f: SimplicialMap, source: SimplicialSet, target: SimplicialSet) -> SimplicialMap:
        return SimplicialMap(source, target, {}, f"empty({f.name})")


_FUNCTOR_NAME = re.compile(r"^(identity|empty|ex(\d*)|cosk(\d+)|postnikov(\d+))$")


def functor_by_name(name: str, k: int = DEFAULT_EX_STAGE, budget: int = DEFAULT_BUDGET) -> EndoFunctor:
    """identity, empty, ex / exK, coskN, postnikovN (with Ex stage k)."""

    match = _FUNCTOR_NAME.match(name)
    if match is None:
        raise MalformedInputError(f"Unknown functor: {name}")
    if name == "identity":
        return IdentityFunctor(budget)
    if name == "empty":
        return EmptyFunctor(budget)
    if name.startswith("ex"):
        return ExFunctor(int(match.group(2)) if match.group(2) else k, budget)
    if name.startswith("cosk"):
        return CoskeletonFunctor(int(match.group(3)), budget)
    return PostnikovFunctor(int(match.group(4)), k, budget)


def postnikov_approx(X: SimplicialSet, n: int, k: int = DEFAULT_EX_STAGE, budget: int = DEFAULT_BUDGET) -> SimplicialSet:
    return PostnikovFunctor(n, k, budget).apply(X)


def functor_audit(
    L: EndoFunctor,
    spaces: list[SimplicialSet],
    equivalences: list[SimplicialMap],
    N: int = DEFAULT_AUDIT_TRUNCATION,
) -> SegalReport:
    """Verdicts for L(pt) ~ pt, preservation of the given equivalences, the
    product comparison on pairs of spaces, and functoriality on the maps."""

    report = SegalReport(truncation=N, label=f"audit({L.name})")
    pt = point(N)
    report.add("point", weak_equivalence_verdict(to_point(L.apply(pt)), N))

    report.add(
        "equivalences",
        combine([weak_equivalence_verdict(L.fmap(f), N) for f in equivalences], N),
    )

    comparisons = []
    for a, X in enumerate(spaces):
        for Y in spaces[a:]:
            comparisons.append(weak_equivalence_verdict(L.product_comparison(X, Y), N))
    report.add("products", combine(comparisons, N))

    report.add("functoriality", _functoriality(L, equivalences, N))
    info(report)
    return report


def _functoriality(L: EndoFunctor, maps: list[SimplicialMap], N: int) -> Verdict:
    for f in maps:
        X, Y = f.source, f.target
        bad = L.fmap(identity_map(X)).differences(identity_map(L.apply(X)))
        if bad:
            return Verdict.refute(N, map=f"id_{X.name}", generator=str(bad[0]))
        g = to_point(Y)
        bad = L.fmap(compose_maps(g, f)).differences(compose_maps(L.fmap(g), L.fmap(f)))
        if bad:
            return Verdict.refute(N, map=f"{g.name} o {f.name}", generator=str(bad[0]))
    return Verdict.certify(N, maps=len(maps))


def apply_to_space(L: EndoFunctor, B: SimplicialSpace) -> SimplicialSpace:
    return SimplicialSpace(
        [L.apply(level) for level in B.levels],
        {key: L.fmap(f) for key, f in B.faces.items()},
        {key: L.fmap(s) for key, s in B.degeneracies.items()},
        f"{L.name}({B.name})",
    )


def levelwise(L: EndoFunctor, pi: SpaceMap) -> SpaceMap:
    """L applied to every level of pi, its source and its target."""

    if isinstance(L, IdentityFunctor):
        return pi
    return SpaceMap(
        apply_to_space(L, pi.source),
        apply_to_space(L, pi.target),
        [L.fmap(f) for f in pi.levels],
        f"{L.name}({pi.name})",
    )


def apply_levelwise(
    L: EndoFunctor,
    pi: SpaceMap,
    up_to: int = DEFAULT_UP_TO,
    N: int = DEFAULT_AUDIT_TRUNCATION,
    ex_stage: int = DEFAULT_EX_STAGE,
    budget: int = DEFAULT_BUDGET,
) -> tuple[SpaceMap, SegalReport]:
    """L pi and the full action report on it."""

    image = levelwise(L, pi)
    report = action_report(image, up_to, N, ex_stage, budget)
    report.label = f"{L.name}({pi.source.name})"
    return image, report


def truncate_action(pi: SpaceMap, N: int) -> SpaceMap:
    """pi with every level cut down to internal truncation N."""

    t = min(N, pi.source.truncation, pi.target.truncation)
    if pi.source.truncation == t and pi.target.truncation == t:
        return pi
    return truncate_space_map(pi, truncate_space(pi.source, t), truncate_space(pi.target, t))
