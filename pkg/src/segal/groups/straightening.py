"""Unstraightening G-spaces into actions over Bar(G) and straightening them back.

Only discrete groups are handled here. Bar_n(X, G) = X x G^n with
d_0(x, g_1, ..., g_n) = (x.g_1, g_2, ..., g_n), inner faces multiplying
neighbours and d_n dropping g_n.
"""

from dataclasses import dataclass
from typing import Any

from segal.bisimplicial.segal import SegalReport, action_report
from segal.bisimplicial.space import SimplicialSpace, SpaceMap, diagonal, nerve, space_pullback
from segal.core import (
    DEFAULT_BUDGET,
    DEFAULT_EX_STAGE,
    DEFAULT_TRUNCATION,
    DEFAULT_UP_TO,
    StraighteningError,
    Verdict,
)
from segal.groups.constructions import (
    GMap,
    GSpace,
    borel,
    borel_construction,
    borel_map,
    gspace_pullback,
    orbit_space,
    translation,
)
from segal.groups.finite import FiniteGroup, constant_group
from segal.homotopy.chains import HomologySignature, homology
from segal.homotopy.oracle import weak_equivalence_verdict
from segal.logging import debug, info, warning
from segal.simplicial.constructions import pullback
from segal.simplicial.kan import is_fibration
from segal.simplicial.sset import SimplexRef, SimplicialMap, SimplicialSet, degenerate_ref

ROUND_TRIP_DEGREE = 3


def bar_group(
    G: FiniteGroup, ext_truncation: int = DEFAULT_UP_TO, truncation: int = DEFAULT_TRUNCATION
) -> SimplicialSpace:
    B = nerve(G, ext_truncation, truncation)
    B.name = f"Bar({G.name})"
    return B


def _vertex(generator: Any, dim: int) -> SimplexRef:
    ref = SimplexRef(generator, (), 0)
    for i in range(dim):
        ref = degenerate_ref(ref, i)
    return ref


def bar_space(X: GSpace, ext_truncation: int = DEFAULT_UP_TO) -> SimplicialSpace:
    """Bar(X, G); the generators of level n are pairs (x, (g_1, ..., g_n))."""

    G = X.finite_group
    S = X.sset
    e = G.elements[G.identity]

    def tag(ref: SimplexRef, gs: tuple[str, ...]) -> SimplexRef:
        return SimplexRef((ref.generator, gs), ref.word, ref.dim)

    def multiply(a: str, b: str) -> str:
        return G.elements[G.mul(G.index(a), G.index(b))]

    def level(n: int) -> SimplicialSet:
        tuples = _tuples(G, n)
        generators = [[(x, gs) for x in gens for gs in tuples] for gens in S.generators]
        faces = {(x, gs): tuple(tag(f, gs) for f in S.faces[x]) for gens in S.generators[1:] for x in gens for gs in tuples}
        return SimplicialSet(S.truncation, generators, faces, f"{X.name}x{G.name}^{n}")

    levels = [level(n) for n in range(ext_truncation + 1)]

    def face_image(n: int, i: int, x: Any, gs: tuple[str, ...]) -> SimplexRef:
        ref = S.ref(x)
        if i == 0:
            return tag(X.act_ref(ref, G.index(gs[0])), gs[1:])
        if i == n:
            return tag(ref, gs[:-1])
        return tag(ref, gs[: i - 1] + (multiply(gs[i - 1], gs[i]),) + gs[i + 1:])

    faces = {
        (n, i): SimplicialMap(
            levels[n],
            levels[n - 1],
            {(x, gs): face_image(n, i, x, gs) for x, gs in _generators(levels[n])},
            f"d{i}",
        )
        for n in range(1, ext_truncation + 1)
        for i in range(n + 1)
    }
    degeneracies = {
        (n, i): SimplicialMap(
            levels[n],
            levels[n + 1],
            {(x, gs): tag(S.ref(x), gs[:i] + (e,) + gs[i:]) for x, gs in _generators(levels[n])},
            f"s{i}",
        )
        for n in range(ext_truncation)
        for i in range(n + 1)
    }
    debug(f"Bar({X.name}, {G.name}): {[level.counts() for level in levels]}")
    return SimplicialSpace(levels, faces, degeneracies, f"Bar({X.name},{G.name})")


def _tuples(G: FiniteGroup, n: int) -> list[tuple[str, ...]]:
    tuples: list[tuple[str, ...]] = [()]
    for _ in range(n):
        tuples = [t + (g,) for t in tuples for g in G.elements]
    return tuples


def _generators(level: SimplicialSet) -> list[Any]:
    return [g for gens in level.generators for g in gens]


def bar_action(X: GSpace, ext_truncation: int = DEFAULT_UP_TO) -> SpaceMap:
    """Bar(X, G) -> Bar(G), forgetting the X coordinate."""

    A = bar_space(X, ext_truncation)
    B = bar_group(X.finite_group, ext_truncation, X.sset.truncation)
    levels = [
        SimplicialMap(
            A.level(n),
            B.level(n),
            {(x, gs): _vertex(gs, A.level(n).dim_of[(x, gs)]) for x, gs in _generators(A.level(n))},
            f"pi_{n}",
        )
        for n in range(ext_truncation + 1)
    ]
    return SpaceMap(A, B, levels, "pi")


def unstraighten(
    X: GSpace,
    up_to: int = DEFAULT_UP_TO,
    N: int = DEFAULT_TRUNCATION,
    ex_stage: int = DEFAULT_EX_STAGE,
    budget: int = DEFAULT_BUDGET,
) -> tuple[SpaceMap, SegalReport]:
    """Bar(X, G) -> Bar(G) together with the action and last-vertex checks."""

    pi = bar_action(X, up_to)
    report = action_report(pi, up_to, N, ex_stage, budget)
    report.label = f"unstraighten({X.name})"
    info(report)
    return pi, report


def straighten(pi: SpaceMap, G: FiniteGroup, budget: int = DEFAULT_BUDGET) -> GSpace:
    """d*(A x_Bar(G) Bar(G, G)), with G acting through the Bar(G, G) factor."""

    target = pi.target
    expected = bar_group(G, target.ext_truncation, target.truncation)
    if any(mine != theirs for mine, theirs in zip(target.levels, expected.levels)):
        raise StraighteningError(f"{target.name} is not Bar({G.name}); no comparison map is guessed")

    E = bar_action(translation(G, target.truncation), target.ext_truncation)
    P = space_pullback(pi, E, budget)
    D = diagonal(P.space, budget)

    def shift(ref: SimplexRef, h: int) -> SimplexRef:
        x, gs = ref.generator
        moved = G.elements[G.mul(G.inv(h), G.index(x))]
        return SimplexRef((moved, gs), ref.word, ref.dim)

    def act(n: int, element: SimplexRef, h: int) -> SimplexRef:
        pullback_n = P.pullbacks[n]
        a, b = pullback_n.pair(element)
        return pullback_n.ref(a, shift(b, h))

    result = GSpace(D, constant_group(G, D.sset.truncation), act, f"St({pi.source.name})")
    debug(f"Straightened {pi.source.name}: {D.sset.counts()}")
    return result


@dataclass
class RoundTrip:
    """Homology of X, of St(Un X) and of their quotients."""

    source: HomologySignature
    straightened: HomologySignature
    borel: HomologySignature
    quotient: HomologySignature
    report: SegalReport

    def as_dict(self) -> dict[str, Any]:
        return {
            "source": self.source.as_dict(),
            "straightened": self.straightened.as_dict(),
            "borel": self.borel.as_dict(),
            "quotient": self.quotient.as_dict(),
            "checks": self.report.as_dict(),
        }


def _signature_verdict(left: HomologySignature, right: HomologySignature, degree: int, label: str) -> Verdict:
    top = min(degree, left.safe_through, right.safe_through)
    mismatch = left.mismatch(right, top)
    if mismatch is not None:
        return Verdict.refute(
            top, label=label, degree=mismatch, left=str(left[mismatch]), right=str(right[mismatch])
        )
    return Verdict.certify(top, label=label, signature=left.summary())


def round_trip(
    X: GSpace,
    N: int = DEFAULT_TRUNCATION,
    budget: int = DEFAULT_BUDGET,
    degree: int = ROUND_TRIP_DEGREE,
) -> RoundTrip:
    """Unstraighten with as many levels as N allows, straighten back, compare homology."""

    M = min(N, X.sset.truncation)
    pi = bar_action(X, M)
    straightened = straighten(pi, X.finite_group, budget)
    quotient, _ = orbit_space(straightened, budget)

    result = RoundTrip(
        homology(X.sset, M),
        homology(straightened.sset, M),
        homology(borel(X, budget), M),
        homology(quotient.sset, M),
        SegalReport(truncation=min(degree, M - 1), label=f"round_trip({X.name})"),
    )
    result.report.add("underlying", _signature_verdict(result.source, result.straightened, degree, "underlying"))
    result.report.add("quotient", _signature_verdict(result.borel, result.quotient, degree, "quotient"))
    return result


def borel_holim_check(
    f: GMap, g: GMap, N: int = DEFAULT_TRUNCATION, budget: int = DEFAULT_BUDGET, label: str = "borel_holim"
) -> Verdict:
    """Compare (X x_Y Z)//G with X//G x_(Y//G) Z//G for a cospan X -> Y <- Z."""

    X, Y, Z = f.source, f.target, g.source
    left = borel_construction(gspace_pullback(f, g, budget), budget)
    bx, by, bz = (borel_construction(S, budget) for S in (X, Y, Z))
    right = pullback(borel_map(f, bx, by), borel_map(g, bz, by), budget)
    t = min(N, left.sset.truncation, right.sset.truncation)

    if is_fibration(f.map, t).certified or is_fibration(g.map, t).certified:

        def compare(n: int, p: tuple[tuple[SimplexRef, SimplexRef], Any]) -> SimplexRef:
            (x, z), tbar = p
            xt = bx.presented.ref((X.presented.element(x), tbar), n)
            zt = bz.presented.ref((Z.presented.element(z), tbar), n)
            return right.ref(xt, zt)

        comparison = left.presented.map_into(right.sset, compare, "comparison")
        return weak_equivalence_verdict(comparison, t, label=label)

    warning(f"Neither leg into {Y.name} is a verified fibration; comparing homology only")
    hl, hr = homology(left.sset, t), homology(right.sset, t)
    verdict = _signature_verdict(hl, hr, t, label)
    if verdict.refuted:
        return verdict
    return Verdict.consistent(
        t, "strict pullbacks of non-fibrations; only homology was compared", label=label, signature=hl.summary()
    )
