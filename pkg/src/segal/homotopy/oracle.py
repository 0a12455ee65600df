"""Tri-state decisions for weak equivalences and homotopy cartesian squares.

Homology, pi_0 and small quotients of pi_1 can only ever refute a weak
equivalence. A map is certified when it is an isomorphism, or when its
mapping cone is acyclic in range and every component is simply connected.
"""

from dataclasses import dataclass

from segal.core import DEFAULT_BUDGET, DEFAULT_EX_STAGE, BudgetExceededError, Status, Verdict
from segal.homotopy.chains import homology, mapping_cone
from segal.homotopy.fundamental import component_map, components, pi1_presentation, counting_groups
from segal.logging import debug, warning
from segal.simplicial.constructions import (
    Ex,
    Exponential,
    HomotopySquare,
    Pullback,
    pullback,
    truncate,
    truncate_map,
)
from segal.simplicial.kan import is_fibration, kan_check
from segal.simplicial.sset import SimplexRef, SimplicialMap, SimplicialSet, compose_maps, delta


def weak_equivalence_verdict(f: SimplicialMap, N: int, label: str = "weak_equivalence") -> Verdict:
    X, Y = f.source, f.target
    N = min(N, X.truncation, Y.truncation)

    if f.is_isomorphism():
        return Verdict.certify(N, label=label, isomorphism=True)

    pi0 = component_map(f)
    source_count, target_count = len(components(X)), len(components(Y))
    if source_count != target_count or len(set(pi0.values())) != len(pi0):
        return Verdict.refute(
            N, label=label, invariant="pi0", source=source_count, target=target_count
        )

    hx, hy = homology(X, N), homology(Y, N)
    degree = hx.mismatch(hy)
    if degree is not None:
        return Verdict.refute(
            N,
            label=label,
            invariant="homology",
            degree=degree,
            source=str(hx[degree]),
            target=str(hy[degree]),
        )

    cone = mapping_cone(f, N).homology()
    for group in cone.groups[: min(N, cone.safe_through + 1)]:
        if not group.trivial:
            return Verdict.refute(
                N, label=label, invariant="relative_homology", degree=group.degree, group=str(group)
            )

    if N < 2:
        return Verdict.consistent(N, "pi_1 is not visible below truncation 2", label=label)

    simply_connected = True
    for c in components(X):
        P = pi1_presentation(X, c[0])
        Q = pi1_presentation(Y, f(X.ref(c[0])).generator)
        for K in counting_groups():
            a, b = P.count_homomorphisms(K), Q.count_homomorphisms(K)
            if a != b:
                return Verdict.refute(
                    N,
                    label=label,
                    invariant="pi1",
                    basepoint=str(X.ref(c[0])),
                    source_homs=a,
                    target_homs=b,
                    group=K.name,
                )
        simply_connected = simply_connected and P.order() == 1 and Q.order() == 1

    if simply_connected:
        return Verdict.certify(N, label=label, simply_connected=True, acyclic_cone=True)
    return Verdict.consistent(
        N, f"homology and pi_1 invariants agree through degree {N - 1}", label=label
    )


@dataclass
class HomotopyPullback:
    """X x_Z Z^Delta1 x_Z Y with its maps to X and Y."""

    inner: Pullback
    outer: Pullback
    paths: Exponential

    @property
    def sset(self) -> SimplicialSet:
        return self.outer.sset

    @property
    def truncation(self) -> int:
        return self.sset.truncation

    def ref(self, x: SimplexRef, path: SimplexRef, y: SimplexRef) -> SimplexRef:
        return self.outer.ref(self.inner.ref(x, path), y)

    def comparison(self, square: HomotopySquare) -> SimplicialMap:
        """W -> P sending w to (left w, constant path at its image in Z, top w)."""

        W = truncate(square.initial, self.truncation)
        constant = self.paths.constant(self.paths.base)
        images = {}
        for gens in W.generators:
            for g in gens:
                w = W.ref(g)
                x = square.left(w)
                images[g] = self.ref(x, constant(square.bottom(x)), square.top(w))
        return SimplicialMap(W, self.sset, images, f"comparison({square.name})")


def homotopy_pullback(f: SimplicialMap, g: SimplicialMap, budget: int = DEFAULT_BUDGET) -> HomotopyPullback:
    """Path-space model of the homotopy pullback; meaningful when Z is Kan."""

    Z = f.target
    paths = Exponential(delta(1, Z.truncation), Z, budget)
    t = paths.truncation
    X, Y = truncate(f.source, t), truncate(g.source, t)
    start = paths.evaluation(SimplexRef((0,), (), 0))
    end = paths.evaluation(SimplexRef((1,), (), 0))
    inner = pullback(truncate_map(f, X, Z), start, budget)
    outer = pullback(compose_maps(end, inner.right), truncate_map(g, Y, Z), budget)
    debug(f"Homotopy pullback over {Z.name}: {outer.sset.counts()}")
    return HomotopyPullback(inner, outer, paths)


def is_homotopy_cartesian(
    square: HomotopySquare,
    N: int,
    ex_stage: int = DEFAULT_EX_STAGE,
    budget: int = DEFAULT_BUDGET,
    label: str = "homotopy_cartesian",
) -> Verdict:
    """Compare the initial corner with a homotopy pullback of the other three.

    With one leg a fibration the strict pullback is used. Otherwise the path-space
    pullback is built over the terminal corner, replaced by Ex^k when it is not Kan;
    in that case the verdict never goes above CONSISTENT.
    """

    N = min(N, square.initial.truncation, square.terminal.truncation)
    for leg in (square.bottom, square.right):
        if is_fibration(leg, N).certified:
            strict = pullback(square.bottom, square.right, budget)
            comparison = strict.induced(square.initial, square.left, square.top, "comparison")
            if comparison.is_isomorphism():
                return Verdict.certify(N, label=label, strict_pullback=True)
            return weak_equivalence_verdict(comparison, N, label=label)

    if kan_check(square.terminal, N).certified:
        P = homotopy_pullback(square.bottom, square.right, budget)
        verdict = weak_equivalence_verdict(P.comparison(square), P.truncation, label=label)
        return verdict.capped(Status.CERTIFIED, "homotopy pullback through the path space")

    warning(f"{square.terminal.name} is not Kan; replacing it by Ex^{ex_stage}")
    if ex_stage == 0:
        return Verdict.consistent(N, "terminal corner is not Kan and no Ex stage is allowed", label=label)
    try:
        replaced = ex_square(square, ex_stage, budget)
        P = homotopy_pullback(replaced.bottom, replaced.right, budget)
        verdict = weak_equivalence_verdict(P.comparison(replaced), P.truncation, label=label)
    except BudgetExceededError as ex:
        return Verdict.consistent(N, f"Ex^{ex_stage} replacement exceeded the budget: {ex}", label=label)
    return softened(verdict, f"terminal corner replaced by Ex^{ex_stage}, which need not be Kan")


def softened(verdict: Verdict, note: str) -> Verdict:
    """At most CONSISTENT; a refutation only counts as a hint."""

    if verdict.refuted:
        return Verdict.consistent(verdict.truncation, note, label=verdict.label, hint=verdict.witness)
    return verdict.capped(Status.CONSISTENT, note)


def ex_square(square: HomotopySquare, k: int, budget: int = DEFAULT_BUDGET) -> HomotopySquare:
    """Apply Ex k times to every corner and map of the square."""

    for _ in range(k):
        corners: dict[int, Ex] = {}

        def stage(X: SimplicialSet) -> Ex:
            if id(X) not in corners:
                corners[id(X)] = Ex(X, budget)
            return corners[id(X)]

        def lift(f: SimplicialMap) -> SimplicialMap:
            return stage(f.source).functorial(f, stage(f.target))

        square = HomotopySquare(
            lift(square.top), lift(square.left), lift(square.right), lift(square.bottom), f"Ex({square.name})"
        )
    return square
