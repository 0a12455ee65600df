"""Segal conditions on simplicial spaces and maps of them.

Every check returns a Verdict; a SegalReport collects them by name. Vertex
operators follow the usual convention: alpha_k: [0] -> [n] picks vertex k, and
p_k: [1] -> [n] picks the edge (k-1, k).
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Iterator

from segal.core import (
    DEFAULT_BUDGET,
    DEFAULT_EX_STAGE,
    DEFAULT_TRUNCATION,
    DEFAULT_UP_TO,
    Verdict,
    combine,
)
from segal.bisimplicial.space import SimplicialSpace, SpaceMap, const_space, diagonal
from segal.groups.finite import FiniteGroup
from segal.homotopy.fundamental import compare_groups, components, finite_invariants, pi1_presentation
from segal.homotopy.oracle import is_homotopy_cartesian, softened, weak_equivalence_verdict
from segal.logging import debug, info, warning
from segal.simplicial.constructions import HomotopySquare, fiber, pullback
from segal.simplicial.kan import is_fibration
from segal.simplicial.sset import (
    Presented,
    SimplexRef,
    SimplicialMap,
    SimplicialSet,
    build,
    compose_maps,
    point,
    to_point,
)


@dataclass
class SegalReport:
    """Named sub-verdicts and their meet.

    A refuted Reedy condition only softens the overall verdict: no fibrant
    replacement is computed, and the other checks use homotopy cartesian forms.
    """

    checks: dict[str, Verdict] = field(default_factory=dict)
    truncation: int = DEFAULT_TRUNCATION
    label: str = "segal"

    @cached_property
    def effective(self) -> dict[str, Verdict]:
        """The checks as they enter the overall verdict."""

        checks = {}
        for name, v in self.checks.items():
            if name.startswith("reedy") and v.refuted:
                warning(f"{self.label}: Reedy fibrancy fails at {v.witness.get('level')}, continuing without it")
                v = softened(v, "not Reedy fibrant; no fibrant replacement is computed")
            checks[name] = v
        return checks

    @cached_property
    def overall(self) -> Verdict:
        return combine(self.effective.values(), self.truncation, self.label)

    def add(self, name: str, verdict: Verdict) -> Verdict:
        self.checks[name] = verdict.with_label(name)
        self._invalidate()
        info(self.checks[name])
        return verdict

    def merge(self, other: "SegalReport", prefix: str = "") -> "SegalReport":
        for name, v in other.checks.items():
            self.checks[prefix + name] = v
        self._invalidate()
        return self

    def _invalidate(self) -> None:
        self.__dict__.pop("effective", None)
        self.__dict__.pop("overall", None)

    def summary(self) -> str:
        return f"SegalReport({self.label}: {self.overall.status.value}, {len(self.checks)} checks)"

    def as_dict(self) -> dict[str, Any]:
        return {
            "overall": self.overall.as_dict(),
            "checks": {name: v.as_dict() for name, v in self.checks.items()},
        }


def edge(n: int, k: int) -> tuple[int, int]:
    """p_k: [1] -> [n], 0 -> k-1, 1 -> k."""
    return (k - 1, k)


def terminal_space(B: SimplicialSpace) -> tuple[SimplicialSpace, SpaceMap]:
    T = const_space(point(B.truncation), B.ext_truncation)
    maps = [to_point(level, T.level(n)) for n, level in enumerate(B.levels)]
    return T, SpaceMap(B, T, maps, "!")


def matching(B: SimplicialSpace, n: int, budget: int = DEFAULT_BUDGET) -> Presented[tuple[SimplexRef, ...]]:
    """M_n B: tuples (y_0, ..., y_n) in B_(n-1) with d_i y_j = d_(j-1) y_i for i < j."""

    if n == 0:
        return build(
            B.truncation, lambda m: [()], lambda m, i, y: (), lambda m, i, y: (), "M_0", budget
        )

    level = B.level(n - 1)

    def compatible(ys: tuple[SimplexRef, ...], y: SimplexRef) -> bool:
        j = len(ys)
        return all(B.face(n - 1, i)(y) == B.face(n - 1, j - 1)(ys[i]) for i in range(j))

    def tuples(m: int) -> Iterator[tuple[SimplexRef, ...]]:
        simplices = level.simplices(m)

        def extend(ys: tuple[SimplexRef, ...]) -> Iterator[tuple[SimplexRef, ...]]:
            if len(ys) == n + 1:
                yield ys
                return
            for y in simplices:
                if n == 1 or compatible(ys, y):
                    yield from extend(ys + (y,))

        return extend(())

    return build(
        level.truncation,
        tuples,
        lambda m, i, ys: tuple(level.face(i, y) for y in ys),
        lambda m, i, ys: tuple(level.degeneracy(i, y) for y in ys),
        f"M_{n}({B.name})",
        budget,
    )


def matching_object(B: SimplicialSpace, n: int, budget: int = DEFAULT_BUDGET) -> SimplicialSet:
    return matching(B, n, budget).sset


def matching_map(B: SimplicialSpace, n: int, M: Presented[tuple[SimplexRef, ...]]) -> SimplicialMap:
    """B_n -> M_n B, x -> (d_0 x, ..., d_n x)."""

    level = B.level(n)
    images = {
        g: M.ref(tuple(B.face(n, i)(level.ref(g)) for i in range(n + 1)) if n else (), k)
        for k, gens in enumerate(level.generators[: M.sset.truncation + 1])
        for g in gens
    }
    return SimplicialMap(level, M.sset, images, f"match_{n}")


def relative_matching_map(pi: SpaceMap, n: int, budget: int = DEFAULT_BUDGET) -> SimplicialMap:
    """A_n -> B_n x_(M_n B) M_n A."""

    A, B = pi.source, pi.target
    if n == 0:
        return pi.level(0)
    MA, MB = matching(A, n, budget), matching(B, n, budget)
    below = pi.level(n - 1)
    induced = MA.map_to(MB, lambda m, ys: tuple(below(y) for y in ys), f"M_{n}(pi)")
    target = pullback(matching_map(B, n, MB), induced, budget)
    return target.induced(A.level(n), pi.level(n), matching_map(A, n, MA), f"relative_match_{n}")


def reedy_fibration_check(
    pi: SpaceMap, up_to: int = DEFAULT_UP_TO, N: int = DEFAULT_TRUNCATION, budget: int = DEFAULT_BUDGET
) -> Verdict:
    """Each relative matching map must pass horn lifting up to N."""

    verdicts = []
    for n in range(min(up_to, pi.source.ext_truncation, pi.target.ext_truncation) + 1):
        f = relative_matching_map(pi, n, budget)
        v = is_fibration(f, N)
        debug(f"relative matching map at level {n}: {v.status.value}")
        if v.refuted:
            return Verdict.refute(v.truncation, label="reedy", level=n, **v.witness)
        verdicts.append(v)
    return combine(verdicts, N, "reedy")


def spine(B: SimplicialSpace, n: int, budget: int = DEFAULT_BUDGET) -> Presented[tuple[SimplexRef, ...]]:
    """B_1 x_(B_0) ... x_(B_0) B_1 with n factors, glued end to start."""

    B1 = B.level(1)
    start, end = B.face(1, 1), B.face(1, 0)

    def chains(m: int) -> Iterator[tuple[SimplexRef, ...]]:
        by_start: dict[SimplexRef, list[SimplexRef]] = {}
        for e in B1.simplices(m):
            by_start.setdefault(start(e), []).append(e)

        def extend(es: tuple[SimplexRef, ...]) -> Iterator[tuple[SimplexRef, ...]]:
            if len(es) == n:
                yield es
                return
            following = B1.simplices(m) if not es else by_start.get(end(es[-1]), ())
            for e in following:
                yield from extend(es + (e,))

        return extend(())

    return build(
        B1.truncation,
        chains,
        lambda m, i, es: tuple(B1.face(i, e) for e in es),
        lambda m, i, es: tuple(B1.degeneracy(i, e) for e in es),
        f"Sp_{n}({B.name})",
        budget,
    )


def segal_map(B: SimplicialSpace, n: int, budget: int = DEFAULT_BUDGET) -> SimplicialMap:
    """B_n -> B_1 x_(B_0) ... x_(B_0) B_1 through the edges p_1, ..., p_n."""

    S = spine(B, n, budget)
    level = B.level(n)
    edges = [B.operator(edge(n, k), n) for k in range(1, n + 1)]
    images = {
        g: S.ref(tuple(p(level.ref(g)) for p in edges), d)
        for d, gens in enumerate(level.generators[: S.sset.truncation + 1])
        for g in gens
    }
    return SimplicialMap(level, S.sset, images, f"segal_{n}")


def _strict_or_soft(f: SimplicialMap, legs: list[SimplicialMap], N: int, label: str, what: str) -> Verdict:
    verdict = weak_equivalence_verdict(f, N, label=label)
    if all(is_fibration(leg, N).certified for leg in legs):
        return verdict
    warning(f"{what} is a strict limit over maps that are not verified fibrations")
    return softened(verdict, f"{what} is not known to be a homotopy limit")


def is_segal_space(
    B: SimplicialSpace, up_to: int = DEFAULT_UP_TO, N: int = DEFAULT_TRUNCATION, budget: int = DEFAULT_BUDGET
) -> SegalReport:
    report = SegalReport(truncation=N, label=f"segal_space({B.name})")
    _, bang = terminal_space(B)
    report.add("reedy", reedy_fibration_check(bang, up_to, N, budget))
    legs = [B.face(1, 0), B.face(1, 1)]
    for n in range(1, min(up_to, B.ext_truncation) + 1):
        report.add(f"segal_{n}", _strict_or_soft(segal_map(B, n, budget), legs, N, f"segal_{n}", "the spine"))
    return report


def group_like_map(B: SimplicialSpace, budget: int = DEFAULT_BUDGET) -> SimplicialMap:
    """(d_1, d_0): B_2 -> B_1 x_(B_0) B_1, the product taken over d_0 on both sides."""

    d0 = B.face(1, 0)
    target = pullback(d0, d0, budget)
    return target.induced(B.level(2), B.face(2, 1), B.face(2, 0), "(d1, d0)")


def is_group_like(
    B: SimplicialSpace, up_to: int = DEFAULT_UP_TO, N: int = DEFAULT_TRUNCATION, budget: int = DEFAULT_BUDGET
) -> Verdict:
    if B.ext_truncation < 2 or up_to < 2:
        return Verdict.consistent(N, "group-likeness needs level 2", label="group_like")
    return _strict_or_soft(group_like_map(B, budget), [B.face(1, 0)], N, "group_like", "B_1 x_(B_0) B_1")


def is_segal_group(
    B: SimplicialSpace, up_to: int = DEFAULT_UP_TO, N: int = DEFAULT_TRUNCATION, budget: int = DEFAULT_BUDGET
) -> SegalReport:
    report = is_segal_space(B, up_to, N, budget)
    report.label = f"segal_group({B.name})"
    report.add("group_like", is_group_like(B, up_to, N, budget))
    report.add("contractible_b0", weak_equivalence_verdict(to_point(B.level(0)), N))
    return report


def basepoint(B: SimplicialSpace, n: int = 0) -> SimplexRef:
    """The first vertex of B_0, carried to level n by the external degeneracies."""

    B0 = B.level(0)
    b = B0.ref(B0.generators[0][0])
    if n == 0:
        return b
    return B.operator((0,) * (n + 1), 0)(b)


def vertex_square(pi: SpaceMap, n: int, vertex: int) -> HomotopySquare:
    """A_n -> B_n over A_0 -> B_0 along alpha_vertex."""

    A, B = pi.source, pi.target
    return HomotopySquare(
        pi.level(n),
        A.vertex_operator(n, vertex),
        B.vertex_operator(n, vertex),
        pi.level(0),
        f"alpha_{vertex} at level {n}",
    )


def fiber_comparison(pi: SpaceMap, n: int, N: int = DEFAULT_TRUNCATION, budget: int = DEFAULT_BUDGET) -> Verdict:
    """Fib(A_n -> B_n) -> Fib(A_0 -> B_0) over the basepoint, induced by alpha_0."""

    label = f"fiber_{n}"
    A, B = pi.source, pi.target
    top, bottom = fiber(pi.level(n), basepoint(B, n), budget), fiber(pi.level(0), basepoint(B), budget)
    F = top.sset
    if F.is_empty() or bottom.sset.is_empty():
        if F.is_empty() == bottom.sset.is_empty():
            return Verdict.certify(N, label=label, empty=True)
        return Verdict.refute(N, label=label, invariant="pi0", source=len(F.generators[0]), target=len(bottom.sset.generators[0]))

    to_base = compose_maps(A.vertex_operator(n, 0), top.left)
    f = bottom.induced(F, to_base, top.right, f"alpha_0 on fibers at level {n}")
    verdict = weak_equivalence_verdict(f, N, label=label)
    if is_fibration(pi.level(n), N).certified and is_fibration(pi.level(0), N).certified:
        return verdict
    return softened(verdict, "strict fibers of maps that are not verified fibrations")


def is_segal_group_action(
    pi: SpaceMap,
    up_to: int = DEFAULT_UP_TO,
    N: int = DEFAULT_TRUNCATION,
    ex_stage: int = DEFAULT_EX_STAGE,
    budget: int = DEFAULT_BUDGET,
) -> SegalReport:
    report = SegalReport(truncation=N, label=f"segal_group_action({pi.source.name})")
    report.add("target", is_segal_group(pi.target, up_to, N, budget).overall)
    report.add("reedy", reedy_fibration_check(pi, up_to, N, budget))
    top = min(up_to, pi.source.ext_truncation, pi.target.ext_truncation)
    for n in range(1, top + 1):
        report.add(f"action_{n}", is_homotopy_cartesian(vertex_square(pi, n, 0), N, ex_stage, budget))
        report.add(f"fiber_{n}", fiber_comparison(pi, n, N, budget))
    return report


def cross_check_report(
    pi: SpaceMap,
    up_to: int = DEFAULT_UP_TO,
    N: int = DEFAULT_TRUNCATION,
    ex_stage: int = DEFAULT_EX_STAGE,
    budget: int = DEFAULT_BUDGET,
) -> SegalReport:
    """The last-vertex squares and the Segal conditions on the source itself."""

    A = pi.source
    report = SegalReport(truncation=N, label=f"cross_check({A.name})")
    top = min(up_to, A.ext_truncation, pi.target.ext_truncation)
    for n in range(1, top + 1):
        report.add(f"last_vertex_{n}", is_homotopy_cartesian(vertex_square(pi, n, n), N, ex_stage, budget))
    report.add("source_segal_space", is_segal_space(A, up_to, N, budget).overall)
    report.add("source_group_like", is_group_like(A, up_to, N, budget))
    return report


def cross_check_inverted(
    pi: SpaceMap,
    up_to: int = DEFAULT_UP_TO,
    N: int = DEFAULT_TRUNCATION,
    ex_stage: int = DEFAULT_EX_STAGE,
    budget: int = DEFAULT_BUDGET,
) -> Verdict:
    return cross_check_report(pi, up_to, N, ex_stage, budget).overall


def component_group(B: SimplicialSpace) -> FiniteGroup | Verdict:
    """pi_0(B_1) with [a][b] = [d_1 c] for any vertex c of B_2 with d_2 c in [a] and d_0 c in [b].

    Returns a refuting verdict instead when some product is missing or
    ambiguous.
    """

    B1, B2 = B.level(1), B.level(2)
    parts = components(B1)
    which = {v: k for k, c in enumerate(parts) for v in c}
    n = len(parts)
    table: list[list[int | None]] = [[None] * n for _ in range(n)]
    for c in B2.simplices(0):
        a = which[B.face(2, 2)(c).generator]
        b = which[B.face(2, 0)(c).generator]
        ab = which[B.face(2, 1)(c).generator]
        if table[a][b] is None:
            table[a][b] = ab
        elif table[a][b] != ab:
            return Verdict.refute(B.truncation, label="loops", invariant="ambiguous_product", left=a, right=b)
    for a in range(n):
        for b in range(n):
            if table[a][b] is None:
                return Verdict.refute(B.truncation, label="loops", invariant="missing_product", left=a, right=b)
    return FiniteGroup(
        tuple(str(k) for k in range(n)),
        tuple(tuple(v for v in row if v is not None) for row in table),
        f"pi0({B1.name})",
    )


def loops_comparison(
    B: SimplicialSpace, up_to: int = DEFAULT_UP_TO, N: int = DEFAULT_TRUNCATION, budget: int = DEFAULT_BUDGET
) -> Verdict:
    """Compare pi_0(B_1) with pi_1 of the diagonal."""

    if B.ext_truncation < 2:
        return Verdict.consistent(N, "the product on pi_0(B_1) needs level 2", label="loops")
    group = component_group(B)
    if isinstance(group, Verdict):
        return group
    problems = group.violations()
    if problems:
        return Verdict.refute(N, label="loops", invariant="group_laws", violations=problems[:5])

    D = diagonal(B, budget)
    t = min(N, D.sset.truncation)
    if t < 2:
        return Verdict.consistent(t, "pi_1 of the diagonal needs truncation 2", label="loops")
    P = pi1_presentation(D.sset)
    debug(f"pi_1(d*{B.name}) = {P.summary()}")
    return compare_groups(finite_invariants(group), P.invariants(), t, label="loops")


def action_report(
    pi: SpaceMap,
    up_to: int = DEFAULT_UP_TO,
    N: int = DEFAULT_TRUNCATION,
    ex_stage: int = DEFAULT_EX_STAGE,
    budget: int = DEFAULT_BUDGET,
) -> SegalReport:
    """The action checks followed by the cross checks, prefixed with cross_."""

    report = is_segal_group_action(pi, up_to, N, ex_stage, budget)
    return report.merge(cross_check_report(pi, up_to, N, ex_stage, budget), "cross_")
