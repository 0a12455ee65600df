"""Simplicial spaces: levels B_0..B_M of simplicial sets joined by external maps.

External indices always come first: `face(n, i)` is d_i: B_n -> B_(n-1). Each
level has its own internal simplices; `diagonal` mixes the two directions.
"""

from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Any, Callable

from segal.core import (
    DEFAULT_BUDGET,
    DEFAULT_TRUNCATION,
    DEFAULT_UP_TO,
    InvalidObjectError,
    SimplicialIndexError,
    Verdict,
)
from segal.groups.finite import FiniteGroup
from segal.homotopy.oracle import softened, weak_equivalence_verdict
from segal.logging import debug, warning
from segal.simplicial import operators as ops
from segal.simplicial.constructions import (
    Exponential,
    Pullback,
    hom_set,
    pullback,
    truncate,
    truncate_map,
)
from segal.simplicial.kan import is_fibration
from segal.simplicial.sset import (
    Presented,
    SimplexRef,
    SimplicialMap,
    SimplicialSet,
    build,
    compose_maps,
    delta,
    delta_operator,
    delta_ref,
    discrete,
    identity_map,
)


@dataclass
class SimplicialSpace:
    levels: list[SimplicialSet]
    faces: dict[tuple[int, int], SimplicialMap] = field(default_factory=dict)
    degeneracies: dict[tuple[int, int], SimplicialMap] = field(default_factory=dict)
    name: str = ""
    presented: list[Presented[Any]] | None = None
    _operators: dict[tuple[ops.Monotone, int], SimplicialMap] = field(
        default_factory=dict, init=False, repr=False, compare=False
    )

    @property
    def ext_truncation(self) -> int:
        return len(self.levels) - 1

    @property
    def truncation(self) -> int:
        return min(B.truncation for B in self.levels)

    def summary(self) -> str:
        counts = [B.counts() for B in self.levels]
        return f"SimplicialSpace({self.name or '?'}, M={self.ext_truncation}, counts={counts})"

    def level(self, n: int) -> SimplicialSet:
        if not 0 <= n <= self.ext_truncation:
            raise SimplicialIndexError(
                f"Level {n} is outside the external truncation {self.ext_truncation} of {self.name}"
            )
        return self.levels[n]

    def face(self, n: int, i: int) -> SimplicialMap:
        return self.faces[(n, i)]

    def degeneracy(self, n: int, i: int) -> SimplicialMap:
        return self.degeneracies[(n, i)]

    def operator(self, theta: ops.Monotone, n: int) -> SimplicialMap:
        """theta*: B_n -> B_k for a monotone theta: [k] -> [n].

        Faces run first, largest missing index first, then degeneracies in
        ascending order.
        """

        key = (theta, n)
        if key in self._operators:
            return self._operators[key]

        epi, mono = ops.epi_mono(theta)
        steps: list[SimplicialMap] = []
        dim = n
        for i in reversed(ops.missing_indices(mono, n)):
            steps.append(self.face(dim, i))
            dim -= 1
        for j in reversed(ops.word_from_surjection(epi)):
            steps.append(self.degeneracy(dim, j))
            dim += 1

        if steps:
            result = compose_maps(*reversed(steps))
        else:
            result = identity_map(self.level(n))
        self._operators[key] = result
        return result

    def vertex_operator(self, n: int, vertex: int) -> SimplicialMap:
        """The map B_n -> B_0 induced by [0] -> [n], 0 -> vertex."""
        return self.operator((vertex,), n)

    def violations(self) -> list[str]:
        problems = []
        M = self.ext_truncation

        def differ(label: str, left: SimplicialMap, right: SimplicialMap) -> None:
            bad = left.differences(right)
            if bad:
                problems.append(f"{label} fails on level generator {bad[0]}")

        for (n, i), f in sorted(self.faces.items()):
            problems.extend(f"external d{i} on level {n}: {p}" for p in f.violations())
        for (n, i), s in sorted(self.degeneracies.items()):
            problems.extend(f"external s{i} on level {n}: {p}" for p in s.violations())
        for n in range(1, M + 1):
            for i in range(n + 1):
                if (n, i) not in self.faces:
                    problems.append(f"missing external d{i} on level {n}")
        for n in range(M):
            for i in range(n + 1):
                if (n, i) not in self.degeneracies:
                    problems.append(f"missing external s{i} on level {n}")
        if problems:
            return problems

        for n in range(2, M + 1):
            for j in range(n + 1):
                for i in range(j):
                    differ(
                        f"d{i}d{j} = d{j - 1}d{i} on level {n}",
                        compose_maps(self.face(n - 1, i), self.face(n, j)),
                        compose_maps(self.face(n - 1, j - 1), self.face(n, i)),
                    )
        for n in range(M):
            for j in range(n + 1):
                s = self.degeneracy(n, j)
                for i in range(n + 2):
                    left = compose_maps(self.face(n + 1, i), s)
                    if i in (j, j + 1):
                        differ(f"d{i}s{j} = id on level {n}", left, identity_map(self.level(n)))
                    elif i < j:
                        right = compose_maps(self.degeneracy(n - 1, j - 1), self.face(n, i))
                        differ(f"d{i}s{j} = s{j - 1}d{i} on level {n}", left, right)
                    else:
                        right = compose_maps(self.degeneracy(n - 1, j), self.face(n, i - 1))
                        differ(f"d{i}s{j} = s{j}d{i - 1} on level {n}", left, right)
        for n in range(M - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    differ(
                        f"s{i}s{j} = s{j + 1}s{i} on level {n}",
                        compose_maps(self.degeneracy(n + 1, i), self.degeneracy(n, j)),
                        compose_maps(self.degeneracy(n + 1, j + 1), self.degeneracy(n, i)),
                    )
        return problems

    def validate(self) -> "SimplicialSpace":
        problems = self.violations()
        if problems:
            raise InvalidObjectError("simplicial space", problems)
        return self


@dataclass
class SpaceMap:
    """A map of simplicial spaces, one SimplicialMap per level."""

    source: SimplicialSpace
    target: SimplicialSpace
    levels: list[SimplicialMap]
    name: str = ""

    def level(self, n: int) -> SimplicialMap:
        return self.levels[n]

    def summary(self) -> str:
        return f"SpaceMap({self.name or '?'}: {self.source.name} -> {self.target.name})"

    def violations(self) -> list[str]:
        problems = []
        M = min(self.source.ext_truncation, self.target.ext_truncation)
        if len(self.levels) < M + 1:
            return [f"expected {M + 1} level maps, got {len(self.levels)}"]
        for n, f in enumerate(self.levels[: M + 1]):
            problems.extend(f"level {n}: {p}" for p in f.violations())
        if problems:
            return problems
        for n in range(1, M + 1):
            for i in range(n + 1):
                left = compose_maps(self.target.face(n, i), self.levels[n])
                right = compose_maps(self.levels[n - 1], self.source.face(n, i))
                bad = left.differences(right)
                if bad:
                    problems.append(f"level {n}: map does not commute with d{i} on {bad[0]}")
        for n in range(M):
            for i in range(n + 1):
                left = compose_maps(self.target.degeneracy(n, i), self.levels[n])
                right = compose_maps(self.levels[n + 1], self.source.degeneracy(n, i))
                bad = left.differences(right)
                if bad:
                    problems.append(f"level {n}: map does not commute with s{i} on {bad[0]}")
        return problems

    def validate(self) -> "SpaceMap":
        problems = self.violations()
        if problems:
            raise InvalidObjectError("map of simplicial spaces", problems)
        return self


def assemble(
    levels: list[Presented[Any]],
    face: Callable[[int, int, int, Any], Any],
    degeneracy: Callable[[int, int, int, Any], Any],
    name: str = "",
) -> SimplicialSpace:
    """A simplicial space from presented levels and element-level external maps.

    `face(n, i, m, x)` sends an m-simplex x of level n to level n-1.
    """

    M = len(levels) - 1
    faces = {
        (n, i): levels[n].map_to(levels[n - 1], lambda m, x, n=n, i=i: face(n, i, m, x), f"d{i}")
        for n in range(1, M + 1)
        for i in range(n + 1)
    }
    degeneracies = {
        (n, i): levels[n].map_to(levels[n + 1], lambda m, x, n=n, i=i: degeneracy(n, i, m, x), f"s{i}")
        for n in range(M)
        for i in range(n + 1)
    }
    return SimplicialSpace([P.sset for P in levels], faces, degeneracies, name, levels)


def space_identity(B: SimplicialSpace) -> SpaceMap:
    return SpaceMap(B, B, [identity_map(level) for level in B.levels], "id")


def compose_space_maps(g: SpaceMap, f: SpaceMap) -> SpaceMap:
    """g o f."""
    return SpaceMap(
        f.source, g.target, [compose_maps(b, a) for a, b in zip(f.levels, g.levels)], f"{g.name} o {f.name}"
    )


def truncate_space(B: SimplicialSpace, truncation: int, ext_truncation: int | None = None) -> SimplicialSpace:
    """Cut every level at an internal truncation and drop levels above ext_truncation."""

    M = B.ext_truncation if ext_truncation is None else min(ext_truncation, B.ext_truncation)
    if M == B.ext_truncation and truncation >= B.truncation and all(
        level.truncation == truncation for level in B.levels
    ):
        return B
    levels = [truncate(B.level(n), truncation) for n in range(M + 1)]
    faces = {
        (n, i): truncate_map(B.face(n, i), levels[n], levels[n - 1])
        for n in range(1, M + 1)
        for i in range(n + 1)
    }
    degeneracies = {
        (n, i): truncate_map(B.degeneracy(n, i), levels[n], levels[n + 1])
        for n in range(M)
        for i in range(n + 1)
    }
    return SimplicialSpace(levels, faces, degeneracies, B.name)


def truncate_space_map(f: SpaceMap, source: SimplicialSpace, target: SimplicialSpace) -> SpaceMap:
    return SpaceMap(
        source,
        target,
        [truncate_map(f.level(n), source.level(n), target.level(n)) for n in range(source.ext_truncation + 1)],
        f.name,
    )


def const_discrete(
    K: SimplicialSet, ext_truncation: int | None = None, truncation: int = DEFAULT_TRUNCATION
) -> SimplicialSpace:
    """c_* K: level n is the discrete simplicial set on the n-simplices of K."""

    M = K.truncation if ext_truncation is None else ext_truncation
    if M > K.truncation:
        raise SimplicialIndexError(f"c_* of {K.name} needs its simplices up to dimension {M}")

    levels = [discrete(K.simplices(n), truncation, f"{K.name}_{n}") for n in range(M + 1)]
    faces = {
        (n, i): SimplicialMap(
            levels[n], levels[n - 1], {x: SimplexRef(K.face(i, x), (), 0) for x in K.simplices(n)}, f"d{i}"
        )
        for n in range(1, M + 1)
        for i in range(n + 1)
    }
    degeneracies = {
        (n, i): SimplicialMap(
            levels[n], levels[n + 1], {x: SimplexRef(K.degeneracy(i, x), (), 0) for x in K.simplices(n)}, f"s{i}"
        )
        for n in range(M)
        for i in range(n + 1)
    }
    return SimplicialSpace(levels, faces, degeneracies, f"c_*({K.name})")


def const_space(K: SimplicialSet, ext_truncation: int = DEFAULT_UP_TO) -> SimplicialSpace:
    """K in every level, identities as external structure."""

    one = identity_map(K)
    return SimplicialSpace(
        [K] * (ext_truncation + 1),
        {(n, i): one for n in range(1, ext_truncation + 1) for i in range(n + 1)},
        {(n, i): one for n in range(ext_truncation) for i in range(n + 1)},
        f"const({K.name})",
    )


def nerve(
    M: FiniteGroup, ext_truncation: int = DEFAULT_UP_TO, truncation: int = DEFAULT_TRUNCATION
) -> SimplicialSpace:
    """The nerve of a finite monoid as a levelwise discrete simplicial space.

    Level n is M^n, written as tuples of element names; d_0 and d_n drop the outer
    entries and the inner faces multiply neighbours.
    """

    e = M.elements[M.identity]

    def multiply(a: str, b: str) -> str:
        return M.elements[M.mul(M.index(a), M.index(b))]

    def face(n: int, i: int, gs: tuple[str, ...]) -> tuple[str, ...]:
        if i == 0:
            return gs[1:]
        if i == n:
            return gs[:-1]
        return gs[: i - 1] + (multiply(gs[i - 1], gs[i]),) + gs[i + 1:]

    def degeneracy(i: int, gs: tuple[str, ...]) -> tuple[str, ...]:
        return gs[:i] + (e,) + gs[i:]

    tuples = [list(cartesian(M.elements, repeat=n)) for n in range(ext_truncation + 1)]
    levels = [discrete(tuples[n], truncation, f"{M.name}^{n}") for n in range(ext_truncation + 1)]
    faces = {
        (n, i): SimplicialMap(
            levels[n], levels[n - 1], {gs: SimplexRef(face(n, i, gs), (), 0) for gs in tuples[n]}, f"d{i}"
        )
        for n in range(1, ext_truncation + 1)
        for i in range(n + 1)
    }
    degeneracies = {
        (n, i): SimplicialMap(
            levels[n], levels[n + 1], {gs: SimplexRef(degeneracy(i, gs), (), 0) for gs in tuples[n]}, f"s{i}"
        )
        for n in range(ext_truncation)
        for i in range(n + 1)
    }
    return SimplicialSpace(levels, faces, degeneracies, f"N({M.name})")


def diagonal(B: SimplicialSpace, budget: int = DEFAULT_BUDGET) -> Presented[SimplexRef]:
    """d*B; its n-simplices are the internal n-simplices of B_n, as refs."""

    t = min(B.ext_truncation, B.truncation)
    return build(
        t,
        lambda n: B.level(n).simplices(n),
        lambda n, i, x: B.face(n, i)(B.level(n).face(i, x)),
        lambda n, i, x: B.degeneracy(n, i)(B.level(n).degeneracy(i, x)),
        f"d*{B.name}",
        budget,
    )


def diagonal_map(f: SpaceMap, source: Presented[SimplexRef], target: Presented[SimplexRef]) -> SimplicialMap:
    """d*f between already built diagonals."""
    return source.map_to(target, lambda n, x: f.level(n)(x), f"d*{f.name}")


@dataclass
class SpacePullback:
    """A levelwise pullback of simplicial spaces with its projections."""

    space: SimplicialSpace
    pullbacks: list[Pullback]
    left: SpaceMap
    right: SpaceMap

    def pair(self, n: int, ref: SimplexRef) -> tuple[SimplexRef, SimplexRef]:
        return self.pullbacks[n].pair(ref)


def space_pullback(f: SpaceMap, g: SpaceMap, budget: int = DEFAULT_BUDGET) -> SpacePullback:
    """A x_C D for f: A -> C and g: D -> C, computed level by level."""

    A, D = f.source, g.source
    M = min(A.ext_truncation, D.ext_truncation, f.target.ext_truncation)
    pullbacks = [pullback(f.level(n), g.level(n), budget) for n in range(M + 1)]

    def face(n: int, i: int, m: int, p: tuple[SimplexRef, SimplexRef]) -> tuple[SimplexRef, SimplexRef]:
        return (A.face(n, i)(p[0]), D.face(n, i)(p[1]))

    def degeneracy(n: int, i: int, m: int, p: tuple[SimplexRef, SimplexRef]) -> tuple[SimplexRef, SimplexRef]:
        return (A.degeneracy(n, i)(p[0]), D.degeneracy(n, i)(p[1]))

    space = assemble([P.presented for P in pullbacks], face, degeneracy, f"{A.name}x_{f.target.name}{D.name}")
    left = SpaceMap(space, A, [P.left for P in pullbacks], "pr1")
    right = SpaceMap(space, D, [P.right for P in pullbacks], "pr2")
    return SpacePullback(space, pullbacks, left, right)


def _reindex(source: Exponential, target: Exponential, element: Any, theta: ops.Monotone) -> Any:
    """Precompose a map Delta^m x Delta^n -> A with id x theta, theta: [k] -> [n]."""

    m = element[0]
    phi = source.map_of(element)
    src, dst = source.domain(m), target.domain(m)
    values = []
    for level in dst.sset.generators:
        for g in level:
            a, b = dst.pair(SimplexRef(g, (), dst.sset.dim_of[g]))
            values.append(phi(src.ref(a, delta_ref(ops.compose(theta, delta_operator(b))))))
    return (m, tuple(values))


class DStar:
    """d_* A: level n is the exponential A^(Delta^n), all at internal truncation T."""

    def __init__(
        self,
        A: SimplicialSet,
        ext_truncation: int = DEFAULT_UP_TO,
        budget: int = DEFAULT_BUDGET,
        truncation: int | None = None,
    ) -> None:
        M = ext_truncation
        T = A.truncation - M if truncation is None else truncation
        if T < 0 or T + M > A.truncation:
            raise SimplicialIndexError(
                f"d_* of {A.name} up to level {M} needs truncation at least {M}, got {A.truncation}"
            )
        self.base = A
        self.exponentials = [Exponential(delta(n, T + n), truncate(A, T + n), budget) for n in range(M + 1)]
        levels = [E.presented for E in self.exponentials]
        self.space = assemble(
            levels,
            lambda n, i, m, e: _reindex(self.exponentials[n], self.exponentials[n - 1], e, ops.coface(i, n)),
            lambda n, i, m, e: _reindex(self.exponentials[n], self.exponentials[n + 1], e, ops.codegeneracy(i, n)),
            f"d_*({A.name})",
        )
        debug(f"d_*({A.name}): {[E.sset.counts() for E in self.exponentials]}")

    @property
    def truncation(self) -> int:
        return self.space.truncation

    def functorial(self, f: SimplicialMap, other: "DStar") -> SpaceMap:
        """d_* f: d_* A -> d_* C for f: A -> C."""

        levels = [
            E.functorial(f, F) for E, F in zip(self.exponentials, other.exponentials)
        ]
        return SpaceMap(self.space, other.space, levels, f"d_*({f.name})")

    def evaluate_diagonal(self, n: int, ref: SimplexRef) -> SimplexRef:
        """An internal n-simplex of level n is a map Delta^n x Delta^n -> A; restrict it to the diagonal."""

        E = self.exponentials[n]
        phi = E.map_of(E.presented.element(ref))
        top = delta_ref(ops.identity(n))
        return phi(E.domain(n).ref(top, top))


def d_star(
    A: SimplicialSet, ext_truncation: int = DEFAULT_UP_TO, budget: int = DEFAULT_BUDGET
) -> SimplicialSpace:
    return DStar(A, ext_truncation, budget).space


def unit_map(B: SimplicialSpace, D: Presented[SimplexRef], target: DStar) -> SpaceMap:
    """B -> d_* d*B; b in (B_n)_m goes to (a, c) -> c*(a*b), landing in the diagonal D."""

    T = target.truncation
    M = target.space.ext_truncation
    source = truncate_space(B, T, M)
    levels = []
    for n in range(M + 1):
        E = target.exponentials[n]
        Bn = source.level(n)
        images = {}
        for m, gens in enumerate(Bn.generators):
            domain = E.domain(m)
            for g in gens:
                b = Bn.ref(g)
                values = []
                for dims in domain.sset.generators:
                    for h in dims:
                        a, c = domain.pair(SimplexRef(h, (), domain.sset.dim_of[h]))
                        inner = B.level(n).apply(b, delta_operator(a))
                        outer = B.operator(delta_operator(c), n)(inner)
                        values.append(D.ref(outer, outer.dim))
                images[g] = E.presented.ref((m, tuple(values)), m)
        levels.append(SimplicialMap(Bn, E.sset, images, f"unit_{n}"))
    return SpaceMap(source, target.space, levels, "unit")


@dataclass
class SlicedDStar:
    """P_n = (d_* A)_n x_(d_* d*B)_n B_n over B, for f: A -> d*B."""

    projection: SpaceMap
    pullback: SpacePullback
    source: DStar
    verdict: Verdict


def _sliced(
    f: SimplicialMap,
    B: SimplicialSpace,
    D: Presented[SimplexRef],
    ext_truncation: int,
    budget: int,
) -> SlicedDStar:
    A = f.source
    top = min(A.truncation, D.sset.truncation)
    T = top - ext_truncation
    if T < 0:
        raise SimplicialIndexError(f"Slicing over {B.name} needs truncation at least {ext_truncation}")

    verdict = is_fibration(f, top).with_label("fibration")
    if not verdict.certified:
        warning(f"{f.name or 'map'} into {D.sset.name} is not a verified fibration; d_* over it is only indicative")

    source = DStar(A, ext_truncation, budget, T)
    over = DStar(D.sset, ext_truncation, budget, T)
    pushed = source.functorial(f, over)
    unit = unit_map(B, D, over)
    P = space_pullback(pushed, unit, budget)
    return SlicedDStar(P.right, P, source, verdict)


def d_star_over(
    f: SimplicialMap,
    B: SimplicialSpace,
    ext_truncation: int = DEFAULT_UP_TO,
    budget: int = DEFAULT_BUDGET,
) -> tuple[SpaceMap, Verdict]:
    """The sliced right adjoint: a map P -> B from f: A -> d*B, plus the fibration verdict on f."""

    D = diagonal(B, budget)
    if f.target != D.sset:
        raise InvalidObjectError("sliced d_*", [f"{f.name} does not land in d*{B.name}"])
    sliced = _sliced(f, B, D, ext_truncation, budget)
    return sliced.projection, sliced.verdict


def counit_check(
    f: SimplicialMap, B: SimplicialSpace, budget: int = DEFAULT_BUDGET, label: str = "counit"
) -> Verdict:
    """Compare d*(d_* A over B) with A through the counit, for f: A -> d*B.

    The external truncation is half of the usable internal range, so that the
    diagonal of the slice still reaches a useful dimension.
    """

    D = diagonal(B, budget)
    A = f.source
    top = min(A.truncation, D.sset.truncation)
    M = max(1, top // 2)
    sliced = _sliced(f, B, D, M, budget)
    P = sliced.pullback
    dP = diagonal(P.space, budget)
    t = dP.sset.truncation
    target = truncate(A, t)

    def counit(n: int, x: SimplexRef) -> SimplexRef:
        phi, _ = P.pair(n, x)
        return sliced.source.evaluate_diagonal(n, phi)

    verdict = weak_equivalence_verdict(dP.map_into(target, counit, "counit"), t, label=label)
    if sliced.verdict.certified:
        return verdict
    return softened(verdict, "the map into the diagonal is not a verified fibration")


def space_hom_count(B: SimplicialSpace, C: SimplicialSpace) -> int:
    """Number of maps of simplicial spaces B -> C, level by level with naturality pruning."""

    M = min(B.ext_truncation, C.ext_truncation)
    candidates = [list(hom_set(B.level(n), C.level(n))) for n in range(M + 1)]

    def natural(n: int, fn: SimplicialMap, previous: SimplicialMap) -> bool:
        for i in range(n + 1):
            if compose_maps(C.face(n, i), fn).differences(compose_maps(previous, B.face(n, i))):
                return False
        for i in range(n):
            if compose_maps(C.degeneracy(n - 1, i), previous).differences(compose_maps(fn, B.degeneracy(n - 1, i))):
                return False
        return True

    def extend(n: int, previous: SimplicialMap | None) -> int:
        if n > M:
            return 1
        return sum(
            extend(n + 1, fn) for fn in candidates[n] if previous is None or natural(n, fn, previous)
        )

    return extend(0, None)
