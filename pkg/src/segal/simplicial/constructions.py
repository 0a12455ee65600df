"""Limits, skeleta, coskeleta, Ex and mapping objects of finite simplicial sets.

Every construction here goes through `sset.build`: it enumerates explicit levels
and lets the builder discover the nondegenerate simplices. All of them take a
simplex budget and raise BudgetExceededError instead of running away.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Any, Hashable, Iterator

from segal.core import DEFAULT_BUDGET, InvalidObjectError, SimplicialIndexError
from segal.logging import debug
from segal.simplicial import operators as ops
from segal.simplicial.sset import (
    Presented,
    SimplexRef,
    SimplicialMap,
    SimplicialSet,
    build,
    constant_map,
    delta,
    delta_operator,
    delta_ref,
)


@dataclass
class Pullback:
    """A (fiber) product with its two projections."""

    presented: Presented[tuple[SimplexRef, SimplexRef]]
    left: SimplicialMap
    right: SimplicialMap

    @property
    def sset(self) -> SimplicialSet:
        return self.presented.sset

    def pair(self, ref: SimplexRef) -> tuple[SimplexRef, SimplexRef]:
        return self.presented.element(ref)

    def ref(self, left: SimplexRef, right: SimplexRef) -> SimplexRef:
        return self.presented.ref((left, right), left.dim)

    def induced(self, source: SimplicialSet, f: SimplicialMap, g: SimplicialMap, name: str = "") -> SimplicialMap:
        """The map (f, g): source -> this pullback."""

        images = {
            gen: self.ref(f(source.ref(gen)), g(source.ref(gen)))
            for gens in source.generators[: self.sset.truncation + 1]
            for gen in gens
        }
        return SimplicialMap(source, self.sset, images, name or "(f, g)")


def top_dimension(X: SimplicialSet) -> int:
    return max((n for n, gens in enumerate(X.generators) if gens), default=-1)


def truncate(X: SimplicialSet, truncation: int) -> SimplicialSet:
    if truncation >= X.truncation:
        return X
    gens = X.generators[: truncation + 1]
    faces = {g: X.faces[g] for level in gens[1:] for g in level}
    return SimplicialSet(truncation, gens, faces, X.name)


def truncate_map(f: SimplicialMap, source: SimplicialSet, target: SimplicialSet) -> SimplicialMap:
    images = {g: f.images[g] for gens in source.generators for g in gens}
    return SimplicialMap(source, target, images, f.name)


def skeleton(X: SimplicialSet, n: int) -> SimplicialSet:
    """sk_n X: the generators of dimension <= n, at the same truncation."""

    gens = [list(level) if k <= n else [] for k, level in enumerate(X.generators)]
    faces = {g: X.faces[g] for level in gens[1:] for g in level}
    return SimplicialSet(X.truncation, gens, faces, f"sk_{n}({X.name})")


def product(
    X: SimplicialSet,
    Y: SimplicialSet,
    budget: int = DEFAULT_BUDGET,
    truncation: int | None = None,
) -> Pullback:
    t = min(X.truncation, Y.truncation) if truncation is None else truncation
    presented = build(
        t,
        lambda m: ((x, y) for x in X.simplices(m) for y in Y.simplices(m)),
        lambda m, i, p: (X.face(i, p[0]), Y.face(i, p[1])),
        lambda m, i, p: (X.degeneracy(i, p[0]), Y.degeneracy(i, p[1])),
        f"{X.name}x{Y.name}",
        budget,
    )
    left = presented.map_into(X, lambda m, p: p[0], "pr1")
    right = presented.map_into(Y, lambda m, p: p[1], "pr2")
    return Pullback(presented, left, right)


def pullback(f: SimplicialMap, g: SimplicialMap, budget: int = DEFAULT_BUDGET) -> Pullback:
    """X x_Z Y for f: X -> Z and g: Y -> Z."""

    X, Y = f.source, g.source
    t = min(X.truncation, Y.truncation, f.target.truncation)

    def level(m: int) -> Iterator[tuple[SimplexRef, SimplexRef]]:
        fibers: dict[SimplexRef, list[SimplexRef]] = {}
        for y in Y.simplices(m):
            fibers.setdefault(g(y), []).append(y)
        for x in X.simplices(m):
            for y in fibers.get(f(x), ()):
                yield (x, y)

    presented = build(
        t,
        level,
        lambda m, i, p: (X.face(i, p[0]), Y.face(i, p[1])),
        lambda m, i, p: (X.degeneracy(i, p[0]), Y.degeneracy(i, p[1])),
        f"{X.name}x_{f.target.name}{Y.name}",
        budget,
    )
    left = presented.map_into(X, lambda m, p: p[0], "pr1")
    right = presented.map_into(Y, lambda m, p: p[1], "pr2")
    return Pullback(presented, left, right)


def search_order(K: SimplicialSet) -> list[tuple[int, Hashable]]:
    """Generators of K, each one right after the generators of its faces.

    Top simplices are visited first, so a new vertex is always followed closely
    by a simplex whose boundary constrains it.
    """

    order: list[tuple[int, Hashable]] = []
    placed: set[Hashable] = set()

    def place(n: int, g: Hashable) -> None:
        if g in placed:
            return
        placed.add(g)
        if n:
            for f in K.faces[g]:
                place(f.generator_dim, f.generator)
        order.append((n, g))

    for n in reversed(range(len(K.generators))):
        for g in K.generators[n]:
            place(n, g)
    return order


def hom_set(K: SimplicialSet, X: SimplicialSet) -> Iterator[SimplicialMap]:
    """Every simplicial map K -> X, by backtracking over the generators of K.

    The faces of each generator are mapped before it, so its candidates are
    looked up by boundary in X.
    """

    order = search_order(K)
    if not order:
        yield SimplicialMap(K, X, {}, "empty")
        return
    if max(n for n, _ in order) > X.truncation:
        raise SimplicialIndexError(
            f"{K.name} has simplices above the truncation {X.truncation} of {X.name}"
        )

    images: dict[Hashable, SimplexRef] = {}

    def image(f: SimplexRef) -> SimplexRef:
        target = images[f.generator]
        return X.apply(target, f.surjection) if f.word else target

    def candidates(pos: int) -> Iterator[SimplexRef]:
        n, g = order[pos]
        if n == 0:
            return iter(X.simplices(0))
        boundary = tuple(image(f) for f in K.faces[g])
        return iter(X.by_boundary(n).get(boundary, ()))

    stack = [candidates(0)]
    while stack:
        pos = len(stack) - 1
        choice = next(stack[-1], None)
        if choice is None:
            stack.pop()
            continue
        images[order[pos][1]] = choice
        if pos == len(order) - 1:
            yield SimplicialMap(K, X, dict(images))
        else:
            stack.append(candidates(pos + 1))


def count_maps(K: SimplicialSet, X: SimplicialSet) -> int:
    return sum(1 for _ in hom_set(K, X))


class Coskeleton:
    """cosk_n X: below n it is X, above n an m-simplex is a map sk_n Delta^m -> X.

    Such a map is stored as the tuple of its values on the (n+1)-subsets of [m].
    """

    def __init__(self, X: SimplicialSet, n: int, budget: int = DEFAULT_BUDGET) -> None:
        if n < 0:
            raise SimplicialIndexError("Coskeleton degree must be non-negative")
        self.base = X
        self.n = n
        self.presented: Presented[Any] = build(
            X.truncation,
            self._level,
            lambda m, i, e: self.restrict(m, e, ops.coface(i, m)),
            lambda m, i, e: self.restrict(m, e, ops.codegeneracy(i, m)),
            f"cosk_{n}({X.name})",
            budget,
        )

    @property
    def sset(self) -> SimplicialSet:
        return self.presented.sset

    def summary(self) -> str:
        return self.sset.summary()

    def subsets(self, m: int) -> list[ops.Monotone]:
        return _subsets(m, self.n)

    def _level(self, m: int) -> Iterator[Any]:
        if m <= self.n:
            yield from self.base.simplices(m)
            return
        shape = skeleton(delta(m, m), self.n)
        for f in hom_set(shape, self.base):
            yield tuple(f.images[S] for S in self.subsets(m))

    def evaluate(self, m: int, element: Any, phi: ops.Monotone) -> SimplexRef:
        """The simplex element o phi of X, for phi: [k] -> [m] with k <= n."""

        if m <= self.n:
            return self.base.apply(element, phi)
        T = _first_superset(tuple(sorted(set(phi))), m, self.n + 1)
        x = element[_subset_index(m, self.n)[T]]
        return self.base.apply(x, tuple(T.index(v) for v in phi))

    def restrict(self, m: int, element: Any, theta: ops.Monotone) -> Any:
        k = len(theta) - 1
        if k <= self.n:
            return self.evaluate(m, element, theta)
        return tuple(
            self.evaluate(m, element, ops.compose(theta, S)) for S in self.subsets(k)
        )

    def unit(self) -> SimplicialMap:
        """X -> cosk_n X."""

        X = self.base
        images = {}
        for m, gens in enumerate(X.generators):
            for g in gens:
                ref = X.ref(g)
                element = ref if m <= self.n else tuple(X.apply(ref, S) for S in self.subsets(m))
                images[g] = self.presented.ref(element, m)
        return SimplicialMap(X, self.sset, images, f"unit_cosk{self.n}")

    def restriction(self, lower: "Coskeleton") -> SimplicialMap:
        """cosk_n X -> cosk_k X for k <= n over the same X."""

        def element(m: int, e: Any) -> Any:
            if m <= lower.n:
                return e
            return tuple(self.evaluate(m, e, S) for S in lower.subsets(m))

        return self.presented.map_to(lower.presented, element, f"cosk{self.n}->cosk{lower.n}")

    def functorial(self, f: SimplicialMap, other: "Coskeleton") -> SimplicialMap:
        """cosk_n(f) for f: self.base -> other.base."""

        def element(m: int, e: Any) -> Any:
            return f(e) if m <= self.n else tuple(f(x) for x in e)

        return self.presented.map_to(other.presented, element, f"cosk{self.n}({f.name})")


@lru_cache(maxsize=None)
def _subsets(m: int, n: int) -> list[ops.Monotone]:
    return list(combinations(range(m + 1), n + 1))


@lru_cache(maxsize=None)
def _subset_index(m: int, n: int) -> dict[ops.Monotone, int]:
    return {S: k for k, S in enumerate(_subsets(m, n))}


def _first_superset(image: ops.Monotone, m: int, size: int) -> ops.Monotone:
    extra = [v for v in range(m + 1) if v not in image][: size - len(image)]
    return tuple(sorted(image + tuple(extra)))


Chain = tuple[tuple[int, ...], ...]


@lru_cache(maxsize=None)
def subdivision(m: int) -> SimplicialSet:
    """sd Delta^m, the nerve of the poset of non-empty subsets of [m]."""

    subsets = sorted(
        (S for k in range(1, m + 2) for S in combinations(range(m + 1), k)),
        key=lambda S: (len(S), S),
    )

    def chains(prefix: Chain) -> Iterator[Chain]:
        yield prefix
        for S in subsets:
            if len(S) > len(prefix[-1]) and set(prefix[-1]) < set(S):
                yield from chains(prefix + (S,))

    levels: list[list[Chain]] = [[] for _ in range(m + 1)]
    for S in subsets:
        for c in chains((S,)):
            levels[len(c) - 1].append(c)

    faces = {
        c: tuple(SimplexRef(c[:i] + c[i + 1:], (), k - 1) for i in range(k + 1))
        for k, level in enumerate(levels)
        if k > 0
        for c in level
    }
    return SimplicialSet(m, levels, faces, f"sd Delta^{m}")


@lru_cache(maxsize=None)
def maximal_chains(m: int) -> tuple[Chain, ...]:
    return tuple(subdivision(m).generators[m])


@lru_cache(maxsize=None)
def _chain_index(m: int) -> dict[Chain, int]:
    return {c: k for k, c in enumerate(maximal_chains(m))}


def _extend_chain(chain: Chain, m: int) -> Chain:
    """The first maximal chain of [m] through every subset of `chain`."""

    result: list[tuple[int, ...]] = []
    current: list[int] = []
    for S in sorted(set(chain), key=len) + [tuple(range(m + 1))]:
        for v in S:
            if v not in current:
                current.append(v)
                result.append(tuple(sorted(current)))
    return tuple(result)


class Ex:
    """Kan's Ex: an m-simplex is a map sd Delta^m -> X, stored by maximal chains."""

    def __init__(self, X: SimplicialSet, budget: int = DEFAULT_BUDGET) -> None:
        self.base = X
        self.presented: Presented[Any] = build(
            X.truncation,
            self._level,
            lambda m, i, e: self.restrict(m, e, ops.coface(i, m)),
            lambda m, i, e: self.restrict(m, e, ops.codegeneracy(i, m)),
            f"Ex({X.name})",
            budget,
        )

    @property
    def sset(self) -> SimplicialSet:
        return self.presented.sset

    def summary(self) -> str:
        return self.sset.summary()

    def _level(self, m: int) -> Iterator[tuple[SimplexRef, ...]]:
        for f in hom_set(subdivision(m), self.base):
            yield tuple(f.images[c] for c in maximal_chains(m))

    def evaluate(self, m: int, element: tuple[SimplexRef, ...], chain: Chain) -> SimplexRef:
        """Value of the map on a weakly increasing chain of subsets of [m]."""

        C = _extend_chain(chain, m)
        phi = tuple(C.index(S) for S in chain)
        return self.base.apply(element[_chain_index(m)[C]], phi)

    def restrict(self, m: int, element: tuple[SimplexRef, ...], theta: ops.Monotone) -> tuple[SimplexRef, ...]:
        k = len(theta) - 1
        return tuple(
            self.evaluate(m, element, tuple(tuple(sorted({theta[s] for s in S})) for S in C))
            for C in maximal_chains(k)
        )

    def unit(self) -> SimplicialMap:
        """The last-vertex map X -> Ex X."""

        X = self.base
        images = {
            g: self.presented.ref(
                tuple(X.apply(X.ref(g), tuple(S[-1] for S in C)) for C in maximal_chains(m)),
                m,
            )
            for m, gens in enumerate(X.generators)
            for g in gens
        }
        return SimplicialMap(X, self.sset, images, "last_vertex")

    def functorial(self, f: SimplicialMap, other: "Ex") -> SimplicialMap:
        return self.presented.map_to(
            other.presented, lambda m, e: tuple(f(x) for x in e), f"Ex({f.name})"
        )


class Exponential:
    """X^K: its m-simplices are the maps Delta^m x K -> X.

    Its truncation is that of X minus the dimension of K, so that every domain
    Delta^m x K fits inside X's range.
    """

    def __init__(self, K: SimplicialSet, X: SimplicialSet, budget: int = DEFAULT_BUDGET) -> None:
        self.K = K
        self.base = X
        self.budget = budget
        self.k_dim = max(top_dimension(K), 0)
        self.truncation = min(X.truncation, K.truncation) - self.k_dim
        if self.truncation < 0:
            raise SimplicialIndexError(f"{K.name} is too large for maps into {X.name}")
        self._domains: dict[int, Pullback] = {}
        self._maps: dict[tuple[int, tuple[SimplexRef, ...]], SimplicialMap] = {}
        self.presented: Presented[Any] = build(
            self.truncation,
            self._level,
            lambda m, i, e: self.restrict(e, ops.coface(i, m)),
            lambda m, i, e: self.restrict(e, ops.codegeneracy(i, m)),
            f"{X.name}^{K.name}",
            budget,
        )
        debug(f"Exponential {self.sset.name}: {self.sset.counts()}")

    @property
    def sset(self) -> SimplicialSet:
        return self.presented.sset

    def summary(self) -> str:
        return self.sset.summary()

    def domain(self, m: int) -> Pullback:
        """Delta^m x K with its projections."""

        if m not in self._domains:
            t = m + self.k_dim
            self._domains[m] = product(delta(m, t), truncate(self.K, t), self.budget, t)
        return self._domains[m]

    def _level(self, m: int) -> Iterator[tuple[int, tuple[SimplexRef, ...]]]:
        for f in hom_set(self.domain(m).sset, self.base):
            key = (m, f.key())
            self._maps[key] = f
            yield key

    def map_of(self, element: tuple[int, tuple[SimplexRef, ...]]) -> SimplicialMap:
        found = self._maps.get(element)
        if found is None:
            domain = self.domain(element[0]).sset
            gens = [g for level in domain.generators for g in level]
            found = SimplicialMap(domain, self.base, dict(zip(gens, element[1])))
            self._maps[element] = found
        return found

    def precompose(
        self, element: tuple[int, tuple[SimplexRef, ...]], k: int, fn: Any
    ) -> tuple[int, tuple[SimplexRef, ...]]:
        """phi o g, where g: Delta^k x K -> Delta^m x K is given on pairs by fn."""

        phi = self.map_of(element)
        source = self.domain(element[0])
        target = self.domain(k)
        values = []
        for level in target.sset.generators:
            for g in level:
                a, b = target.pair(SimplexRef(g, (), target.sset.dim_of[g]))
                values.append(phi(source.ref(*fn(a, b))))
        return (k, tuple(values))

    def restrict(self, element: tuple[int, tuple[SimplexRef, ...]], theta: ops.Monotone) -> tuple[int, tuple[SimplexRef, ...]]:
        return self.precompose(
            element,
            len(theta) - 1,
            lambda a, b: (delta_ref(ops.compose(theta, delta_operator(a))), b),
        )

    def evaluation(self, vertex: SimplexRef) -> SimplicialMap:
        """X^K -> X, evaluating at a vertex of K."""

        def value(m: int, e: Any) -> SimplexRef:
            v = vertex
            for i in range(m):
                v = self.K.degeneracy(i, v)
            return self.map_of(e)(self.domain(m).ref(delta_ref(ops.identity(m)), v))

        return self.presented.map_into(self.base, value, f"ev_{vertex}")

    def constant(self, source: SimplicialSet) -> SimplicialMap:
        """X -> X^K sending x to the composite Delta^m x K -> Delta^m -> X."""

        X = self.base
        images = {}
        for m, gens in enumerate(source.generators[: self.truncation + 1]):
            for g in gens:
                ref = X.ref(g)
                domain = self.domain(m).sset
                values = tuple(
                    X.apply(ref, delta_operator(self.domain(m).pair(SimplexRef(h, (), n))[0]))
                    for n, level in enumerate(domain.generators)
                    for h in level
                )
                images[g] = self.presented.ref((m, values), m)
        return SimplicialMap(source, self.sset, images, "const")

    def functorial(self, f: SimplicialMap, other: "Exponential") -> SimplicialMap:
        """f^K: X^K -> Y^K."""

        def element(m: int, e: Any) -> Any:
            return (m, tuple(f(x) for x in e[1]))

        return self.presented.map_to(other.presented, element, f"{f.name}^K")


def fiber(f: SimplicialMap, vertex: SimplexRef, budget: int = DEFAULT_BUDGET) -> Pullback:
    """The strict fiber of f over a vertex of its target."""

    pt = SimplicialSet(f.target.truncation, [["*"]], {}, "pt")
    inclusion = constant_map(pt, f.target, vertex)
    return pullback(f, inclusion, budget)


@dataclass
class HomotopySquare:
    """A commuting square of simplicial sets.

        W --top--> Y
        |          |
       left      right
        v          v
        X -bottom-> Z
    """

    top: SimplicialMap
    left: SimplicialMap
    right: SimplicialMap
    bottom: SimplicialMap
    name: str = ""

    @property
    def initial(self) -> SimplicialSet:
        return self.top.source

    @property
    def terminal(self) -> SimplicialSet:
        return self.right.target

    def summary(self) -> str:
        return f"HomotopySquare({self.name or '?'}: {self.initial.name} -> {self.terminal.name})"

    def violations(self) -> list[str]:
        problems = []
        if self.left.source is not self.top.source and self.left.source != self.top.source:
            problems.append("top and left maps have different sources")
        if self.bottom.source is not self.left.target and self.bottom.source != self.left.target:
            problems.append("bottom map does not start at the target of the left map")
        if self.right.source is not self.top.target and self.right.source != self.top.target:
            problems.append("right map does not start at the target of the top map")
        if problems:
            return problems
        for n, gens in enumerate(self.initial.generators):
            for g in gens:
                ref = self.initial.ref(g)
                if self.bottom(self.left(ref)) != self.right(self.top(ref)):
                    problems.append(f"square does not commute on {ref}")
        return problems

    def validate(self) -> "HomotopySquare":
        problems = self.violations()
        if problems:
            raise InvalidObjectError("homotopy square", problems)
        return self
