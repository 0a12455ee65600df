from collections import defaultdict
from dataclasses import dataclass, field
from math import comb
from typing import Any, Callable, Generic, Hashable, Iterable, Iterator, NamedTuple, TypeVar

from segal.core import (
    DEFAULT_BUDGET,
    DEFAULT_TRUNCATION,
    BudgetExceededError,
    InvalidObjectError,
    MalformedInputError,
    NonSaturatingRelationError,
    SimplicialIndexError,
)
from segal.logging import debug
from segal.simplicial import operators as ops

Generator = Hashable
E = TypeVar("E", bound=Hashable)


class SimplexRef(NamedTuple):
    """A simplex in Eilenberg-Zilber normal form s_word(generator).

    `word` is strictly decreasing; `dim` is the dimension of the simplex itself.
    """

    generator: Generator
    word: tuple[int, ...]
    dim: int

    @property
    def degenerate(self) -> bool:
        return bool(self.word)

    @property
    def generator_dim(self) -> int:
        return self.dim - len(self.word)

    @property
    def surjection(self) -> ops.Monotone:
        return ops.surjection_from_word(self.word, self.dim)

    def __str__(self) -> str:
        prefix = "".join(f"s{j}" for j in self.word)
        return f"{prefix}{generator_name(self.generator)}"


def gen_ref(generator: Generator, dim: int) -> SimplexRef:
    return SimplexRef(generator, (), dim)


def degenerate_ref(ref: SimplexRef, i: int) -> SimplexRef:
    """s_i(ref), no face table needed."""

    sigma = ops.compose(ref.surjection, ops.codegeneracy(i, ref.dim))
    return SimplexRef(ref.generator, ops.word_from_surjection(sigma), ref.dim + 1)


def generator_name(generator: Generator) -> str:
    if isinstance(generator, str):
        return generator
    elif isinstance(generator, SimplexRef):
        return str(generator)
    elif isinstance(generator, tuple):
        return "(" + ",".join(generator_name(g) for g in generator) + ")"
    else:
        return str(generator)


class SimplicialSet:
    """A finitely presented simplicial set, truncated at dimension `truncation`.

    Only nondegenerate simplices (generators) are stored, with their face tables;
    every simplex of dimension <= truncation is a SimplexRef over a generator.
    """

    def __init__(
        self,
        truncation: int,
        generators: Iterable[Iterable[Generator]],
        faces: dict[Generator, tuple[SimplexRef, ...]],
        name: str = "",
    ) -> None:
        self.truncation = truncation
        self.generators: tuple[tuple[Generator, ...], ...] = tuple(
            tuple(g) for g in generators
        )
        while len(self.generators) < truncation + 1:
            self.generators += ((),)
        self.faces = faces
        self.name = name
        self.dim_of: dict[Generator, int] = {
            g: n for n, gens in enumerate(self.generators) for g in gens
        }
        self._face_cache: dict[tuple[Generator, ops.Monotone], SimplexRef] = {}
        self._simplices: dict[int, tuple[SimplexRef, ...]] = {}
        self._by_boundary: dict[int, dict[tuple[SimplexRef, ...], list[SimplexRef]]] = {}

    def __repr__(self) -> str:
        return f"SimplicialSet({self.name or '?'}, N={self.truncation}, counts={self.counts()})"

    def summary(self) -> str:
        return repr(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialSet):
            return NotImplemented
        return (
            self.truncation == other.truncation
            and self.generators == other.generators
            and self.faces == other.faces
        )

    def __hash__(self) -> int:
        return hash((self.truncation, self.generators))

    def counts(self) -> list[int]:
        """Number of generators per dimension, trailing zeros dropped."""

        counts = [len(g) for g in self.generators]
        while counts and counts[-1] == 0:
            counts.pop()
        return counts

    def is_empty(self) -> bool:
        return not self.generators[0]

    def ref(self, generator: Generator) -> SimplexRef:
        return SimplexRef(generator, (), self.dim_of[generator])

    def apply(self, ref: SimplexRef, theta: ops.Monotone) -> SimplexRef:
        """The simplex ref o theta."""

        epi, mono = ops.epi_mono(ops.compose(ref.surjection, theta))
        face = self._generator_face(ref.generator, mono)
        sigma = ops.compose(face.surjection, epi)
        return SimplexRef(face.generator, ops.word_from_surjection(sigma), len(theta) - 1)

    def _generator_face(self, generator: Generator, mono: ops.Monotone) -> SimplexRef:
        dim = self.dim_of[generator]
        if len(mono) == dim + 1:
            return SimplexRef(generator, (), dim)

        key = (generator, mono)
        cached = self._face_cache.get(key)
        if cached is not None:
            return cached

        present = set(mono)
        i = next(t for t in range(dim + 1) if t not in present)
        rest = tuple(v if v < i else v - 1 for v in mono)
        result = self.apply(self.faces[generator][i], rest)
        self._face_cache[key] = result
        return result

    def face(self, i: int, ref: SimplexRef) -> SimplexRef:
        if ref.dim < 1 or not 0 <= i <= ref.dim:
            raise SimplicialIndexError(f"d{i} is undefined on {ref} of dimension {ref.dim}")
        return self.apply(ref, ops.coface(i, ref.dim))

    def degeneracy(self, i: int, ref: SimplexRef) -> SimplexRef:
        if not 0 <= i <= ref.dim:
            raise SimplicialIndexError(f"s{i} is undefined on {ref} of dimension {ref.dim}")
        return degenerate_ref(ref, i)

    def boundary(self, ref: SimplexRef) -> tuple[SimplexRef, ...]:
        if ref.dim == 0:
            return ()
        return tuple(self.face(i, ref) for i in range(ref.dim + 1))

    def simplices(self, n: int) -> tuple[SimplexRef, ...]:
        """All n-simplices, degenerate ones included, in a fixed order."""

        cached = self._simplices.get(n)
        if cached is not None:
            return cached
        if n > self.truncation:
            raise SimplicialIndexError(f"Dimension {n} is beyond the truncation {self.truncation}")

        result = []
        for m in range(n + 1):
            words = [ops.word_from_surjection(s) for s in ops.surjections(n, m)]
            for g in self.generators[m]:
                result.extend(SimplexRef(g, w, n) for w in words)
        self._simplices[n] = tuple(result)
        return self._simplices[n]

    def count(self, n: int) -> int:
        return sum(len(self.generators[m]) * comb(n, n - m) for m in range(n + 1))

    def by_boundary(self, n: int) -> dict[tuple[SimplexRef, ...], list[SimplexRef]]:
        """Index of the n-simplices by their tuple of faces."""

        index = self._by_boundary.get(n)
        if index is None:
            index = defaultdict(list)
            for s in self.simplices(n):
                index[self.boundary(s)].append(s)
            self._by_boundary[n] = index
        return index

    def vertices(self, ref: SimplexRef) -> tuple[SimplexRef, ...]:
        return tuple(self.apply(ref, (v,)) for v in range(ref.dim + 1))

    def violations(self) -> list[str]:
        """Every violated presentation invariant, as human-readable strings."""

        problems: list[str] = []
        for n, gens in enumerate(self.generators):
            for g in gens:
                if self.dim_of.get(g) != n:
                    problems.append(f"generator {generator_name(g)} is declared twice")
                if n == 0:
                    continue
                faces = self.faces.get(g)
                if faces is None or len(faces) != n + 1:
                    problems.append(f"generator {generator_name(g)} needs {n + 1} faces")
                    continue
                for i, f in enumerate(faces):
                    if f.generator not in self.dim_of:
                        problems.append(
                            f"d{i}{generator_name(g)} refers to unknown generator"
                            f" {generator_name(f.generator)}"
                        )
                    elif f.dim != n - 1 or self.dim_of[f.generator] != f.generator_dim:
                        problems.append(f"d{i}{generator_name(g)} has the wrong dimension")
                    elif any(a <= b for a, b in zip(f.word, f.word[1:])) or any(
                        j < 0 or j >= f.dim for j in f.word
                    ):
                        problems.append(f"d{i}{generator_name(g)} is not in normal form")
        if problems:
            return problems

        for n in range(2, len(self.generators)):
            for g in self.generators[n]:
                for j in range(n + 1):
                    for i in range(j):
                        left = self.face(i, self.faces[g][j])
                        right = self.face(j - 1, self.faces[g][i])
                        if left != right:
                            problems.append(
                                f"d{i}d{j}{generator_name(g)} = {left} but"
                                f" d{j - 1}d{i}{generator_name(g)} = {right}"
                            )
        return problems

    def validate(self) -> "SimplicialSet":
        problems = self.violations()
        if problems:
            raise InvalidObjectError("simplicial set", problems)
        return self


@dataclass
class SimplicialMap:
    """A simplicial map given by the images of the source generators."""

    source: SimplicialSet
    target: SimplicialSet
    images: dict[Generator, SimplexRef]
    name: str = ""

    def __call__(self, ref: SimplexRef) -> SimplexRef:
        image = self.images[ref.generator]
        if not ref.word:
            return image
        return self.target.apply(image, ref.surjection)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return (
            self.source is other.source or self.source == other.source
        ) and self.images == other.images

    def summary(self) -> str:
        return f"SimplicialMap({self.name or '?'}: {self.source.summary()} -> {self.target.summary()})"

    def key(self) -> tuple[SimplexRef, ...]:
        """Hashable identity of the map: images in generator order."""
        return tuple(self.images[g] for gens in self.source.generators for g in gens)

    def violations(self) -> list[str]:
        problems = []
        for n, gens in enumerate(self.source.generators):
            for g in gens:
                image = self.images.get(g)
                if image is None:
                    problems.append(f"no image for generator {generator_name(g)}")
                    continue
                if image.dim != n:
                    problems.append(f"image of {generator_name(g)} has dimension {image.dim}")
                    continue
                for i in range(n + 1 if n else 0):
                    if self(self.source.faces[g][i]) != self.target.face(i, image):
                        problems.append(f"map does not commute with d{i} on {generator_name(g)}")
        return problems

    def validate(self) -> "SimplicialMap":
        problems = self.violations()
        if problems:
            raise InvalidObjectError("simplicial map", problems)
        return self

    def is_isomorphism(self) -> bool:
        """Bijective on simplices in every dimension up to the source truncation."""

        if self.source.truncation != self.target.truncation:
            return False
        seen: set[Generator] = set()
        for n in range(self.source.truncation + 1):
            if len(self.source.generators[n]) != len(self.target.generators[n]):
                return False
            for g in self.source.generators[n]:
                image = self.images[g]
                if image.degenerate or image.generator in seen:
                    return False
                seen.add(image.generator)
        return True

    def differences(self, other: "SimplicialMap") -> list[Generator]:
        """Generators on which the two maps differ."""
        return [
            g
            for gens in self.source.generators
            for g in gens
            if self(self.source.ref(g)) != other(other.source.ref(g))
        ]


def identity_map(X: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(X, X, {g: X.ref(g) for gens in X.generators for g in gens}, "id")


def compose_maps(*maps: SimplicialMap) -> SimplicialMap:
    """compose_maps(g, f) = g o f."""

    result = maps[-1]
    for outer in reversed(maps[:-1]):
        result = SimplicialMap(
            result.source,
            outer.target,
            {g: outer(ref) for g, ref in result.images.items()},
            f"{outer.name} o {result.name}",
        )
    return result


def constant_map(X: SimplicialSet, Y: SimplicialSet, vertex: SimplexRef) -> SimplicialMap:
    """The map collapsing X onto a vertex of Y."""

    images = {}
    for n, gens in enumerate(X.generators):
        target = vertex
        for i in range(n):
            target = degenerate_ref(target, i)
        for g in gens:
            images[g] = target
    return SimplicialMap(X, Y, images, "const")


@dataclass
class Presented(Generic[E]):
    """A simplicial set built from explicit levels, with its element encoding.

    The generators of `sset` are the nondegenerate elements themselves; `to_ref[n]`
    maps every element of level n to its normal-form SimplexRef and `elements[n]`
    lists the level in enumeration order.
    """

    sset: SimplicialSet
    to_ref: list[dict[E, SimplexRef]]
    elements: list[list[E]] = field(default_factory=list)

    def __post_init__(self) -> None:
        self._from_ref: list[dict[SimplexRef, E]] | None = None

    def ref(self, element: E, n: int) -> SimplexRef:
        return self.to_ref[n][element]

    def element(self, ref: SimplexRef) -> E:
        if self._from_ref is None:
            self._from_ref = [{r: e for e, r in level.items()} for level in self.to_ref]
        return self._from_ref[ref.dim][ref]

    def face(self, n: int, i: int, element: E) -> E:
        return self.element(self.sset.face(i, self.to_ref[n][element]))

    def degeneracy(self, n: int, i: int, element: E) -> E:
        return self.element(self.sset.degeneracy(i, self.to_ref[n][element]))

    def apply(self, n: int, element: E, theta: ops.Monotone) -> E:
        return self.element(self.sset.apply(self.to_ref[n][element], theta))

    def map_to(
        self,
        target: "Presented[Any]",
        fn: Callable[[int, E], Any],
        name: str = "",
    ) -> SimplicialMap:
        """Simplicial map from an element-level function that commutes with structure."""

        images = {
            g: target.ref(fn(n, g), n)
            for n, gens in enumerate(self.sset.generators)
            for g in gens
        }
        return SimplicialMap(self.sset, target.sset, images, name)

    def map_into(
        self, target: SimplicialSet, fn: Callable[[int, E], SimplexRef], name: str = ""
    ) -> SimplicialMap:
        images = {
            g: fn(n, g) for n, gens in enumerate(self.sset.generators) for g in gens
        }
        return SimplicialMap(self.sset, target, images, name)


def build(
    truncation: int,
    level: Callable[[int], Iterable[E]],
    face: Callable[[int, int, E], E],
    degeneracy: Callable[[int, int, E], E],
    name: str = "",
    budget: int = DEFAULT_BUDGET,
) -> Presented[E]:
    """Present a simplicial set whose n-simplices are enumerated by `level(n)`.

    `face(n, i, x)` and `degeneracy(n, i, x)` act on elements of level n. Every
    level must be closed under faces into the previous one. An element x is
    degenerate when x == s_i d_i x for some i.
    """

    to_ref: list[dict[E, SimplexRef]] = []
    elements: list[list[E]] = []
    generators: list[list[E]] = []
    faces: dict[Generator, tuple[SimplexRef, ...]] = {}
    total = 0

    for n in range(truncation + 1):
        refs: dict[E, SimplexRef] = {}
        gens: list[E] = []
        items = []
        for x in level(n):
            if x in refs:
                continue
            total += 1
            if total > budget:
                raise BudgetExceededError(name or "simplicial set", budget)
            items.append(x)

            ref = None
            if n > 0:
                previous = to_ref[n - 1]
                for i in range(n):
                    y = face(n, i, x)
                    if degeneracy(n - 1, i, y) == x:
                        ref = degenerate_ref(previous[y], i)
                        break
            if ref is None:
                if any(x in level for level in to_ref):
                    raise ValueError(f"Element {x!r} of {name} appears in two dimensions")
                ref = SimplexRef(x, (), n)
                gens.append(x)
                if n > 0:
                    faces[x] = tuple(to_ref[n - 1][face(n, i, x)] for i in range(n + 1))
            refs[x] = ref
        to_ref.append(refs)
        elements.append(items)
        generators.append(gens)

    debug(f"Built {name or 'simplicial set'}: {[len(g) for g in generators]} generators")
    return Presented(SimplicialSet(truncation, generators, faces, name), to_ref, elements)


def present(X: SimplicialSet) -> Presented[SimplexRef]:
    """View a SimplicialSet as explicit levels whose elements are its own refs."""

    to_ref = [{s: s for s in X.simplices(n)} for n in range(X.truncation + 1)]
    return Presented(X, to_ref, [list(X.simplices(n)) for n in range(X.truncation + 1)])


def delta(n: int, truncation: int = DEFAULT_TRUNCATION) -> SimplicialSet:
    """The standard n-simplex; generators are the vertex tuples of its faces."""

    return subcomplex_of_delta(n, lambda face: True, truncation, f"Delta^{n}")


def subcomplex_of_delta(
    n: int,
    keep: Callable[[tuple[int, ...]], bool],
    truncation: int = DEFAULT_TRUNCATION,
    name: str = "",
) -> SimplicialSet:
    if n > truncation:
        raise SimplicialIndexError(f"Delta^{n} does not fit in truncation {truncation}")

    generators: list[list[tuple[int, ...]]] = []
    faces: dict[Generator, tuple[SimplexRef, ...]] = {}
    for m in range(n + 1):
        level = [f for f in ops.injections(m, n) if keep(f)]
        generators.append(level)
        if m == 0:
            continue
        for f in level:
            faces[f] = tuple(
                SimplexRef(f[:i] + f[i + 1:], (), m - 1) for i in range(m + 1)
            )
    return SimplicialSet(truncation, generators, faces, name)


def delta_operator(ref: SimplexRef) -> ops.Monotone:
    """The monotone map [k] -> [n] represented by a simplex of Delta^n."""
    return ops.compose(ref.generator, ref.surjection)


def delta_ref(theta: ops.Monotone) -> SimplexRef:
    """Inverse of `delta_operator`."""

    epi, mono = ops.epi_mono(theta)
    return SimplexRef(mono, ops.word_from_surjection(epi), len(theta) - 1)


def basic_complex(
    kind: str, n: int = 1, i: int | None = None, truncation: int = DEFAULT_TRUNCATION
) -> SimplicialSet:
    """Boundary of Delta^n, horn Lambda^n_i, or the circle Delta^1/boundary."""

    top = tuple(range(n + 1))
    if kind == "boundary":
        return subcomplex_of_delta(n, lambda f: f != top, truncation, f"dDelta^{n}")
    elif kind == "horn":
        if i is None or not 0 <= i <= n or n < 1:
            raise SimplicialIndexError(f"Horn index {i} out of range for n={n}")
        missing = top[:i] + top[i + 1:]
        return subcomplex_of_delta(
            n, lambda f: f not in (top, missing), truncation, f"Lambda^{n}_{i}"
        )
    elif kind == "circle":
        v = SimplexRef("v", (), 0)
        return SimplicialSet(truncation, [["v"], ["e"]], {"e": (v, v)}, "S^1")
    else:
        raise MalformedInputError(f"Unknown basic complex: {kind}")


def discrete(points: Iterable[Generator], truncation: int = DEFAULT_TRUNCATION, name: str = "") -> SimplicialSet:
    return SimplicialSet(truncation, [list(points)], {}, name)


def point(truncation: int = DEFAULT_TRUNCATION) -> SimplicialSet:
    return discrete(["*"], truncation, "pt")


def empty(truncation: int = DEFAULT_TRUNCATION) -> SimplicialSet:
    return SimplicialSet(truncation, [], {}, "empty")


def to_point(X: SimplicialSet, pt: SimplicialSet | None = None) -> SimplicialMap:
    pt = pt or point(X.truncation)
    return constant_map(X, pt, pt.ref(pt.generators[0][0]))


def quotient(
    X: SimplicialSet, relation: Iterable[tuple[Generator, Generator]], name: str = ""
) -> tuple[SimplicialSet, SimplicialMap]:
    """Identify generators along `relation` (closed under faces after saturation)."""

    parent: dict[Generator, Generator] = {}

    def find(g: Generator) -> Generator:
        while parent.get(g, g) != g:
            g = parent[g]
        return g

    order = {g: k for k, g in enumerate(g for gens in X.generators for g in gens)}
    for a, b in relation:
        if X.dim_of[a] != X.dim_of[b]:
            raise NonSaturatingRelationError(
                f"Cannot identify {generator_name(a)} and {generator_name(b)} of different dimensions"
            )
        ra, rb = find(a), find(b)
        if ra != rb:
            if order[rb] < order[ra]:
                ra, rb = rb, ra
            parent[rb] = ra

    def project(ref: SimplexRef) -> SimplexRef:
        return SimplexRef(find(ref.generator), ref.word, ref.dim)

    generators = [[g for g in gens if find(g) == g] for gens in X.generators]
    faces = {}
    for gens in X.generators[1:]:
        for g in gens:
            image = tuple(project(f) for f in X.faces[g])
            rep = find(g)
            if rep in faces and faces[rep] != image:
                raise NonSaturatingRelationError(
                    f"Identifying {generator_name(g)} with {generator_name(rep)} needs their faces identified too"
                )
            faces[rep] = image

    Q = SimplicialSet(X.truncation, generators, faces, name or f"{X.name}/~")
    images = {g: SimplexRef(find(g), (), n) for n, gens in enumerate(X.generators) for g in gens}
    return Q, SimplicialMap(X, Q, images, "quotient")


def word_simplex(X: SimplicialSet, ref: SimplexRef, word: list[tuple[str, int]]) -> SimplexRef:
    """Evaluate an operator word one operator at a time (rightmost first)."""

    result = ref
    for kind, index in reversed(word):
        result = X.face(index, result) if kind == "d" else X.degeneracy(index, result)
    return result


def all_generators(X: SimplicialSet) -> Iterator[tuple[int, Generator]]:
    for n, gens in enumerate(X.generators):
        for g in gens:
            yield n, g
