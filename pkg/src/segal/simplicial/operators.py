"""Simplicial operators as monotone maps between ordinals.

A monotone map theta: [k] -> [n] is stored as the tuple (theta(0), ..., theta(k)).
Applying theta to an n-simplex x gives the k-simplex x o theta. Face operators d_i
correspond to the cofaces delta^i: [n-1] -> [n] and degeneracies s_i to the
codegeneracies sigma^i: [n+1] -> [n].
"""

from functools import lru_cache
from itertools import combinations
from typing import Iterator, NamedTuple

from segal.core import SimplicialIndexError

Monotone = tuple[int, ...]


def identity(n: int) -> Monotone:
    return tuple(range(n + 1))


@lru_cache(maxsize=None)
def coface(i: int, n: int) -> Monotone:
    """delta^i: [n-1] -> [n], skipping i."""

    if not 0 <= i <= n or n < 1:
        raise SimplicialIndexError(f"Face index {i} out of range for dimension {n}")
    return tuple(t if t < i else t + 1 for t in range(n))


@lru_cache(maxsize=None)
def codegeneracy(i: int, n: int) -> Monotone:
    """sigma^i: [n+1] -> [n], hitting i twice."""

    if not 0 <= i <= n:
        raise SimplicialIndexError(
            f"Degeneracy index {i} out of range for dimension {n}"
        )
    return tuple(t if t <= i else t - 1 for t in range(n + 2))


def compose(outer: Monotone, inner: Monotone) -> Monotone:
    """outer o inner."""
    return tuple(outer[t] for t in inner)


def is_injective(theta: Monotone) -> bool:
    return all(theta[t] < theta[t + 1] for t in range(len(theta) - 1))


@lru_cache(maxsize=None)
def epi_mono(theta: Monotone) -> tuple[Monotone, Monotone]:
    """Factor theta = mono o epi; returns (epi, mono)."""

    image = tuple(sorted(set(theta)))
    position = {v: p for p, v in enumerate(image)}
    return tuple(position[v] for v in theta), image


@lru_cache(maxsize=None)
def word_from_surjection(sigma: Monotone) -> tuple[int, ...]:
    """Strictly decreasing degeneracy word s_j1 ... s_jk with x o sigma = s_j1...s_jk x."""
    return tuple(t for t in reversed(range(len(sigma) - 1)) if sigma[t] == sigma[t + 1])


@lru_cache(maxsize=None)
def surjection_from_word(word: tuple[int, ...], n: int) -> Monotone:
    """Inverse of `word_from_surjection` for a result of dimension n."""
    return tuple(t - sum(1 for j in word if j < t) for t in range(n + 1))


def missing_indices(mono: Monotone, n: int) -> tuple[int, ...]:
    """Ascending face word d_i1 ... d_il with x o mono = d_i1 ... d_il x."""
    present = set(mono)
    return tuple(i for i in range(n + 1) if i not in present)


def surjections(n: int, m: int) -> Iterator[Monotone]:
    """All surjective monotone maps [n] -> [m], in lexicographic word order."""

    for repeats in combinations(range(n), n - m):
        yield surjection_from_word(tuple(sorted(repeats, reverse=True)), n)


def injections(k: int, n: int) -> Iterator[Monotone]:
    """All injective monotone maps [k] -> [n]."""
    yield from combinations(range(n + 1), k + 1)


def monotone_maps(k: int, n: int) -> Iterator[Monotone]:
    """All monotone maps [k] -> [n]."""

    def extend(prefix: tuple[int, ...], low: int) -> Iterator[Monotone]:
        if len(prefix) == k + 1:
            yield prefix
            return
        for v in range(low, n + 1):
            yield from extend(prefix + (v,), v)

    yield from extend((), 0)


def operator_from_word(word: list[tuple[str, int]], n: int) -> tuple[Monotone, int]:
    """Compose a word of face/degeneracy operators acting on an n-simplex.

    `word` is written left to right as in `d3 s1 x`: the rightmost operator acts
    first. Returns the monotone map theta and the dimension of the result.
    """

    theta: Monotone = identity(n)
    dim = n
    for kind, index in reversed(word):
        if kind == "d":
            if dim < 1 or not 0 <= index <= dim:
                raise SimplicialIndexError(
                    f"d{index} cannot act on a simplex of dimension {dim}"
                )
            theta = compose(theta, coface(index, dim))
            dim -= 1
        else:
            if not 0 <= index <= dim:
                raise SimplicialIndexError(
                    f"s{index} cannot act on a simplex of dimension {dim}"
                )
            theta = compose(theta, codegeneracy(index, dim))
            dim += 1
    return theta, dim


class NormalForm(NamedTuple):
    """Formal Eilenberg-Zilber normal form s_J d_I x of an operator word."""

    degeneracies: tuple[int, ...]
    faces: tuple[int, ...]
    generator: str

    def __str__(self) -> str:
        parts = [f"s{j}" for j in self.degeneracies] + [f"d{i}" for i in self.faces]
        return " ".join(parts + [self.generator])


def normal_form(theta: Monotone, n: int, generator: str) -> NormalForm:
    """Rewrite x o theta as s_J d_I x with J strictly decreasing and I ascending."""

    epi, mono = epi_mono(theta)
    return NormalForm(word_from_surjection(epi), missing_indices(mono, n), generator)
