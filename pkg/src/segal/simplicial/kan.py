from collections import defaultdict

from segal.core import Verdict
from segal.logging import debug
from segal.simplicial.constructions import hom_set, top_dimension
from segal.simplicial.sset import SimplexRef, SimplicialMap, SimplicialSet, basic_complex


def _horn_faces(n: int, k: int) -> list[tuple[int, tuple]]:
    return [(i, tuple(range(n + 1))[:i] + tuple(range(n + 1))[i + 1:]) for i in range(n + 1) if i != k]


def _open_boundary(X: SimplicialSet, x: SimplexRef, k: int) -> tuple[SimplexRef, ...]:
    return tuple(X.face(i, x) for i in range(x.dim + 1) if i != k)


def _horn_images(h: SimplicialMap, n: int, k: int) -> tuple[SimplexRef, ...]:
    return tuple(h.images[face] for _, face in _horn_faces(n, k))


def kan_check(X: SimplicialSet, max_dim: int) -> Verdict:
    """Fill every horn Lambda^n_k -> X with n <= max_dim, or name one that cannot be."""

    max_dim = min(max_dim, X.truncation)
    if top_dimension(X) <= 0:
        # Horns in a discrete set are constant and fill degenerately.
        return Verdict.certify(max_dim, label="kan")
    for n in range(1, max_dim + 1):
        for k in range(n + 1):
            fillers: set[tuple[SimplexRef, ...]] = {
                _open_boundary(X, x, k) for x in X.simplices(n)
            }
            horn = basic_complex("horn", n, k, truncation=n)
            for h in hom_set(horn, X):
                faces = _horn_images(h, n, k)
                if faces not in fillers:
                    return Verdict.refute(
                        max_dim,
                        label="kan",
                        dimension=n,
                        horn=k,
                        faces={i: str(f) for (i, _), f in zip(_horn_faces(n, k), faces)},
                    )
        debug(f"{X.name}: all horns of dimension {n} fill")
    return Verdict.certify(max_dim, label="kan")


def is_fibration(f: SimplicialMap, max_dim: int) -> Verdict:
    """Horn lifting for f: E -> B up to dimension max_dim."""

    E, B = f.source, f.target
    max_dim = min(max_dim, E.truncation, B.truncation)
    if top_dimension(E) <= 0 and top_dimension(B) <= 0:
        return Verdict.certify(max_dim, label="fibration")
    for n in range(1, max_dim + 1):
        for k in range(n + 1):
            lifts: set[tuple[tuple[SimplexRef, ...], SimplexRef]] = {
                (_open_boundary(E, e, k), f(e)) for e in E.simplices(n)
            }
            by_horn: dict[tuple[SimplexRef, ...], list[SimplexRef]] = defaultdict(list)
            for b in B.simplices(n):
                by_horn[_open_boundary(B, b, k)].append(b)

            horn = basic_complex("horn", n, k, truncation=n)
            for h in hom_set(horn, E):
                faces = _horn_images(h, n, k)
                for b in by_horn.get(tuple(f(x) for x in faces), ()):
                    if (faces, b) not in lifts:
                        return Verdict.refute(
                            max_dim,
                            label="fibration",
                            dimension=n,
                            horn=k,
                            faces={i: str(x) for (i, _), x in zip(_horn_faces(n, k), faces)},
                            base=str(b),
                        )
    return Verdict.certify(max_dim, label="fibration")
