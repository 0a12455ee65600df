"""Normalized chains and integral homology through Smith normal forms."""

from dataclasses import dataclass, field
from typing import Any, Hashable

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors as _invariant_factors
from sympy.polys.matrices.normalforms import smith_normal_decomp as _smith_normal_decomp

from segal.logging import debug
from segal.simplicial.sset import SimplicialMap, SimplicialSet

IntMatrix = list[list[int]]


def _to_domain(rows: IntMatrix, shape: tuple[int, int]) -> DomainMatrix:
    return DomainMatrix([[ZZ(v) for v in row] for row in rows], shape, ZZ)


def _to_lists(m: DomainMatrix) -> IntMatrix:
    return [[int(v) for v in row] for row in m.to_list()]


def smith_normal_form(M: IntMatrix, columns: int | None = None) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, S, V) with U*M*V == S diagonal, d_i | d_(i+1), U and V unimodular."""

    shape = (len(M), columns if columns is not None else (len(M[0]) if M else 0))
    S, U, V = _smith_normal_decomp(_to_domain(M, shape))
    return _to_lists(U), _to_lists(S.to_dense()), _to_lists(V)


def invariant_factors(M: IntMatrix, columns: int) -> list[int]:
    """Non-zero invariant factors of M, ascending in the divisibility order."""

    if not M or columns == 0:
        return []
    factors = _invariant_factors(_to_domain(M, (len(M), columns)))
    return [abs(int(f)) for f in factors if f]


def _eliminate_units(M: IntMatrix, columns: int) -> tuple[int, IntMatrix, int]:
    """Pivot away every +-1 entry; returns (pivots, residual matrix, residual columns)."""

    rows = [{c: v for c, v in enumerate(row) if v} for row in M]
    by_column: dict[int, set[int]] = {}
    for r, row in enumerate(rows):
        for c in row:
            by_column.setdefault(c, set()).add(r)

    alive = set(range(len(rows)))
    dead_columns: set[int] = set()
    pivots = 0
    changed = True
    while changed:
        changed = False
        for r in sorted(alive):
            c = next((c for c, v in rows[r].items() if v in (1, -1)), None)
            if c is None:
                continue
            pivot_row = rows[r]
            sign = pivot_row[c]
            for other in list(by_column.get(c, ())):
                if other == r or other not in alive:
                    continue
                factor = rows[other][c] * sign
                target = rows[other]
                for col, v in pivot_row.items():
                    value = target.get(col, 0) - factor * v
                    if value:
                        target[col] = value
                        by_column.setdefault(col, set()).add(other)
                    else:
                        target.pop(col, None)
                        by_column[col].discard(other)
            alive.discard(r)
            dead_columns.add(c)
            for col in pivot_row:
                by_column[col].discard(r)
            pivots += 1
            changed = True

    keep_columns = [c for c in range(columns) if c not in dead_columns]
    index = {c: k for k, c in enumerate(keep_columns)}
    residual = []
    for r in sorted(alive):
        row = [0] * len(keep_columns)
        for c, v in rows[r].items():
            row[index[c]] = v
        if any(row):
            residual.append(row)
    return pivots, residual, len(keep_columns)


@dataclass
class ChainComplex:
    """Free chain complex; boundaries[k] is the matrix of C_k -> C_(k-1)."""

    ranks: list[int]
    boundaries: list[IntMatrix]
    basis: list[list[Hashable]] = field(default_factory=list)
    name: str = ""

    def __post_init__(self) -> None:
        self._factors: dict[int, list[int]] = {}

    @property
    def top(self) -> int:
        return len(self.ranks) - 1

    def verify(self) -> None:
        """Raise unless every composite of consecutive boundaries vanishes."""

        for k in range(2, len(self.ranks)):
            if not self.ranks[k] or not self.ranks[k - 1] or not self.ranks[k - 2]:
                continue
            product = _to_domain(self.boundaries[k - 1], (self.ranks[k - 2], self.ranks[k - 1])) * _to_domain(
                self.boundaries[k], (self.ranks[k - 1], self.ranks[k])
            )
            if not product.is_zero_matrix:
                raise ValueError(f"d{k - 1} d{k} != 0 in the chains of {self.name}")

    def factors(self, k: int) -> list[int]:
        """Invariant factors of the boundary C_k -> C_(k-1)."""

        if k <= 0 or k > self.top:
            return []
        if k not in self._factors:
            pivots, residual, columns = _eliminate_units(self.boundaries[k], self.ranks[k])
            self._factors[k] = [1] * pivots + invariant_factors(residual, columns)
        return self._factors[k]

    def homology(self, truncation: int | None = None) -> "HomologySignature":
        top = self.top if truncation is None else min(truncation, self.top)
        groups = []
        for k in range(top + 1):
            outgoing = len(self.factors(k))
            incoming = self.factors(k + 1) if k + 1 <= self.top else []
            rank = self.ranks[k] - outgoing - len(incoming)
            torsion = tuple(sorted(f for f in incoming if f > 1))
            groups.append(HomologyGroup(k, rank, torsion, safe=k < self.top))
        debug(f"Homology of {self.name}: {[str(g) for g in groups]}")
        return HomologySignature(tuple(groups), self.top)


@dataclass(frozen=True)
class HomologyGroup:
    degree: int
    rank: int
    torsion: tuple[int, ...] = ()
    safe: bool = True

    @property
    def trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def invariants(self) -> tuple[int, tuple[int, ...]]:
        return (self.rank, self.torsion)

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) or "0"

    def as_dict(self) -> dict[str, Any]:
        return {"degree": self.degree, "rank": self.rank, "torsion": list(self.torsion), "safe": self.safe}


@dataclass(frozen=True)
class HomologySignature:
    """Homology groups in degrees 0..truncation; the top degree is not reliable."""

    groups: tuple[HomologyGroup, ...]
    truncation: int

    def __getitem__(self, degree: int) -> HomologyGroup:
        return self.groups[degree]

    def __len__(self) -> int:
        return len(self.groups)

    @property
    def safe_through(self) -> int:
        return self.truncation - 1

    def through(self, degree: int) -> tuple[tuple[int, tuple[int, ...]], ...]:
        return tuple(g.invariants() for g in self.groups[: degree + 1])

    def mismatch(self, other: "HomologySignature", up_to: int | None = None) -> int | None:
        """First degree in the common safe range where the two signatures differ."""

        top = min(self.safe_through, other.safe_through)
        if up_to is not None:
            top = min(top, up_to)
        for k in range(top + 1):
            if self.groups[k].invariants() != other.groups[k].invariants():
                return k
        return None

    def acyclic(self, up_to: int) -> bool:
        return all(g.trivial for g in self.groups[: up_to + 1])

    def euler_characteristic(self) -> int:
        return sum((-1) ** g.degree * g.rank for g in self.groups)

    def summary(self) -> str:
        return "(" + "; ".join(str(g) for g in self.groups[: self.safe_through + 1]) + ")"

    def as_dict(self) -> list[dict[str, Any]]:
        return [g.as_dict() for g in self.groups]


def normalized_chains(X: SimplicialSet, N: int | None = None) -> ChainComplex:
    """Chains on the nondegenerate simplices; degenerate faces contribute zero."""

    top = X.truncation if N is None else min(N, X.truncation)
    basis = [list(X.generators[k]) for k in range(top + 1)]
    position = [{g: p for p, g in enumerate(level)} for level in basis]
    boundaries: list[IntMatrix] = [[]]
    for k in range(1, top + 1):
        matrix = [[0] * len(basis[k]) for _ in basis[k - 1]]
        for col, g in enumerate(basis[k]):
            for i, face in enumerate(X.faces[g]):
                if not face.degenerate:
                    matrix[position[k - 1][face.generator]][col] += (-1) ** i
        boundaries.append(matrix)
    return ChainComplex([len(level) for level in basis], boundaries, basis, X.name)


def chain_map(f: SimplicialMap, k: int) -> IntMatrix:
    """Matrix of the induced map on normalized k-chains."""

    source = f.source.generators[k]
    target = {g: p for p, g in enumerate(f.target.generators[k])}
    matrix = [[0] * len(source) for _ in target]
    for col, g in enumerate(source):
        image = f.images[g]
        if not image.degenerate:
            matrix[target[image.generator]][col] += 1
    return matrix


def mapping_cone(f: SimplicialMap, N: int | None = None) -> ChainComplex:
    """Cone(f)_k = C_(k-1)(X) + C_k(Y), with d(x, y) = (-dx, dy - f x)."""

    top = min(f.source.truncation + 1, f.target.truncation)
    if N is not None:
        top = min(top, N)
    X = normalized_chains(f.source)
    Y = normalized_chains(f.target)

    def x_rank(k: int) -> int:
        return X.ranks[k] if 0 <= k <= X.top else 0

    ranks = [x_rank(k - 1) + Y.ranks[k] for k in range(top + 1)]
    boundaries: list[IntMatrix] = [[]]
    for k in range(1, top + 1):
        rows, cols = x_rank(k - 2) + Y.ranks[k - 1], x_rank(k - 1) + Y.ranks[k]
        matrix = [[0] * cols for _ in range(rows)]
        if k >= 2 and x_rank(k - 1):
            for r, row in enumerate(X.boundaries[k - 1]):
                for c, v in enumerate(row):
                    matrix[r][c] = -v
        if k >= 1 and x_rank(k - 1):
            for r, row in enumerate(chain_map(f, k - 1)):
                for c, v in enumerate(row):
                    matrix[x_rank(k - 2) + r][c] = -v
        for r, row in enumerate(Y.boundaries[k]):
            for c, v in enumerate(row):
                matrix[x_rank(k - 2) + r][x_rank(k - 1) + c] = v
        boundaries.append(matrix)
    return ChainComplex(ranks, boundaries, name=f"cone({f.name})")


def homology(X: SimplicialSet, N: int | None = None) -> HomologySignature:
    chains = normalized_chains(X, N)
    chains.verify()
    return chains.homology()
