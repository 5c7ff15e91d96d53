"""Finite ultrametric spaces as exact rational distance matrices.

A candidate matrix is a plain carrier: it only knows its shape and labels.
Validation separates the two failure channels deliberately: malformed
input (asymmetry, nonzero diagonal, negative or vanishing off-diagonal
entries) raises, while a strong-triangle failure is a legitimate negative
answer and is returned as a witness the caller can re-check.

Embedding dimension works without ever leaving the rationals: instead of
constructing coordinates (which would need square roots), the Gram matrix
of squared distances is ranked by exact Gaussian elimination. For a valid
ultrametric space on n points that rank is always n - 1, and the public
entry point cross-checks the closed form against the elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    AsymmetricError,
    NegativeEntryError,
    NonzeroDiagonalError,
    SelfCheckError,
    SizeMismatchError,
    TooLargeError,
    ZeroDistanceError,
)
from .functions import FunctionSpec
from .padic import RationalLike, as_fraction

MAX_SEARCH_POINTS = 10


def _coerce_rows(
    rows: Sequence[Sequence[RationalLike]],
) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(as_fraction(v) for v in row) for row in rows)


def _check_shape(labels: tuple[str, ...], dist: tuple[tuple[Fraction, ...], ...]) -> None:
    n = len(labels)
    if n == 0:
        raise ValueError("a space needs at least one point")
    if len(set(labels)) != n:
        raise ValueError("point labels must be distinct")
    if len(dist) != n or any(len(row) != n for row in dist):
        raise ValueError(f"distance matrix must be {n}x{n}")


@dataclass(frozen=True)
class DistanceMatrixCandidate:
    """Labeled square matrix, not yet known to be a distance at all."""

    labels: tuple[str, ...]
    dist: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        _check_shape(self.labels, self.dist)

    @classmethod
    def from_rows(cls, labels, rows) -> "DistanceMatrixCandidate":
        return cls(tuple(labels), _coerce_rows(rows))

    @classmethod
    def from_json_dict(cls, data: dict) -> "DistanceMatrixCandidate":
        return cls.from_rows(data["points"], data["d"])

    @property
    def n(self) -> int:
        return len(self.labels)

    def to_json_dict(self) -> dict:
        return {
            "points": list(self.labels),
            "d": [[str(v) for v in row] for row in self.dist],
        }


@dataclass(frozen=True)
class FiniteUltrametricSpace:
    """Validated space; construct through validate_ultrametric."""

    labels: tuple[str, ...]
    dist: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        _check_shape(self.labels, self.dist)

    @property
    def n(self) -> int:
        return len(self.labels)

    def candidate(self) -> DistanceMatrixCandidate:
        return DistanceMatrixCandidate(self.labels, self.dist)

    def to_json_dict(self) -> dict:
        return self.candidate().to_json_dict()


@dataclass(frozen=True)
class TriangleViolation:
    """Least (i, j, k) with d[i][j] > max(d[i][k], d[k][j])."""

    i: int
    j: int
    k: int
    sides: tuple[Fraction, Fraction, Fraction]

    def to_json_dict(self) -> dict:
        return {
            "i": self.i,
            "j": self.j,
            "k": self.k,
            "sides": [str(v) for v in self.sides],
        }


def validate_ultrametric(
    c: DistanceMatrixCandidate,
) -> FiniteUltrametricSpace | TriangleViolation:
    """Structural defects raise; a strong-triangle breach is returned."""
    n = c.n
    d = c.dist
    for i in range(n):
        for j in range(n):
            if d[i][j] != d[j][i]:
                raise AsymmetricError(f"d[{i}][{j}] != d[{j}][{i}]")
            if d[i][j] < 0:
                raise NegativeEntryError(f"d[{i}][{j}] = {d[i][j]} < 0")
            if i == j and d[i][j] != 0:
                raise NonzeroDiagonalError(f"d[{i}][{i}] = {d[i][i]} != 0")
            if i != j and d[i][j] == 0:
                raise ZeroDistanceError(
                    f"distinct points {c.labels[i]!r}, {c.labels[j]!r} at distance 0"
                )
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if d[i][j] > max(d[i][k], d[k][j]):
                    return TriangleViolation(i, j, k, (d[i][j], d[i][k], d[k][j]))
    return FiniteUltrametricSpace(c.labels, c.dist)


def apply_function(s: FiniteUltrametricSpace, f: FunctionSpec) -> DistanceMatrixCandidate:
    """Entrywise image of the distance matrix, diagonal included.

    The result is only a candidate: whether f(0) = 0 and whether the image
    is still an ultrametric is the validator's business, not this one's.
    """
    rows = tuple(tuple(f(v) for v in row) for row in s.dist)
    return DistanceMatrixCandidate(s.labels, rows)


def distance_range(s: FiniteUltrametricSpace) -> tuple[Fraction, ...]:
    """All distinct distance values, 0 included, ascending."""
    return tuple(sorted({v for row in s.dist for v in row}))


def isometry_search(
    a: FiniteUltrametricSpace, b: FiniteUltrametricSpace
) -> tuple[int, ...] | None:
    """Least distance-preserving bijection from a's points to b's, if any.

    Backtracking over partial assignments in index order; the first
    complete assignment found is the lexicographically least one. Sizes
    are capped because the search is factorial.
    """
    if a.n != b.n:
        raise SizeMismatchError(f"cannot match {a.n} points with {b.n}")
    if a.n > MAX_SEARCH_POINTS:
        raise TooLargeError(f"search is capped at {MAX_SEARCH_POINTS} points")
    n = a.n
    assigned: list[int] = []
    used = [False] * n

    def extend() -> bool:
        if len(assigned) == n:
            return True
        i = len(assigned)
        for cand in range(n):
            if used[cand]:
                continue
            if any(b.dist[assigned[j]][cand] != a.dist[j][i] for j in range(i)):
                continue
            assigned.append(cand)
            used[cand] = True
            if extend():
                return True
            assigned.pop()
            used[cand] = False
        return False

    return tuple(assigned) if extend() else None


def is_isometry(
    a: FiniteUltrametricSpace, b: FiniteUltrametricSpace, mapping: Sequence[int]
) -> bool:
    """True when the index map carries a's distances onto b's exactly."""
    if a.n != b.n:
        raise SizeMismatchError(f"cannot match {a.n} points with {b.n}")
    if sorted(mapping) != list(range(a.n)):
        return False
    return all(
        b.dist[mapping[i]][mapping[j]] == a.dist[i][j]
        for i in range(a.n)
        for j in range(a.n)
    )


def _exact_rank(matrix: list[list[Fraction]]) -> int:
    m = [row[:] for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    rank = 0
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [v * inv for v in m[rank]]
        for r in range(rows):
            if r != rank and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [v - factor * w for v, w in zip(m[r], m[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def gram_rank(s: FiniteUltrametricSpace, base: int = 0) -> int:
    """Rank of the inner-product matrix induced by squared distances.

    With x_base as origin, G[i][j] = (d(base,i)^2 + d(base,j)^2
    - d(i,j)^2) / 2 over the remaining points. Any Euclidean realization
    of the space must have Gram matrix G, so its rank is the least
    dimension that could possibly host the points.
    """
    if s.n < 2:
        raise ValueError("gram rank needs at least two points")
    others = [i for i in range(s.n) if i != base]
    g = [
        [
            (s.dist[base][i] ** 2 + s.dist[base][j] ** 2 - s.dist[i][j] ** 2)
            / 2
            for j in others
        ]
        for i in others
    ]
    return _exact_rank(g)


def embedding_dimension(s: FiniteUltrametricSpace) -> int:
    """Least Euclidean dimension isometrically containing the space: n - 1.

    The closed form is cross-checked against the exact Gram rank; the two
    can only disagree through a bug, so disagreement raises.
    """
    if s.n == 1:
        return 0
    dim = s.n - 1
    rank = gram_rank(s)
    if rank != dim:
        raise SelfCheckError(
            f"gram rank {rank} disagrees with point-count dimension {dim}"
        )
    return dim
