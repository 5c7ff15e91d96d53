"""Shared generators and independent oracles for the test suite.

The space generators here are construction-time oracles: they build
matrices that are ultrametric by how they are assembled (random
dendrograms, combs), not by running the package validator, so validator
tests get an independent source of known-good inputs.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random

from padicmetrics import (
    DistanceMatrixCandidate,
    FiniteUltrametricSpace,
    SpaceFamily,
    TriangleViolation,
    as_fraction,
    validate_ultrametric,
)

# a spread of scales, including non-integers, for random distances
SIX_VALUE_POOL = tuple(
    Fraction(n, d) for n, d in ((1, 4), (1, 2), (1, 1), (3, 2), (2, 1), (4, 1))
)


def must_validate(candidate: DistanceMatrixCandidate) -> FiniteUltrametricSpace:
    out = validate_ultrametric(candidate)
    assert not isinstance(out, TriangleViolation), out
    return out


def random_ultrametric(
    rng: Random, n: int, values, prefix: str = "q"
) -> FiniteUltrametricSpace:
    """Random n-point ultrametric with distances drawn from ``values``.

    A random dendrogram: pick a level, split the points into blocks that
    sit at that mutual distance, recurse inside blocks with strictly
    smaller levels. Cross-block distances always dominate within-block
    ones, so the strong triangle inequality holds by construction.
    """
    pool = sorted({as_fraction(v) for v in values})
    assert pool and all(v > 0 for v in pool)
    labels = tuple(f"{prefix}{i}" for i in range(n))
    d = [[Fraction(0)] * n for _ in range(n)]

    def split(idx: list[int], levels: list[Fraction]) -> None:
        if len(idx) <= 1:
            return
        t = rng.choice(levels)
        below = [v for v in levels if v < t]
        k = rng.randint(2, len(idx)) if below else len(idx)
        order = idx[:]
        rng.shuffle(order)
        blocks = [order[b::k] for b in range(k)]
        for a in range(k):
            for b in range(a + 1, k):
                for i in blocks[a]:
                    for j in blocks[b]:
                        d[i][j] = d[j][i] = t
        for block in blocks:
            split(block, below)

    split(list(range(n)), pool)
    return FiniteUltrametricSpace(labels, tuple(tuple(row) for row in d))


def comb_space(chain, prefix: str = "c") -> FiniteUltrametricSpace:
    """Space on len(chain)+1 points with d(x_i, x_j) = chain[max(i,j)-1].

    Every pair of chain values occurs as (base, legs) of some triangle, so
    the induced distance order is the full chain.
    """
    vals = sorted({as_fraction(v) for v in chain})
    assert vals and all(v > 0 for v in vals)
    n = len(vals) + 1
    labels = tuple(f"{prefix}{i}" for i in range(n))
    rows = tuple(
        tuple(Fraction(0) if i == j else vals[max(i, j) - 1] for j in range(n))
        for i in range(n)
    )
    return FiniteUltrametricSpace(labels, rows)


def random_family(
    rng: Random, max_spaces: int = 3, max_points: int = 5, values=SIX_VALUE_POOL
) -> SpaceFamily:
    spaces = tuple(
        random_ultrametric(rng, rng.randint(1, max_points), values, prefix=f"s{k}_")
        for k in range(rng.randint(1, max_spaces))
    )
    return SpaceFamily(spaces)


def isosceles_check(space: FiniteUltrametricSpace) -> bool:
    """Independent characterization: every triangle has its top value twice."""
    d = space.dist
    n = space.n
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                sides = sorted((d[i][j], d[i][k], d[j][k]))
                if sides[1] != sides[2]:
                    return False
    return True
