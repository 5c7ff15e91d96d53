"""Distance posets for finite families of finite ultrametric spaces.

Every triangle in an ultrametric space is isosceles with the base no
longer than the two equal legs. Collecting the pairs (base, leg) over all
point triples of all spaces in a family, taking the transitive closure,
and adding the diagonal yields a partial order on the set of occurring
distance values. That order is exactly what a function must respect to
carry every space of the family to another ultrametric space: f works iff
f(0) = 0, f is positive on the positive values, and f is isotone for the
order. Both sides of that equivalence are computed independently here and
compared on every call; they can only disagree through a bug.

Point triples are enumerated with repetition on purpose: the degenerate
triple (x, y, x) contributes the pair (0, d(x, y)), which is what makes 0
the least element of the order.

When the order is total, a preserving function extends to an increasing
amenable step function on all nonnegatives (sup of f over the values seen
so far, clamped at the extremes). When it is not, an explicit two-valued
counterexample shows no increasing extension can exist.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import (
    BadIntervalError,
    ComparableError,
    EquivalenceBreachError,
    NonzeroDiagonalError,
    NoPositiveDistancesError,
    NotPreservingError,
    NotTotallyOrderedError,
    SelfCheckError,
    TotallyOrderedError,
    ZeroDistanceError,
)
from .functions import FunctionSpec, StepFunction, Tabulated
from .padic import RationalLike, as_fraction
from .spaces import (
    DistanceMatrixCandidate,
    FiniteUltrametricSpace,
    TriangleViolation,
    apply_function,
    validate_ultrametric,
)

Pair = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class SpaceFamily:
    """Nonempty, explicitly listed family of validated spaces."""

    spaces: tuple[FiniteUltrametricSpace, ...]

    def __post_init__(self) -> None:
        if not self.spaces:
            raise ValueError("a family needs at least one space")

    @classmethod
    def from_json_dict(cls, data: dict) -> "SpaceFamily":
        spaces = []
        for idx, raw in enumerate(data["spaces"]):
            out = validate_ultrametric(DistanceMatrixCandidate.from_json_dict(raw))
            if isinstance(out, TriangleViolation):
                raise ValueError(
                    f"space {idx} is not ultrametric: indices "
                    f"({out.i}, {out.j}, {out.k}) with sides {out.sides}"
                )
            spaces.append(out)
        return cls(tuple(spaces))

    def to_json_dict(self) -> dict:
        return {"spaces": [s.to_json_dict() for s in self.spaces]}


@dataclass(frozen=True)
class FiniteRelation:
    ground: tuple[Fraction, ...]
    pairs: frozenset[Pair]

    def __post_init__(self) -> None:
        grounded = set(self.ground)
        for a, b in self.pairs:
            if a not in grounded or b not in grounded:
                raise ValueError(f"pair ({a}, {b}) leaves the ground set")


def distance_values(family: SpaceFamily) -> tuple[Fraction, ...]:
    """Union of all distance values over the family, 0 included, ascending."""
    values: set[Fraction] = set()
    for s in family.spaces:
        values.update(v for row in s.dist for v in row)
    values.add(Fraction(0))
    return tuple(sorted(values))


def base_leg_pairs(family: SpaceFamily) -> FiniteRelation:
    """All pairs (base, leg) realized by point triples, repetition allowed.

    A pair (s, t) is collected when some space has points a, b, c (not
    necessarily distinct) with s = d(a, c) and t = d(a, b) = d(b, c).
    """
    pairs: set[Pair] = set()
    for s in family.spaces:
        d = s.dist
        n = s.n
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if d[a][b] == d[b][c]:
                        pairs.add((d[a][c], d[a][b]))
    return FiniteRelation(distance_values(family), frozenset(pairs))


def transitive_closure(rel: FiniteRelation) -> FiniteRelation:
    """Smallest transitive superset, by the all-intermediates sweep."""
    index = {v: i for i, v in enumerate(rel.ground)}
    n = len(rel.ground)
    reach = [[False] * n for _ in range(n)]
    for a, b in rel.pairs:
        reach[index[a]][index[b]] = True
    for k in range(n):
        row_k = reach[k]
        for i in range(n):
            if reach[i][k]:
                row_i = reach[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    closed = {
        (rel.ground[i], rel.ground[j])
        for i in range(n)
        for j in range(n)
        if reach[i][j]
    }
    return FiniteRelation(rel.ground, frozenset(closed))


@dataclass(frozen=True)
class FinitePoset:
    """Reflexive, transitive, antisymmetric relation on rational values."""

    ground: tuple[Fraction, ...]
    pairs: frozenset[Pair]

    def __post_init__(self) -> None:
        if list(self.ground) != sorted(set(self.ground)):
            raise ValueError("ground must be sorted and duplicate-free")
        grounded = set(self.ground)
        for a, b in self.pairs:
            if a not in grounded or b not in grounded:
                raise ValueError(f"pair ({a}, {b}) leaves the ground set")
        for t in self.ground:
            if (t, t) not in self.pairs:
                raise ValueError(f"missing reflexive pair for {t}")
        for a, b in self.pairs:
            if a != b and (b, a) in self.pairs:
                raise ValueError(f"antisymmetry fails on {a}, {b}")
        for a, b in self.pairs:
            for c, d in self.pairs:
                if b == c and (a, d) not in self.pairs:
                    raise ValueError(f"transitivity fails on {a}, {b}, {d}")

    def leq(self, a: RationalLike, b: RationalLike) -> bool:
        return (as_fraction(a), as_fraction(b)) in self.pairs

    def comparable(self, a: RationalLike, b: RationalLike) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def is_total(self) -> bool:
        return all(
            self.comparable(a, b)
            for i, a in enumerate(self.ground)
            for b in self.ground[i + 1 :]
        )

    def restrict(self, subset: Iterable[RationalLike]) -> "FinitePoset":
        keep = {as_fraction(v) for v in subset}
        missing = keep - set(self.ground)
        if missing:
            raise ValueError(f"values {sorted(missing)} are not in the ground set")
        return FinitePoset(
            tuple(v for v in self.ground if v in keep),
            frozenset((a, b) for a, b in self.pairs if a in keep and b in keep),
        )

    def nonreflexive_pairs(self) -> list[Pair]:
        return sorted((a, b) for a, b in self.pairs if a != b)

    def to_json_dict(self) -> dict:
        return {
            "ground": [str(v) for v in self.ground],
            "pairs": [[str(a), str(b)] for a, b in self.nonreflexive_pairs()],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "FinitePoset":
        ground = tuple(sorted(Fraction(v) for v in data["ground"]))
        pairs = {(Fraction(a), Fraction(b)) for a, b in data["pairs"]}
        pairs.update((t, t) for t in ground)
        return cls(ground, frozenset(pairs))


def family_poset(family: SpaceFamily) -> FinitePoset:
    """Transitive closure of the base-leg relation plus the diagonal.

    The structural guarantees (antisymmetry, least element 0, containment
    in the numeric order) hold for every family; they are re-derived here
    and a breach raises SelfCheckError rather than returning nonsense.
    """
    ran = distance_values(family)
    closed = transitive_closure(base_leg_pairs(family))
    pairs = set(closed.pairs) | {(t, t) for t in ran}
    for a, b in pairs:
        if a != b and (b, a) in pairs:
            raise SelfCheckError(f"distance order is not antisymmetric on {a}, {b}")
        if a > b:
            raise SelfCheckError(f"distance order escapes numeric order on {a}, {b}")
    zero = Fraction(0)
    for t in ran:
        if (zero, t) not in pairs:
            raise SelfCheckError(f"0 is not below {t}")
    return FinitePoset(ran, frozenset(pairs))


def is_totally_ordered(poset: FinitePoset) -> bool:
    return poset.is_total()


@dataclass(frozen=True)
class FamilyExtremes:
    low: Fraction
    high: Fraction

    def to_json_dict(self) -> dict:
        return {"low": str(self.low), "high": str(self.high)}


def positive_extremes(family: SpaceFamily) -> FamilyExtremes:
    """Least and greatest positive distance value across the family."""
    positives = [v for v in distance_values(family) if v > 0]
    if not positives:
        raise NoPositiveDistancesError("every space in the family is a single point")
    return FamilyExtremes(positives[0], positives[-1])


@dataclass(frozen=True)
class SpaceWitness:
    """Which space's image fails, and how."""

    space: int
    kind: str
    triple: tuple[int, int, int] | None = None

    def to_json_dict(self) -> dict:
        out: dict = {"space": self.space, "kind": self.kind}
        if self.triple is not None:
            out["triple"] = list(self.triple)
        return out


@dataclass(frozen=True)
class OrderWitness:
    """Which of the three order-side conditions fails, and where."""

    kind: str
    points: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "points": [str(v) for v in self.points],
            "values": [str(v) for v in self.values],
        }


@dataclass(frozen=True)
class PreservationReport:
    passed: bool
    space_witness: SpaceWitness | None = None
    order_witness: OrderWitness | None = None

    def to_json_dict(self) -> dict:
        return {
            "passed": self.passed,
            "space_witness": None
            if self.space_witness is None
            else self.space_witness.to_json_dict(),
            "order_witness": None
            if self.order_witness is None
            else self.order_witness.to_json_dict(),
        }


def _order_side(
    f: FunctionSpec, ran: tuple[Fraction, ...], poset: FinitePoset
) -> OrderWitness | None:
    f0 = f(Fraction(0))
    if f0 != 0:
        return OrderWitness("origin", (Fraction(0),), (f0,))
    for t in ran:
        if t > 0 and f(t) == 0:
            return OrderWitness("vanishes", (t,), (Fraction(0),))
    for s, t in poset.nonreflexive_pairs():
        if f(s) > f(t):
            return OrderWitness("pair", (s, t), (f(s), f(t)))
    return None


def _space_side(f: FunctionSpec, family: SpaceFamily) -> SpaceWitness | None:
    for idx, s in enumerate(family.spaces):
        candidate = apply_function(s, f)
        try:
            out = validate_ultrametric(candidate)
        except NonzeroDiagonalError:
            return SpaceWitness(idx, "nonzero_diagonal")
        except ZeroDistanceError:
            return SpaceWitness(idx, "zero_distance")
        if isinstance(out, TriangleViolation):
            return SpaceWitness(idx, "strong_triangle", (out.i, out.j, out.k))
    return None


def check_family_preserving(f: FunctionSpec, family: SpaceFamily) -> PreservationReport:
    """Decide whether f carries every space of the family to an ultrametric.

    Two independent procedures: transform-and-validate each space, and the
    order-side test (f(0) = 0, positive on positive values, isotone for
    the family's distance order). Their verdicts are compared on every
    call; disagreement raises EquivalenceBreachError because the
    equivalence is a theorem, not a heuristic.
    """
    ran = distance_values(family)
    poset = family_poset(family)
    order_witness = _order_side(f, ran, poset)
    space_witness = _space_side(f, family)
    if (order_witness is None) != (space_witness is None):
        raise EquivalenceBreachError(
            f"order side says {order_witness}, space side says {space_witness}"
        )
    return PreservationReport(order_witness is None, space_witness, order_witness)


def build_extension(f: FunctionSpec, family: SpaceFamily) -> StepFunction:
    """Increasing amenable extension of f beyond the family's values.

    Only defined when the distance order is total and f preserves the
    family. The result is the running sup of f over the values seen so
    far: f(low) below the least positive value, then steps at each value,
    staying at f(high) forever after. It agrees with f on every value the
    family realizes.
    """
    poset = family_poset(family)
    if not poset.is_total():
        raise NotTotallyOrderedError("the family's distance order is not total")
    report = check_family_preserving(f, family)
    if not report.passed:
        raise NotPreservingError(f"f does not preserve the family: {report.order_witness}")
    positives = [v for v in poset.ground if v > 0]
    if not positives:
        raise NoPositiveDistancesError("nothing to extend: no positive distances")
    points: list[tuple[Fraction, Fraction]] = []
    running = None
    for v in positives:
        value = f(v)
        running = value if running is None else max(running, value)
        points.append((v, running))
    return StepFunction(below=points[0][1], points=tuple(points))


def isotone_for_incomparables(
    poset: FinitePoset,
    x1: RationalLike,
    x2: RationalLike,
    p1: RationalLike,
    p2: RationalLike,
) -> dict[Fraction, Fraction]:
    """Isotone map sending incomparable x1, x2 to prescribed p1 < p2.

    The map is p2 on the up-set of x2 and p1 everywhere else, which is
    isotone by transitivity and hits the prescribed values because x1 is
    not above x2. Isotonicity is re-checked after construction.
    """
    x1, x2 = as_fraction(x1), as_fraction(x2)
    p1, p2 = as_fraction(p1), as_fraction(p2)
    if x1 not in poset.ground or x2 not in poset.ground:
        raise ValueError("x1 and x2 must belong to the ground set")
    if not 0 < p1 < p2:
        raise BadIntervalError(f"need 0 < p1 < p2, got {p1}, {p2}")
    if poset.comparable(x1, x2):
        raise ComparableError(f"{x1} and {x2} are comparable")
    phi = {x: p2 if poset.leq(x2, x) else p1 for x in poset.ground}
    for s, t in poset.pairs:
        if phi[s] > phi[t]:
            raise SelfCheckError(f"constructed map is not isotone on {s}, {t}")
    return phi


def counterexample_function(family: SpaceFamily) -> Tabulated:
    """A preserving function with no increasing extension.

    Requires the distance order not to be total. Takes the largest
    incomparable pair, maps the numerically bigger value to 1 and the
    smaller to 2 (up-set construction for the rest), and tabulates. The
    result provably preserves the family while being decreasing somewhere
    on its values, so no increasing function can agree with it; both
    facts are re-verified before returning.
    """
    poset = family_poset(family)
    if poset.is_total():
        raise TotallyOrderedError("the family's distance order is already total")
    positives = [v for v in poset.ground if v > 0]
    incomparable = [
        (a, b)
        for i, a in enumerate(positives)
        for b in positives[i + 1 :]
        if not poset.comparable(a, b)
    ]
    small, big = max(incomparable)
    phi = isotone_for_incomparables(
        poset.restrict(positives), big, small, Fraction(1), Fraction(2)
    )
    table: dict[Fraction, Fraction] = {Fraction(0): Fraction(0)}
    table.update(phi)
    fn = Tabulated.from_mapping(table)

    report = check_family_preserving(fn, family)
    ran = distance_values(family)
    decreasing = any(
        fn(s) > fn(t) for i, s in enumerate(ran) for t in ran[i + 1 :]
    )
    if not report.passed or not decreasing:
        raise SelfCheckError("counterexample failed its own audit")
    return fn


def compare_families(a: SpaceFamily, b: SpaceFamily) -> dict[str, bool]:
    """Whether two families induce the same values and the same order."""
    poset_a = family_poset(a)
    poset_b = family_poset(b)
    return {
        "same_range": poset_a.ground == poset_b.ground,
        "same_order": poset_a.ground == poset_b.ground
        and poset_a.pairs == poset_b.pairs,
    }
