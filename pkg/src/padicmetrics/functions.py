"""Exactly evaluable function shapes on the nonnegative rationals.

Every variant maps a nonnegative Fraction to a nonnegative Fraction with no
rounding anywhere. Specs are small frozen dataclasses, are callable, and
round-trip through JSON dicts via :func:`spec_to_json_dict` and
:func:`spec_from_json_dict`. Rationals serialize as canonical "a/b" strings
(denominator omitted when 1).
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .errors import (
    BelowFloorError,
    DomainMissError,
    NegativeInputError,
    TooLargeError,
)
from .padic import RationalLike, as_fraction, require_prime

TAIL_CONSTANT = "constant"
TAIL_LINEAR = "linear"


def floor_power_index(x: Fraction, base: int) -> int:
    """Largest integer m with base**m <= x, for x > 0, computed exactly."""
    if x <= 0:
        raise ValueError("x must be positive")
    estimate = (x.numerator.bit_length() - x.denominator.bit_length()) / math.log2(base)
    m = math.floor(estimate)
    b = Fraction(base)
    while b**m > x:
        m -= 1
    while b ** (m + 1) <= x:
        m += 1
    return m


class FunctionSpec:
    """Base class for exactly evaluable maps f: [0, oo) -> [0, oo)."""

    kind: str = ""

    def __call__(self, x: RationalLike) -> Fraction:
        x = as_fraction(x)
        if x < 0:
            raise NegativeInputError(f"function domain is x >= 0, got {x}")
        return self._value(x)

    def _value(self, x: Fraction) -> Fraction:
        raise NotImplementedError

    def to_json_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Tabulated(FunctionSpec):
    """Finite lookup table; evaluation never extrapolates.

    The table must contain the key 0 and only nonnegative values. Points
    outside the table raise DomainMissError.
    """

    entries: tuple[tuple[Fraction, Fraction], ...]

    kind = "tabulated"

    def __post_init__(self) -> None:
        keys = [k for k, _ in self.entries]
        if len(set(keys)) != len(keys):
            raise ValueError("duplicate table keys")
        if Fraction(0) not in keys:
            raise ValueError("table must contain the key 0")
        if any(k < 0 for k in keys) or any(v < 0 for _, v in self.entries):
            raise ValueError("table keys and values must be nonnegative")

    @classmethod
    def from_mapping(cls, mapping: dict) -> "Tabulated":
        pairs = sorted((as_fraction(k), as_fraction(v)) for k, v in mapping.items())
        return cls(tuple(pairs))

    @cached_property
    def _lookup(self) -> dict[Fraction, Fraction]:
        return dict(self.entries)

    def _value(self, x: Fraction) -> Fraction:
        try:
            return self._lookup[x]
        except KeyError:
            raise DomainMissError(f"{x} is not a tabulated point") from None

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "table": [[str(k), str(v)] for k, v in sorted(self.entries)],
        }


@dataclass(frozen=True)
class PiecewiseLinear(FunctionSpec):
    """Polyline through ``points`` with a constant or linear tail.

    Breakpoint abscissas must start at 0 and increase strictly; ordinates
    must be nonnegative. Past the last breakpoint the value either stays at
    the last ordinate or continues along the final segment, whose slope must
    then be nonnegative so outputs never go negative.
    """

    points: tuple[tuple[Fraction, Fraction], ...]
    tail: str = TAIL_CONSTANT

    kind = "piecewise_linear"

    def __post_init__(self) -> None:
        if not self.points:
            raise ValueError("need at least one breakpoint")
        if self.points[0][0] != 0:
            raise ValueError("breakpoints must start at x = 0")
        xs = [x for x, _ in self.points]
        if any(a >= b for a, b in zip(xs, xs[1:])):
            raise ValueError("breakpoint abscissas must increase strictly")
        if any(y < 0 for _, y in self.points):
            raise ValueError("ordinates must be nonnegative")
        if self.tail not in (TAIL_CONSTANT, TAIL_LINEAR):
            raise ValueError(f"unknown tail mode {self.tail!r}")
        if self.tail == TAIL_LINEAR:
            if len(self.points) < 2:
                raise ValueError("a linear tail needs at least two breakpoints")
            if self._final_slope() < 0:
                raise ValueError("a decreasing linear tail would go negative")

    @classmethod
    def from_pairs(cls, pairs, tail: str = TAIL_CONSTANT) -> "PiecewiseLinear":
        pts = tuple((as_fraction(x), as_fraction(y)) for x, y in pairs)
        return cls(pts, tail)

    def _final_slope(self) -> Fraction:
        (x0, y0), (x1, y1) = self.points[-2], self.points[-1]
        return (y1 - y0) / (x1 - x0)

    @cached_property
    def _xs(self) -> list[Fraction]:
        return [x for x, _ in self.points]

    def segment_slopes(self) -> tuple[Fraction, ...]:
        return tuple(
            (y1 - y0) / (x1 - x0)
            for (x0, y0), (x1, y1) in zip(self.points, self.points[1:])
        )

    def _value(self, x: Fraction) -> Fraction:
        last_x, last_y = self.points[-1]
        if x >= last_x:
            if x == last_x or self.tail == TAIL_CONSTANT:
                return last_y
            return last_y + (x - last_x) * self._final_slope()
        i = bisect.bisect_right(self._xs, x) - 1
        x0, y0 = self.points[i]
        x1, y1 = self.points[i + 1]
        return y0 + (x - x0) * (y1 - y0) / (x1 - x0)

    def to_json_dict(self) -> dict:
        tail = {"constant": str(self.points[-1][1])} if self.tail == TAIL_CONSTANT else TAIL_LINEAR
        return {
            "kind": self.kind,
            "points": [[str(x), str(y)] for x, y in self.points],
            "tail": tail,
        }


@dataclass(frozen=True)
class Reciprocal(FunctionSpec):
    """f(0) = 0 and f(x) = 1/x otherwise."""

    kind = "reciprocal"

    def _value(self, x: Fraction) -> Fraction:
        return Fraction(0) if x == 0 else 1 / x

    def to_json_dict(self) -> dict:
        return {"kind": self.kind}


@dataclass(frozen=True)
class Canonical(FunctionSpec):
    """The bounded remetrization f(x) = x / (1 + x)."""

    kind = "canonical"

    def _value(self, x: Fraction) -> Fraction:
        return x / (1 + x)

    def to_json_dict(self) -> dict:
        return {"kind": self.kind}


@dataclass(frozen=True)
class PowerMap(FunctionSpec):
    """Sends p**n to q**n for every integer n, interpolating in between.

    f(0) = 0. For x > 0 the two neighbouring powers p**m <= x <= p**(m+1)
    bracket x and the value is the exact linear interpolation of their
    images q**m and q**(m+1).
    """

    p: int
    q: int

    kind = "power_map"

    def __post_init__(self) -> None:
        require_prime(self.p)
        require_prime(self.q)

    def _value(self, x: Fraction) -> Fraction:
        if x == 0:
            return Fraction(0)
        m = floor_power_index(x, self.p)
        lo = Fraction(self.p) ** m
        if lo == x:
            return Fraction(self.q) ** m
        hi = Fraction(self.p) ** (m + 1)
        img_lo = Fraction(self.q) ** m
        img_hi = Fraction(self.q) ** (m + 1)
        return img_lo + (x - lo) * (img_hi - img_lo) / (hi - lo)

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "p": self.p, "q": self.q}


@lru_cache(maxsize=None)
def _sieve(bound: int) -> tuple[int, ...]:
    if bound < 5:
        raise ValueError("sieve bound must be at least 5")
    flags = bytearray([1]) * (bound + 1)
    flags[0] = flags[1] = 0
    for i in range(2, math.isqrt(bound) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return tuple(i for i, f in enumerate(flags) if f)


@dataclass(frozen=True)
class PrimeShift(FunctionSpec):
    """Sends every prime power p_k**n to p_{k+1}**n, interpolating between.

    The defined points are all integer powers of all primes; the image of a
    point replaces its prime with the next prime. Those points accumulate
    at 0 and are unbounded above, so evaluation is certified only inside
    the window set by the sieve bound: an input is accepted when both
    bracketing points (and their images) are provably the true neighbours
    using primes below the bound. Inputs at or below 1/p_last raise
    BelowFloorError, inputs at or beyond p_last raise TooLargeError, where
    p_last is the largest sieved prime.
    """

    sieve_bound: int = 1_000_000

    kind = "prime_shift"

    def _value(self, x: Fraction) -> Fraction:
        if x == 0:
            return Fraction(0)
        primes = _sieve(self.sieve_bound)
        last = primes[-1]
        floor = Fraction(1, last)
        if x <= floor:
            raise BelowFloorError(f"{x} is at or below the evaluation floor 1/{last}")
        if x >= last:
            raise TooLargeError(f"{x} is at or beyond the certified ceiling {last}")

        lo = hi = None
        lo_img = hi_img = None

        def offer(point: Fraction, image: Fraction) -> Fraction | None:
            nonlocal lo, hi, lo_img, hi_img
            if point == x:
                return image
            if point < x and (lo is None or point > lo):
                lo, lo_img = point, image
            if point > x and (hi is None or point < hi):
                hi, hi_img = point, image
            return None

        # 1 is p**0 for every prime and always maps to itself.
        exact = offer(Fraction(1), Fraction(1))
        if exact is not None:
            return exact
        # Small primes contribute the two powers around x.
        limit = max(x, 1 / x)
        for i, p in enumerate(primes[:-1]):
            if p > limit:
                break
            m = floor_power_index(x, p)
            q = primes[i + 1]
            for n in (m, m + 1):
                exact = offer(Fraction(p) ** n, Fraction(q) ** n)
                if exact is not None:
                    return exact
        # The nearest first powers straddling x or 1/x.
        if x > 1:
            j = bisect.bisect_right(primes, x)
            if j < len(primes) - 1:
                exact = offer(Fraction(primes[j]), Fraction(primes[j + 1]))
                if exact is not None:
                    return exact
        else:
            j = bisect.bisect_left(primes, 1 / x)
            if j < len(primes) - 1:
                exact = offer(Fraction(1, primes[j]), Fraction(1, primes[j + 1]))
                if exact is not None:
                    return exact

        if lo is None or lo <= floor:
            raise BelowFloorError(f"cannot certify the lower neighbour of {x}")
        if hi is None or hi >= last:
            raise TooLargeError(f"cannot certify the upper neighbour of {x}")
        return lo_img + (x - lo) * (hi_img - lo_img) / (hi - lo)

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "bound": self.sieve_bound}


@dataclass(frozen=True)
class PowerStep(FunctionSpec):
    """Step profile of ``inner`` on p-power intervals.

    Takes the value inner(p**m) on every interval [p**m, p**(m+1)) and 0 at
    0, so it agrees with ``inner`` on all p-adic distances while flattening
    everything in between.
    """

    inner: FunctionSpec
    p: int

    kind = "power_step"

    def __post_init__(self) -> None:
        require_prime(self.p)

    def _value(self, x: Fraction) -> Fraction:
        if x == 0:
            return Fraction(0)
        m = floor_power_index(x, self.p)
        return self.inner(Fraction(self.p) ** m)

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "p": self.p, "inner": self.inner.to_json_dict()}


@dataclass(frozen=True)
class StepFunction(FunctionSpec):
    """Right-closed step function: 0 at 0, ``below`` on (0, t_1), then
    value v_i on [t_i, t_{i+1}) and v_last from t_last on.

    With no thresholds the function is constant ``below`` on the positives.
    """

    below: Fraction
    points: tuple[tuple[Fraction, Fraction], ...] = ()

    kind = "step"

    def __post_init__(self) -> None:
        if self.below < 0:
            raise ValueError("step values must be nonnegative")
        ts = [t for t, _ in self.points]
        if any(t <= 0 for t in ts):
            raise ValueError("thresholds must be positive")
        if any(a >= b for a, b in zip(ts, ts[1:])):
            raise ValueError("thresholds must increase strictly")
        if any(v < 0 for _, v in self.points):
            raise ValueError("step values must be nonnegative")

    @classmethod
    def from_pairs(cls, below, pairs) -> "StepFunction":
        pts = tuple((as_fraction(t), as_fraction(v)) for t, v in pairs)
        return cls(as_fraction(below), pts)

    @cached_property
    def _thresholds(self) -> list[Fraction]:
        return [t for t, _ in self.points]

    def levels(self) -> tuple[Fraction, ...]:
        """All values taken on the positives, in threshold order."""
        return (self.below, *(v for _, v in self.points))

    def _value(self, x: Fraction) -> Fraction:
        if x == 0:
            return Fraction(0)
        i = bisect.bisect_right(self._thresholds, x) - 1
        return self.below if i < 0 else self.points[i][1]

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "below": str(self.below),
            "points": [[str(t), str(v)] for t, v in self.points],
        }


def _parse_pairs(raw) -> list[tuple[Fraction, Fraction]]:
    return [(Fraction(a), Fraction(b)) for a, b in raw]


def spec_from_json_dict(data: dict) -> FunctionSpec:
    """Rebuild a FunctionSpec from its JSON dict form."""
    if not isinstance(data, dict) or "kind" not in data:
        raise ValueError("function spec JSON must be an object with a 'kind'")
    kind = data["kind"]
    if kind == "tabulated":
        return Tabulated(tuple(sorted(_parse_pairs(data["table"]))))
    if kind == "piecewise_linear":
        if "tail" not in data:
            raise ValueError("piecewise_linear needs a 'tail' entry")
        tail = data["tail"]
        points = tuple(_parse_pairs(data["points"]))
        if tail == TAIL_LINEAR:
            return PiecewiseLinear(points, TAIL_LINEAR)
        if isinstance(tail, dict) and "constant" in tail:
            if Fraction(tail["constant"]) != points[-1][1]:
                raise ValueError("constant tail must equal the last ordinate")
            return PiecewiseLinear(points, TAIL_CONSTANT)
        raise ValueError(f"unknown tail {tail!r}")
    if kind == "reciprocal":
        return Reciprocal()
    if kind == "canonical":
        return Canonical()
    if kind == "power_map":
        return PowerMap(int(data["p"]), int(data["q"]))
    if kind == "prime_shift":
        return PrimeShift(int(data.get("bound", 1_000_000)))
    if kind == "power_step":
        return PowerStep(spec_from_json_dict(data["inner"]), int(data["p"]))
    if kind == "step":
        return StepFunction(Fraction(data["below"]), tuple(_parse_pairs(data["points"])))
    raise ValueError(f"unknown function spec kind {kind!r}")


def spec_to_json_dict(spec: FunctionSpec) -> dict:
    return spec.to_json_dict()
