"""Preservation checks specific to the p-adic metric.

The p-adic distance only takes values 0 and integer powers of p, so whether
a function respects it is decided entirely by the values f(p**k). The two
checks here scan a finite exponent window:

  metric:      f(0) = 0 and 0 < f(p**m) <= 2 f(p**n) for all m < n
  ultrametric: f(0) = 0 and 0 < f(p**n) <= f(p**(n+1)) for all n

Every failed verdict carries a witness: the offending exponent pair plus a
concrete rational triple whose pairwise p-adic distances are p**m and p**n
and whose distance images violate the triangle (resp. strong triangle)
family. Witness triples are rebuilt from scratch and re-measured before
being returned, so a reported witness is always checkable by hand.

The window is an honest cutoff, not an approximation claim: a passing
verdict certifies the quantifier only on [lo, hi] and says so.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadOrderError, NotPreservingError, SelfCheckError
from .functions import FunctionSpec, PowerMap, PowerStep, PrimeShift, StepFunction
from .padic import padic_distance, require_prime


@dataclass(frozen=True)
class ExponentWindow:
    """Inclusive exponent range standing in for "all integers"."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty window [{self.lo}, {self.hi}]")

    def exponents(self) -> list[int]:
        """All exponents, nearest to zero first (ties: negative first)."""
        return sorted(range(self.lo, self.hi + 1), key=lambda k: (abs(k), k))

    def pairs(self) -> list[tuple[int, int]]:
        """All pairs m < n, smallest combined magnitude first.

        The scan spirals out from the origin so that a failing check
        reports the witness with the most readable exponents, not the one
        nearest the window's lower corner.
        """
        ps = [
            (m, n)
            for m in range(self.lo, self.hi + 1)
            for n in range(m + 1, self.hi + 1)
        ]
        ps.sort(key=lambda p: (abs(p[0]) + abs(p[1]), p[0], p[1]))
        return ps

    def adjacent(self) -> list[tuple[int, int]]:
        """All pairs (n, n+1), nearest to zero first."""
        ns = sorted(range(self.lo, self.hi), key=lambda k: (abs(k), k))
        return [(n, n + 1) for n in ns]

    def to_json_dict(self) -> dict:
        return {"lo": self.lo, "hi": self.hi}


DEFAULT_WINDOW = ExponentWindow(-16, 16)


def parse_window(text: str) -> ExponentWindow:
    """Parse "lo:hi" into a window, e.g. "-16:16"."""
    lo, sep, hi = text.partition(":")
    if not sep:
        raise ValueError(f"window must look like lo:hi, got {text!r}")
    return ExponentWindow(int(lo), int(hi))


@dataclass(frozen=True)
class WindowWitness:
    """Evidence for a failed window check.

    kind "band" or "adjacent" carries the exponent pair (m < n), a rational
    triple whose pairwise distances realize p**m and p**n, and the images
    of those distances in failing order (legs, legs, base). kind "origin"
    means f(0) != 0; kind "vanishes" means f(p**exponent) = 0.
    """

    kind: str
    m: int | None = None
    n: int | None = None
    triple: tuple[Fraction, Fraction, Fraction] | None = None
    images: tuple[Fraction, ...] = ()

    def to_json_dict(self) -> dict:
        if self.kind == "origin":
            return {"point": "0", "value": str(self.images[0])}
        if self.kind == "vanishes":
            return {"exponent": self.m, "value": "0"}
        return {
            "m": self.m,
            "n": self.n,
            "triple": [str(v) for v in self.triple],
            "images": [str(v) for v in self.images],
        }


@dataclass(frozen=True)
class PreservationVerdict:
    passed: bool
    window: ExponentWindow
    reason: str | None = None
    witness: WindowWitness | None = None

    def to_json_dict(self) -> dict:
        return {
            "passed": self.passed,
            "window": self.window.to_json_dict(),
            "reason": self.reason,
            "witness": None if self.witness is None else self.witness.to_json_dict(),
        }


def witness_triple(p: int, m: int, n: int) -> tuple[Fraction, Fraction, Fraction]:
    """Rationals (x, y, z) with d_p(x,z) = d_p(z,y) = p**m and d_p(x,y) = p**n.

    Requires n < m: the equal legs are the long sides and the base is the
    short one, which is the only shape the strong triangle inequality
    allows. Built by scaling a unit-leg triple: for odd p the points
    (p**k, -p**k, 1) with k = m - n have legs 1, 1 and base p**(-k); for
    p = 2 the midpoint halves ((2**(k-1), -2**(k-1), 1), and (1, -1, 0)
    when k = 1). The result is re-measured before being returned.
    """
    require_prime(p)
    if n >= m:
        raise BadOrderError(f"need n < m, got m={m}, n={n}")
    k = m - n
    if p == 2:
        base = (1, -1, 0) if k == 1 else (2 ** (k - 1), -(2 ** (k - 1)), 1)
    else:
        base = (p**k, -(p**k), 1)
    scale = Fraction(p) ** (-m)
    x, y, z = (scale * b for b in base)

    legs = Fraction(p) ** m
    short = Fraction(p) ** n
    ok = (
        padic_distance(x, z, p) == legs
        and padic_distance(z, y, p) == legs
        and padic_distance(x, y, p) == short
    )
    if not ok:
        raise SelfCheckError(f"witness triple for p={p}, m={m}, n={n} does not verify")
    return (x, y, z)


def _power_values(f: FunctionSpec, p: int, window: ExponentWindow) -> dict[int, Fraction]:
    return {k: f(Fraction(p) ** k) for k in range(window.lo, window.hi + 1)}


def _shared_gate(
    f: FunctionSpec, p: int, window: ExponentWindow, values: dict[int, Fraction]
) -> PreservationVerdict | None:
    f0 = f(Fraction(0))
    if f0 != 0:
        return PreservationVerdict(
            False, window, "origin", WindowWitness("origin", images=(f0,))
        )
    for k in window.exponents():
        if values[k] == 0:
            return PreservationVerdict(
                False, window, "vanishes", WindowWitness("vanishes", m=k)
            )
    return None


def check_p_metric_preserving(
    f: FunctionSpec, p: int, window: ExponentWindow = DEFAULT_WINDOW
) -> PreservationVerdict:
    """Decide the two-sided band condition f(p**m) <= 2 f(p**n), m < n.

    On failure the witness pins the offending pair and a rational triple
    realizing the two distances; its distance images (f(p**n), f(p**n),
    f(p**m)) then break the plain triangle inequality.
    """
    require_prime(p)
    values = _power_values(f, p, window)
    early = _shared_gate(f, p, window, values)
    if early is not None:
        return early
    for m, n in window.pairs():
        if values[m] > 2 * values[n]:
            triple = witness_triple(p, n, m)
            witness = WindowWitness(
                "band",
                m=m,
                n=n,
                triple=triple,
                images=(values[n], values[n], values[m]),
            )
            return PreservationVerdict(False, window, "band", witness)
    return PreservationVerdict(True, window)


def check_p_ultrametric_preserving(
    f: FunctionSpec, p: int, window: ExponentWindow = DEFAULT_WINDOW
) -> PreservationVerdict:
    """Decide monotonicity over consecutive powers: f(p**n) <= f(p**(n+1))."""
    require_prime(p)
    values = _power_values(f, p, window)
    early = _shared_gate(f, p, window, values)
    if early is not None:
        return early
    for n, n1 in window.adjacent():
        if values[n] > values[n1]:
            triple = witness_triple(p, n1, n)
            witness = WindowWitness(
                "adjacent",
                m=n,
                n=n1,
                triple=triple,
                images=(values[n1], values[n1], values[n]),
            )
            return PreservationVerdict(False, window, "adjacent", witness)
    return PreservationVerdict(True, window)


def power_step(f: FunctionSpec, p: int) -> PowerStep:
    """Flatten f to its values at p-powers: constant on [p**m, p**(m+1)).

    The result agrees with f on every value the p-adic distance can take,
    so the two transport p-adic distance matrices identically.
    """
    return PowerStep(inner=f, p=p)


def extend_to_ultrametric_preserving(
    f: FunctionSpec, p: int, window: ExponentWindow = DEFAULT_WINDOW
) -> StepFunction:
    """Monotone step extension agreeing with f at the window's p-powers.

    Clamps to f(p**lo) below the window and to f(p**hi) above it, so the
    output is increasing and amenable on all of the nonnegatives, not just
    near the powers. Requires the window check to pass first.
    """
    verdict = check_p_ultrametric_preserving(f, p, window)
    if not verdict.passed:
        raise NotPreservingError(
            f"f is not {p}-adic ultrametric preserving on "
            f"[{window.lo}, {window.hi}]: {verdict.reason}"
        )
    points = tuple(
        (Fraction(p) ** k, f(Fraction(p) ** k))
        for k in range(window.lo, window.hi + 1)
    )
    return StepFunction(below=points[0][1], points=points)


def prime_swap(p: int, q: int) -> PowerMap:
    """The map sending p**n to q**n, linear between consecutive p-powers."""
    return PowerMap(p=p, q=q)


def prime_shift(sieve_bound: int = 1_000_000) -> PrimeShift:
    """The map replacing every prime power p_k**n by p_{k+1}**n."""
    return PrimeShift(sieve_bound=sieve_bound)


def closed_form_note(f: FunctionSpec) -> str | None:
    """A window-free remark for specs whose power values have a closed form."""
    if isinstance(f, PowerMap):
        return (
            f"values at powers of {f.p} are the powers of {f.q}, which are "
            f"strictly increasing in the exponent, so the adjacent condition "
            f"holds on every window"
        )
    return None
