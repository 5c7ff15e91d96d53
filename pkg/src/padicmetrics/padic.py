"""Exact p-adic arithmetic over the rationals.

Everything in this module works with ``fractions.Fraction``, which Python
keeps in lowest terms with a positive denominator, so equality and ordering
are exact and structural throughout. The p-adic absolute value of a nonzero
rational is always an integer power of p; :class:`PAdicAbs` keeps that
exponent symbolic so extreme valuations never materialize as huge integers
unless explicitly converted.

Primality of the modulus is certified deterministically for p < 2**64 via
Miller-Rabin with a fixed witness set; larger moduli are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import NotPrimeError, OrdOfZeroError, TooShortError

RationalLike = Union[Fraction, int, str]

# Witnesses certifying Miller-Rabin for every n < 2**64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_CERTIFIED_LIMIT = 2**64


def as_fraction(x: RationalLike) -> Fraction:
    """Coerce an int or canonical "a/b" string to an exact Fraction."""
    return x if isinstance(x, Fraction) else Fraction(x)


def is_prime(n: int) -> bool:
    """Deterministic primality test, certified for n < 2**64.

    Raises:
        TooLargeError: never; moduli at or above 2**64 raise NotPrimeError
            from :func:`require_prime` instead. Direct callers get False
            for small composites and an exception for uncertifiable sizes.
    """
    if n >= _CERTIFIED_LIMIT:
        raise NotPrimeError(f"cannot certify primality of {n}: not below 2**64")
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == small:
            return True
        if n % small == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_prime(p: int) -> None:
    """Raise NotPrimeError unless p is a certified prime."""
    if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
        raise NotPrimeError(f"p must be a prime below 2**64, got {p!r}")


def _multiplicity(n: int, p: int) -> int:
    # n != 0; count how many times p divides n
    count = 0
    while n % p == 0:
        n //= p
        count += 1
    return count


def valuation(x: RationalLike, p: int) -> int:
    """The p-adic order of a nonzero rational.

    For x = a/b in lowest terms this is the multiplicity of p in a minus
    the multiplicity of p in b.

    Examples:
        valuation(8, 2) == 3
        valuation(Fraction(25, 18), 3) == -2
    """
    require_prime(p)
    x = as_fraction(x)
    if x == 0:
        raise OrdOfZeroError("the p-adic order of 0 is undefined")
    return _multiplicity(x.numerator, p) - _multiplicity(x.denominator, p)


@dataclass(frozen=True)
class PAdicAbs:
    """The value |x|_p, either zero or an exact power p**exponent.

    The exponent is stored symbolically; ``exponent is None`` encodes the
    value 0 (which is not a power of p).
    """

    p: int
    exponent: int | None

    @classmethod
    def zero(cls, p: int) -> "PAdicAbs":
        return cls(p, None)

    @classmethod
    def power(cls, p: int, exponent: int) -> "PAdicAbs":
        return cls(p, exponent)

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def as_fraction(self) -> Fraction:
        if self.exponent is None:
            return Fraction(0)
        return Fraction(self.p) ** self.exponent


def padic_abs(x: RationalLike, p: int) -> PAdicAbs:
    """The p-adic absolute value |x|_p = p**(-valuation(x, p)), with |0|_p = 0.

    Examples:
        padic_abs(Fraction(25, 18), 3).as_fraction() == 9
        padic_abs(Fraction(25, 18), 5).as_fraction() == Fraction(1, 25)
    """
    require_prime(p)
    x = as_fraction(x)
    if x == 0:
        return PAdicAbs.zero(p)
    return PAdicAbs.power(p, -valuation(x, p))


def padic_distance(x: RationalLike, y: RationalLike, p: int) -> Fraction:
    """The exact p-adic distance |x - y|_p as a Fraction."""
    return padic_abs(as_fraction(x) - as_fraction(y), p).as_fraction()


@dataclass(frozen=True)
class DigitWindow:
    """Base-p digits of a rational on a contiguous exponent window.

    ``digits[i]`` is the coefficient of p**(low + i). The window always
    starts at min(0, valuation(x, p)), so integer parts are fully covered
    and negative valuations pull the window below zero.
    """

    p: int
    low: int
    digits: tuple[int, ...]

    @property
    def high(self) -> int:
        return self.low + len(self.digits) - 1

    def partial_sum(self) -> Fraction:
        base = Fraction(self.p)
        return sum((d * base ** (self.low + i) for i, d in enumerate(self.digits)),
                   Fraction(0))

    def to_json_dict(self) -> dict:
        return {"p": self.p, "low": self.low, "digits": list(self.digits)}


def digit_window(x: RationalLike, p: int, high: int) -> DigitWindow:
    """Base-p digit expansion of a rational up to exponent ``high``.

    Digits are produced so that x minus the returned partial sum has
    p-adic order at least high + 1. Rationals whose denominator is
    divisible by p start below exponent zero; negative rationals come out
    with the usual repeating high digits.

    Examples:
        digit_window(17, 3, 2).digits == (2, 2, 1)        # 17 = "122" base 3
        digit_window(-1, 3, 3).digits == (2, 2, 2, 2)     # ...2222
    """
    require_prime(p)
    x = as_fraction(x)
    low = 0 if x == 0 else min(0, valuation(x, p))
    if high < low:
        raise ValueError(f"high must be at least the window start {low}, got {high}")
    digits: list[int] = []
    base = Fraction(p)
    remainder = x
    for k in range(low, high + 1):
        # remainder always has p-adic order >= k here
        shifted = remainder / base**k
        if shifted == 0:
            digit = 0
        else:
            digit = shifted.numerator * pow(shifted.denominator, -1, p) % p
        digits.append(digit)
        remainder -= digit * base**k
    return DigitWindow(p, low, tuple(digits))


def cauchy_profile(prefix: Sequence[RationalLike], p: int) -> tuple[Fraction, ...]:
    """Consecutive-gap profile |a_n - a_{n+1}|_p of a finite sequence prefix.

    Only the profile is computed; no convergence verdict is attached, since
    a finite prefix can never certify the limit behaviour by itself. In an
    ultrametric the vanishing of these gaps is what convergence of the
    sequence of partial differences turns on.
    """
    terms = [as_fraction(a) for a in prefix]
    if len(terms) < 2:
        raise TooShortError("need at least two terms to form a profile")
    return tuple(padic_distance(a, b, p) for a, b in zip(terms, terms[1:]))
