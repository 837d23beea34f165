"""Exact integer and rational primitives for density and disjointness reasoning.

Everything here is pure and exact.  Python integers are unbounded, so there is
no silent wraparound anywhere; operations that promise an overflow check take
an explicit bit-width limit instead.
"""

from __future__ import annotations

import math

# Default width limit for checked products (128-bit signed range).
DEFAULT_LIMIT = (1 << 127) - 1


class UnderflowError(ArithmeticError):
    """A subtraction would take a nonnegative exact quantity below zero."""


class CapExceeded(RuntimeError):
    """A configured resource cap (lcm bound, enumeration budget) was exceeded."""


def gcd(a: int, b: int) -> int:
    """Greatest common divisor of two nonnegative integers; gcd(a, 0) == a."""
    if a < 0 or b < 0:
        raise ValueError("gcd expects nonnegative arguments")
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    return math.gcd(a, b)


def lcm_checked(a: int, b: int, limit: int | None = DEFAULT_LIMIT) -> int:
    """Least common multiple of two positive integers.

    Raises OverflowError if the result exceeds `limit` (pass None for no
    limit).  The default limit is the 128-bit signed range.
    """
    if a < 1 or b < 1:
        raise ValueError("lcm_checked expects positive arguments")
    result = a // math.gcd(a, b) * b
    if limit is not None and result > limit:
        raise OverflowError(f"lcm({a}, {b}) = {result} exceeds limit {limit}")
    return result


def smallest_prime_factor(m: int) -> int:
    """Least prime dividing m (m >= 2)."""
    if m < 2:
        raise ValueError("smallest_prime_factor expects m >= 2")
    if m % 2 == 0:
        return 2
    d = 3
    while d * d <= m:
        if m % d == 0:
            return d
        d += 2
    return m


class Fraction:
    """Exact nonnegative rational, always reduced to lowest terms.

    A deliberately small replacement for fractions.Fraction: nonnegativity is
    an invariant (the search's density deficit never legitimately goes
    negative), and any subtraction that would go below zero raises
    UnderflowError instead of producing a negative value.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: int, denominator: int = 1):
        if denominator == 0:
            raise ZeroDivisionError("denominator must be nonzero")
        if denominator < 0:
            raise ValueError("denominator must be positive")
        if numerator < 0:
            raise UnderflowError("Fraction is nonnegative by construction")
        if numerator == 0:
            denominator = 1
        else:
            g = math.gcd(numerator, denominator)
            numerator //= g
            denominator //= g
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "denominator", denominator)

    def __setattr__(self, name, value):
        raise AttributeError("Fraction is immutable")

    def __add__(self, other: "Fraction") -> "Fraction":
        return Fraction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    def __sub__(self, other: "Fraction") -> "Fraction":
        num = self.numerator * other.denominator - other.numerator * self.denominator
        if num < 0:
            raise UnderflowError(f"{self} - {other} would be negative")
        return Fraction(num, self.denominator * other.denominator)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Fraction):
            return (
                self.numerator == other.numerator
                and self.denominator == other.denominator
            )
        if isinstance(other, int):
            return self.denominator == 1 and self.numerator == other
        return NotImplemented

    def __lt__(self, other: "Fraction") -> bool:
        return self.numerator * other.denominator < other.numerator * self.denominator

    def __le__(self, other: "Fraction") -> bool:
        return self.numerator * other.denominator <= other.numerator * self.denominator

    def __gt__(self, other: "Fraction") -> bool:
        return other < self

    def __ge__(self, other: "Fraction") -> bool:
        return other <= self

    def __hash__(self) -> int:
        return hash((self.numerator, self.denominator))

    def __bool__(self) -> bool:
        return self.numerator != 0

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"

    def __repr__(self) -> str:
        return f"Fraction({self.numerator}, {self.denominator})"

    @staticmethod
    def unit(m: int) -> "Fraction":
        """1/m for positive m."""
        if m < 1:
            raise ValueError("unit fraction needs a positive denominator")
        return Fraction(1, m)


ZERO = Fraction(0)
ONE = Fraction(1)


def frac_sub_unit(f: Fraction, m: int) -> Fraction:
    """f - 1/m exactly, reduced; UnderflowError when f < 1/m.

    The underflow signal doubles as the pruning event in the unit-fraction
    search: a branch whose deficit cannot absorb 1/m is dead.
    """
    if m < 1:
        raise ValueError("modulus must be positive")
    num = f.numerator * m - f.denominator
    if num < 0:
        raise UnderflowError(f"{f} < 1/{m}")
    return Fraction(num, f.denominator * m)
