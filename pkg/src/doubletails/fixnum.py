"""Nonnegative binary fixed-point numbers with truncating arithmetic.

A :class:`FixedReal` holds an integer mantissa and a fractional-bit count
``scale``; its value is ``mantissa / 2**scale``.  Every operation truncates
toward zero, so each one is off by less than one ulp (``2**-scale``) from
the exact rational result, and addition is exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class FixedReal:
    mantissa: int
    scale: int

    def __post_init__(self):
        if self.mantissa < 0:
            raise ValueError("FixedReal is nonnegative")
        if self.scale < 0:
            raise ValueError("scale must be >= 0")

    @classmethod
    def zero(cls, scale: int) -> FixedReal:
        return cls(0, scale)

    @classmethod
    def one(cls, scale: int) -> FixedReal:
        return cls(1 << scale, scale)

    @property
    def ulp(self) -> Fraction:
        return Fraction(1, 1 << self.scale)

    def _same_scale(self, other: FixedReal) -> None:
        if not isinstance(other, FixedReal):
            raise TypeError(f"expected FixedReal, got {type(other).__name__}")
        if other.scale != self.scale:
            raise ValueError(f"scale mismatch: {self.scale} != {other.scale}")

    def __add__(self, other: FixedReal) -> FixedReal:
        self._same_scale(other)
        return FixedReal(self.mantissa + other.mantissa, self.scale)

    def __sub__(self, other: FixedReal) -> FixedReal:
        self._same_scale(other)
        if other.mantissa > self.mantissa:
            raise ArithmeticError("FixedReal subtraction underflow")
        return FixedReal(self.mantissa - other.mantissa, self.scale)

    def __mul__(self, other: FixedReal) -> FixedReal:
        self._same_scale(other)
        return FixedReal((self.mantissa * other.mantissa) >> self.scale, self.scale)

    def div_int(self, n: int) -> FixedReal:
        if n <= 0:
            raise ZeroDivisionError("div_int needs a positive divisor")
        return FixedReal(self.mantissa // n, self.scale)

    __truediv__ = div_int

    def mul_int(self, n: int) -> FixedReal:
        """Exact multiplication by a nonnegative integer."""
        if n < 0:
            raise ValueError("mul_int needs a nonnegative factor")
        return FixedReal(self.mantissa * n, self.scale)

    def to_fraction(self) -> Fraction:
        return Fraction(self.mantissa, 1 << self.scale)

    def __float__(self) -> float:
        return self.mantissa / (1 << self.scale) if self.scale < 1000 else float(self.to_fraction())

    def __repr__(self) -> str:
        return f"FixedReal({float(self)!r}, scale={self.scale})"


def from_rational(p: int, q: int, scale: int) -> FixedReal:
    """Truncation of ``p/q`` to ``scale`` fractional bits."""
    if q < 1:
        raise ValueError("denominator must be positive")
    if p < 0:
        raise ValueError("FixedReal is nonnegative")
    return FixedReal((p << scale) // q, scale)


def from_fraction(x: Fraction, scale: int) -> FixedReal:
    x = Fraction(x)
    return from_rational(x.numerator, x.denominator, scale)


def add(x: FixedReal, y: FixedReal) -> FixedReal:
    return x + y


def sub(x: FixedReal, y: FixedReal) -> FixedReal:
    return x - y


def mul(x: FixedReal, y: FixedReal) -> FixedReal:
    return x * y


def div_int(x: FixedReal, n: int) -> FixedReal:
    return x.div_int(n)


def binom_recip_step(prev: FixedReal, n: int) -> FixedReal:
    """Turn an approximation of 1/C(2n-2, n-1) into one of 1/C(2n, n).

    Single truncation, so the error carried in ``prev`` is multiplied by
    ``n/(2(2n-1)) <= 1/2`` and one ulp is added; iterating from 1 keeps the
    error below 2 ulp.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return FixedReal((prev.mantissa * n) // (2 * (2 * n - 1)), prev.scale)


def binom_recip_table(N: int, scale: int) -> list[int]:
    """Mantissas of 1/C(2n, n) for n = 0..N, built with :func:`binom_recip_step`."""
    x = FixedReal.one(scale)
    out = [x.mantissa]
    for n in range(1, N + 1):
        x = binom_recip_step(x, n)
        out.append(x.mantissa)
    return out


def to_decimal(x: FixedReal, digits: int, certified_error: Fraction | int | float = 0) -> str:
    """Print ``x`` with ``digits`` decimals, truncated.

    ``certified_error`` bounds ``|x - true value|`` and must be below
    ``10**-digits``; the printed string is then within ``2 * 10**-digits`` of
    the true value.
    """
    if digits < 0:
        raise ValueError("digits must be >= 0")
    err = Fraction(certified_error)
    if err >= Fraction(1, 10**digits):
        raise ValueError(f"certified error {float(err):.3e} does not support {digits} digits")
    q = (x.mantissa * 10**digits) >> x.scale
    int_part, frac_part = divmod(q, 10**digits)
    if digits == 0:
        return f"{int_part}."
    return f"{int_part}.{frac_part:0{digits}d}"


@dataclass(frozen=True)
class PrecisionPlan:
    """Working precision for one computation.

    ``scale`` is the fractional-bit count, ``step_alpha`` the bound on the
    rounding error of one recurrence step (8 ulp).
    """

    digits: int
    scale: int
    step_alpha: Fraction

    @classmethod
    def for_digits(cls, digits: int, iterations: int, guard_bits: int = 16) -> PrecisionPlan:
        if digits < 1:
            raise ValueError("digits must be >= 1")
        scale = (
            math.ceil(digits * math.log2(10))
            + math.ceil(3 * math.log2(iterations + 1))
            + guard_bits
        )
        return cls(digits=digits, scale=scale, step_alpha=Fraction(8, 1 << scale))
