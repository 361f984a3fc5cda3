"""Exact integer and rational helpers.

Rationals are :class:`fractions.Fraction` throughout; this module only adds
the list-valued gcd/lcm, modular inverses, residues and the canonical
``"num/den"`` rendering used in every serialized output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import DomainError, UsageError

Rational = Fraction


def gcd_list(values: Iterable[int]) -> int:
    """Non-negative gcd of a non-empty list; the gcd of all zeros is 0."""
    values = list(values)
    if not values:
        raise UsageError("gcd_list needs at least one value")
    return math.gcd(*values)


def lcm_list(values: Iterable[int]) -> int:
    values = list(values)
    if not values:
        raise UsageError("lcm_list needs at least one value")
    if any(v <= 0 for v in values):
        raise DomainError(f"lcm_list expects positive integers, got {values}")
    return math.lcm(*values)


def mod_inverse(a: int, d: int) -> int:
    """Return beta in [0, d) with beta*a = 1 mod d (0 when d == 1)."""
    if d <= 0:
        raise DomainError(f"modulus must be positive, got {d}")
    if d == 1:
        return 0
    if math.gcd(a, d) != 1:
        raise DomainError(f"{a} is not invertible modulo {d}")
    return pow(a, -1, d)


@dataclass(frozen=True)
class Residue:
    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus <= 0:
            raise DomainError(f"modulus must be positive, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def __add__(self, other: Residue) -> Residue:
        if other.modulus != self.modulus:
            raise DomainError("residues with different moduli")
        return Residue(self.value + other.value, self.modulus)

    def __mul__(self, k: int) -> Residue:
        return Residue(self.value * k, self.modulus)

    __rmul__ = __mul__

    def order(self) -> int:
        """Additive order in Z/modulus."""
        return self.modulus // math.gcd(self.value, self.modulus)

    def __str__(self):
        return f"{self.value} mod {self.modulus}"


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {s!r}") from exc
