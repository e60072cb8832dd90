"""Places of Q and exact normalized absolute values.

A place is either the archimedean one or a finite prime p.  With the
normalizations used here the product over all places of |x|_place is 1
for every non-zero rational, which the height machinery relies on.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadPrime, ZeroInput
from .factorization import is_probable_prime


@functools.total_ordering
@dataclass(frozen=True)
class Place:
    """A place of Q: ``prime`` is None for the archimedean place."""

    prime: int | None = None

    def __post_init__(self):
        if self.prime is not None and not is_probable_prime(self.prime):
            raise BadPrime(f"{self.prime} is not prime")

    def _key(self) -> tuple[int, int]:
        # Finite places sort by prime; the archimedean place sorts last.
        return (1, 0) if self.prime is None else (0, self.prime)

    def __lt__(self, other: "Place") -> bool:
        if not isinstance(other, Place):
            return NotImplemented
        return self._key() < other._key()

    @classmethod
    def archimedean(cls) -> "Place":
        return cls(None)

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls(int(p))

    @property
    def is_archimedean(self) -> bool:
        return self.prime is None

    def __str__(self) -> str:
        return "inf" if self.prime is None else str(self.prime)

    @classmethod
    def parse(cls, text: str) -> "Place":
        text = text.strip()
        if text in ("inf", "oo", "infinity"):
            return cls.archimedean()
        try:
            p = int(text)
        except ValueError:
            raise BadPrime(f"not a place: {text!r}") from None
        return cls.finite(p)


def valuation(x, p: int) -> int:
    """Exact p-adic valuation of a non-zero rational."""
    x = Fraction(x)
    if x == 0:
        raise ZeroInput("the zero rational has no finite valuation")
    v = 0
    num = abs(x.numerator)
    while num % p == 0:
        num //= p
        v += 1
    den = x.denominator
    while den % p == 0:
        den //= p
        v -= 1
    return v


def place_abs(x, place: Place) -> Fraction:
    """|x|_place as an exact rational; |0| = 0 at every place."""
    x = Fraction(x)
    if x == 0:
        return Fraction(0)
    if place.is_archimedean:
        return abs(x)
    return Fraction(place.prime) ** (-valuation(x, place.prime))
