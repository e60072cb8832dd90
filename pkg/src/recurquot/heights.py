"""Weil heights, S-integrality, local proximity functions, and decay ratios.

Heights are stored exactly as formal sums of rational multiples of
logarithms of primes (``LogSum``).  Two such sums are equal iff their
coefficient maps agree, because the logs of distinct primes are
linearly independent over Q; ordering is decided by exact big-integer
comparison after clearing denominators.  Floating point appears only
in ``to_float`` for display.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    HypothesisViolated,
    PointOnHyperplane,
    ZeroInput,
)
from .factorization import factor_rational
from .places import Place, place_abs, valuation
from .polys import UniPoly
from .recurrences import LinearRecurrence


class LogSum:
    """An exact real number of the form sum(c_p * log p) over primes."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        for p, c in (coeffs or {}).items():
            c = Fraction(c)
            if c != 0:
                clean[int(p)] = c
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    def __setattr__(self, name, value):
        raise AttributeError("LogSum is immutable")

    @classmethod
    def zero(cls) -> "LogSum":
        return cls({})

    @classmethod
    def log_of(cls, x, limit: int | None = None) -> "LogSum":
        """log of a positive rational, exactly."""
        x = Fraction(x)
        if x <= 0:
            raise ZeroInput("log needs a positive rational")
        fact = factor_rational(x, limit)
        return cls({p: Fraction(e) for p, e in fact.exponents.items()})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "LogSum") -> "LogSum":
        out = dict(self.coeffs)
        for p, c in other.coeffs.items():
            out[p] = out.get(p, Fraction(0)) + c
        return LogSum(out)

    def __neg__(self) -> "LogSum":
        return LogSum({p: -c for p, c in self.coeffs.items()})

    def __sub__(self, other: "LogSum") -> "LogSum":
        return self + (-other)

    def scale(self, c) -> "LogSum":
        c = Fraction(c)
        return LogSum({p: v * c for p, v in self.coeffs.items()})

    def _sign(self) -> int:
        """Exact sign: compare prod(p^(N c_p)) against 1."""
        if not self.coeffs:
            return 0
        lcm = 1
        for c in self.coeffs.values():
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        pos, neg = 1, 1
        for p, c in self.coeffs.items():
            e = int(c * lcm)
            if e > 0:
                pos *= p**e
            else:
                neg *= p**-e
        if pos > neg:
            return 1
        if pos < neg:
            return -1
        return 0

    def __eq__(self, other):
        if not isinstance(other, LogSum):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __lt__(self, other: "LogSum") -> bool:
        return (self - other)._sign() < 0

    def __le__(self, other: "LogSum") -> bool:
        return (self - other)._sign() <= 0

    def __gt__(self, other: "LogSum") -> bool:
        return (self - other)._sign() > 0

    def __ge__(self, other: "LogSum") -> bool:
        return (self - other)._sign() >= 0

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def to_float(self) -> float:
        return sum(float(c) * math.log(p) for p, c in self.coeffs.items())

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        out = ""
        for p, c in self.coeffs.items():
            mag = abs(c)
            body = f"log {p}" if mag == 1 else f"{mag}*log {p}"
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def as_pairs(self) -> list[tuple[int, str]]:
        return [(p, str(c)) for p, c in self.coeffs.items()]

    def __repr__(self):
        return f"LogSum({self.render()})"


# -- heights ---------------------------------------------------------------


def _contributing_primes(values) -> set[int]:
    primes: set[int] = set()
    for x in values:
        if x == 0:
            continue
        primes |= set(factor_rational(x).exponents)
    return primes


def vector_height(xs, limit: int | None = None) -> LogSum:
    """h(x) = sum over places of log of the sup-norm of the vector.

    Projective: scaling the vector by a non-zero rational leaves the
    result unchanged, by the product formula.
    """
    xs = [Fraction(x) for x in xs]
    if all(x == 0 for x in xs):
        raise ZeroInput("the zero vector has no height")
    total = LogSum.zero()
    arch = max(abs(x) for x in xs)
    total = total + LogSum.log_of(arch, limit)
    for p in sorted(_contributing_primes(xs)):
        place = Place.finite(p)
        norm = max(place_abs(x, place) for x in xs)
        if norm != 1:
            total = total + LogSum.log_of(norm, limit)
    return total


def weil_height(x, limit: int | None = None) -> LogSum:
    """Height of a rational, a vector, or a polynomial's coefficients.

    Scalars are the projective point [1 : x], so h(p/q) = log max(|p|, q)
    in lowest terms; that identity is what the tests pin down.
    """
    if isinstance(x, UniPoly):
        if x.is_zero:
            raise ZeroInput("the zero polynomial has no height")
        return vector_height(list(x.coeffs), limit)
    if isinstance(x, (list, tuple)):
        return vector_height(x, limit)
    x = Fraction(x)
    if x == 0:
        raise ZeroInput("zero has no height")
    return vector_height([Fraction(1), x], limit)


def product_formula_check(x) -> Fraction:
    """prod over contributing places of |x|_place; exactly 1 for x != 0."""
    x = Fraction(x)
    if x == 0:
        raise ZeroInput("the product formula needs x != 0")
    out = place_abs(x, Place.archimedean())
    for p in sorted(_contributing_primes([x])):
        out *= place_abs(x, Place.finite(p))
    return out


# -- hyperplanes and proximity ------------------------------------------------


@dataclass(frozen=True)
class HyperplaneForm:
    """A linear form a_0 x_0 + ... + a_n x_n with rational coefficients."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        if all(c == 0 for c in coeffs):
            raise ZeroInput("a hyperplane needs a non-zero coefficient vector")
        object.__setattr__(self, "coefficients", coeffs)

    def __call__(self, xs) -> Fraction:
        xs = [Fraction(x) for x in xs]
        assert len(xs) == len(self.coefficients)
        return sum((a * x for a, x in zip(self.coefficients, xs)), Fraction(0))


def weil_function(form: HyperplaneForm, xs, place: Place) -> LogSum:
    """log(||x|| * ||L|| / |L(x)|) at one place, exactly.

    At finite places the ultrametric inequality forces the ratio >= 1,
    which is asserted.  At the archimedean place the triangle
    inequality only gives ratio >= 1/(dim + 1), so the value may be
    negative there (e.g. L = x0 + x1 at x = (1, 1) gives -log 2); the
    global sum over places is what the height identity constrains.
    """
    xs = [Fraction(x) for x in xs]
    if all(x == 0 for x in xs):
        raise ZeroInput("projective points need a non-zero vector")
    value = form(xs)
    if value == 0:
        raise PointOnHyperplane("the form vanishes at this point")
    x_norm = max(place_abs(x, place) for x in xs)
    l_norm = max(place_abs(a, place) for a in form.coefficients)
    ratio = x_norm * l_norm / place_abs(value, place)
    if not place.is_archimedean:
        assert ratio >= 1, "ultrametric inequality failed"
    return LogSum.log_of(ratio)


# -- S-integers -----------------------------------------------------------------


@dataclass(frozen=True)
class SIntegerSpec:
    """The finite set S of primes allowed in denominators (and units)."""

    primes: frozenset[int]

    def __init__(self, primes):
        object.__setattr__(self, "primes", frozenset(int(p) for p in primes))

    def sorted(self) -> list[int]:
        return sorted(self.primes)


class SMembership(enum.Enum):
    S_UNIT = "s-unit"
    S_INTEGER = "s-integer"
    NEITHER = "neither"


def _outside_part(n: int, primes) -> int:
    """|n| with every factor from the given primes divided out."""
    n = abs(n)
    for p in primes:
        while n % p == 0:
            n //= p
    return n


def s_membership(x, spec: SIntegerSpec) -> SMembership:
    """Classify x: S-integer (no outside-S denominator), S-unit (no
    outside-S prime at all), or neither.  Zero is an S-integer.

    Membership only depends on dividing out the primes of S, so huge
    values classify quickly; nothing is factored.
    """
    x = Fraction(x)
    if x == 0:
        return SMembership.S_INTEGER
    if _outside_part(x.denominator, spec.primes) != 1:
        return SMembership.NEITHER
    if _outside_part(x.numerator, spec.primes) != 1:
        return SMembership.S_INTEGER
    return SMembership.S_UNIT


def is_s_integer(x, spec: SIntegerSpec) -> bool:
    return s_membership(x, spec) in (SMembership.S_UNIT, SMembership.S_INTEGER)


# -- decay of |V(n)| at one place --------------------------------------------------


@dataclass(frozen=True)
class DecayReport:
    """Per-index ratios (-log^- |V(n)|_place) / n on a range.

    ``samples`` lists (n, ratio) for indices with a positive ratio;
    zeros of V inside the range are skipped and recorded.  The maximum
    ratio of an eventually-dominated sequence stays below any fixed
    epsilon once n is large; this report makes the claim inspectable.
    """

    place: Place
    max_ratio: LogSum
    argmax_n: int | None
    samples: tuple[tuple[int, LogSum], ...]
    skipped_zeros: tuple[int, ...]


def decay_check(
    v: LinearRecurrence, place: Place, n_lo: int, n_hi: int
) -> DecayReport:
    """Exact decay ratios of |V(n)| at a place over [n_lo, n_hi].

    Requires some root to satisfy |root|_place >= 1; otherwise the
    whole sequence tends to 0 at that place and the premise of the
    decay bound is violated.
    """
    if v.is_zero:
        raise ZeroInput("the zero sequence has no decay profile")
    if n_lo < 1 or n_hi < n_lo:
        raise ZeroInput("need 1 <= n_lo <= n_hi")
    if all(place_abs(root, place) < 1 for root in v.roots):
        raise HypothesisViolated(
            f"every root has |root| < 1 at place {place}; the decay "
            "premise needs at least one large root"
        )
    samples = []
    skipped = []
    best: LogSum | None = None
    best_n: int | None = None
    for n in range(n_lo, n_hi + 1):
        value = v.evaluate(n)
        if value == 0:
            skipped.append(n)
            continue
        if place.is_archimedean:
            size = abs(value)
            if size >= 1:
                continue
            ratio = LogSum.log_of(1 / size).scale(Fraction(1, n))
        else:
            val = valuation(value, place.prime)
            if val <= 0:
                continue
            ratio = LogSum({place.prime: Fraction(val, n)})
        samples.append((n, ratio))
        if best is None or ratio > best:
            best = ratio
            best_n = n
    if best is None:
        best = LogSum.zero()
    return DecayReport(
        place=place,
        max_ratio=best,
        argmax_n=best_n,
        samples=tuple(samples),
        skipped_zeros=tuple(skipped),
    )
