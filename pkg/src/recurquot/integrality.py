"""Grid searches for quasi-integral quotients and modular obstructions.

``integrality_search`` scans index pairs (m, n) for d * U(m)/V(n)
landing in the (S-)integers under a denominator policy, with an
optional totient mode that also tries m = phi(V(n)).
``obstruction_scan`` certifies the opposite: a prime p and a
progression of n along which p | V(n) always while p never divides
U(m), so no pair in that progression can be integral at all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadPrime, InputError, ZeroInput
from .factorization import euler_phi, is_probable_prime
from .heights import SIntegerSpec, is_s_integer
from .recurrences import LinearRecurrence


@dataclass(frozen=True)
class FixedDenominator:
    """Accept a pair iff d * U(m)/V(n) is integral for this fixed d."""

    d: int

    def __post_init__(self):
        if self.d < 1:
            raise InputError("the fixed denominator must be >= 1")


@dataclass(frozen=True)
class PolynomialDenominatorBound:
    """Accept iff the minimal clearing denominator is <= n^exponent.

    A polynomial bound on d keeps log d = O(log n), well inside any
    o(n) growth requirement.
    """

    exponent: int = 2

    def __post_init__(self):
        if self.exponent < 0:
            raise InputError("the exponent must be >= 0")


DPolicy = FixedDenominator | PolynomialDenominatorBound


@dataclass(frozen=True)
class SearchHit:
    """One accepted pair: d * U(m)/V(n) is an (S-)integer, d minimal."""

    m: int
    n: int
    d: int


def _stripped_denominator(x: Fraction, s_primes) -> int:
    """Denominator of x after removing all primes of S."""
    den = x.denominator
    for p in s_primes:
        while den % p == 0:
            den //= p
    return den


def integrality_search(
    u: LinearRecurrence,
    v: LinearRecurrence,
    m_max: int,
    n_max: int,
    policy: DPolicy,
    s_spec: SIntegerSpec | None = None,
    totient: bool = False,
    limit: int | None = None,
) -> list[SearchHit]:
    """All hits on the grid [1, m_max] x [1, n_max], sorted by (n, m, d).

    ``d`` in a hit is the minimal clearing denominator outside S.  With
    a FixedDenominator policy a pair is accepted iff that minimal d
    divides the fixed one; with PolynomialDenominatorBound iff it is at
    most n^exponent.  Totient mode additionally tries the pair
    (phi(V(n)), n) whenever V(n) is a positive integer, even when that
    index exceeds m_max; phi is computed by exact factorization, so a
    huge V(n) can raise FactorizationLimit.

    Every hit is re-verified through an independent S-membership check
    before it is returned.
    """
    if m_max < 1 or n_max < 1:
        raise InputError("grid bounds must be >= 1")
    s_primes = s_spec.sorted() if s_spec is not None else []
    u_values = {m: u.evaluate(m) for m in range(1, m_max + 1)}
    hits: set[SearchHit] = set()

    def consider(m: int, n: int, v_value: Fraction):
        u_value = u_values.get(m)
        if u_value is None:
            u_value = u.evaluate(m)
        ratio = u_value / v_value
        d_min = _stripped_denominator(ratio, s_primes)
        if isinstance(policy, FixedDenominator):
            accepted = policy.d % d_min == 0
        else:
            accepted = d_min <= n**policy.exponent
        if not accepted:
            return
        assert is_s_integer(ratio * d_min, SIntegerSpec(s_primes)), (
            "hit failed re-verification"
        )
        hits.add(SearchHit(m, n, d_min))

    for n in range(1, n_max + 1):
        v_value = v.evaluate(n)
        if v_value == 0:
            continue
        for m in range(1, m_max + 1):
            consider(m, n, v_value)
        if totient and v_value.denominator == 1 and v_value >= 1:
            phi = euler_phi(int(v_value), limit)
            consider(phi, n, v_value)
    return sorted(hits, key=lambda h: (h.n, h.m, h.d))


# -- modular obstruction certificates -------------------------------------------


@dataclass(frozen=True)
class ObstructionReport:
    """Outcome of a mod-p scan along the progression n = q*k + r.

    Certified means: p divides V(n) for every index n >= 1 in the
    progression while p never divides U(m) for m >= 1; both facts are
    verified over one full period of the sequences mod p, which is
    sound because coefficients have period p and unit roots have order
    dividing p - 1.  Certified implies d * U(m)/V(n) is never an
    integer for indices in the progression when p does not divide d.
    """

    certified: bool
    prime: int
    progression: tuple[int, int]
    period: int
    clearing_constants: tuple[int, int]
    failing_side: str | None = None
    failing_index: int | None = None

    @property
    def verdict(self) -> str:
        return "certified" if self.certified else "not-an-obstruction"


def _mod_p_terms(rec: LinearRecurrence, p: int) -> tuple[int, list[tuple[int, list[int]]]]:
    """Reduce a recurrence mod p; returns (clearing constant, terms).

    Roots and coefficients must be p-integral (no p in a denominator);
    the clearing constant is the coefficient-denominator lcm, reported
    so callers can see the reduction was denominator-free at p.  Roots
    divisible by p are allowed: those terms vanish mod p at every index
    >= 1, and the scan never evaluates index 0.
    """
    clearing = 1
    reduced = []
    for root, coeff in rec.terms:
        if root.denominator % p == 0:
            raise BadPrime(f"{p} divides the denominator of root {root}")
        for c in coeff.coeffs:
            if c.denominator % p == 0:
                raise BadPrime(f"{p} divides a coefficient denominator ({c})")
            clearing = clearing * c.denominator // math.gcd(clearing, c.denominator)
        root_mod = root.numerator % p * pow(root.denominator % p, -1, p) % p
        coeff_mod = [
            c.numerator % p * pow(c.denominator % p, -1, p) % p for c in coeff.coeffs
        ]
        reduced.append((root_mod, coeff_mod))
    return clearing, reduced


def _evaluate_mod(terms: list[tuple[int, list[int]]], k: int, p: int) -> int:
    """Value mod p at index k >= 1."""
    assert k >= 1
    total = 0
    for root_mod, coeff_mod in terms:
        if root_mod == 0:
            continue
        poly = 0
        for j, c in enumerate(coeff_mod):
            poly = (poly + c * pow(k % p, j, p)) % p
        total = (total + poly * pow(root_mod, k, p)) % p
    return total


def obstruction_scan(
    u: LinearRecurrence,
    v: LinearRecurrence,
    progression: tuple[int, int],
    p: int,
) -> ObstructionReport:
    """Certify p | V(n) on a progression while p never divides U(m).

    Indices run over m, n >= 1 (matching the search grid).  The scan
    window is one period p*(p-1) of both reductions, which suffices:
    polynomial parts repeat mod p and p-unit roots have multiplicative
    order dividing p - 1.
    """
    q, r = progression
    if q < 1 or not 0 <= r < q:
        raise InputError(f"need q >= 1 and 0 <= r < q, got {progression}")
    if not is_probable_prime(p):
        raise BadPrime(f"{p} is not prime")
    if u.is_zero or v.is_zero:
        raise ZeroInput("obstructions need non-zero sequences")
    clear_u, terms_u = _mod_p_terms(u, p)
    clear_v, terms_v = _mod_p_terms(v, p)
    if clear_u % p == 0 or clear_v % p == 0:
        raise BadPrime(f"{p} divides a clearing constant")
    period = p * (p - 1)
    first = r if r >= 1 else q
    steps = period // math.gcd(q, period)
    base = ObstructionReport(
        certified=True,
        prime=p,
        progression=(q, r),
        period=period,
        clearing_constants=(clear_u, clear_v),
    )
    for j in range(steps):
        n = first + q * j
        if _evaluate_mod(terms_v, n, p) != 0:
            return ObstructionReport(
                certified=False,
                prime=p,
                progression=(q, r),
                period=period,
                clearing_constants=(clear_u, clear_v),
                failing_side="divisor",
                failing_index=n,
            )
    for m in range(1, period + 1):
        if _evaluate_mod(terms_u, m, p) == 0:
            return ObstructionReport(
                certified=False,
                prime=p,
                progression=(q, r),
                period=period,
                clearing_constants=(clear_u, clear_v),
                failing_side="numerator",
                failing_index=m,
            )
    return base
