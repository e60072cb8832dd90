"""Exact integer and rational factorization.

Trial division over a fixed sieve, deterministic Miller-Rabin, and
Brent's cycle variant of Pollard rho.  Every public function takes an
optional ``limit``: a prime factor larger than the limit (or a cofactor
the splitter cannot crack within its effort budget) raises
``FactorizationLimit`` instead of silently looping.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import FactorizationLimit, ZeroInput

DEFAULT_FACTOR_LIMIT = 2**64

_TRIAL_BOUND = 10_000


def _sieve(bound: int) -> list[int]:
    flags = bytearray([1]) * (bound + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(bound) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
    return [p for p in range(bound + 1) if flags[p]]


_TRIAL_PRIMES = _sieve(_TRIAL_BOUND)

# Sufficient witness set for every n < 3.3 * 10**24 (covers the default limit).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_probable_prime(n: int) -> bool:
    """Deterministic below 3.3e24, Miller-Rabin with fixed bases above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


def _brent_rho(n: int, c: int, max_steps: int) -> int | None:
    """One deterministic Brent round; returns a non-trivial factor or None."""
    y, r, q = 2, 1, 1
    g = 1
    x = ys = y
    steps = 0
    while g == 1 and steps < max_steps:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(128, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += 128
            steps += 128
        r *= 2
    if g == n:
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
    if 1 < g < n:
        return g
    return None


_RHO_MAX_STEPS = 1 << 21
_RHO_ATTEMPTS = 24


def _split(n: int, limit: int) -> int:
    """Non-trivial factor of an odd composite n, or FactorizationLimit.

    Rho finds a prime factor p in about sqrt(p) iterations, so the effort
    spent per attempt scales with sqrt(limit): factors inside the cap are
    found quickly, and a cofactor whose factors all exceed the cap fails
    fast instead of exhausting the full budget.
    """
    steps = min(_RHO_MAX_STEPS, max(2048, 8 * math.isqrt(limit)))
    for c in range(1, _RHO_ATTEMPTS + 1):
        d = _brent_rho(n, c, steps)
        if d is not None:
            return d
    raise FactorizationLimit(n, limit)


def factor_int(n: int, limit: int | None = None) -> dict[int, int]:
    """Factor n >= 1 into {prime: exponent}; 1 maps to {}."""
    if limit is None:
        limit = DEFAULT_FACTOR_LIMIT
    if n < 1:
        raise ZeroInput(f"factor_int needs n >= 1, got {n}")
    out: dict[int, int] = {}
    for p in _TRIAL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if is_probable_prime(m):
            if m > limit:
                raise FactorizationLimit(m, limit)
            out[m] = out.get(m, 0) + 1
            continue
        d = _split(m, limit)
        stack.append(d)
        stack.append(m // d)
    return out


class FactoredRational:
    """A non-zero rational as sign * prod(p^e) with e in Z.

    Invariants: sign in {1, -1}; primes distinct; reconstructing the
    product returns the original value exactly.
    """

    __slots__ = ("sign", "exponents")

    def __init__(self, sign: int, exponents: dict[int, int]):
        assert sign in (1, -1)
        self.sign = sign
        self.exponents = {p: e for p, e in sorted(exponents.items()) if e != 0}

    def value(self) -> Fraction:
        out = Fraction(self.sign)
        for p, e in self.exponents.items():
            out *= Fraction(p) ** e
        return out

    def primes(self) -> tuple[int, ...]:
        return tuple(self.exponents)

    def __eq__(self, other):
        if not isinstance(other, FactoredRational):
            return NotImplemented
        return self.sign == other.sign and self.exponents == other.exponents

    def __hash__(self):
        return hash((self.sign, tuple(self.exponents.items())))

    def __repr__(self):
        if not self.exponents:
            return f"FactoredRational({self.sign})"
        body = " * ".join(f"{p}^{e}" for p, e in self.exponents.items())
        lead = "-" if self.sign < 0 else ""
        return f"FactoredRational({lead}{body})"


def factor_rational(x: Fraction | int, limit: int | None = None) -> FactoredRational:
    """Factor a non-zero rational; denominator primes get negative exponents."""
    x = Fraction(x)
    if x == 0:
        raise ZeroInput("cannot factor zero")
    sign = 1 if x > 0 else -1
    num = factor_int(abs(x.numerator), limit)
    den = factor_int(x.denominator, limit)
    exps = dict(num)
    for p, e in den.items():
        exps[p] = exps.get(p, 0) - e
    return FactoredRational(sign, exps)


def euler_phi(n: int, limit: int | None = None) -> int:
    """Euler's totient of n >= 1 via factorization."""
    if n < 1:
        raise ZeroInput(f"euler_phi needs n >= 1, got {n}")
    out = n
    for p in factor_int(n, limit):
        out = out // p * (p - 1)
    return out


def divisors(n: int, limit: int | None = None) -> list[int]:
    """Sorted positive divisors of n >= 1."""
    if n < 1:
        raise ZeroInput(f"divisors needs n >= 1, got {n}")
    out = [1]
    for p, e in factor_int(n, limit).items():
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)
