"""Dense univariate and sparse bivariate polynomials over exact rationals."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .errors import BothZero, ZeroInput
from .factorization import divisors


def _fr(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class UniPoly:
    """Univariate polynomial over Q, dense coefficient tuple, low degree first.

    The zero polynomial is the empty tuple and reports degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_fr(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls(())

    @classmethod
    def one(cls) -> "UniPoly":
        return cls((1,))

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls((c,))

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, degree: int, c=1) -> "UniPoly":
        return cls((0,) * degree + (c,))

    # -- basic queries -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            raise ZeroInput("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, d: int) -> Fraction:
        if 0 <= d < len(self.coeffs):
            return self.coeffs[d]
        return Fraction(0)

    def __call__(self, n) -> Fraction:
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * n + c
        return out

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        merged = list(a)
        for i, c in enumerate(b):
            merged[i] += c
        return UniPoly(merged)

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def scale(self, c) -> "UniPoly":
        c = _fr(c)
        return UniPoly(tuple(a * c for a in self.coeffs))

    def __pow__(self, k: int) -> "UniPoly":
        assert k >= 0
        out = UniPoly.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other: "UniPoly"):
        if other.is_zero:
            raise ZeroInput("division by the zero polynomial")
        q = [Fraction(0)] * max(len(self.coeffs) - len(other.coeffs) + 1, 1)
        r = list(self.coeffs)
        d = other.degree
        inv = 1 / other.lc
        while len(r) - 1 >= d and any(c != 0 for c in r):
            while r and r[-1] == 0:
                r.pop()
            if len(r) - 1 < d:
                break
            c = r[-1] * inv
            shift = len(r) - 1 - d
            q[shift] = c
            for i, b in enumerate(other.coeffs):
                r[shift + i] -= c * b
            r.pop()
        return UniPoly(q), UniPoly(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "UniPoly") -> bool:
        if self.is_zero:
            return other.is_zero
        return (other % self).is_zero

    def monic(self) -> "UniPoly":
        if self.is_zero:
            return self
        return self.scale(1 / self.lc)

    def derivative(self) -> "UniPoly":
        return UniPoly(tuple(c * i for i, c in enumerate(self.coeffs) if i))

    def shift_compose(self, q, r) -> "UniPoly":
        """self(q*X + r) by Horner over the polynomial ring."""
        lin = UniPoly((r, q))
        out = UniPoly.zero()
        for c in reversed(self.coeffs):
            out = out * lin + UniPoly.constant(c)
        return out

    # -- number-theoretic helpers ---------------------------------------

    def denominator_lcm(self) -> int:
        out = 1
        for c in self.coeffs:
            out = out * c.denominator // math.gcd(out, c.denominator)
        return out

    def integer_cleared(self) -> tuple[int, list[int]]:
        """(d, ints) with d >= 1 minimal such that d*self has integer coeffs."""
        d = self.denominator_lcm()
        return d, [int(c * d) for c in self.coeffs]

    def cauchy_root_bound(self) -> Fraction:
        """1 + max |a_i / a_d|: every complex root has absolute value below it."""
        if self.degree < 1:
            return Fraction(1)
        lead = abs(self.lc)
        return 1 + max(abs(c) / lead for c in self.coeffs[:-1])

    def rational_roots(self, limit: int | None = None) -> list[tuple[Fraction, int]]:
        """All rational roots with multiplicity, sorted by value."""
        if self.is_zero:
            raise ZeroInput("the zero polynomial vanishes everywhere")
        poly = self
        found: dict[Fraction, int] = {}
        low = 0
        while low <= poly.degree and poly.coeffs[low] == 0:
            low += 1
        if low:
            found[Fraction(0)] = low
            poly = UniPoly(poly.coeffs[low:])
        while poly.degree >= 1:
            _, ints = poly.integer_cleared()
            g = 0
            for c in ints:
                g = math.gcd(g, c)
            ints = [c // g for c in ints]
            a0, ad = abs(ints[0]), abs(ints[-1])
            hit = None
            for p, q in itertools.product(divisors(a0, limit), divisors(ad, limit)):
                if math.gcd(p, q) != 1:
                    continue
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if poly(cand) == 0:
                        hit = cand
                        break
                if hit is not None:
                    break
            if hit is None:
                break
            quo, rem = divmod(poly, UniPoly((-hit, 1)))
            assert rem.is_zero
            found[hit] = found.get(hit, 0) + 1
            poly = quo
        return sorted(found.items())

    # -- rendering and comparison ---------------------------------------

    def render(self, var: str = "X") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for d in range(self.degree, -1, -1):
            c = self.coeffs[d]
            if c == 0:
                continue
            if d == 0:
                body = str(abs(c))
            else:
                head = var if d == 1 else f"{var}^{d}"
                body = head if abs(c) == 1 else f"{abs(c)}*{head}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({self.render()})"


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over Q; gcd(0, 0) raises BothZero."""
    if a.is_zero and b.is_zero:
        raise BothZero("gcd(0, 0) is undefined")
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def poly_affine_compose(u: UniPoly, q, r) -> UniPoly:
    """u(q*X + r) as an exact polynomial."""
    return u.shift_compose(_fr(q), _fr(r))


class BiPoly:
    """Sparse polynomial in two variables over Q, keyed by (deg_first, deg_second)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for key, c in (terms or {}).items():
            c = _fr(c)
            if c != 0:
                clean[(int(key[0]), int(key[1]))] = c
        object.__setattr__(self, "terms", dict(clean))

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    @classmethod
    def zero(cls) -> "BiPoly":
        return cls({})

    @classmethod
    def from_unipoly(cls, u: UniPoly, var_index: int) -> "BiPoly":
        assert var_index in (0, 1)
        out = {}
        for d, c in enumerate(u.coeffs):
            if c != 0:
                out[(d, 0) if var_index == 0 else (0, d)] = c
        return cls(out)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return BiPoly(out)

    def __neg__(self) -> "BiPoly":
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in other.terms.items():
                key = (i + k, j + l)
                out[key] = out.get(key, 0) + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def scale(self, c) -> "BiPoly":
        c = _fr(c)
        return BiPoly({k: v * c for k, v in self.terms.items()})

    def __call__(self, m, n) -> Fraction:
        out = Fraction(0)
        for (i, j), c in self.terms.items():
            out += c * Fraction(m) ** i * Fraction(n) ** j
        return out

    def render(self, vars: tuple[str, str] = ("M", "N")) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self.terms.items(), reverse=True):
            factors = []
            for var, d in ((vars[0], i), (vars[1], j)):
                if d == 1:
                    factors.append(var)
                elif d > 1:
                    factors.append(f"{var}^{d}")
            if not factors or abs(c) != 1:
                factors.insert(0, str(abs(c)))
            body = "*".join(factors)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self):
        return f"BiPoly({self.render()})"
