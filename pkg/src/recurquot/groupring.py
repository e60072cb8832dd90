"""Laurent-polynomial form of recurrences over a fixed multiplicative basis.

A recurrence whose roots lie in a torsion-free group with free basis
(g_1, .., g_t) corresponds to an element of Q[X, T_1^+-1, .., T_t^+-1]:
X stands for the index n and T_i for the sequence n -> g_i^n.  The
correspondence turns pointwise sequence product into ring product, so
divisibility questions about sequences become exact polynomial algebra.
Units of the Laurent ring are the monomials q * T^a with q in Q*.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import BasisMismatch, BothZero, ZeroInput
from .multiplicative import MultiplicativeBasis
from .polys import UniPoly
from .recurrences import LinearRecurrence, from_closed_form

# -- plain multivariate polynomials: dict[exponent tuple, Fraction] -----------


def _mv_lead(f: dict) -> tuple[tuple[int, ...], Fraction]:
    e = max(f)
    return e, f[e]


def _mv_scale(f: dict, c: Fraction) -> dict:
    if c == 0:
        return {}
    return {e: v * c for e, v in f.items()}


def _mv_mul(f: dict, g: dict) -> dict:
    out: dict[tuple[int, ...], Fraction] = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            key = tuple(a + b for a, b in zip(e1, e2))
            v = out.get(key, Fraction(0)) + c1 * c2
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def _mv_divide(f: dict, g: dict) -> dict | None:
    """Exact quotient f/g in the polynomial ring, or None.

    Single-divisor division in lex order: if g divides f the remainder
    process terminates empty, otherwise some leading term fails.
    """
    if not f:
        return {}
    q: dict[tuple[int, ...], Fraction] = {}
    r = dict(f)
    ge, gc = _mv_lead(g)
    while r:
        re, rc = _mv_lead(r)
        diff = tuple(a - b for a, b in zip(re, ge))
        if any(d < 0 for d in diff):
            return None
        c = rc / gc
        q[diff] = q.get(diff, Fraction(0)) + c
        for e2, c2 in g.items():
            key = tuple(a + b for a, b in zip(diff, e2))
            v = r.get(key, Fraction(0)) - c * c2
            if v:
                r[key] = v
            else:
                r.pop(key, None)
    return q


def _mv_monic(f: dict) -> dict:
    if not f:
        return {}
    _, c = _mv_lead(f)
    return _mv_scale(f, 1 / c)


def _split_main(f: dict) -> dict[int, dict]:
    """View a k-variable poly as main-variable map deg -> (k-1)-var coeff."""
    out: dict[int, dict] = {}
    for e, c in f.items():
        out.setdefault(e[0], {})[e[1:]] = c
    return out


def _join_main(parts: dict[int, dict]) -> dict:
    out = {}
    for d, sub in parts.items():
        for e, c in sub.items():
            out[(d,) + e] = c
    return out


def _list_gcd(polys: list[dict], k: int) -> dict:
    out = polys[0]
    for p in polys[1:]:
        out = _mv_gcd(out, p, k)
    return out


def _primitive(parts: dict[int, dict], k: int) -> dict[int, dict]:
    if not parts:
        return {}
    cont = _list_gcd(list(parts.values()), k)
    out = {}
    for d, c in parts.items():
        quo = _mv_divide(c, cont)
        assert quo is not None, "content failed to divide its own polynomial"
        out[d] = quo
    return out


def _prem(f_parts: dict[int, dict], g_parts: dict[int, dict]) -> dict[int, dict]:
    """Pseudo-remainder in the main variable (premultipliers dropped;
    callers take primitive parts, which absorbs them)."""
    dg = max(g_parts)
    lg = g_parts[dg]
    r = dict(f_parts)
    while r and max(r) >= dg:
        dr = max(r)
        lr = r[dr]
        nxt: dict[int, dict] = {d: _mv_mul(c, lg) for d, c in r.items()}
        for d, c in g_parts.items():
            key = d + dr - dg
            prod = _mv_mul(c, lr)
            cur = nxt.get(key, {})
            merged = dict(cur)
            for e, v in prod.items():
                w = merged.get(e, Fraction(0)) - v
                if w:
                    merged[e] = w
                else:
                    merged.pop(e, None)
            nxt[key] = merged
        r = {d: c for d, c in nxt.items() if c}
    return r


def _mv_gcd(f: dict, g: dict, k: int) -> dict:
    """Gcd in Q[v_0..v_{k-1}], normalized monic in lex order.

    Recursive content/primitive-part reduction with a primitive
    polynomial remainder sequence in the outermost variable.
    """
    if not f:
        return _mv_monic(g)
    if not g:
        return _mv_monic(f)
    if k == 0:
        return {(): Fraction(1)}
    fm = _split_main(f)
    gm = _split_main(g)
    f_cont = _list_gcd(list(fm.values()), k - 1)
    g_cont = _list_gcd(list(gm.values()), k - 1)
    cont = _mv_gcd(f_cont, g_cont, k - 1)
    fp = _primitive(fm, k - 1)
    gp = _primitive(gm, k - 1)
    while gp:
        rem = _prem(fp, gp)
        fp, gp = gp, _primitive(rem, k - 1)
    result = _join_main({d: _mv_mul(c, cont) for d, c in fp.items()})
    return _mv_monic(result)


# -- group-ring elements -------------------------------------------------------


class GroupRingElement:
    """Element of Q[X, T_1^+-1, .., T_t^+-1] over a multiplicative basis.

    Terms map (x_degree, t_exponents) to a non-zero rational; x_degree
    is >= 0, t_exponents are arbitrary integers of length basis.rank.
    As a sequence the element evaluates to
    sum(c * n^x * prod(g_i^(e_i * n))).
    """

    __slots__ = ("basis", "terms")

    def __init__(self, basis: MultiplicativeBasis, terms: dict):
        clean = {}
        for (x, te), c in terms.items():
            c = Fraction(c)
            if c == 0:
                continue
            te = tuple(int(v) for v in te)
            assert x >= 0 and len(te) == basis.rank
            clean[(int(x), te)] = c
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("GroupRingElement is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, basis) -> "GroupRingElement":
        return cls(basis, {})

    @classmethod
    def from_rational(cls, basis, c) -> "GroupRingElement":
        return cls(basis, {(0, (0,) * basis.rank): Fraction(c)})

    @classmethod
    def from_poly(cls, basis, poly: UniPoly) -> "GroupRingElement":
        zero_t = (0,) * basis.rank
        return cls(basis, {(d, zero_t): c for d, c in enumerate(poly.coeffs)})

    # -- queries ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_unit(self) -> bool:
        """Units are the single monomials q * T^a with no X part."""
        if len(self.terms) != 1:
            return False
        (x, _), = self.terms.keys()
        return x == 0

    @property
    def is_polynomial(self) -> bool:
        """True when no T variable appears (an element of Q[X])."""
        return all(all(e == 0 for e in te) for _, te in self.terms)

    def x_polynomial(self) -> UniPoly:
        assert self.is_polynomial
        coeffs: dict[int, Fraction] = {}
        for (x, _), c in self.terms.items():
            coeffs[x] = c
        top = max(coeffs, default=-1)
        return UniPoly([coeffs.get(d, Fraction(0)) for d in range(top + 1)])

    def _check(self, other: "GroupRingElement"):
        if self.basis is not other.basis and not self.basis.same_group(other.basis):
            raise BasisMismatch("elements live over different multiplicative bases")

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, Fraction(0)) + c
        return GroupRingElement(self.basis, out)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(self.basis, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GroupRingElement(
                self.basis, {k: c * other for k, c in self.terms.items()}
            )
        self._check(other)
        out: dict[tuple[int, tuple[int, ...]], Fraction] = {}
        for (x1, t1), c1 in self.terms.items():
            for (x2, t2), c2 in other.terms.items():
                key = (x1 + x2, tuple(a + b for a, b in zip(t1, t2)))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return GroupRingElement(self.basis, out)

    __rmul__ = __mul__

    # -- sequence view ----------------------------------------------------------

    def evaluate(self, n: int) -> Fraction:
        out = Fraction(0)
        cache: dict[tuple[int, ...], Fraction] = {}
        for (x, te), c in self.terms.items():
            if te not in cache:
                cache[te] = self.basis.reconstruct(te)
            out += c * Fraction(n) ** x * cache[te] ** n
        return out

    # -- normal forms -------------------------------------------------------------

    def min_t_exponents(self) -> tuple[int, ...]:
        assert self.terms
        rank = self.basis.rank
        return tuple(
            min(te[i] for _, te in self.terms) for i in range(rank)
        )

    def t_shift(self, shift: tuple[int, ...]) -> "GroupRingElement":
        """Multiply by the unit T^shift."""
        return GroupRingElement(
            self.basis,
            {
                (x, tuple(a + s for a, s in zip(te, shift))): c
                for (x, te), c in self.terms.items()
            },
        )

    def unit_normalized(self) -> "GroupRingElement":
        """Canonical associate: min T-exponents 0, lex-leading coefficient 1."""
        if self.is_zero:
            return self
        shift = tuple(-m for m in self.min_t_exponents())
        shifted = self.t_shift(shift)
        lead_key = max(shifted.terms)
        lead = shifted.terms[lead_key]
        return GroupRingElement(
            self.basis, {k: c / lead for k, c in shifted.terms.items()}
        )

    # -- rendering -------------------------------------------------------------------

    def render(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for (x, te), c in sorted(self.terms.items(), reverse=True):
            factors = []
            if x == 1:
                factors.append("X")
            elif x > 1:
                factors.append(f"X^{x}")
            for i, e in enumerate(te, start=1):
                if e == 1:
                    factors.append(f"T{i}")
                elif e != 0:
                    factors.append(f"T{i}^{e}")
            if not factors or abs(c) != 1:
                factors.insert(0, str(abs(c)))
            body = "*".join(factors)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.basis.same_group(other.basis) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self):
        return f"GroupRingElement({self.render()})"


# -- the correspondence ------------------------------------------------------------


def to_group_ring(u: LinearRecurrence, basis: MultiplicativeBasis) -> GroupRingElement:
    """Laurent form of a recurrence; every root must lie in the basis span.

    The defining property: the result evaluates to u(n) for every n.
    """
    terms: dict[tuple[int, tuple[int, ...]], Fraction] = {}
    for root, coeff in u.terms:
        te = basis.express(root)
        for d, c in enumerate(coeff.coeffs):
            if c != 0:
                terms[(d, te)] = terms.get((d, te), Fraction(0)) + c
    return GroupRingElement(basis, terms)


def from_group_ring(f: GroupRingElement) -> LinearRecurrence:
    """Inverse of to_group_ring: collect X-coefficients per T-monomial."""
    groups: dict[tuple[int, ...], dict[int, Fraction]] = {}
    for (x, te), c in f.terms.items():
        groups.setdefault(te, {})[x] = c
    pairs = []
    for te, coeffs in groups.items():
        root = f.basis.reconstruct(te)
        top = max(coeffs)
        poly = UniPoly([coeffs.get(d, Fraction(0)) for d in range(top + 1)])
        pairs.append((root, poly))
    return from_closed_form(pairs)


# -- Laurent gcd and division --------------------------------------------------------


def _as_mv(f: GroupRingElement) -> tuple[dict, tuple[int, ...]]:
    """Shift T-exponents to be >= 0; return the plain poly and the shift used."""
    shift = tuple(-m for m in f.min_t_exponents())
    shifted = f.t_shift(shift)
    return {(x,) + te: c for (x, te), c in shifted.terms.items()}, shift


def laurent_gcd(f: GroupRingElement, g: GroupRingElement) -> GroupRingElement:
    """Gcd up to units, returned unit-normalized.

    The T variables are units, so gcds are computed in the polynomial
    ring after clearing negative exponents; no T_i divides either
    cleared input, hence none divides the gcd, which is therefore
    already in normal position.
    """
    f._check(g)
    if f.is_zero and g.is_zero:
        raise BothZero("gcd(0, 0) is undefined")
    if f.is_zero:
        return g.unit_normalized()
    if g.is_zero:
        return f.unit_normalized()
    fd, _ = _as_mv(f)
    gd, _ = _as_mv(g)
    k = 1 + f.basis.rank
    result = _mv_gcd(fd, gd, k)
    element = GroupRingElement(
        f.basis, {(e[0], e[1:]): c for e, c in result.items()}
    )
    return element.unit_normalized()


def laurent_divide(f: GroupRingElement, g: GroupRingElement) -> GroupRingElement | None:
    """Exact quotient f/g in the Laurent ring, or None if g does not divide f."""
    f._check(g)
    if g.is_zero:
        raise ZeroInput("division by the zero element")
    if f.is_zero:
        return GroupRingElement.zero(f.basis)
    fd, f_shift = _as_mv(f)
    gd, g_shift = _as_mv(g)
    quo = _mv_divide(fd, gd)
    if quo is None:
        return None
    back = tuple(b - a for a, b in zip(f_shift, g_shift))
    return GroupRingElement(
        f.basis, {(e[0], tuple(e[1:])): c for e, c in quo.items()}
    ).t_shift(back)
