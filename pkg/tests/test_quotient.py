from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from recurquot.errors import DivisorZero, TorsionGroup
from recurquot.polys import UniPoly
from recurquot.quotient import (
    NoClearance,
    QuotientCertificate,
    SectionResult,
    cross_quotient,
    hadamard_quotient,
    polynomial_clearance,
    solve_on_sections,
    solve_with_torsion_fallback,
)
from recurquot.recurrences import (
    LinearRecurrence,
    constant,
    from_closed_form,
    geometric,
    polynomial,
)

F = Fraction


def mersenne(base=2):
    return from_closed_form([(F(base), F(1)), (F(1), F(-1))])


def test_hadamard_exact_division():
    u = mersenne(4)
    v = mersenne(2)
    q = hadamard_quotient(u, v)
    assert q == from_closed_form([(F(2), F(1)), (F(1), F(1))])
    for n in range(1, 8):
        assert q.evaluate(n) == u.evaluate(n) / v.evaluate(n)


def test_hadamard_higher_power():
    u = mersenne(8)
    v = mersenne(2)
    q = hadamard_quotient(u, v)
    assert q == from_closed_form([(F(4), F(1)), (F(2), F(1)), (F(1), F(1))])


def test_hadamard_refuses_coprime():
    u = from_closed_form([(F(2), F(1)), (F(1), F(1))])
    v = mersenne(2)
    assert hadamard_quotient(u, v) is None


def test_hadamard_zero_numerator():
    assert hadamard_quotient(LinearRecurrence(()), mersenne()).is_zero


def test_hadamard_zero_divisor():
    with pytest.raises(DivisorZero):
        hadamard_quotient(mersenne(), LinearRecurrence(()))


def test_hadamard_rational_coefficients():
    v = geometric(3, F(2, 5))
    u = geometric(6, F(4, 5))
    q = hadamard_quotient(u, v)
    assert q == geometric(2, F(2))


def test_hadamard_torsion_raises():
    u = from_closed_form([(F(2), F(1)), (F(-2), F(1))])
    with pytest.raises(TorsionGroup):
        hadamard_quotient(u, geometric(2))


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.tuples(st.sampled_from([F(2), F(3), F(5, 2)]),
                       st.integers(min_value=-3, max_value=3).filter(bool)),
             min_size=1, max_size=2),
    st.lists(st.tuples(st.sampled_from([F(2), F(3), F(5, 2)]),
                       st.integers(min_value=-3, max_value=3).filter(bool)),
             min_size=1, max_size=2),
)
def test_hadamard_recovers_constructed_factor(q_terms, v_terms):
    q = from_closed_form([(r, F(c)) for r, c in q_terms])
    v = from_closed_form([(r, F(c)) for r, c in v_terms])
    if q.is_zero or v.is_zero:
        return
    u = q * v
    got = hadamard_quotient(u, v)
    assert got == q


def test_clearance_polynomial_divisor():
    u = geometric(5)
    v = polynomial([F(0), F(1), F(1)])
    out = polynomial_clearance(u, v)
    assert isinstance(out, QuotientCertificate)
    assert out.clearing_poly == UniPoly([F(0), F(1), F(1)])
    assert out.quotient == u
    assert out.v_over_p == constant(1)
    assert out.min_denominator == 1


def test_clearance_shared_factor():
    # V = (n + 1) * (2^n - 1), U = 3^n * (2^n - 1): the common factor
    # cancels and the leftover n + 1 is clearable.
    shared = mersenne(2)
    u = geometric(3) * shared
    v = polynomial([F(1), F(1)]) * shared
    out = polynomial_clearance(u, v)
    assert isinstance(out, QuotientCertificate)
    assert out.clearing_poly == UniPoly([F(1), F(1)])
    assert out.quotient == geometric(3)
    for n in range(1, 7):
        p_n = out.clearing_poly(F(n))
        assert p_n * u.evaluate(n) == out.quotient.evaluate(n) * v.evaluate(n)


def test_clearance_refusal_names_witness():
    u = geometric(3)
    v = mersenne(2)
    out = polynomial_clearance(u, v)
    assert isinstance(out, NoClearance)
    assert out.reason == "divisor-not-polynomial"
    assert out.witness is not None
    assert not out.witness.is_polynomial
    assert "T1 - 1" in out.witness.render()


def test_clearance_certificate_identity_everywhere():
    u = mersenne(4) * polynomial([F(3)])
    v = mersenne(2) * polynomial([F(0), F(1)])
    out = polynomial_clearance(u, v)
    assert isinstance(out, QuotientCertificate)
    for n in range(1, 9):
        if v.evaluate(n) == 0:
            continue
        lhs = out.clearing_poly(F(n)) * u.evaluate(n) / v.evaluate(n)
        assert lhs == out.quotient.evaluate(n)
        assert v.evaluate(n) / out.clearing_poly(F(n)) == out.v_over_p.evaluate(n)


def test_clearance_min_denominator():
    u = geometric(2, F(1, 3))
    v = geometric(2)
    out = polynomial_clearance(u, v)
    assert isinstance(out, QuotientCertificate)
    assert out.quotient == constant(F(1, 3))
    assert out.min_denominator == 3


def test_cross_single_root_certificate():
    u = mersenne(3)
    v = from_closed_form([(F(2), UniPoly([F(0), F(2)]))])
    out = cross_quotient(u, v)
    assert isinstance(out, QuotientCertificate)
    assert out.clearing_poly == UniPoly([F(0), F(1)])
    assert out.v_over_p == geometric(2, F(2))
    for m in range(1, 5):
        for n in range(1, 5):
            lhs = out.clearing_poly(F(n)) * u.evaluate(m) / v.evaluate(n)
            assert lhs == out.quotient.evaluate(m, n)


def test_cross_multiple_roots_refused():
    out = cross_quotient(mersenne(3), mersenne(2))
    assert isinstance(out, NoClearance)
    assert out.reason == "multiple-roots"
    assert "finitely many" in out.detail


def test_cross_torsion_still_checked():
    with pytest.raises(TorsionGroup):
        cross_quotient(geometric(-2), geometric(2))


def test_sections_split_torsion():
    u = from_closed_form([(F(2), F(1)), (F(-2), F(1))])
    v = geometric(2)
    results = solve_on_sections(u, v, "hadamard")
    assert [r.offsets for r in results] == [(0,), (1,)]
    even, odd = results
    assert even.outcome == constant(2)
    assert odd.outcome.is_zero


def test_sections_divisor_vanishes():
    u = geometric(4)
    v = from_closed_form([(F(2), F(1)), (F(-2), F(1))])
    results = solve_on_sections(u, v, "hadamard")
    assert results[1].outcome == "divisor-vanishes"
    assert results[0].outcome == geometric(4, F(1, 2))


def test_sections_cross_offsets():
    results = solve_on_sections(geometric(3), geometric(2), "cross")
    assert [r.offsets for r in results] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert all(isinstance(r.outcome, QuotientCertificate) for r in results)


def test_fallback_passthrough():
    out = solve_with_torsion_fallback(mersenne(4), mersenne(2), "hadamard")
    assert out == from_closed_form([(F(2), F(1)), (F(1), F(1))])


def test_fallback_decimates_on_torsion():
    u = from_closed_form([(F(2), F(1)), (F(-2), F(1))])
    v = geometric(2)
    with pytest.raises(TorsionGroup):
        solve_with_torsion_fallback(u, v, "hadamard")
    results = solve_with_torsion_fallback(u, v, "hadamard", decimate=True)
    assert isinstance(results, list)
    assert all(isinstance(r, SectionResult) for r in results)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.tuples(st.sampled_from([F(2), F(3), F(1, 2)]),
                       st.integers(min_value=-2, max_value=2).filter(bool)),
             min_size=1, max_size=2),
    st.lists(st.integers(min_value=-3, max_value=3), min_size=1, max_size=3)
    .filter(lambda c: any(c)),
)
def test_clearance_identity_property(v_terms, p_coeffs):
    # U = V * polynomial guarantees clearance with P dividing that polynomial.
    v = from_closed_form([(r, F(c)) for r, c in v_terms])
    if v.is_zero:
        return
    p = polynomial([F(c) for c in p_coeffs])
    u = v * p
    out = polynomial_clearance(u, v)
    assert isinstance(out, QuotientCertificate)
    for n in range(1, 6):
        if v.evaluate(n) == 0:
            continue
        assert (
            out.clearing_poly(F(n)) * u.evaluate(n) / v.evaluate(n)
            == out.quotient.evaluate(n)
        )
