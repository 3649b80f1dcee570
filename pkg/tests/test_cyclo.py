import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mckatz.cyclo import (
    CycloScalar,
    RootOfUnity,
    conjugate,
    euler_phi,
    field_arith,
    format_rational,
    parse_rational,
    real_sign,
    root_to_scalar,
)
from mckatz.errors import ConductorMismatch, NotReal


def z(n, k):
    return CycloScalar.zeta(n, k)


# -- root_to_scalar -----------------------------------------------------------


def test_root_to_scalar_identity():
    assert root_to_scalar(RootOfUnity(Fraction(0)), 60) == 1


def test_root_to_scalar_minus_one():
    assert root_to_scalar(RootOfUnity(Fraction(1, 2)), 60) == -1


def test_zeta5_fourth_power_in_power_basis():
    s = root_to_scalar(RootOfUnity(Fraction(4, 5)), 5)
    assert s.conductor == 5
    assert s.coeffs == (-1, -1, -1, -1)


def test_root_to_scalar_conductor_mismatch():
    with pytest.raises(ConductorMismatch):
        root_to_scalar(RootOfUnity(Fraction(1, 7)), 60)


def test_root_of_unity_normalizes_mod_one():
    assert RootOfUnity(Fraction(-1, 3)).exponent == Fraction(2, 3)
    assert RootOfUnity(Fraction(7, 6)).order == 6
    assert RootOfUnity.parse("5/4") == RootOfUnity(Fraction(1, 4))


# -- arithmetic ---------------------------------------------------------------


def test_minus_one_squared():
    assert z(60, 30) * z(60, 30) == 1


def test_golden_ratio_relation():
    x = z(5, 1) + z(5, 4)
    assert x * x + x == 1


def test_inverse_of_root_of_unity():
    for k in (1, 7, 13, 59):
        assert z(60, k).inverse() == z(60, 60 - k)


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        CycloScalar.from_rational(0, 60).inverse()


def test_field_arith_dispatch():
    a, b = z(60, 7), z(60, 11) + 3
    assert field_arith("add", a, b) == a + b
    assert field_arith("sub", a, b) == a - b
    assert field_arith("mul", a, b) == a * b
    assert field_arith("neg", a) == -a
    assert field_arith("inv", b) * b == 1


def test_auto_lift_to_lcm():
    s = z(4, 1) + z(5, 1)
    assert s.conductor == 20
    assert s == z(20, 5) + z(20, 4)


def test_coefficient_vector_length():
    for n in (1, 3, 5, 12, 60):
        assert len(CycloScalar.from_rational(Fraction(2, 3), n).coeffs) == euler_phi(n)


# -- conjugation and signs ----------------------------------------------------


def test_conjugate_examples():
    assert conjugate(CycloScalar.from_rational(1, 60)) == 1
    assert conjugate(z(60, 1)) == z(60, 59)
    x = z(5, 1) + z(5, 4)
    assert conjugate(x) == x


def test_real_sign_examples():
    assert real_sign(CycloScalar.from_rational(1, 60)) == 1
    assert real_sign(z(5, 1) + z(5, 4)) == 1
    assert real_sign(z(5, 2) + z(5, 3)) == -1
    assert real_sign(CycloScalar.from_rational(0, 60)) == 0


def test_real_sign_rejects_non_real():
    with pytest.raises(NotReal):
        real_sign(z(60, 1))


def test_real_sign_tiny_value():
    # 2cos(6 deg) = 1.989043..., so the rational approximant leaves a small margin
    x = z(60, 1) + z(60, 59) - Fraction(1989, 1000)
    assert real_sign(x) == 1
    assert real_sign(x - Fraction(1, 10000)) == -1


def test_subfield_and_minimal_conductor():
    x = z(60, 12) + z(60, 48)
    assert x.in_subfield(5)
    assert not x.in_subfield(3)
    assert x.minimal_conductor() == 5
    assert CycloScalar.from_rational(3, 60).minimal_conductor() == 1


def test_json_round_trip():
    x = z(60, 7) * 3 - Fraction(2, 5)
    assert CycloScalar.from_json(x.to_json()) == x
    assert CycloScalar.from_json("3/4") == Fraction(3, 4)
    with pytest.raises(ValueError):
        CycloScalar.from_json({"conductor": 5, "coeffs": ["1"]})


def test_rational_text():
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    assert format_rational(Fraction(4, 2)) == "2"
    assert parse_rational(" -3/6 ") == Fraction(-1, 2)


# -- properties against floating point evaluation -----------------------------

coeffs = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=16, max_size=16)


def scalar(cs):
    return CycloScalar(60, cs)


def close(a: complex, b: complex) -> bool:
    return abs(a - b) < 1e-6 * (1 + abs(b))


@settings(max_examples=60, deadline=None)
@given(coeffs, coeffs)
def test_arithmetic_matches_complex_embedding(ca, cb):
    a, b = scalar(ca), scalar(cb)
    assert close((a + b).to_complex(), a.to_complex() + b.to_complex())
    assert close((a * b).to_complex(), a.to_complex() * b.to_complex())
    assert close(conjugate(a).to_complex(), a.to_complex().conjugate())
    if not a.is_zero():
        assert a * a.inverse() == 1


@settings(max_examples=40, deadline=None)
@given(coeffs, coeffs)
def test_conjugation_is_ring_automorphism(ca, cb):
    a, b = scalar(ca), scalar(cb)
    assert conjugate(conjugate(a)) == a
    assert conjugate(a * b) == conjugate(a) * conjugate(b)
    assert conjugate(a + b) == conjugate(a) + conjugate(b)


@settings(max_examples=40, deadline=None)
@given(coeffs)
def test_norm_is_positive(ca):
    a = scalar(ca)
    if a.is_zero():
        return
    assert real_sign(a * conjugate(a)) == 1


@settings(max_examples=30, deadline=None)
@given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5), min_size=4, max_size=4),
       st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=5), min_size=4, max_size=4))
def test_base_change_commutes_with_arithmetic(ca, cb):
    a, b = CycloScalar(5, ca), CycloScalar(5, cb)
    assert (a * b).lift(60) == a.lift(60) * b.lift(60)
    assert (a - b).lift(60) == a.lift(60) - b.lift(60)


@pytest.mark.parametrize("k", [1, 7, 11, 13])
def test_galois_action_on_zeta(k):
    assert z(60, 1).galois(k) == z(60, k)
    x = z(60, 3) * 2 + z(60, 10)
    assert close(x.galois(k).to_complex(),
                 2 * cmath.exp(2j * cmath.pi * 3 * k / 60) + cmath.exp(2j * cmath.pi * 10 * k / 60))
