"""Oracle and property tests for the cyclotomic scalar field."""

import random
from fractions import Fraction

import pytest

from colorenv.errors import DivisionByZero, RootOrderMismatch
from colorenv.scalars import (
    CycScalar,
    cyc_add,
    cyc_inv,
    cyc_mul,
    cyclotomic_polynomial,
    euler_phi,
    format_scalar,
    parse_scalar,
    root_of_unity,
)


def test_cyclotomic_polynomials_frozen():
    # Frozen expected values, hand-checked from the recursive construction.
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_euler_phi_small():
    assert [euler_phi(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]


def test_add_rationals():
    half = CycScalar.from_rational(1, Fraction(1, 2))
    assert cyc_add(half, half) == CycScalar.one(1)


def test_add_zeta3_powers():
    # zeta_3 + zeta_3^2 = -1 since 1 + zeta + zeta^2 = 0
    z = root_of_unity(3, 1)
    z2 = root_of_unity(3, 2)
    assert cyc_add(z, z2) == CycScalar.from_rational(3, -1)


def test_add_identity():
    x = root_of_unity(5, 3) + 7
    assert cyc_add(x, CycScalar.zero(5)) == x


def test_mul_zeta4_squared():
    z = root_of_unity(4, 1)
    assert cyc_mul(z, z) == CycScalar.from_rational(4, -1)


def test_mul_one_identity():
    x = root_of_unity(12, 5) - 3
    assert cyc_mul(x, CycScalar.one(12)) == x


def test_mul_zeta6_inverse_powers():
    assert cyc_mul(root_of_unity(6, 1), root_of_unity(6, 5)) == CycScalar.one(6)


def test_inv_rational():
    assert cyc_inv(CycScalar.from_rational(1, 2)) == CycScalar.from_rational(1, Fraction(1, 2))


def test_inv_root_negates_exponent():
    for n in (3, 4, 5, 6, 8, 12):
        for k in range(1, n):
            assert cyc_inv(root_of_unity(n, k)) == root_of_unity(n, n - k)


def test_inv_one_plus_zeta3():
    # Frozen: inv(1 + zeta_3) = -zeta_3, since (1+z)(-z) = -z - z^2 = 1.
    a = CycScalar.one(3) + root_of_unity(3, 1)
    inv = cyc_inv(a)
    assert inv == -root_of_unity(3, 1)
    assert cyc_mul(a, inv) == CycScalar.one(3)


def test_inv_zero_raises():
    with pytest.raises(DivisionByZero):
        cyc_inv(CycScalar.zero(6))


def test_root_order_mismatch():
    with pytest.raises(RootOrderMismatch):
        cyc_add(root_of_unity(3, 1), root_of_unity(6, 2))


def test_root_of_unity_examples():
    assert root_of_unity(2, 1) == CycScalar.from_rational(2, -1)
    assert root_of_unity(1, 0) == CycScalar.one(1)
    assert root_of_unity(3, 4) == root_of_unity(3, 1)


def test_zeta_n_to_the_n_is_one():
    for n in range(1, 13):
        z = root_of_unity(n, 1)
        assert z ** n == CycScalar.one(n)


def test_prime_power_sums_vanish():
    for p in (2, 3, 5, 7, 11):
        total = CycScalar.zero(p)
        for i in range(p):
            total = total + root_of_unity(p, i)
        assert total.is_zero()


def _random_scalar(rng, n):
    phi = euler_phi(n)
    return CycScalar(n, [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(phi)])


@pytest.mark.parametrize("n", [1, 2, 3, 6, 12])
def test_field_axioms_random(n):
    rng = random.Random(20260822 + n)
    for _ in range(40):
        a, b, c = (_random_scalar(rng, n) for _ in range(3))
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if not a.is_zero():
            assert a * cyc_inv(a) == CycScalar.one(n)


def test_canonical_form_idempotent():
    rng = random.Random(7)
    for n in (3, 8, 12):
        for _ in range(20):
            a = _random_scalar(rng, n)
            again = CycScalar(a.root_order, a.coeffs)
            assert again.coeffs == a.coeffs


def test_parse_format_round_trip():
    rng = random.Random(99)
    for n in (1, 2, 5, 12):
        for _ in range(25):
            a = _random_scalar(rng, n)
            assert parse_scalar(format_scalar(a), n) == a


def test_parse_examples():
    assert parse_scalar("1/2", 1) == CycScalar.from_rational(1, Fraction(1, 2))
    got = parse_scalar("1/2*z^1 + -1/2*z^2", 3)
    want = (root_of_unity(3, 1) - root_of_unity(3, 2)) / 2
    assert got == want
    assert parse_scalar("z^2", 5) == root_of_unity(5, 2)


def test_parse_rejects_garbage():
    for bad in ("", "1..2", "z^", "2*w^3", "1/2 * z", "+"):
        with pytest.raises(ValueError):
            parse_scalar(bad, 6)


def test_format_examples():
    assert format_scalar(CycScalar.from_rational(1, Fraction(-3, 4))) == "-3/4"
    assert format_scalar(CycScalar.from_rational(1, 5)) == "5"
    assert format_scalar(root_of_unity(3, 1)) == "1*z^1"
