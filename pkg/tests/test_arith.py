import random

import pytest

from excover.arith import (
    DEFAULT_LIMIT,
    Fraction,
    UnderflowError,
    frac_sub_unit,
    gcd,
    lcm_checked,
    smallest_prime_factor,
)


def test_gcd_textbook_values():
    assert gcd(12, 18) == 6
    assert gcd(7, 1) == 1
    assert gcd(0, 5) == 5
    assert gcd(5, 0) == 5


def test_gcd_both_zero_is_domain_error():
    with pytest.raises(ValueError):
        gcd(0, 0)


def test_gcd_rejects_negative():
    with pytest.raises(ValueError):
        gcd(-4, 6)


def test_gcd_divides_both():
    rng = random.Random(1)
    for _ in range(300):
        a, b = rng.randrange(1, 10**6), rng.randrange(0, 10**6)
        g = gcd(a, b)
        assert a % g == 0 and (b == 0 or b % g == 0)


def test_lcm_checked_values():
    assert lcm_checked(4, 6) == 12
    assert lcm_checked(8, 8) == 8


def test_lcm_checked_overflow_on_64_bit_backing():
    with pytest.raises(OverflowError):
        lcm_checked(2**63, 3, limit=2**63 - 1)
    # the default 128-bit limit accommodates the same product
    assert lcm_checked(2**63, 3) == 3 * 2**63
    with pytest.raises(OverflowError):
        lcm_checked(2**127, 5)
    assert lcm_checked(2**127, 5, limit=None) == 5 * 2**127


def test_lcm_gcd_product_identity():
    rng = random.Random(2)
    for _ in range(300):
        a, b = rng.randrange(1, 10**5), rng.randrange(1, 10**5)
        assert lcm_checked(a, b, limit=None) * gcd(a, b) == a * b


def test_lcm_checked_rejects_nonpositive():
    with pytest.raises(ValueError):
        lcm_checked(0, 3)


def test_smallest_prime_factor():
    assert smallest_prime_factor(9) == 3
    assert smallest_prime_factor(10) == 2
    assert smallest_prime_factor(17) == 17
    with pytest.raises(ValueError):
        smallest_prime_factor(1)


def test_smallest_prime_factor_against_trial_division():
    def oracle(m):
        for d in range(2, m + 1):
            if m % d == 0:
                return d

    rng = random.Random(3)
    for _ in range(200):
        m = rng.randrange(2, 5000)
        assert smallest_prime_factor(m) == oracle(m)


def test_fraction_reduction_invariant():
    f = Fraction(6, 8)
    assert (f.numerator, f.denominator) == (3, 4)
    assert Fraction(0, 7) == Fraction(0, 3)
    rng = random.Random(4)
    for _ in range(300):
        f = Fraction(rng.randrange(0, 1000), rng.randrange(1, 1000))
        assert gcd(f.numerator, f.denominator) == 1 or f.numerator == 0


def test_fraction_is_nonnegative_and_immutable():
    with pytest.raises(UnderflowError):
        Fraction(-1, 2)
    f = Fraction(1, 2)
    with pytest.raises(AttributeError):
        f.numerator = 7
    with pytest.raises(UnderflowError):
        Fraction(1, 3) - Fraction(1, 2)


def test_fraction_ordering_and_arithmetic():
    assert Fraction(1, 3) + Fraction(1, 6) == Fraction(1, 2)
    assert Fraction(1, 2) < Fraction(2, 3)
    assert Fraction(3, 6) == Fraction(1, 2)
    assert Fraction(5, 5) == 1
    assert str(Fraction(7, 12)) == "7/12"


def test_frac_sub_unit_examples():
    assert frac_sub_unit(Fraction(1, 1), 3) == Fraction(2, 3)
    assert frac_sub_unit(Fraction(2, 3), 6) == Fraction(1, 2)
    with pytest.raises(UnderflowError):
        frac_sub_unit(Fraction(1, 6), 5)


def test_frac_sub_unit_roundtrip_is_exact():
    rng = random.Random(5)
    for _ in range(300):
        f = Fraction(rng.randrange(0, 500), rng.randrange(1, 500))
        m = rng.randrange(1, 400)
        try:
            g = frac_sub_unit(f, m)
        except UnderflowError:
            assert f < Fraction(1, m)
            continue
        back = g + Fraction(1, m)
        assert back == f
        assert (back.numerator, back.denominator) == (f.numerator, f.denominator)


def test_default_limit_is_128_bit():
    assert DEFAULT_LIMIT == (1 << 127) - 1
