import pytest
from hypothesis import given, strategies as st

from qudit_compiler.field import PrimeField, fraction_mod, inv_mod, is_prime, parse_scalar

PRIMES = [5, 7, 11, 13]


def test_scalar_examples():
    F5, F7 = PrimeField(5), PrimeField(7)
    assert (F5(3) + F5(4)).value == 2
    assert F5(-1).cube() == F5(4)
    assert F7(6) * F7(6) == 1
    assert F5(1).inv() == 1
    assert F5(6).inv() == 1
    assert F5(24).inv().value == 4


def test_fraction_examples():
    assert fraction_mod(1, 6, 7) == 6
    assert fraction_mod(1, 24, 5) == 4
    assert fraction_mod(-1, 3, 5) == 3
    assert PrimeField(7).fraction(1, 6).value == 6
    assert parse_scalar("-1/3", 5) == 3
    assert parse_scalar("-1", 7) == 6


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        inv_mod(0, 5)
    with pytest.raises(ZeroDivisionError):
        PrimeField(5)(0).inv()
    with pytest.raises(ZeroDivisionError):
        fraction_mod(1, 10, 5)


@pytest.mark.parametrize("d", [2, 3, 4, 9, 15, 1 << 16, 65537])
def test_bad_moduli(d):
    with pytest.raises(ValueError):
        PrimeField(d)


def test_modulus_mismatch():
    with pytest.raises(ValueError):
        PrimeField(5)(1) + PrimeField(7)(1)


@pytest.mark.parametrize("d", PRIMES)
def test_inverse_exhaustive(d):
    for a in range(1, d):
        assert a * inv_mod(a, d) % d == 1


@given(st.sampled_from(PRIMES + [65521]), st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_fraction_times_denominator(d, p, q):
    if q % d == 0:
        return
    assert fraction_mod(p, q, d) * q % d == p % d


@pytest.mark.parametrize("d", PRIMES)
def test_cube_bijective_iff_not_1_mod_3(d):
    F = PrimeField(d)
    image = {x.cube().value for x in F.elements()}
    assert (len(image) == d) == (d % 3 != 1)
    assert F.cube_is_bijective == (d % 3 != 1)


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
