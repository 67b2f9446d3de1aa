from fractions import Fraction
from math import factorial

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from fanosym.bounds import (
    DUSART_THRESHOLD,
    asymptotic_ratio_check,
    base_digits,
    dusart_comparison,
    is_prime,
    jordan_quadratic_bound,
    legendre,
    smallest_prime_above,
    sylow_structure,
    trigger_holds,
)


def test_is_prime_examples():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert is_prime(2**61 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7
    assert not is_prime(-7)


def test_is_prime_matches_sympy_small():
    for n in range(5000):
        assert is_prime(n) == sp.isprime(n)


@given(st.integers(0, 10**18))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sp.isprime(n)


def test_smallest_prime_above_examples():
    assert smallest_prime_above(1) == 2
    assert smallest_prime_above(5) == 7
    assert smallest_prime_above(7) == 11
    assert smallest_prime_above(10**12) == sp.nextprime(10**12)
    with pytest.raises(ValueError):
        smallest_prime_above(0)
    with pytest.raises(ValueError):
        smallest_prime_above(10**12 + 1)


def test_bertrand_grid():
    for x in list(range(1, 3000)) + [10**k + j for k in range(4, 12) for j in (0, 7, 123)]:
        p = smallest_prime_above(x)
        assert x < p <= 2 * x
        assert p == sp.nextprime(x)


def test_base_digits_and_legendre():
    assert base_digits(10, 3) == [1, 0, 1]
    assert base_digits(0, 5) == []
    assert legendre(10, 2) == 8
    for p in (2, 3, 5, 7, 11, 13):
        for k in range(1, 201):
            assert legendre(k, p) == sp.multiplicity(p, factorial(k))


def test_sylow_examples():
    s = sylow_structure(35, 7)
    assert s.factors == ((1, 5),) and s.valuation() == 5 and s.abelian_rank() == 5
    s = sylow_structure(49, 7)
    assert s.factors == ((2, 1),) and s.nonabelian() == {2: True}
    assert sylow_structure(6, 7).describe() == "trivial"
    with pytest.raises(ValueError):
        sylow_structure(10, 4)
    with pytest.raises(ValueError):
        sylow_structure(0, 2)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_sylow_valuation_matches_legendre(p):
    for k in range(1, 201):
        assert sylow_structure(k, p).valuation() == legendre(k, p)


def test_jordan_examples():
    assert jordan_quadratic_bound(4) == 34
    assert jordan_quadratic_bound(1) == 5
    assert asymptotic_ratio_check(4) == Fraction(34, 25)
    assert asymptotic_ratio_check(1) == Fraction(5, 4)
    assert asymptotic_ratio_check(10**4) < Fraction(101, 100)
    with pytest.raises(ValueError):
        jordan_quadratic_bound(0)


@pytest.mark.parametrize("n", range(1, 21))
def test_trigger(n):
    p = smallest_prime_above(n + 1)
    for k in range(p * (n + 1), p * (n + 1) + 3 * p):
        assert trigger_holds(n, k)
    # one step below the bound the argument gives nothing
    assert not trigger_holds(n, p * (n + 1) - 1)


def test_dusart_small_n_is_false():
    assert dusart_comparison(1) is False
    assert dusart_comparison(4) is False
    assert dusart_comparison(10**4) is False
    with pytest.raises(ValueError):
        dusart_comparison(0)


@pytest.mark.parametrize("offset", [0, 1, 1000, 10**6])
def test_dusart_beyond_threshold(offset):
    assert dusart_comparison(DUSART_THRESHOLD + offset) is True


def test_dusart_low_precision_is_undecided():
    # two bits cannot separate a ratio just above 1 from a bound just above 1
    assert dusart_comparison(DUSART_THRESHOLD, prec=2) is None


def test_dusart_restores_interval_precision():
    import mpmath

    before = mpmath.iv.prec
    dusart_comparison(DUSART_THRESHOLD, prec=200)
    assert mpmath.iv.prec == before
