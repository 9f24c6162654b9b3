import pytest
from hypothesis import given, settings, strategies as st
from sympy import factorint, isprime, nextprime

from npf.factor import FactorBudget, factorize
from npf.primes import (
    DETERMINISTIC_MR_BOUND,
    crt_pair,
    integer_root,
    is_probable_prime,
    prime_count,
    primes_upto,
    primorial,
)


def test_prime_lists():
    assert primes_upto(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert prime_count(1000) == 168
    assert prime_count(10**5) == 9592
    assert primorial(10) == 210


@given(st.integers(0, 10**6))
@settings(max_examples=300)
def test_primality_small(n):
    assert is_probable_prime(n) == isprime(n)


@pytest.mark.parametrize("n", [
    2**61 - 1, 2**89 - 1, 2**127 - 1, 3215031751, 3825123056546413051, 318665857834031151167461,
    DETERMINISTIC_MR_BOUND, 190641378938814930857, 251458672161512059369128893956312797721,
    1000000000000000000000000000057, 561 * 1105 * 1729,
])
def test_primality_against_sympy(n):
    assert is_probable_prime(n) == isprime(n)


@given(st.integers(2, 10**40))
@settings(max_examples=200)
def test_primality_large(n):
    assert is_probable_prime(n) == isprime(n)


def test_integer_root():
    assert integer_root(3**40, 5) == 3**8
    assert integer_root(3**40 + 1, 5) is None
    assert integer_root(10**300, 3) == 10**100


def test_crt_pair():
    assert crt_pair(24, 102, 12, 690) == (5532, 11730)
    assert crt_pair(1, 2, 2, 4) is None


class TestFactorize:
    def test_examples(self):
        assert factorize(2073).factors == ((3, 1), (691, 1))
        f = factorize(48823296)
        assert f.factors == ((2, 10), (3, 1), (23, 1), (691, 1))
        assert f.render() == "2^10*3*23*691"
        one = factorize(1)
        assert one.factors == () and one.cofactor is None and one.complete
        assert (one.omega, one.big_omega) == (0, 0)

    def test_large_probable_prime_cofactor(self):
        big = 251458672161512059369128893956312797721
        f = factorize(2**8 * 3**5 * 691 * big)
        assert f.cofactor == big and f.cofactor_status == "probable-prime"
        assert f.complete and (f.omega, f.big_omega) == (4, 15)

    def test_rho_splits_two_mid_primes(self):
        p, q = nextprime(10**9), nextprime(3 * 10**10)
        f = factorize(12 * p * q)
        assert f.factors == ((2, 2), (3, 1), (p, 1), (q, 1))

    def test_perfect_power_cofactor(self):
        p = nextprime(10**7)
        assert factorize(p**3 * 5).factors == ((5, 1), (p, 3))

    def test_budget_exhaustion_flags_composite(self):
        p, q = nextprime(10**25), nextprime(3 * 10**25)
        f = factorize(6 * p * q, FactorBudget(rho_rounds=1, rho_iterations=1000))
        assert f.cofactor == p * q
        assert f.cofactor_status == "composite-unfactored" and not f.complete
        assert f.omega == 4 and f.big_omega == 4  # lower bounds
        assert f.value() == 6 * p * q

    def test_trial_only_pass(self):
        p, q = nextprime(10**8), nextprime(10**9)
        f = factorize(30 * p * q, rho=False)
        assert not f.complete and f.cofactor == p * q
        assert factorize(30 * p * q).complete

    def test_small_trial_bound(self):
        f = factorize(2**5 * 7919 * 104729, FactorBudget(trial_bound=100))
        assert f.factors == ((2, 5), (7919, 1), (104729, 1))

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            factorize(0)

    @given(st.integers(1, 10**24))
    @settings(max_examples=150, deadline=None)
    def test_reassembly_and_oracle(self, n):
        f = factorize(n)
        assert f.value() == n
        assert f.complete
        expected = factorint(n)
        got = dict(f.factors)
        if f.cofactor:
            got[f.cofactor] = 1
        assert got == expected
        primes = [p for p, _ in f.factors]
        assert primes == sorted(set(primes))
        assert f.omega <= f.big_omega

    def test_deterministic(self):
        n = nextprime(10**12) * nextprime(10**13) * nextprime(10**14)
        assert factorize(n) == factorize(n)
