"""Exact Bernoulli numbers and the arithmetic built on them."""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .factor import FactorBudget, FactoredInteger, factorize
from .primes import crt_pair, is_proven_prime, primes_upto

BERNOULLI_CEILING = 800

_lock = threading.Lock()
# B_0, B_1, B_2, ... as (numerator, denominator); odd entries beyond B_1 are zero
_memo: list[tuple[int, int]] = [(1, 1), (-1, 2)]
_common_den = [2]  # lcm of the denominators stored so far


class CeilingError(ValueError):
    pass


def _staudt_denominator(n: int) -> int:
    out = 1
    for p in primes_upto(n + 1):
        if n % (p - 1) == 0:
            out *= p
    return out


def _extend(n: int) -> None:
    for m in range(len(_memo), n + 1):
        if m % 2:
            _memo.append((0, 1))
            continue
        # sum_{j<m} C(m+1, j) B_j over the common denominator L
        L = _common_den[0]
        total = 0
        binom = 1  # C(m+1, j)
        for j in range(m):
            num, den = _memo[j]
            if num:
                total += binom * num * (L // den)
            binom = binom * (m + 1 - j) // (j + 1)
        value = Fraction(-total, L * (m + 1))
        if value.denominator != _staudt_denominator(m):
            raise ArithmeticError(f"B_{m} fails the von Staudt-Clausen denominator check")
        _memo.append((value.numerator, value.denominator))
        _common_den[0] = math.lcm(L, value.denominator)


def bernoulli_number(n: int) -> Fraction:
    """B_n with B_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be non-negative")
    with _lock:
        if n >= len(_memo):
            _extend(n)
        num, den = _memo[n]
    return Fraction(num, den)


def sigma_power(n: int, m: int) -> int:
    """Sum of d^m over the divisors d of n."""
    if n < 1:
        raise ValueError("n must be positive")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**m
            if d * d != n:
                total += (n // d) ** m
        d += 1
    return total


def sigma_table(m: int, N: int) -> list[int]:
    """[0, sigma_m(1), ..., sigma_m(N-1)] by a divisor sieve."""
    out = [0] * N
    for d in range(1, N):
        dm = d**m
        for j in range(d, N, d):
            out[j] += dm
    return out


@dataclass(frozen=True)
class BernoulliEntry:
    k: int
    b_k: Fraction
    bk_over_k: Fraction
    numerator_factorization: FactoredInteger

    @property
    def omega(self) -> int:
        return self.numerator_factorization.omega


def bk_over_k(k: int, budget: FactorBudget | None = None, ceiling: int = BERNOULLI_CEILING) -> BernoulliEntry:
    if k < 4 or k % 2:
        raise ValueError(f"k must be even and >= 4, got {k}")
    if k > ceiling:
        raise CeilingError(f"k={k} exceeds the Bernoulli ceiling {ceiling}")
    b = bernoulli_number(k)
    q = b / k
    return BernoulliEntry(k, b, q, factorize(abs(q.numerator), budget))


def numerator_divisible(k: int, p: int, ceiling: int = BERNOULLI_CEILING) -> bool:
    """p | numerator(B_k / k)."""
    if k > ceiling:
        raise CeilingError(f"k={k} exceeds the Bernoulli ceiling {ceiling}")
    return (bernoulli_number(k) / k).numerator % p == 0


@dataclass(frozen=True)
class ChowlaVerdict:
    p: int
    n: int
    divides_base: bool
    coprime_to_2n_minus_1: bool
    progression: tuple[tuple[int, bool], ...]  # (weight n + (p-1)i, p | num(B/weight))

    @property
    def hypothesis(self) -> bool:
        return self.divides_base and self.coprime_to_2n_minus_1

    @property
    def passed(self) -> bool:
        return self.hypothesis and all(ok for _, ok in self.progression)


def chowla_check(p: int, n: int, i_max: int, ceiling: int = BERNOULLI_CEILING) -> ChowlaVerdict:
    if p < 3 or not is_proven_prime(p):
        raise ValueError(f"p must be an odd prime, got {p}")
    if n < 2 or n % 2:
        raise ValueError(f"n must be even, got {n}")
    top = n + (p - 1) * i_max
    if top > ceiling:
        raise CeilingError(f"weight {top} exceeds the Bernoulli ceiling {ceiling}")
    base = numerator_divisible(n, p, ceiling)
    coprime = pow(2, n, p) != 1
    progression = tuple((n + (p - 1) * i, numerator_divisible(n + (p - 1) * i, p, ceiling)) for i in range(1, i_max + 1))
    return ChowlaVerdict(p, n, base, coprime, progression)


def common_weight_progression(constraints: Iterable[tuple[int, int]]) -> tuple[int, int] | None:
    """Intersect k = r (mod m) progressions; (base, modulus) or None when empty."""
    r, m = 0, 1
    for res, mod in constraints:
        if mod < 1:
            raise ValueError("moduli must be positive")
        combined = crt_pair(r, m, res % mod, mod)
        if combined is None:
            return None
        r, m = combined
    return r, m


@dataclass(frozen=True)
class NumeratorRow:
    k: int
    numerator: int
    omega: int | None  # None when the factorization is incomplete
    factorization: str
    k_over_log_k: float
    log_k: float


def omega_numerator_report(k_max: int, budget: FactorBudget | None = None, *, k_min: int = 12,
                           ceiling: int = BERNOULLI_CEILING) -> list[NumeratorRow]:
    if k_max > ceiling:
        raise CeilingError(f"k_max={k_max} exceeds the Bernoulli ceiling {ceiling}")
    rows = []
    for k in range(max(4, k_min + k_min % 2), k_max + 1, 2):
        entry = bk_over_k(k, budget, ceiling)
        fac = entry.numerator_factorization
        rows.append(NumeratorRow(k, abs(entry.bk_over_k.numerator), fac.omega if fac.complete else None,
                                 fac.render(), k / math.log(k), math.log(k)))
    return rows
