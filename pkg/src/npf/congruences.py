"""Eisenstein congruences for concrete forms and almost-Eisenstein prime detection."""
from __future__ import annotations

import warnings
from dataclasses import dataclass

from .npstats import good_primes, np_value
from .primes import primes_upto
from .qexp import FormHandle, coefficient_table


def eisenstein_congruence_check(form: FormHandle, ell: int, N: int) -> int | None:
    """First n in [1, N] with a_n != sigma_{k-1}(n) mod ell, or None when all agree."""
    if N < 1:
        return None
    a = coefficient_table(form, N + 1)
    # sigma_{k-1}(n) mod ell only needs d^{k-1} mod ell
    sig = [0] * (N + 1)
    for d in range(1, N + 1):
        dm = pow(d, form.weight - 1, ell)
        for j in range(d, N + 1, d):
            sig[j] += dm
    for n in range(1, N + 1):
        if (a[n] - sig[n]) % ell:
            return n
    return None


@dataclass(frozen=True)
class AlmostEisenstein:
    candidates: tuple[int, ...]
    X: int
    Lmax: int
    test_primes: int
    warning: str | None = None

    @property
    def nu(self) -> int:
        return len(self.candidates)


MIN_TEST_PRIMES = 3


def almost_eisenstein(form: FormHandle, X: int, Lmax: int) -> AlmostEisenstein:
    """Primes l <= Lmax dividing N_p for every good prime p <= X other than l itself.

    This is finite evidence only: the output is a superset of the true
    almost-Eisenstein primes whenever X is too small to expose exceptions.
    """
    if Lmax < 2:
        raise ValueError("Lmax must be at least 2")
    ps = good_primes(form, X)
    values = [(p, np_value(form, p)) for p in ps]
    warning = None
    if len(ps) < MIN_TEST_PRIMES:
        warning = f"only {len(ps)} test primes up to X={X}; candidates are a superset"
        warnings.warn(warning, stacklevel=2)
    found = tuple(ell for ell in primes_upto(Lmax) if all(n % ell == 0 for p, n in values if p != ell))
    return AlmostEisenstein(found, X, Lmax, len(ps), warning)
