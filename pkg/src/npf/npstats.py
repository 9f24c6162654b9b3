"""N_p(f) values, their factorizations, and omega statistics over prime ranges."""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from statistics import NormalDist, fmean, pvariance
from typing import Literal, Sequence

from .factor import FactorBudget, FactoredInteger, factorize
from .primes import primes_upto, primorial
from .qexp import FormHandle


class ExcludedPrime(ValueError):
    pass


@dataclass(frozen=True)
class NpRecord:
    p: int
    np: int
    factorization: FactoredInteger

    @property
    def omega(self) -> int:
        return self.factorization.omega

    @property
    def big_omega(self) -> int:
        return self.factorization.big_omega

    @property
    def complete(self) -> bool:
        return self.factorization.complete


@dataclass(frozen=True)
class CountFilter:
    """Keep records whose omega (or big_omega) equals ``target``."""

    kind: Literal["omega", "big_omega"]
    target: int

    def count(self, fac: FactoredInteger) -> int:
        return fac.omega if self.kind == "omega" else fac.big_omega

    def matches(self, fac: FactoredInteger) -> bool:
        return fac.complete and self.count(fac) == self.target

    def ruled_out(self, fac: FactoredInteger) -> bool:
        # for incomplete factorizations the count is a lower bound
        return self.count(fac) > self.target if not fac.complete else self.count(fac) != self.target


@dataclass
class ScanResult:
    records: list[NpRecord]
    undecided: list[NpRecord]


def np_value(form: FormHandle, p: int) -> int:
    """p^(k-1) + 1 - a_p for a prime of good reduction."""
    if not form.is_good(p):
        raise ExcludedPrime(f"p={p} divides the level {form.level}; excluded prime")
    n = p ** (form.weight - 1) + 1 - form.a(p)
    assert n > 0
    return n


def np_record(form: FormHandle, p: int, budget: FactorBudget | None = None) -> NpRecord:
    n = np_value(form, p)
    return NpRecord(p, n, factorize(n, budget))


def _work(item: tuple[int, int], budget: FactorBudget, count_filter: CountFilter | None) -> tuple[NpRecord, bool]:
    """Returns (record, keep); keep is False for records ruled out by the filter."""
    p, n = item
    fac = factorize(n, budget, rho=False)
    if count_filter is not None and count_filter.ruled_out(fac):
        return NpRecord(p, n, fac), False
    if not fac.complete:
        fac = factorize(n, budget)
    rec = NpRecord(p, n, fac)
    if count_filter is None:
        return rec, True
    return rec, not count_filter.ruled_out(fac)


def _run(items, budget, count_filter, workers):
    if workers is None or workers <= 1 or len(items) < 2:
        return [_work(it, budget, count_filter) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        chunk = max(1, len(items) // (8 * workers))
        return list(pool.map(_work, items, [budget] * len(items), [count_filter] * len(items), chunksize=chunk))


def good_primes(form: FormHandle, X: int, start: int = 2) -> list[int]:
    if X >= form.precision:
        raise ValueError(f"X={X} exceeds the coefficient table of {form.label} (a_p known for p < {form.precision})")
    return [p for p in primes_upto(X) if p >= start and form.is_good(p)]


def scan(form: FormHandle, X: int, count_filter: CountFilter | None = None,
         budget: FactorBudget | None = None, workers: int | None = None) -> ScanResult:
    """Records for the good primes p <= X, ascending, optionally filtered by an omega count.

    Incomplete factorizations that could still satisfy the filter are
    returned in ``undecided`` instead of ``records``.
    """
    budget = budget or FactorBudget()
    items = [(p, np_value(form, p)) for p in good_primes(form, X)]
    out = ScanResult([], [])
    for rec, keep in sorted(_run(items, budget, count_filter, workers), key=lambda t: t[0].p):
        if not keep:
            continue
        if count_filter is not None and not rec.complete:
            out.undecided.append(rec)
        else:
            out.records.append(rec)
    return out


def congruence_scan(form: FormHandle, modulus: int, X: int, start: int = 2) -> list[int]:
    """Good primes start <= p <= X with N_p not divisible by modulus."""
    if modulus < 1:
        raise ValueError("modulus must be positive")
    return [p for p in good_primes(form, X, start) if np_value(form, p) % modulus]


def truncated_omega(n: int, y: int) -> int:
    """Number of primes l <= y dividing n."""
    if n < 1:
        raise ValueError("n must be positive")
    g = math.gcd(n, primorial(y))
    if g == 1:
        return 0
    return sum(1 for ell in primes_upto(y) if g % ell == 0)


@dataclass(frozen=True)
class ErdosKacReport:
    X: int
    y: int
    sample_size: int
    mean: float
    variance: float
    ks_distance: float


def ks_distance_normal(values: Sequence[float]) -> float:
    """Kolmogorov-Smirnov distance between the empirical law of values and N(0,1)."""
    xs = sorted(values)
    n = len(xs)
    cdf = NormalDist().cdf
    d = 0.0
    for i, x in enumerate(xs, start=1):
        F = cdf(x)
        d = max(d, i / n - F, F - (i - 1) / n)
    return d


def erdos_kac_sample(form: FormHandle, X: int, y: int = 10**4) -> ErdosKacReport:
    """Standardized truncated omega of N_p over good primes 17 <= p <= X.

    Primes with log log p <= 1 are left out, which is exactly p <= 13.
    """
    if X < 100:
        raise ValueError("X must be at least 100")
    if y < 100:
        raise ValueError("y must be at least 100")
    values = []
    for p in good_primes(form, X):
        ll = math.log(math.log(p))
        if ll <= 1:
            continue
        values.append((truncated_omega(np_value(form, p), y) - ll) / math.sqrt(ll))
    return ErdosKacReport(X, y, len(values), fmean(values), pvariance(values), ks_distance_normal(values))
