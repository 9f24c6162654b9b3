"""Desk-scale integer factorization with deterministic effort.

Strategy: batched trial division (gcd against the primorial of the trial
bound), Pollard-Brent rounds seeded from a hash of the integer being
factored, and a primality battery on whatever is left.  Nothing here
depends on scheduling, so parallel callers get bit-identical results.
"""
from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass
from math import gcd
from typing import Literal

from .primes import integer_root, is_probable_prime, is_proven_prime, primes_upto, primorial

CofactorStatus = Literal["none", "probable-prime", "composite-unfactored"]


@dataclass(frozen=True)
class FactorBudget:
    trial_bound: int = 10**6
    rho_rounds: int = 8
    rho_iterations: int = 200_000  # per round
    seconds: float = 10.0


@dataclass(frozen=True)
class FactoredInteger:
    """n = prod(p^e) * cofactor.

    Listed primes are certain below the deterministic Miller-Rabin bound and
    Baillie-PSW probable primes above it.  ``cofactor`` is a single large
    probable prime (status ``probable-prime``) or an unsplit composite.
    """

    n: int
    factors: tuple[tuple[int, int], ...]
    cofactor: int | None = None
    cofactor_status: CofactorStatus = "none"

    @property
    def complete(self) -> bool:
        return self.cofactor_status != "composite-unfactored"

    @property
    def omega(self) -> int:
        """Distinct prime factors; a lower bound when incomplete."""
        return len(self.factors) + (0 if self.cofactor is None else (1 if self.complete else 2))

    @property
    def big_omega(self) -> int:
        """Prime factors with multiplicity; a lower bound when incomplete."""
        return sum(e for _, e in self.factors) + (0 if self.cofactor is None else (1 if self.complete else 2))

    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out * (self.cofactor or 1)

    def render(self) -> str:
        """`2^10*3*23*691` style; an unfactored composite is shown in brackets."""
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors]
        if self.cofactor is not None:
            parts.append(str(self.cofactor) if self.complete else f"[{self.cofactor}]")
        return "*".join(parts) if parts else "1"


def _seed(n: int, i: int) -> tuple[int, int]:
    digest = hashlib.sha256(f"{n}:{i}".encode()).digest()
    return int.from_bytes(digest[:16], "big"), int.from_bytes(digest[16:], "big")


def pollard_brent(n: int, round_index: int, max_iterations: int, deadline: float | None = None) -> int | None:
    """One Brent round on composite n; returns a non-trivial divisor or None."""
    if n % 2 == 0:
        return 2
    a, b = _seed(n, round_index)
    y = a % (n - 1) + 1
    c = b % (n - 1) + 1
    m = 128
    g = r = q = 1
    x = ys = y
    iterations = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        iterations += r
        r *= 2
        if iterations > max_iterations or (deadline is not None and time.monotonic() > deadline):
            return None
    if g == n:
        # backtrack one step at a time from the last saved position
        while True:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


def _perfect_power(n: int) -> tuple[int, int] | None:
    for e in primes_upto(n.bit_length()):
        r = integer_root(n, e)
        if r is not None:
            return r, e
    return None


def _is_listed_prime(n: int) -> bool:
    return is_proven_prime(n) or is_probable_prime(n)


def factorize(n: int, budget: FactorBudget | None = None, *, rho: bool = True) -> FactoredInteger:
    """Factor n >= 1 within budget.

    With ``rho=False`` only trial division and the primality battery run;
    callers use this as a cheap first pass before deciding whether the
    expensive stage is needed.
    """
    if n < 1:
        raise ValueError("n must be positive")
    budget = budget or FactorBudget()
    deadline = time.monotonic() + budget.seconds
    found: dict[int, int] = {}

    def add(p: int, e: int = 1) -> None:
        found[p] = found.get(p, 0) + e

    rest = n
    g = gcd(rest, primorial(budget.trial_bound))
    if g > 1:
        small = [g]
        while small:
            m = small.pop()
            if is_proven_prime(m):
                e = 0
                while rest % m == 0:
                    rest //= m
                    e += 1
                add(m, e)
                continue
            d = None
            for p in primes_upto(min(1000, budget.trial_bound)):
                if m % p == 0:
                    d = p
                    break
            i = 0
            while d is None:
                d = pollard_brent(m, i, 10**7)
                i += 1
            small += [d, m // d]

    pending = [rest] if rest > 1 else []
    leftovers: list[int] = []
    round_index = 0
    while pending:
        m = pending.pop()
        if m == 1:
            continue
        if _is_listed_prime(m):
            add(m)
            continue
        pp = _perfect_power(m)
        if pp is not None:
            root, e = pp
            pending += [root] * e
            continue
        if not rho:
            leftovers.append(m)
            continue
        d = None
        while d is None and round_index < budget.rho_rounds and time.monotonic() < deadline:
            d = pollard_brent(m, round_index, budget.rho_iterations, deadline)
            round_index += 1
        if d is None:
            leftovers.append(m)
        else:
            pending += [d, m // d]

    # a lone large probable prime is kept as the cofactor, not a listed factor
    cofactor, status = None, "none"
    cleaned = []
    for m in leftovers:
        for p in list(found):
            while m % p == 0:
                m //= p
                add(p)
        if m > 1 and _is_listed_prime(m):
            add(m)
        elif m > 1:
            cleaned.append(m)
    leftovers = cleaned
    if leftovers:
        cofactor = 1
        for m in leftovers:
            cofactor *= m
        status = "composite-unfactored"
    else:
        big = [p for p in found if not is_proven_prime(p)]
        if len(big) == 1 and found[big[0]] == 1:
            cofactor, status = big[0], "probable-prime"
            del found[cofactor]

    result = FactoredInteger(n, tuple(sorted(found.items())), cofactor, status)
    if result.value() != n:
        raise ArithmeticError(f"factorization of {n} does not multiply back")
    return result
