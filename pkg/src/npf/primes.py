"""Prime lists and primality tests shared by the other modules."""
from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt

# Miller-Rabin with the first 13 prime bases is deterministic below this bound
# (Sorenson & Webster 2015).
DETERMINISTIC_MR_BOUND = 3317044064679887385961981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


@lru_cache(maxsize=8)
def _sieve(n: int) -> bytes:
    flags = bytearray([1]) * (n + 1)
    flags[0:2] = b"\x00\x00"[: min(2, n + 1)]
    for i in range(2, isqrt(n) + 1):
        if flags[i]:
            flags[i * i :: i] = bytes(len(range(i * i, n + 1, i)))
    return bytes(flags)


def primes_upto(n: int) -> list[int]:
    """All primes p <= n, ascending."""
    if n < 2:
        return []
    flags = _sieve(n)
    return [i for i in range(2, n + 1) if flags[i]]


def prime_count(n: int) -> int:
    if n < 2:
        return 0
    return sum(_sieve(n))


@lru_cache(maxsize=4)
def primorial(bound: int) -> int:
    """Product of all primes <= bound (used for batched trial division)."""
    ps = primes_upto(bound)
    # balanced product tree keeps the multiplication cost near-linear
    while len(ps) > 1:
        ps = [ps[i] * ps[i + 1] if i + 1 < len(ps) else ps[i] for i in range(0, len(ps), 2)]
    return ps[0] if ps else 1


def _strong_probable_prime(n: int, base: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_probable_prime(n: int) -> bool:
    # Selfridge method A for (D, P, Q)
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
        if D == 13 and isqrt(n) ** 2 == n:
            return False
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    def half(x: int) -> int:
        return (x + n) // 2 % n if x % 2 else x // 2 % n

    U, V, Qk = 1, P % n, Q % n
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = half(P * U + V), half(D * U + P * V)
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_probable_prime(n: int) -> bool:
    """Primality verdict for n.

    Exact below ``DETERMINISTIC_MR_BOUND``; above it the Baillie-PSW battery
    (strong base-2 test plus strong Lucas test) is used.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n < DETERMINISTIC_MR_BOUND:
        return all(_strong_probable_prime(n, b) for b in _MR_BASES)
    return _strong_probable_prime(n, 2) and _strong_lucas_probable_prime(n)


def is_proven_prime(n: int) -> bool:
    """True only when primality is certain (deterministic size class)."""
    return n < DETERMINISTIC_MR_BOUND and is_probable_prime(n)


def integer_root(n: int, e: int) -> int | None:
    """Exact e-th root of n when n is a perfect e-th power, else None."""
    if n < 0:
        return None
    r = round(n ** (1.0 / e)) if n.bit_length() < 1000 else _iroot(n, e)
    for c in (r - 1, r, r + 1):
        if c >= 0 and c**e == n:
            return c
    r = _iroot(n, e)
    return r if r**e == n else None


def _iroot(n: int, e: int) -> int:
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + e - 1) // e)
    while True:
        y = ((e - 1) * x + n // x ** (e - 1)) // e
        if y >= x:
            return x
        x = y


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int] | None:
    """Combine x = r1 mod m1 and x = r2 mod m2 for arbitrary moduli."""
    g = gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    lcm = m1 // g * m2
    t = (r2 - r1) // g * pow(m1 // g, -1, m2 // g) % (m2 // g)
    return (r1 + m1 * t) % lcm, lcm
