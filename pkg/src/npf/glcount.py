"""Orders of the mod-l image groups G_l, the eigenvalue-one sets C_{l,n}, and delta(l).

Closed forms are checked against direct enumeration of 2x2 matrices over
Z/l^n (numpy-vectorized over three of the four entries).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Literal

import numpy as np

from .primes import is_proven_prime

Variant = Literal["eigenvalue-one", "eigenvalue-one-or-identity-below", "eigenvalue-one-or-unipotent-below"]
VARIANTS: tuple[Variant, ...] = ("eigenvalue-one", "eigenvalue-one-or-identity-below", "eigenvalue-one-or-unipotent-below")
BRUTE_MODULUS_LIMIT = 125


@dataclass(frozen=True)
class GroupParams:
    ell: int
    k: int
    n: int = 1

    def __post_init__(self):
        if not is_proven_prime(self.ell):
            raise ValueError(f"ell={self.ell} is not prime")
        if self.k < 4 or self.k % 2:
            raise ValueError(f"k must be even and >= 4, got {self.k}")
        if self.n < 1:
            raise ValueError("level exponent n must be >= 1")

    @property
    def lam(self) -> int:
        return gcd(self.k - 1, self.ell - 1)

    @property
    def modulus(self) -> int:
        return self.ell**self.n


def order_G(params: GroupParams) -> int:
    l, lam = params.ell, params.lam
    return (l * l - 1) * (l * l - l) // lam


def count_C1(params: GroupParams) -> int:
    l, lam = params.ell, params.lam
    return (l**3 - (lam + 1) * l) // lam


def delta_density(params: GroupParams) -> Fraction:
    if params.ell == 2:
        raise ValueError("delta density is defined for odd primes")
    return Fraction(count_C1(params), order_G(params))


def delta_value(ell: int, k: int) -> Fraction:
    """#C_{l,1} / #G_l for any prime l, including l = 2."""
    p = GroupParams(ell, k)
    return Fraction(count_C1(p), order_G(p))


def det_power_image(params: GroupParams) -> np.ndarray:
    """Boolean mask over Z/l^n of the (k-1)-th powers of units."""
    m = params.modulus
    mask = np.zeros(m, dtype=bool)
    for x in range(m):
        if x % params.ell:
            mask[pow(x, params.k - 1, m)] = True
    return mask


def _valuations(ell: int, n: int) -> np.ndarray:
    m = ell**n
    val = np.full(m, n, dtype=np.int64)
    for x in range(1, m):
        v, y = 0, x
        while y % ell == 0:
            y //= ell
            v += 1
        val[x] = v
    return val


def _check_size(params: GroupParams) -> None:
    if params.modulus > BRUTE_MODULUS_LIMIT:
        raise ValueError(f"l^n = {params.modulus} exceeds the enumeration limit {BRUTE_MODULUS_LIMIT}")


def _enumerate(params: GroupParams, variant: Variant | None):
    """Yields (in_G, in_C) boolean blocks, one per value of the top-left entry."""
    ell, n, m = params.ell, params.n, params.modulus
    image = det_power_image(params)
    val = _valuations(ell, n)
    powers = np.array([ell**j for j in range(2 * n + 1)], dtype=np.int64)
    b, c, d = (x.ravel() for x in np.meshgrid(np.arange(m), np.arange(m), np.arange(m), indexing="ij"))
    for a in range(m):
        det = (a * d - b * c) % m
        in_G = image[det]
        if variant is None:
            yield in_G, None
            continue
        # g - I has a fixed vector v != 0 mod l iff its second elementary
        # divisor vanishes mod l^n: det(lift) = 0 mod l^(n + min valuation)
        h11, h22 = (a - 1) % m, (d - 1) % m
        vmin = np.minimum(np.minimum(val[h11], val[b]), np.minimum(val[c], val[h22]))
        det_h = h11 * h22 - b * c
        fixed = (vmin >= n) | (det_h % powers[np.minimum(n + vmin, 2 * n)] == 0)
        if n >= 2 and variant == "eigenvalue-one-or-identity-below":
            fixed |= ((a - 1) % ell == 0) & (b % ell == 0) & (c % ell == 0) & ((d - 1) % ell == 0)
        elif n >= 2 and variant == "eigenvalue-one-or-unipotent-below":
            fixed |= ((a + d - 2) % ell == 0) & ((det - 1) % ell == 0)
        yield in_G, in_G & fixed


def brute_order(params: GroupParams) -> int:
    """#{g in GL_2(Z/l^n) : det g is a (k-1)-th power} by enumeration."""
    _check_size(params)
    return int(sum(int(g.sum()) for g, _ in _enumerate(params, None)))


def brute_count(params: GroupParams, variant: Variant = "eigenvalue-one") -> int:
    """#C_{l,n} inside the determinant-constrained group, by enumeration."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    _check_size(params)
    return int(sum(int(cset.sum()) for _, cset in _enumerate(params, variant)))


def has_fixed_vector(g: tuple[int, int, int, int], ell: int, n: int) -> bool:
    """Direct search for v != 0 mod l with g v = v mod l^n, over the projective line."""
    m = ell**n
    a, b, c, d = g
    candidates = [(1, t) for t in range(m)] + [(ell * s, 1) for s in range(ell ** (n - 1))]
    return any(((a - 1) * x + b * y) % m == 0 and (c * x + (d - 1) * y) % m == 0 for x, y in candidates)


def in_C(g: tuple[int, int, int, int], params: GroupParams, variant: Variant = "eigenvalue-one") -> bool:
    """Membership of one matrix (a, b, c, d) in C_{l,n}; the determinant constraint is not checked."""
    ell, n = params.ell, params.n
    a, b, c, d = g
    if has_fixed_vector(g, ell, n):
        return True
    if n >= 2 and variant == "eigenvalue-one-or-identity-below":
        return all(x % ell == 0 for x in (a - 1, b, c, d - 1))
    if n >= 2 and variant == "eigenvalue-one-or-unipotent-below":
        return (a + d - 2) % ell == 0 and (a * d - b * c - 1) % ell == 0
    return False


def iter_group(params: GroupParams):
    """All matrices of the determinant-constrained group, as (a, b, c, d) tuples."""
    m = params.modulus
    image = det_power_image(params)
    for g in itertools.product(range(m), repeat=4):
        if image[(g[0] * g[3] - g[1] * g[2]) % m]:
            yield g


@dataclass(frozen=True)
class CountRow:
    ell: int
    k: int
    lam: int
    order_G: int
    count_C1: int
    delta: Fraction
    brute_match: bool | None


def count_table(ells, ks, brute: bool = True) -> list[CountRow]:
    rows = []
    for ell in ells:
        for k in ks:
            p = GroupParams(ell, k)
            oG, c1 = order_G(p), count_C1(p)
            match = None
            if brute and p.modulus <= BRUTE_MODULUS_LIMIT:
                match = brute_order(p) == oG and brute_count(p) == c1
            rows.append(CountRow(ell, k, p.lam, oG, c1, Fraction(c1, oG), match))
    return rows
