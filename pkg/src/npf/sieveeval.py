"""Main term of Richert's weighted sieve, its parameter families, and the derived bounds."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .glcount import GroupParams, count_C1, order_G
from .primes import primes_upto

EULER_GAMMA = 0.577215664901532860606512090082
Family = Literal["g1", "g2", "g3"]
FAMILIES: tuple[Family, ...] = ("g1", "g2", "g3")


class InadmissibleParams(ValueError):
    def __init__(self, inequality: str, params: "SieveParams"):
        super().__init__(f"inadmissible sieve parameters: {inequality} fails for {params}")
        self.inequality = inequality


@dataclass(frozen=True)
class SieveParams:
    """alpha, u, v exact when they come from a family; lambda is real."""

    alpha: Fraction | float
    u: Fraction | float
    v: Fraction | float
    lam: float

    def violations(self, *, allow_zero_lambda: bool = False) -> list[str]:
        a, u, v = self.alpha, self.u, self.v
        out = []
        if not a > 0:
            out.append("alpha > 0")
        elif not 1 / a < u:
            out.append("1/alpha < u")
        if not u < v:
            out.append("u < v")
        if a > 0 and not 2 / a <= v <= 4 / a:
            out.append("2/alpha <= v <= 4/alpha")
        if allow_zero_lambda and self.lam < 0:
            out.append("lambda >= 0")
        elif not allow_zero_lambda and not self.lam > 0:
            out.append("lambda > 0")
        return out

    @property
    def admissible(self) -> bool:
        return not self.violations()


def richert_F(params: SieveParams, *, check: bool = True) -> float:
    """(2 e^gamma / (alpha v)) (log(alpha v - 1) - lambda alpha u log(v/u)
    + lambda (alpha u - 1) log((alpha v - 1)/(alpha u - 1))).

    lambda = 0 is accepted here (the unweighted main term); the family
    parameters always have lambda > 0.
    """
    if check:
        bad = params.violations(allow_zero_lambda=True)
        if bad:
            raise InadmissibleParams(bad[0], params)
    a, u, v, lam = (float(x) for x in (params.alpha, params.u, params.v, params.lam))
    av = float(params.alpha * params.v)
    au = float(params.alpha * params.u)
    if av <= 1 or au <= 1:
        raise InadmissibleParams("alpha*u > 1 and alpha*v > 1", params)
    terms = [math.log(av - 1), -lam * au * math.log(v / u), lam * (au - 1) * math.log((av - 1) / (au - 1))]
    return 2 * math.exp(EULER_GAMMA) / av * math.fsum(terms)


def params_family(family: Family, k: int) -> SieveParams:
    if k < 4:
        raise ValueError(f"k must be >= 4, got {k}")
    k = Fraction(k)
    lam = 1 / math.sqrt(math.log(k))
    if family == "g1":
        p = SieveParams((k - 1) / (5 * k), (5 * k + 1) / (k - 1), 20 * k / (k - 1), lam)
    elif family == "g2":
        p = SieveParams((k - 1) / (5 * k), (8 * k + 1) / (k - 1), 16 * k / (k - 1), lam)
    elif family == "g3":
        p = SieveParams((k - 1) / (8 * k), (8 * k + 1) / (k - 1), 32 * k / (k - 1), lam)
    else:
        raise ValueError(f"unknown family {family!r}")
    assert p.admissible, p.violations()
    return p


def g_closed(family: Family, k: float) -> float:
    """Closed forms of F along each family, as functions of a real k > 1."""
    if k <= 1:
        raise ValueError("k must exceed 1")
    s = math.sqrt(math.log(k))
    eg = math.exp(EULER_GAMMA)
    if family == "g1":
        body = 5 * k * math.log(3) * s + math.log(15 * k) - (1 + 5 * k) * math.log(20 * k / (1 + 5 * k))
        return eg * body / (10 * k * s)
    if family == "g2":
        body = (5 * math.log(11 / 5) * k * s + (3 * k + 1) * math.log(11 * k / (3 * k + 1))
                - (8 * k + 1) * math.log(16 * k / (8 * k + 1)))
        return eg * body / (8 * k * s)
    if family == "g3":
        body = 8 * math.log(3) * k * s + math.log(24 * k) - (1 + 8 * k) * math.log(32 * k / (1 + 8 * k))
        return eg * body / (16 * k * s)
    raise ValueError(f"unknown family {family!r}")


def positivity_threshold(family: Family, lo: float, hi: float, tol: float = 1e-9) -> float:
    """Sign change of g_closed(family, .) in [lo, hi] by bisection."""
    flo, fhi = g_closed(family, lo), g_closed(family, hi)
    if (flo > 0) == (fhi > 0):
        raise ValueError(f"no sign change of {family} on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if (g_closed(family, mid) > 0) == (fhi > 0):
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


@dataclass(frozen=True)
class BoundSet:
    k: int
    omega_bound: int
    big_omega_bound: int
    grh_omega_bound: int
    selberg_exponent: int


def bounds(k: int) -> BoundSet:
    if k < 4:
        raise ValueError(f"k must be >= 4, got {k}")
    s = math.sqrt(math.log(k))
    return BoundSet(k, math.floor(5 * k + 1 + s), math.floor(8 * k + 1 + s), math.floor(8 * k + 1 + s), 9 * k - 8)


def bound_from_params(params: SieveParams, k: int) -> float:
    """u (k - 1) + 1/lambda: the count bound a positive-weight element satisfies."""
    return float(params.u) * (k - 1) + 1 / params.lam


def mertens_W(z: float, k: int) -> tuple[float, float]:
    """(W(z), W(z) log z) for W(z) = prod_{l < z} (1 - delta(l))."""
    ps = [p for p in primes_upto(math.ceil(z)) if p < z]
    if not ps:
        return 1.0, math.log(z) if z > 0 else 0.0
    logs = []
    for p in ps:
        g = GroupParams(p, k)
        logs.append(math.log1p(-count_C1(g) / order_G(g)))
    W = math.exp(math.fsum(logs))
    return W, W * math.log(z)
