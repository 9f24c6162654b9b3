"""Exact q-expansions of level-one forms and newform coefficient tables.

Series products use Kronecker substitution: both operands are packed into
one big integer (one fixed-width slot per coefficient), multiplied with GMP,
and unpacked.  ``series_mul_schoolbook`` keeps the O(N^2) definition around
as a reference.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Literal, Mapping

import gmpy2

from .bernoulli import bernoulli_number, sigma_table
from .primes import is_proven_prime, primes_upto

PRECISION_CEILING = 20001
EISENSTEIN_WEIGHTS = (4, 6, 8, 10, 14)
EIGENFORM_WEIGHTS = (12, 16, 18, 20, 22, 26)
COEFF_FILE_MAGIC = "# npf-coeffs v1"


class PrecisionError(ValueError):
    pass


class CoefficientUnavailable(KeyError):
    def __init__(self, p: int):
        super().__init__(p)
        self.p = p

    def __str__(self) -> str:
        return f"coefficient unavailable: a_{self.p} is not in the table"


class IngestError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class DeligneBoundError(ValueError):
    pass


@dataclass(frozen=True)
class IntSeries:
    """Truncated power series sum c_n q^n, n < precision, with exact integer coefficients."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("series precision must be positive")

    @classmethod
    def from_list(cls, coeffs: Iterable[int]) -> "IntSeries":
        return cls(tuple(int(c) for c in coeffs))

    @classmethod
    def one(cls, precision: int) -> "IntSeries":
        return cls((1,) + (0,) * (precision - 1))

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def truncate(self, n: int) -> "IntSeries":
        return IntSeries(self.coeffs[:n])

    def __add__(self, other: "IntSeries") -> "IntSeries":
        n = min(self.precision, other.precision)
        return IntSeries(tuple(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])))

    def __sub__(self, other: "IntSeries") -> "IntSeries":
        n = min(self.precision, other.precision)
        return IntSeries(tuple(a - b for a, b in zip(self.coeffs[:n], other.coeffs[:n])))

    def __mul__(self, other: "IntSeries") -> "IntSeries":
        return series_mul(self, other)

    def scale(self, c: int) -> "IntSeries":
        return IntSeries(tuple(c * a for a in self.coeffs))

    def exact_div(self, d: int) -> "IntSeries":
        out = []
        for n, a in enumerate(self.coeffs):
            q, r = divmod(a, d)
            if r:
                raise ArithmeticError(f"coefficient {n} is not divisible by {d}")
            out.append(q)
        return IntSeries(tuple(out))


def _pack(coeffs: tuple[int, ...], nbytes: int) -> gmpy2.mpz:
    half = 1 << (8 * nbytes - 1)
    raw = b"".join((c + half).to_bytes(nbytes, "little") for c in coeffs)
    bias = int.from_bytes(half.to_bytes(nbytes, "little") * len(coeffs), "little")
    return gmpy2.mpz(int.from_bytes(raw, "little") - bias)


def _unpack(value: gmpy2.mpz, nbytes: int, count: int, keep: int) -> tuple[int, ...]:
    half = 1 << (8 * nbytes - 1)
    bias = int.from_bytes(half.to_bytes(nbytes, "little") * count, "little")
    raw = int(value + bias).to_bytes(nbytes * count + 1, "little")
    return tuple(
        int.from_bytes(raw[i * nbytes : (i + 1) * nbytes], "little") - half for i in range(keep)
    )


def series_mul(a: IntSeries, b: IntSeries) -> IntSeries:
    """Product truncated to the smaller precision."""
    n = min(a.precision, b.precision)
    xs, ys = a.coeffs[:n], b.coeffs[:n]
    mx = max(map(abs, xs))
    my = max(map(abs, ys))
    if mx == 0 or my == 0:
        return IntSeries((0,) * n)
    # slot width: every product coefficient is < n * mx * my in absolute value
    bits = (n * mx * my).bit_length() + 2
    nbytes = (bits + 7) // 8
    prod = _pack(xs, nbytes) * _pack(ys, nbytes)
    return IntSeries(_unpack(prod, nbytes, 2 * n - 1, n))


def series_mul_schoolbook(a: IntSeries, b: IntSeries) -> IntSeries:
    n = min(a.precision, b.precision)
    out = [0] * n
    for i, x in enumerate(a.coeffs[:n]):
        if x:
            for j in range(n - i):
                out[i + j] += x * b.coeffs[j]
    return IntSeries(tuple(out))


def series_pow(a: IntSeries, e: int) -> IntSeries:
    if e < 0:
        raise ValueError("exponent must be non-negative")
    result = IntSeries.one(a.precision)
    base = a
    while e:
        if e & 1:
            result = series_mul(result, base)
        e >>= 1
        if e:
            base = series_mul(base, base)
    return result


def _check_precision(N: int, ceiling: int | None) -> None:
    if N < 1:
        raise PrecisionError("precision must be at least 1")
    limit = PRECISION_CEILING if ceiling is None else ceiling
    if N > limit:
        raise PrecisionError(f"precision {N} exceeds the configured ceiling {limit}")


def eta_product(N: int, *, ceiling: int | None = None) -> IntSeries:
    """prod_{n>=1} (1 - q^n) to precision N via Euler's pentagonal number theorem."""
    _check_precision(N, ceiling)
    out = [0] * N
    j = 0
    while True:
        g1 = j * (3 * j - 1) // 2
        if g1 >= N:
            break
        sign = -1 if j % 2 else 1
        out[g1] = sign
        g2 = j * (3 * j + 1) // 2
        if j and g2 < N:
            out[g2] = sign
        j += 1
    return IntSeries(tuple(out))


def eisenstein_constant(k: int) -> int:
    """The integer -2k/B_k scaling sigma_{k-1}(n) in the unit-constant normalization."""
    c = -2 * k / bernoulli_number(k)
    if c.denominator != 1:
        raise ArithmeticError(f"-2k/B_k is not integral for k={k}")
    return c.numerator


def eisenstein_expansion(k: int, N: int, *, ceiling: int | None = None) -> IntSeries:
    if k not in EISENSTEIN_WEIGHTS:
        raise ValueError(f"weight {k} not admissible; expected one of {EISENSTEIN_WEIGHTS}")
    _check_precision(N, ceiling)
    c = eisenstein_constant(k)
    sig = sigma_table(k - 1, N)
    return IntSeries((1,) + tuple(c * s for s in sig[1:N]))


def delta_series(N: int, *, ceiling: int | None = None) -> IntSeries:
    """Delta = (E_4^3 - E_6^2) / 1728."""
    e4 = eisenstein_expansion(4, N, ceiling=ceiling)
    e6 = eisenstein_expansion(6, N, ceiling=ceiling)
    diff = series_mul(series_mul(e4, e4), e4) - series_mul(e6, e6)
    return diff.exact_div(1728)


def cusp_series(k: int, N: int, *, ceiling: int | None = None) -> IntSeries:
    """The normalized level-one cusp eigenform of weight k as Delta * E_{k-12}."""
    if k not in EIGENFORM_WEIGHTS:
        raise ValueError(f"weight {k} not admissible; expected one of {EIGENFORM_WEIGHTS}")
    if N < 2:
        raise PrecisionError("precision must be at least 2")
    delta = delta_series(N, ceiling=ceiling)
    series = delta if k == 12 else series_mul(delta, eisenstein_expansion(k - 12, N, ceiling=ceiling))
    if series[0] != 0 or series[1] != 1:
        raise ArithmeticError(f"weight {k} expansion is not a normalized cusp form")
    return series


@dataclass(frozen=True)
class FormHandle:
    """A newform with trivial character: metadata plus its a_p table.

    ``precision`` is the exclusive bound on available prime indices.
    """

    weight: int
    level: int
    label: str
    ap: Mapping[int, int]
    source: Literal["computed-level-one", "ingested"]
    precision: int = 0
    _sorted: tuple[int, ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        if self.weight < 4 or self.weight % 2:
            raise ValueError(f"weight must be even and >= 4, got {self.weight}")
        if self.level < 1:
            raise ValueError(f"level must be positive, got {self.level}")
        table = dict(sorted(self.ap.items()))
        for p, a in table.items():
            if self.level % p and not deligne_ok(a, p, self.weight):
                raise DeligneBoundError(f"|a_{p}| = {abs(a)} violates the Deligne bound in weight {self.weight}")
        object.__setattr__(self, "ap", MappingProxyType(table))
        object.__setattr__(self, "_sorted", tuple(table))
        if not self.precision:
            object.__setattr__(self, "precision", (max(table) + 1) if table else 2)

    @property
    def primes(self) -> tuple[int, ...]:
        return self._sorted

    def a(self, p: int) -> int:
        try:
            return self.ap[p]
        except KeyError:
            raise CoefficientUnavailable(p) from None

    def is_good(self, p: int) -> bool:
        return self.level % p != 0


def deligne_ok(a: int, p: int, k: int) -> bool:
    """|a| <= 2 p^((k-1)/2), decided exactly as a^2 <= 4 p^(k-1)."""
    return a * a <= 4 * p ** (k - 1)


def form_from_series(series: IntSeries, k: int, label: str | None = None) -> FormHandle:
    N = series.precision
    ap = {p: series[p] for p in primes_upto(N - 1)}
    return FormHandle(k, 1, label or f"delta{k}", ap, "computed-level-one", N)


def eigenform_expansion(k: int, N: int, *, ceiling: int | None = None) -> FormHandle:
    return form_from_series(cusp_series(k, N, ceiling=ceiling), k)


def _factor_small(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def _prime_power_coeff(form: FormHandle, p: int, r: int) -> int:
    ap = form.a(p)
    if not form.is_good(p):
        return ap**r
    pk = p ** (form.weight - 1)
    prev, cur = 1, ap
    for _ in range(r - 1):
        prev, cur = cur, ap * cur - pk * prev
    return cur if r else 1


def hecke_coefficient(form: FormHandle, n: int) -> int:
    """a_n from the a_p table via multiplicativity and the Hecke recursion."""
    if n < 1:
        raise ValueError("n must be positive")
    result = 1
    for p, r in _factor_small(n):
        result *= _prime_power_coeff(form, p, r)
    return result


def coefficient_table(form: FormHandle, N: int) -> list[int]:
    """[a_0, a_1, ..., a_{N-1}] with a_0 = 0, built from the a_p table."""
    spf = list(range(N))
    for p in primes_upto(int(N**0.5) + 1):
        for m in range(p * p, N, p):
            if spf[m] == m:
                spf[m] = p
    out = [0] * N
    if N > 1:
        out[1] = 1
    for n in range(2, N):
        p = spf[n]
        m, r = n, 0
        while m % p == 0:
            m //= p
            r += 1
        out[n] = _prime_power_coeff(form, p, r) * out[m]
    return out


def write_coeff_file(form: FormHandle, path: str | os.PathLike) -> None:
    lines = [COEFF_FILE_MAGIC, f"# level={form.level} weight={form.weight} label={form.label}"]
    lines += [f"{p} {a}" for p, a in form.ap.items()]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


_HEADER = re.compile(r"# level=(\d+) weight=(\d+) label=(\S+)")


def parse_coeff_text(text: str, source: str = "ingested") -> FormHandle:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != COEFF_FILE_MAGIC:
        raise IngestError(1, f"expected {COEFF_FILE_MAGIC!r}")
    if len(lines) < 2:
        raise IngestError(2, "missing level/weight/label header")
    m = _HEADER.fullmatch(lines[1])
    if not m:
        raise IngestError(2, f"malformed header {lines[1]!r}")
    level, weight, label = int(m[1]), int(m[2]), m[3]
    if weight < 4 or weight % 2 or level < 1:
        raise IngestError(2, f"unsupported level={level} weight={weight}")
    ap: dict[int, int] = {}
    last = 0
    for lineno, line in enumerate(lines[2:], start=3):
        parts = line.split(" ")
        if len(parts) != 2 or not re.fullmatch(r"\d+", parts[0]) or not re.fullmatch(r"-?\d+", parts[1]):
            raise IngestError(lineno, f"expected '<p> <a_p>', got {line!r}")
        p, a = int(parts[0]), int(parts[1])
        if not is_proven_prime(p):
            raise IngestError(lineno, f"index {p} is not prime")
        if p in ap:
            raise IngestError(lineno, f"duplicate prime {p}")
        if p < last:
            raise IngestError(lineno, f"prime {p} out of ascending order")
        if level % p and not deligne_ok(a, p, weight):
            raise IngestError(lineno, f"a_{p} = {a} violates the Deligne bound |a_p| <= 2p^{(weight - 1) / 2}")
        ap[p] = a
        last = p
    precision = last + 1 if ap else 2
    return FormHandle(weight, level, label, ap, source, precision)


def ingest_form(path: str | os.PathLike) -> FormHandle:
    return parse_coeff_text(Path(path).read_text(encoding="utf-8"))


def cached_eigenform(k: int, N: int, cache_dir: str | os.PathLike | None = None, *, ceiling: int | None = None) -> FormHandle:
    """eigenform_expansion backed by an on-disk cache in the coefficient-file format."""
    if cache_dir is None:
        return eigenform_expansion(k, N, ceiling=ceiling)
    _check_precision(N, ceiling)
    path = Path(cache_dir) / f"delta{k}_N{N}.txt"
    if path.exists():
        form = parse_coeff_text(path.read_text(encoding="utf-8"), source="computed-level-one")
        return FormHandle(form.weight, form.level, form.label, form.ap, "computed-level-one", N)
    form = eigenform_expansion(k, N, ceiling=ceiling)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    write_coeff_file(form, tmp)
    tmp.replace(path)
    return form
