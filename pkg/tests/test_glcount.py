import itertools
import random
from fractions import Fraction

import pytest
from sympy import primerange

from npf.glcount import (
    VARIANTS,
    GroupParams,
    brute_count,
    brute_order,
    count_C1,
    delta_density,
    has_fixed_vector,
    in_C,
    iter_group,
    order_G,
)


@pytest.mark.parametrize("ell,k,order,c1", [(5, 12, 480, 115), (7, 4, 672, 105), (2, 4, 6, 4), (2, 26, 6, 4)])
def test_examples(ell, k, order, c1):
    p = GroupParams(ell, k)
    assert order_G(p) == brute_order(p) == order
    assert count_C1(p) == brute_count(p) == c1


def test_gl2_f2_by_hand():
    # identity and the three involutions fix a nonzero vector; the two 3-cycles do not
    p = GroupParams(2, 12)
    members = [g for g in iter_group(p) if in_C(g, p)]
    assert len(list(iter_group(p))) == 6
    assert sorted(members) == [(0, 1, 1, 0), (1, 0, 0, 1), (1, 0, 1, 1), (1, 1, 0, 1)]


def test_density_examples():
    assert delta_density(GroupParams(5, 12)) == Fraction(23, 96)
    assert delta_density(GroupParams(7, 4)) == Fraction(5, 32)


def test_density_simplified_form():
    for ell in primerange(3, 200):
        for k in (4, 12, 26):
            p = GroupParams(ell, k)
            lam = p.lam
            assert delta_density(p) == Fraction(ell * ell - lam - 1, (ell - 1) ** 2 * (ell + 1))


def test_lambda_recomputed():
    p = GroupParams(7, 4)
    assert p.lam == 3 and (p.ell - 1) % p.lam == 0


def test_rejects_nonprime():
    with pytest.raises(ValueError):
        GroupParams(9, 12)


def test_size_guard():
    with pytest.raises(ValueError):
        brute_count(GroupParams(13, 12, 2))


@pytest.mark.parametrize("ell,n", [(2, 2), (2, 3), (3, 2)])
def test_vectorized_fixed_vector_matches_direct_search(ell, n):
    p = GroupParams(ell, 12, n)
    for variant in VARIANTS:
        direct = sum(1 for g in iter_group(p) if in_C(g, p, variant))
        assert brute_count(p, variant) == direct


def test_level_two_report():
    p = GroupParams(3, 12, 2)
    counts = {v: brute_count(p, v) for v in VARIANTS}
    order = brute_order(p)
    # variants are nested: identity below implies unipotent below
    assert counts["eigenvalue-one"] <= counts["eigenvalue-one-or-identity-below"] <= counts["eigenvalue-one-or-unipotent-below"]
    for c in counts.values():
        ratio = c / order
        print(f"C_(3,2) ratio {ratio:.4f} vs 1/l^2 = {1 / 9:.4f}")
        assert 0 < ratio < 1


def _mul(g, h, m):
    a, b, c, d = g
    e, f, x, y = h
    return ((a * e + b * x) % m, (a * f + b * y) % m, (c * e + d * x) % m, (c * f + d * y) % m)


def _inv(g, m):
    a, b, c, d = g
    di = pow((a * d - b * c) % m, -1, m)
    return ((d * di) % m, (-b * di) % m, (-c * di) % m, (a * di) % m)


@pytest.mark.parametrize("ell", [2, 3, 5, 7])
def test_conjugacy_closure(ell):
    rng = random.Random(ell)
    p = GroupParams(ell, 12)
    group = list(iter_group(p))
    full = [g for g in itertools.product(range(ell), repeat=4) if (g[0] * g[3] - g[1] * g[2]) % ell]
    for _ in range(100):
        g, h = rng.choice(group), rng.choice(full)
        conj = _mul(_mul(h, g, ell), _inv(h, ell), ell)
        assert in_C(g, p) == in_C(conj, p)


def test_fixed_vector_level_one_is_det_condition():
    for g in itertools.product(range(5), repeat=4):
        a, b, c, d = g
        assert has_fixed_vector(g, 5, 1) == (((a - 1) * (d - 1) - b * c) % 5 == 0)


def test_density_deviation_bound():
    for ell in primerange(3, 10**4):
        for k in (4, 12, 26):
            dev = abs(delta_density(GroupParams(ell, k)) - Fraction(1, ell))
            assert ell * ell * dev <= 2
