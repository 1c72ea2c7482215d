import random
from math import gcd

import pytest
from sympy import totient, mobius

from ramc.padicpoly import (
    cyclotomic_coeffs,
    cyclotomic_orbit_factors,
    frobenius_orbits,
    hensel_lift_factors,
    normalize,
    poly_div_exact,
    poly_divmod,
    poly_ext_gcd,
    poly_mul,
    power_sums,
)


def test_divmod_roundtrip_random():
    rng = random.Random(7)
    m = 3 ** 12
    for _ in range(200):
        f = tuple(rng.randrange(m) for _ in range(rng.randrange(1, 8)))
        g = tuple(rng.randrange(m) for _ in range(rng.randrange(1, 5) - 1)) + (1,)  # monic
        q, r = poly_divmod(f, g, m)
        recomposed = normalize(
            [a + b for a, b in zip(
                list(poly_mul(q, g, m)) + [0] * 10, list(r) + [0] * 10)], m)
        assert recomposed == normalize(f, m)
        assert len(r) < len(g)


def test_ext_gcd_bezout():
    p = 5
    rng = random.Random(1)
    for _ in range(100):
        f = tuple(rng.randrange(p) for _ in range(4)) + (1,)
        g = tuple(rng.randrange(p) for _ in range(2)) + (1,)
        d, s, t = poly_ext_gcd(f, g, p)
        lhs = normalize(
            [a + b for a, b in zip(
                list(poly_mul(s, f, p)) + [0] * 12, list(poly_mul(t, g, p)) + [0] * 12)], p)
        assert lhs == d


def test_frobenius_orbits_examples():
    assert frobenius_orbits(2, 3) == [(1,)]
    assert frobenius_orbits(5, 3) == [(1, 2, 3, 4)]  # 3 has order 4 mod 5
    assert frobenius_orbits(8, 3) == [(1, 3), (5, 7)]
    assert frobenius_orbits(1, 3) == [(0,)]


def test_orbit_sizes_uniform():
    for d in range(1, 40):
        if d % 3 == 0:
            continue
        orbits = frobenius_orbits(d, 3)
        sizes = {len(o) for o in orbits}
        assert len(sizes) == 1
        assert sum(len(o) for o in orbits) == (totient(d) if d > 1 else 1)


def test_phi8_factors_mod3():
    factors = cyclotomic_orbit_factors(8, 3, 20)
    m = 3 ** 20
    assert set(factors) == {(1, 3), (5, 7)}
    prod = poly_mul(factors[(1, 3)], factors[(5, 7)], m)
    assert prod == normalize(cyclotomic_coeffs(8), m)
    # mod 3 these are the classical factors x^2+x+2 and x^2+2x+2
    mods = sorted(normalize(f, 3) for f in factors.values())
    assert mods == [(2, 1, 1), (2, 2, 1)]


def test_hensel_lift_random_products():
    rng = random.Random(42)
    p, N = 5, 9
    m = p ** N
    for _ in range(40):
        # build coprime monic factors mod p by construction
        g = tuple(rng.randrange(p) for _ in range(2)) + (1,)
        h = tuple(rng.randrange(p) for _ in range(3)) + (1,)
        from ramc.padicpoly import poly_gcd

        if poly_gcd(g, h, p) != (1,):
            continue
        f = poly_mul(g, h, m)
        lifted = hensel_lift_factors(f, [g, h], p, N)
        assert poly_mul(lifted[0], lifted[1], m) == f
        assert normalize(lifted[0], p) == normalize(g, p)
        assert normalize(lifted[1], p) == normalize(h, p)


def _ramanujan_sum(d, j):
    g = gcd(j, d)
    return int(mobius(d // g)) * int(totient(d)) // int(totient(d // g))


def test_power_sums_against_ramanujan():
    # power sums of the full d-th cyclotomic polynomial are Ramanujan sums
    m = 3 ** 20
    for d in (1, 2, 4, 5, 7, 8, 10, 11, 16, 20):
        f = normalize(cyclotomic_coeffs(d), m)
        sums = power_sums(f, 2 * d + 1, m)
        for j in range(2 * d + 1):
            expected = _ramanujan_sum(d, j) if d > 1 else 1
            assert sums[j] == expected % m, (d, j)


def test_power_sums_small_integer_case():
    # (x-2)(x-5) = x^2 - 7x + 10: s_k = 2^k + 5^k
    m = 10 ** 9
    sums = power_sums((10, -7, 1), 6, m)
    assert sums == [(2 ** k + 5 ** k) % m for k in range(6)]


def test_div_exact_raises_on_inexact():
    with pytest.raises(ArithmeticError):
        poly_div_exact((1, 1, 1), (1, 1), 7)
