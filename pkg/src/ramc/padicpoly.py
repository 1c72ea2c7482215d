"""Exact polynomial arithmetic over Z/p^N Z.

Polynomials are tuples of ints, ascending degree, coefficients reduced into
[0, m).  Everything here is exact integer arithmetic; there is no floating
point anywhere in this module.

The main service is `cyclotomic_orbit_factors`: the monic factors of the
d-th cyclotomic polynomial over Z/p^N Z (p prime to d), labelled by the
orbits of (Z/dZ)^* under multiplication by p.  Factors are obtained by
factoring mod p, matching factors to orbits inside F_p[y]/(h0), and Hensel
lifting.  `power_sums` then recovers the sums of k-th powers of each
factor's roots via Newton's identities (no divisions, so they are valid
mod p^N).
"""

from __future__ import annotations

from functools import lru_cache

from sympy import Poly, Symbol
from sympy.polys.specialpolys import cyclotomic_poly

Coeffs = tuple[int, ...]

_X = Symbol("x")


def normalize(coeffs, m) -> Coeffs:
    """Reduce mod m and strip leading zeros (zero poly -> ())."""
    out = [c % m for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def degree(f: Coeffs) -> int:
    return len(f) - 1  # -1 for the zero polynomial


def poly_add(f, g, m) -> Coeffs:
    n = max(len(f), len(g))
    return normalize([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)], m)


def poly_sub(f, g, m) -> Coeffs:
    n = max(len(f), len(g))
    return normalize([(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n)], m)


def poly_mul(f, g, m) -> Coeffs:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return normalize(out, m)


def poly_scale(f, c, m) -> Coeffs:
    return normalize([a * c for a in f], m)


def poly_divmod(f, g, m) -> tuple[Coeffs, Coeffs]:
    """Quotient and remainder by g; lc(g) must be invertible mod m."""
    g = normalize(g, m)
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    lc_inv = pow(g[-1], -1, m)
    rem = list(normalize(f, m)) + [0] * 0
    dg = len(g) - 1
    quo = [0] * max(len(rem) - dg, 0)
    while len(rem) - 1 >= dg and rem:
        c = rem[-1] * lc_inv % m
        k = len(rem) - 1 - dg
        quo[k] = c
        for i, b in enumerate(g):
            rem[k + i] = (rem[k + i] - c * b) % m
        while rem and rem[-1] == 0:
            rem.pop()
    return normalize(quo, m), normalize(rem, m)


def poly_div_exact(f, g, m) -> Coeffs:
    q, r = poly_divmod(f, g, m)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def poly_pow_mod(f, e, modpoly, m) -> Coeffs:
    """f^e modulo (modpoly, m)."""
    result: Coeffs = (1,)
    f = poly_divmod(f, modpoly, m)[1]
    while e > 0:
        if e & 1:
            result = poly_divmod(poly_mul(result, f, m), modpoly, m)[1]
        f = poly_divmod(poly_mul(f, f, m), modpoly, m)[1]
        e >>= 1
    return result


def poly_eval(f, x, m) -> int:
    acc = 0
    for c in reversed(f):
        acc = (acc * x + c) % m
    return acc


def poly_gcd(f, g, p) -> Coeffs:
    """Monic gcd over the field F_p."""
    a, b = normalize(f, p), normalize(g, p)
    while b:
        a, b = b, poly_divmod(a, b, p)[1]
    if a:
        a = poly_scale(a, pow(a[-1], -1, p), p)
    return a


def poly_ext_gcd(f, g, p) -> tuple[Coeffs, Coeffs, Coeffs]:
    """(d, s, t) with s*f + t*g = d = monic gcd, over F_p."""
    r0, r1 = normalize(f, p), normalize(g, p)
    s0, s1 = (1,), ()
    t0, t1 = (), (1,)
    while r1:
        q, r = poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, poly_sub(s0, poly_mul(q, s1, p), p)
        t0, t1 = t1, poly_sub(t0, poly_mul(q, t1, p), p)
    if r0:
        c = pow(r0[-1], -1, p)
        r0, s0, t0 = poly_scale(r0, c, p), poly_scale(s0, c, p), poly_scale(t0, c, p)
    return r0, s0, t0


@lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> Coeffs:
    """Integer coefficients of the n-th cyclotomic polynomial, ascending."""
    return tuple(int(c) for c in reversed(Poly(cyclotomic_poly(n, _X), _X).all_coeffs()))


def hensel_lift_pair(f, g, h, p, N) -> tuple[Coeffs, Coeffs]:
    """Lift f = g*h from mod p to mod p^N, g and h monic and coprime mod p.

    Linear lifting: at each level the correction (u, v) solves
    u*h + v*g = w over F_p with deg u < deg g, deg v < deg h.
    """
    d, s, t = poly_ext_gcd(g, h, p)
    if d != (1,):
        raise ArithmeticError("factors not coprime mod p")
    mk = p
    g, h = normalize(g, p), normalize(h, p)
    for _ in range(N - 1):
        mk_next = mk * p
        diff = poly_sub(normalize(f, mk_next), poly_mul(g, h, mk_next), mk_next)
        w = normalize([c // mk for c in diff], p)
        u = poly_divmod(poly_mul(w, t, p), g, p)[1]
        v = poly_divmod(poly_mul(w, s, p), h, p)[1]
        g = poly_add(g, poly_scale(u, mk, mk_next), mk_next)
        h = poly_add(h, poly_scale(v, mk, mk_next), mk_next)
        mk = mk_next
    return g, h


def hensel_lift_factors(f, factors, p, N) -> list[Coeffs]:
    """Lift a coprime monic factorization of f from mod p to mod p^N."""
    m = p ** N
    f = normalize(f, m)
    factors = [normalize(g, p) for g in factors]
    if len(factors) == 1:
        return [f]
    g = factors[0]
    h = normalize((1,), p)
    for q in factors[1:]:
        h = poly_mul(h, q, p)
    g_lift, _ = hensel_lift_pair(f, g, h, p, N)
    rest = poly_div_exact(f, g_lift, m)
    return [g_lift] + hensel_lift_factors(rest, factors[1:], p, N)


def frobenius_orbits(d: int, p: int) -> list[tuple[int, ...]]:
    """Orbits of (Z/dZ)^* under multiplication by p, each sorted, ordered
    by smallest element.  d = 1 gives the single orbit (0,)."""
    if d == 1:
        return [(0,)]
    if d % p == 0:
        raise ValueError("p must not divide d")
    from math import gcd

    seen = set()
    orbits = []
    for a in range(1, d):
        if gcd(a, d) != 1 or a in seen:
            continue
        orbit = []
        b = a
        while b not in seen:
            seen.add(b)
            orbit.append(b)
            b = b * p % d
        orbits.append(tuple(sorted(orbit)))
    orbits.sort()
    return orbits


def _factor_mod_p(coeffs: Coeffs, p: int) -> list[Coeffs]:
    """Monic irreducible factors of a squarefree monic polynomial mod p."""
    f = Poly([c % p for c in reversed(coeffs)], _X, modulus=p)
    _, pairs = f.factor_list()
    out = []
    for g, e in pairs:
        if e != 1:
            raise ArithmeticError("expected squarefree polynomial mod p")
        out.append(normalize([int(c) for c in reversed(g.all_coeffs())], p))
    return out


@lru_cache(maxsize=None)
def cyclotomic_orbit_factors(d: int, p: int, N: int) -> dict:
    """Map each Frobenius orbit of (Z/dZ)^* to its monic factor of the d-th
    cyclotomic polynomial over Z/p^N Z.

    The labelling is fixed by working in F = F_p[y]/(h0) for one irreducible
    factor h0 mod p and setting zeta := y: the orbit of b corresponds to
    prod(x - zeta^b).  The orbit of 1 is h0 itself.
    """
    m = p ** N
    orbits = frobenius_orbits(d, p)
    if d == 1:
        return {(0,): normalize((-1, 1), m)}
    phi_d = cyclotomic_coeffs(d)
    mod_factors = _factor_mod_p(phi_d, p)
    h0 = min(mod_factors)  # deterministic anchor; any root of Phi_d works

    # g_orbit(x) = prod over the orbit of (x - y^b), computed over F_p[y]/(h0);
    # Frobenius stability forces the coefficients down into F_p.
    orbit_to_modp = {}
    for orbit in orbits:
        gx = [(1,)]  # poly in x with F_p[y]/(h0)-coefficients, ascending
        for b in orbit:
            root = poly_pow_mod((0, 1), b, h0, p)
            nxt = [()] * (len(gx) + 1)
            for i, cf in enumerate(gx):
                nxt[i + 1] = poly_add(nxt[i + 1], cf, p)
                prod = poly_divmod(poly_mul(cf, root, p), h0, p)[1]
                nxt[i] = poly_sub(nxt[i], prod, p)
            gx = nxt
        flat = []
        for cf in gx:
            if len(cf) > 1:
                raise ArithmeticError("orbit factor has non-constant coefficient")
            flat.append(cf[0] if cf else 0)
        orbit_to_modp[orbit] = normalize(flat, p)

    order = sorted(orbits)
    lifted = hensel_lift_factors(normalize(phi_d, m), [orbit_to_modp[o] for o in order], p, N)
    return dict(zip(order, lifted))


def power_sums(g: Coeffs, count: int, m: int) -> list[int]:
    """[s_0, ..., s_{count-1}] with s_k = sum of k-th powers of the roots of
    the monic polynomial g, mod m.  Newton's identities, division-free."""
    n = degree(g)
    if n < 0:
        raise ValueError("zero polynomial")
    # e_i = (-1)^i * coefficient of x^(n-i)
    e = [0] * (n + 1)
    e[0] = 1
    for i in range(1, n + 1):
        e[i] = (-1) ** i * g[n - i] % m
    s = [n % m]
    for k in range(1, count):
        acc = 0
        for i in range(1, min(k - 1, n) + 1):
            sign = 1 if (i - 1) % 2 == 0 else -1
            acc += sign * e[i] * s[k - i]
        if k <= n:
            sign = 1 if (k - 1) % 2 == 0 else -1
            acc += sign * k * e[k]
        s.append(acc % m)
    return s
