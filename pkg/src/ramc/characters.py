"""Characters of cyclic groups and exact group-ring arithmetic mod p^N.

A cyclic group of order d*p^e (gcd(d, p) = 1) is presented by a generator
sigma_chi; elements are indexed 0..d*p^e-1 by its powers.  The tame
generator is tau := sigma_chi^(p^e) (order d) and the wild generator is
sigma := sigma_chi^d (order p^e).

Rational characters correspond to divisor pairs (d', e'); p-adic characters
refine the tame part into Frobenius orbits of (Z/d'Z)^* under
multiplication by p.  Idempotents are computed with all values realized as
orbit traces (power sums of the matching cyclotomic factor), so every
coefficient lives in Z/p^N Z and no extension ring is ever constructed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from sympy import totient

from .padicpoly import (
    Coeffs,
    cyclotomic_coeffs,
    cyclotomic_orbit_factors,
    frobenius_orbits,
    normalize,
    poly_div_exact,
    poly_divmod,
    poly_ext_gcd,
    poly_gcd,
    poly_mul,
    power_sums,
)

DEFAULT_PRECISION = 20

RATIONAL = "rational"
PADIC = "p-adic"
ABSOLUTE = "absolute"


class NotInvertible(ArithmeticError):
    """Group-ring element has no inverse in the requested component."""


@dataclass(frozen=True)
class CyclicGroupSpec:
    """Cyclic group gamma (+) Gamma with #gamma = d, #Gamma = p^e."""

    d: int
    p: int
    e: int
    tame_conductor: int | None = None   # conductor of the degree-d subfield
    wild_conductor: int | None = None   # conductor of the degree-p^e subfield

    def __post_init__(self):
        if self.d < 1 or self.e < 0:
            raise ValueError("need d >= 1 and e >= 0")
        if self.p < 3:
            raise ValueError("p must be an odd prime")
        if gcd(self.d, self.p) != 1:
            raise ValueError("d must be prime to p")

    @property
    def order(self) -> int:
        return self.d * self.p ** self.e

    @property
    def pe(self) -> int:
        return self.p ** self.e

    # exponents of sigma_chi giving the canonical generators
    @property
    def tau_exponent(self) -> int:
        return self.pe % self.order

    @property
    def sigma_exponent(self) -> int:
        return self.d % self.order


@dataclass(frozen=True)
class CharacterData:
    """A rational, p-adic or absolute character of a CyclicGroupSpec.

    (d_prime, e_prime) identifies the fixed field: the character factors
    through the quotient of order d_prime * p^e_prime.  For p-adic (and
    absolute) kind, `orbit` holds exponents a in (Z/d_prime)^* -- a full
    Frobenius orbit for p-adic, a singleton for absolute; (0,) when
    d_prime = 1.
    """

    kind: str
    group: CyclicGroupSpec
    d_prime: int
    e_prime: int
    orbit: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in (RATIONAL, PADIC, ABSOLUTE):
            raise ValueError(f"unknown character kind {self.kind!r}")
        if self.group.d % self.d_prime or self.e_prime > self.group.e:
            raise ValueError("(d', e') does not divide the group order")
        if self.kind == RATIONAL and self.orbit is not None:
            raise ValueError("rational characters carry no orbit")
        if self.kind != RATIONAL and self.orbit is None:
            raise ValueError(f"{self.kind} characters need an orbit")

    @property
    def degree(self) -> int:
        if self.kind == RATIONAL:
            return int(totient(self.d_prime * self.group.p ** self.e_prime))
        if self.kind == PADIC:
            return len(self.orbit) * int(totient(self.group.p ** self.e_prime))
        return 1

    @property
    def is_trivial(self) -> bool:
        return self.d_prime == 1 and self.e_prime == 0

    @property
    def conductor(self) -> int | None:
        """Conductor of the fixed field, when the group spec carries
        arithmetic data (prime tame/wild conductors)."""
        g = self.group
        if g.tame_conductor is None or (g.wild_conductor is None and g.e > 0):
            return None
        f = g.tame_conductor if self.d_prime > 1 else 1
        q = g.wild_conductor if self.e_prime > 0 else 1
        return f * q

    def tame_part(self) -> "CharacterData":
        return CharacterData(self.kind, self.group, self.d_prime, 0, self.orbit)

    def wild_part(self) -> "CharacterData":
        return CharacterData(RATIONAL, self.group, 1, self.e_prime)


def enumerate_rational_characters(group: CyclicGroupSpec) -> list[CharacterData]:
    """One rational character per divisor pair (d', e'); degrees sum to the
    group order."""
    out = []
    for d_prime in sorted(divisors_of(group.d)):
        for e_prime in range(group.e + 1):
            out.append(CharacterData(RATIONAL, group, d_prime, e_prime))
    return out


def divisors_of(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def split_character(chi: CharacterData) -> tuple[CharacterData, CharacterData]:
    """Tame/wild factorization chi = chi0 * chip."""
    return chi.tame_part(), chi.wild_part()


def padic_orbits(chi0: CharacterData, p: int, N: int = DEFAULT_PRECISION) -> list[CharacterData]:
    """The p-adic characters phi0 below a rational tame character chi0:
    Frobenius orbits of the primitive exponents mod d'."""
    if chi0.e_prime != 0:
        raise ValueError("expected a tame (prime-to-p order) character")
    if p != chi0.group.p:
        raise ValueError("p disagrees with the group spec")
    return [
        CharacterData(PADIC, chi0.group, chi0.d_prime, 0, orbit)
        for orbit in frobenius_orbits(chi0.d_prime, p)
    ]


def enumerate_padic_characters(group: CyclicGroupSpec) -> list[CharacterData]:
    out = []
    for d_prime in sorted(divisors_of(group.d)):
        for e_prime in range(group.e + 1):
            for orbit in frobenius_orbits(d_prime, group.p):
                out.append(CharacterData(PADIC, group, d_prime, e_prime, orbit))
    return out


def padic_components(chi: CharacterData) -> list[CharacterData]:
    """All phi | chi for a rational chi (same e', tame orbits refined)."""
    if chi.kind != RATIONAL:
        raise ValueError("expected a rational character")
    return [
        CharacterData(PADIC, chi.group, chi.d_prime, chi.e_prime, orbit)
        for orbit in frobenius_orbits(chi.d_prime, chi.group.p)
    ]


# ---------------------------------------------------------------------------
# group ring (Z/p^N Z)[G]


@dataclass(frozen=True)
class GroupRingElement:
    """Element of (Z/p^N)[G], G cyclic of order d*p^e, coefficients indexed
    by powers of sigma_chi."""

    group: CyclicGroupSpec
    precision: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        n = self.group.order
        if len(self.coeffs) != n:
            raise ValueError("coefficient count must equal the group order")
        m = self.modulus
        object.__setattr__(self, "coeffs", tuple(c % m for c in self.coeffs))

    @property
    def modulus(self) -> int:
        return self.group.p ** self.precision

    @classmethod
    def zero(cls, group, N=DEFAULT_PRECISION):
        return cls(group, N, (0,) * group.order)

    @classmethod
    def one(cls, group, N=DEFAULT_PRECISION):
        return cls.sigma_chi_power(group, 0, N)

    @classmethod
    def sigma_chi_power(cls, group, k, N=DEFAULT_PRECISION):
        coeffs = [0] * group.order
        coeffs[k % group.order] = 1
        return cls(group, N, tuple(coeffs))

    @classmethod
    def from_dict(cls, group, mapping, N=DEFAULT_PRECISION):
        coeffs = [0] * group.order
        for k, c in mapping.items():
            coeffs[k % group.order] += c
        return cls(group, N, tuple(coeffs))

    def _check(self, other):
        if self.group != other.group or self.precision != other.precision:
            raise ValueError("mismatched group ring")

    def __add__(self, other):
        self._check(other)
        return GroupRingElement(
            self.group, self.precision, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        self._check(other)
        return GroupRingElement(
            self.group, self.precision, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement(self.group, self.precision, tuple(other * a for a in self.coeffs))
        self._check(other)
        n = self.group.order
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        k = i + j
                        if k >= n:
                            k -= n
                        out[k] += a * b
        return GroupRingElement(self.group, self.precision, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = GroupRingElement.one(self.group, self.precision)
        base = self
        while k > 0:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def act_on_index(self, k: int) -> int:
        """Support shift: index of sigma_chi^k * (this element must be a
        single group element); used for Galois actions on log vectors."""
        (idx,) = [i for i, c in enumerate(self.coeffs) if c]
        return (idx + k) % self.group.order


def norm_element(group: CyclicGroupSpec, N=DEFAULT_PRECISION) -> GroupRingElement:
    """nu = sum over the wild subgroup Gamma = <sigma_chi^d>."""
    return GroupRingElement.from_dict(
        group, {group.sigma_exponent * j: 1 for j in range(group.pe)}, N
    )


def frobenius_omega(group: CyclicGroupSpec, frob_exponent: int, N=DEFAULT_PRECISION) -> GroupRingElement:
    """Omega = 1 - Frob^{-1} where Frob = sigma_chi^frob_exponent."""
    one = GroupRingElement.one(group, N)
    inv = GroupRingElement.sigma_chi_power(group, -frob_exponent, N)
    return one - inv


def idempotent(phi0: CharacterData, group: CyclicGroupSpec | None = None,
               N: int = DEFAULT_PRECISION) -> GroupRingElement:
    """e_{phi0} = (1/d) sum_{tau in gamma} phi0(tau^{-1}) tau, with values
    taken as orbit traces mod p^N.

    Accepts a tame p-adic character (one orbit) or a tame rational
    character (sum over all its orbits, giving e_{chi0}).
    """
    group = group or phi0.group
    if phi0.e_prime != 0:
        raise ValueError("idempotents are attached to tame characters")
    p, d = group.p, group.d
    if d % p == 0 or group.d % phi0.d_prime:
        raise ValueError("character does not live on the tame part")
    m = p ** N
    d_prime = phi0.d_prime

    if phi0.kind == RATIONAL:
        orbits = frobenius_orbits(d_prime, p)
    else:
        orbits = [phi0.orbit]
    factors = cyclotomic_orbit_factors(d_prime, p, N)

    # trace(tau^j) = sum over the orbit of zeta^(b*j) = power sum of the
    # orbit's cyclotomic factor at exponent j mod d'
    traces = [0] * d_prime
    for orbit in orbits:
        sums = power_sums(factors[orbit], d_prime, m)
        for j in range(d_prime):
            traces[j] = (traces[j] + sums[j]) % m

    d_inv = pow(d, -1, m)
    mapping = {}
    for j in range(d):
        val = traces[(-j) % d_prime] * d_inv % m
        if val:
            mapping[group.tau_exponent * j] = val
    return GroupRingElement.from_dict(group, mapping, N)


def _to_poly(x: GroupRingElement) -> Coeffs:
    return normalize(x.coeffs, x.modulus)


def _from_poly(coeffs: Coeffs, group, N) -> GroupRingElement:
    padded = list(coeffs) + [0] * (group.order - len(coeffs))
    return GroupRingElement(group, N, tuple(padded[: group.order]))


def group_ring_invert(x: GroupRingElement, e: GroupRingElement,
                      N: int | None = None) -> GroupRingElement:
    """Inverse y of x inside the component e*(Z/p^N)[G], i.e. x*y = e and
    y = e*y.  Raises NotInvertible when x kills part of the component.

    Works through z := x*e + (1 - e), invertible in the full ring iff x*e
    is invertible in eR; the inverse is found mod p by the extended
    Euclidean algorithm and lifted by Newton iteration y <- y(2 - zy).
    """
    group = x.group
    N = N or x.precision
    p = group.p
    m = p ** N
    n = group.order
    one = GroupRingElement.one(group, N)
    z = x * e + (one - e)

    ring_mod = tuple([-1] + [0] * (n - 1) + [1])  # x^n - 1
    zp = normalize(z.coeffs, p)
    g, s, _ = poly_ext_gcd(zp, ring_mod, p)
    if g != (1,):
        blocked = poly_gcd(zp, ring_mod, p)
        raise NotInvertible(
            f"component blocked mod {p}: gcd with x^{n}-1 is {list(blocked)}"
        )

    y = _from_poly(s, group, N)
    two = GroupRingElement.from_dict(group, {0: 2}, N)
    k = 1
    while k < N:
        y = y * (two - z * y)
        k *= 2
    y = e * y
    check = x * y - e
    if not check.is_zero():
        raise NotInvertible("Newton lifting failed verification")
    return y


# ---------------------------------------------------------------------------
# local cyclotomic factors


@dataclass(frozen=True)
class CyclotomicFactor:
    character: CharacterData
    precision: int
    coeffs: Coeffs    # ascending, monic, over Z/p^N

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


def local_cyclotomic_factor(phi: CharacterData, N: int = DEFAULT_PRECISION) -> CyclotomicFactor:
    """Monic factor of the (d' * p^e')-th cyclotomic polynomial over
    Z/p^N Z cut out by the p-adic character phi.

    Built as g(x^(p^e')) / g(x^(p^(e'-1))) from the Hensel-lifted tame
    factor g of Phi_{d'}; exact because the orbit is Frobenius-stable.
    """
    if phi.kind != PADIC:
        raise ValueError("local factors are attached to p-adic characters")
    group = phi.group
    p = group.p
    m = p ** N
    factors = cyclotomic_orbit_factors(phi.d_prime, p, N)
    g = factors[phi.orbit]
    if phi.e_prime == 0:
        return CyclotomicFactor(phi, N, g)
    hi = _substitute_power(g, p ** phi.e_prime, m)
    lo = _substitute_power(g, p ** (phi.e_prime - 1), m)
    return CyclotomicFactor(phi, N, poly_div_exact(hi, lo, m))


def _substitute_power(g: Coeffs, k: int, m: int) -> Coeffs:
    out = [0] * ((len(g) - 1) * k + 1)
    for i, c in enumerate(g):
        out[i * k] = c
    return normalize(out, m)


def rational_cyclotomic_polynomial(chi: CharacterData, N: int = DEFAULT_PRECISION) -> Coeffs:
    """P_chi: the (d' * p^e')-th cyclotomic polynomial mod p^N."""
    m = chi.group.p ** N
    return normalize(cyclotomic_coeffs(chi.d_prime * chi.group.p ** chi.e_prime), m)
