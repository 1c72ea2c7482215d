import pytest

from ramc.characters import (
    CharacterData,
    CyclicGroupSpec,
    GroupRingElement,
    NotInvertible,
    PADIC,
    RATIONAL,
    enumerate_padic_characters,
    enumerate_rational_characters,
    frobenius_omega,
    group_ring_invert,
    idempotent,
    local_cyclotomic_factor,
    norm_element,
    padic_components,
    padic_orbits,
    rational_cyclotomic_polynomial,
    split_character,
)
from ramc.padicpoly import normalize, poly_mul


def group(d, p, e, **kw):
    return CyclicGroupSpec(d=d, p=p, e=e, **kw)


class TestEnumeration:
    def test_degree6(self):
        chars = enumerate_rational_characters(group(2, 3, 1))
        pairs = sorted((c.d_prime, c.e_prime) for c in chars)
        assert pairs == [(1, 0), (1, 1), (2, 0), (2, 1)]
        assert sorted(c.degree for c in chars) == [1, 1, 2, 2]
        assert sum(c.degree for c in chars) == 6

    def test_degree9(self):
        chars = enumerate_rational_characters(group(1, 3, 2))
        assert sorted(c.degree for c in chars) == [1, 2, 6]

    def test_degree14(self):
        chars = enumerate_rational_characters(group(2, 7, 1))
        assert sorted(c.degree for c in chars) == [1, 1, 6, 6]

    def test_degree_sum_property(self):
        for d in (1, 2, 4, 5, 8, 10):
            for e in (0, 1, 2):
                g = group(d, 3, e)
                assert sum(c.degree for c in enumerate_rational_characters(g)) == g.order


class TestSplit:
    def test_full_character(self):
        g = group(2, 3, 1, tame_conductor=229, wild_conductor=37)
        chi = CharacterData(RATIONAL, g, 2, 1)
        chi0, chip = split_character(chi)
        assert (chi0.d_prime, chi0.e_prime) == (2, 0)
        assert (chip.d_prime, chip.e_prime) == (1, 1)
        assert chi0.conductor == 229 and chip.conductor == 37
        assert chi.conductor == 229 * 37

    def test_trivial(self):
        g = group(2, 3, 1)
        chi = CharacterData(RATIONAL, g, 1, 0)
        chi0, chip = split_character(chi)
        assert chi0.is_trivial and chip.is_trivial

    def test_wild_only(self):
        g = group(2, 3, 1)
        chi = CharacterData(RATIONAL, g, 1, 1)
        chi0, chip = split_character(chi)
        assert chi0.is_trivial
        assert (chip.d_prime, chip.e_prime) == (1, 1)


class TestOrbits:
    def test_quadratic(self):
        g = group(2, 3, 0)
        chi0 = CharacterData(RATIONAL, g, 2, 0)
        phis = padic_orbits(chi0, 3)
        assert [phi.orbit for phi in phis] == [(1,)]

    def test_d5(self):
        g = group(5, 3, 0)
        chi0 = CharacterData(RATIONAL, g, 5, 0)
        phis = padic_orbits(chi0, 3)
        assert [phi.orbit for phi in phis] == [(1, 2, 3, 4)]

    def test_d8(self):
        g = group(8, 3, 0)
        chi0 = CharacterData(RATIONAL, g, 8, 0)
        phis = padic_orbits(chi0, 3)
        assert [phi.orbit for phi in phis] == [(1, 3), (5, 7)]


class TestIdempotents:
    def test_quadratic_explicit_mod9(self):
        g = group(2, 3, 1)
        phi0 = CharacterData(PADIC, g, 2, 0, (1,))
        e = idempotent(phi0, N=2)
        # (1 - tau)/2 with 2^{-1} = 5 mod 9; tau = sigma_chi^3
        expected = [0] * 6
        expected[0], expected[3] = 5, 4
        assert list(e.coeffs) == expected

    def test_trivial_explicit_mod9(self):
        g = group(2, 3, 1)
        triv = CharacterData(PADIC, g, 1, 0, (0,))
        e = idempotent(triv, N=2)
        expected = [0] * 6
        expected[0], expected[3] = 5, 5
        assert list(e.coeffs) == expected

    def test_order4_orbit_trace(self):
        # phi0 of order 4, p = 3: conjugate pair sums to (1 - tau^2)/2
        g = group(4, 3, 0)
        phi0 = CharacterData(PADIC, g, 4, 0, (1, 3))
        N = 6
        m = 3 ** N
        e = idempotent(phi0, N=N)
        half = pow(2, -1, m)
        expected = [0] * 4
        expected[0], expected[2] = half, -half % m
        assert list(e.coeffs) == expected

    @pytest.mark.parametrize("d,e_exp", [(2, 1), (4, 1), (5, 0), (8, 1), (10, 0)])
    def test_algebra(self, d, e_exp):
        g = group(d, 3, e_exp)
        N = 8
        idems = []
        for d_prime in [dd for dd in range(1, d + 1) if d % dd == 0]:
            chi0 = CharacterData(RATIONAL, g, d_prime, 0)
            for phi0 in padic_orbits(chi0, 3, N):
                idems.append(idempotent(phi0, N=N))
        # e^2 = e and pairwise orthogonality
        for i, a in enumerate(idems):
            assert (a * a - a).is_zero()
            for b in idems[i + 1:]:
                assert (a * b).is_zero()
        # partition of unity
        total = GroupRingElement.zero(g, N)
        for a in idems:
            total = total + a
        assert (total - GroupRingElement.one(g, N)).is_zero()

    def test_rational_idempotent_is_orbit_sum(self):
        g = group(8, 3, 1)
        N = 10
        chi0 = CharacterData(RATIONAL, g, 8, 0)
        e_chi = idempotent(chi0, N=N)
        total = GroupRingElement.zero(g, N)
        for phi0 in padic_orbits(chi0, 3, N):
            total = total + idempotent(phi0, N=N)
        assert (e_chi - total).is_zero()

    def test_rejects_p_dividing_d(self):
        with pytest.raises(ValueError):
            group(3, 3, 1)


class TestInversion:
    def test_invert_one_minus_generator(self):
        g = group(2, 3, 1)
        N = 10
        x = GroupRingElement.one(g, N) - GroupRingElement.sigma_chi_power(g, 1, N)
        phi0 = CharacterData(PADIC, g, 2, 0, (1,))
        e = idempotent(phi0, N=N)
        y = group_ring_invert(x, e, N)
        assert (x * y - e).is_zero()
        assert (e * y - y).is_zero()

    def test_augmentation_kernel_not_invertible(self):
        g = group(2, 3, 1)
        N = 6
        # 1 - sigma with sigma of order 3 dies under augmentation
        x = GroupRingElement.one(g, N) - GroupRingElement.sigma_chi_power(g, g.sigma_exponent, N)
        e = GroupRingElement.one(g, N)
        with pytest.raises(NotInvertible):
            group_ring_invert(x, e, N)

    def test_identity_inverts_to_idempotent(self):
        g = group(2, 3, 1)
        N = 8
        phi0 = CharacterData(PADIC, g, 2, 0, (1,))
        e = idempotent(phi0, N=N)
        y = group_ring_invert(GroupRingElement.one(g, N), e, N)
        assert (y - e).is_zero()

    def test_omega_times_idempotent_invertible(self):
        # Omega = 1 - Frob^{-1} for an order-6 Frobenius is invertible in the
        # nontrivial tame component
        g = group(2, 3, 1)
        N = 20
        omega = frobenius_omega(g, 1, N)
        phi0 = CharacterData(PADIC, g, 2, 0, (1,))
        e = idempotent(phi0, N=N)
        y = group_ring_invert(omega, e, N)
        assert (omega * y - e).is_zero()


class TestLocalFactors:
    def test_phi6(self):
        g = group(2, 3, 1)
        phi = CharacterData(PADIC, g, 2, 1, (1,))
        fac = local_cyclotomic_factor(phi, N=10)
        m = 3 ** 10
        assert fac.coeffs == normalize((1, -1, 1), m)  # x^2 - x + 1
        assert fac.degree == phi.degree

    def test_phi3(self):
        g = group(1, 3, 1)
        phi = CharacterData(PADIC, g, 1, 1, (0,))
        fac = local_cyclotomic_factor(phi, N=10)
        assert fac.coeffs == (1, 1, 1)

    def test_phi8_split(self):
        g = group(8, 3, 0)
        m = 3 ** 20
        chi = CharacterData(RATIONAL, g, 8, 0)
        facs = [local_cyclotomic_factor(phi, N=20) for phi in padic_components(chi)]
        assert sorted(f.degree for f in facs) == [2, 2]
        prod = poly_mul(facs[0].coeffs, facs[1].coeffs, m)
        assert prod == rational_cyclotomic_polynomial(chi, 20)

    @pytest.mark.parametrize("d,e", [(1, 1), (1, 2), (2, 1), (4, 1), (5, 1), (8, 2), (10, 1), (11, 1)])
    def test_product_reproduces_rational_polynomial(self, d, e):
        g = group(d, 3, e)
        N = 20
        m = 3 ** N
        for chi in enumerate_rational_characters(g):
            prod = (1,)
            for phi in padic_components(chi):
                prod = poly_mul(prod, local_cyclotomic_factor(phi, N).coeffs, m)
            assert prod == rational_cyclotomic_polynomial(chi, N), (chi.d_prime, chi.e_prime)


class TestGroupRingBasics:
    def test_norm_element_kills_one_minus_sigma(self):
        g = group(2, 3, 1)
        N = 6
        nu = norm_element(g, N)
        x = GroupRingElement.one(g, N) - GroupRingElement.sigma_chi_power(g, g.sigma_exponent, N)
        assert (nu * x).is_zero()

    def test_pow(self):
        g = group(2, 3, 1)
        s = GroupRingElement.sigma_chi_power(g, 1, 4)
        assert (s ** 6 - GroupRingElement.one(g, 4)).is_zero()
