"""Tests for the WKB coefficient backends."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from borelwkb.apps.bessel import BesselInstance, bessel_equation
from borelwkb.apps.oscillator import OscillatorInstance, oscillator_equation
from borelwkb.coeffs import (
    PolyC, PolyVar, RayJets, bessel_coeff_p, bessel_p_of_z, bessel_table, build_ray_table, coeffs_appendixA,
    coeffs_collocation, coeffs_from_exponential, exact_kappa, exp_to_series, oscillator_A1, oscillator_A2_zrec,
    recursion_step
)
from borelwkb.coeffs.collocation import RayCoefficients
from borelwkb.coeffs.jets import series_derivative, series_mul, series_reciprocal, series_sqrt
from borelwkb.coeffs.table import table_from_polys
from borelwkb.transform import Sign, compute_xi
from borelwkb.utils.errors import DomainError, ValidationError

F = Fraction


def poly(*coeffs):
    return PolyC([F(c) for c in coeffs], PolyVar.P)


class TestPolyC:
    """Test exact polynomial arithmetic."""

    def test_arithmetic_stays_exact(self):
        a = poly(1, F(1, 2))
        b = poly(0, 0, F(1, 3))

        product = a * b + 2
        assert product.is_exact
        assert product.coeffs == (F(2), F(0), F(1, 3), F(1, 6))

    def test_complex_promotes(self):
        assert not (poly(1) * 0.5j).is_exact

    def test_calculus(self):
        p = poly(3, 2, 1)
        assert p.derivative() == poly(2, 2)
        assert p.integral() == poly(0, 3, 1, F(1, 3))
        assert p.reflect() == poly(3, -2, 1)

    def test_trailing_zeros_trimmed(self):
        assert poly(1, 0, 0).degree == 0
        assert PolyC([]).degree == -1

    def test_variables_do_not_mix(self):
        with pytest.raises(ValueError):
            poly(1) + PolyC([1], PolyVar.XI)

    def test_exact_rational(self):
        assert poly(F(-5, 24), 1).exact_rational == [(-5, 24), (1, 1)]
        assert PolyC([0.5j]).exact_rational is None

    def test_dict_round_trip(self):
        p = poly(F(1, 8), 0, F(-5, 24))
        assert PolyC.from_dict(p.to_dict()) == p

    def test_evaluation(self):
        p = poly(1, 1)
        assert p(F(1, 2)) == F(3, 2)
        assert np.allclose(p(np.array([0.0, 1.0])), [1.0, 2.0])


class TestBesselPolynomials:
    """Test the exact Bessel coefficients in p."""

    def test_first_coefficients(self):
        """Test A_1..A_3 for kappa = 0."""
        assert bessel_coeff_p(0, 0) == 1
        assert bessel_coeff_p(1, 0) == poly(0, F(1, 8), 0, F(-5, 24))
        assert bessel_coeff_p(2, 0) == poly(0, 0, F(9, 128), 0, F(-77, 192), 0, F(385, 1152))
        assert bessel_coeff_p(3, 0) == PolyC([0, 0, 0, F(30375, 414720), 0, F(-369603, 414720), 0,
                                              F(765765, 414720), 0, F(-425425, 414720)])

    def test_shifted_order(self):
        """Test A_1 = (1 - 4 kappa^2)/8 p - kappa/2 p^2 - 5/24 p^3."""
        assert bessel_coeff_p(1, F(1, 2)) == poly(0, 0, F(-1, 4), F(-5, 24))
        assert bessel_coeff_p(1, F(1, 3)) == poly(0, F(5, 72), F(-1, 6), F(-5, 24))

    def test_minus_branch_reflects(self):
        for n in range(1, 5):
            assert bessel_coeff_p(n, 0, Sign.MINUS) == bessel_coeff_p(n, 0).reflect()

    @pytest.mark.parametrize("n", range(1, 7))
    def test_degree_and_parity(self, n):
        """Test A_n has degree 3n and the parity of n when kappa = 0."""
        p = bessel_coeff_p(n, 0)
        assert p.degree == 3 * n
        assert all(c == 0 for k, c in enumerate(p.coeffs) if (k - n) % 2)

    def test_table(self):
        table = bessel_table(4, 0, Sign.MINUS)
        assert table.N == 4
        assert table.is_polynomial
        assert table[2] == bessel_coeff_p(2, 0, Sign.MINUS)

    def test_table_needs_unit_first_entry(self):
        with pytest.raises(ValidationError):
            table_from_polys([poly(2)], Sign.PLUS, {})

    def test_table_require(self):
        with pytest.raises(ValidationError):
            bessel_table(3, 0).values_at(0.1j, 5)

    def test_exact_kappa(self):
        assert exact_kappa(0.5) == F(1, 2)
        assert exact_kappa("2/3") == F(2, 3)
        assert exact_kappa(0.5 + 1j) == 0.5 + 1j

    def test_p_of_z(self):
        assert abs(bessel_p_of_z(2.0) + 1j / np.sqrt(3.0)) < 1e-15
        with pytest.raises(DomainError):
            bessel_p_of_z(1.0)

    def test_negative_index(self):
        with pytest.raises(ValidationError):
            bessel_coeff_p(-1, 0)


def _brute_force_exponential(E, N):
    """Coefficients 1..N of exp(sum_n E_n x^n) by summing powers of the exponent."""
    exponent = [F(0)] + list(E[:N])
    result = [F(0)] * (N + 1)
    term = [F(1)] + [F(0)] * N
    for k in range(N + 1):
        for n in range(N + 1):
            result[n] += term[n]
        nxt = [F(0)] * (N + 1)
        for i, a in enumerate(term):
            for j, b in enumerate(exponent):
                if i + j <= N:
                    nxt[i + j] += a * b
        term = [c / (k + 1) for c in nxt]
    return result[1:]


class TestExponentialForm:
    """Test the conversion from the exponential form."""

    @given(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=12), min_size=1, max_size=7))
    @settings(max_examples=50, deadline=None)
    def test_matches_exponential_series(self, E):
        assert exp_to_series(E, len(E)) == _brute_force_exponential(E, len(E))

    def test_needs_enough_values(self):
        with pytest.raises(ValidationError):
            exp_to_series([F(1)], 2)


class TestSeriesArithmetic:
    """Test the truncated power series used around the ray nodes."""

    def setup_method(self):
        self.geometric = np.ones((1, 8), dtype=complex)
        self.one_minus_w = np.zeros((1, 8), dtype=complex)
        self.one_minus_w[0, :2] = [1.0, -1.0]

    def test_reciprocal_of_geometric_series(self):
        expected = self.one_minus_w
        assert np.allclose(series_reciprocal(self.geometric), expected, atol=1e-15)

    def test_product_truncates(self):
        product = series_mul(self.geometric, self.one_minus_w, 5)
        assert product.shape == (1, 5)
        assert np.allclose(product, [[1, 0, 0, 0, 0]], atol=1e-15)

    def test_square_root_keeps_the_branch(self):
        """Test sqrt(1 - w) = 1 - w/2 - w^2/8 - ... with the root -1."""
        root = series_sqrt(self.one_minus_w, np.array([-1.0]))
        assert np.allclose(root[0, :4], [-1.0, 0.5, 0.125, 0.0625], atol=1e-15)
        assert np.allclose(series_mul(root, root), self.one_minus_w, atol=1e-14)

    def test_derivative(self):
        assert np.allclose(series_derivative(self.geometric), [np.arange(1, 8)])

    @given(st.lists(st.complex_numbers(max_magnitude=4, allow_nan=False, allow_infinity=False),
                    min_size=3, max_size=6).filter(lambda c: abs(c[0]) > 0.5))
    @settings(max_examples=50, deadline=None)
    def test_reciprocal_inverts(self, coeffs):
        a = np.array([coeffs], dtype=complex)
        identity = series_mul(a, series_reciprocal(a))
        expected = np.zeros_like(identity)
        expected[0, 0] = 1.0
        assert np.allclose(identity, expected, atol=1e-9 * max(1.0, np.max(np.abs(a))) ** len(coeffs))


@pytest.mark.slow
class TestRayBackends:
    """Test the ray backends against the exact and closed-form coefficients."""

    @pytest.mark.parametrize("kappa, sign", [(0, Sign.MINUS), (0, Sign.PLUS), (F(1, 2), Sign.MINUS)])
    def test_collocation_matches_polynomials(self, kappa, sign):
        """Test collocated A_n at the anchor against the polynomials in p."""
        inst = BesselInstance(nu=1.0, kappa=kappa, z=2.0)
        eq = bessel_equation(inst, sign)
        table = build_ray_table(eq, compute_xi(eq.potential, 2.0), 6)

        collocated = table.values_at(0.0)
        exact = bessel_table(6, kappa, sign).values_at(inst.p)
        assert np.max(np.abs(collocated - exact)) < 1e-9

    @pytest.mark.parametrize("sign", [Sign.MINUS, Sign.PLUS])
    def test_high_orders_stay_accurate(self, sign):
        """Test A_n up to n = 14 keep their relative accuracy."""
        inst = BesselInstance(nu=1.0, kappa=0, z=2.0)
        eq = bessel_equation(inst, sign)
        table = build_ray_table(eq, compute_xi(eq.potential, 2.0), 14)

        collocated = table.values_at(0.0)
        exact = bessel_table(14, 0, sign).values_at(inst.p)
        relative = np.abs(collocated[1:] - exact[1:]) / np.abs(exact[1:])
        assert np.max(relative) < 1e-7

    def test_slopes_match_polynomials(self):
        """Test the stored xi-derivatives against dp/dxi times the derivative in p."""
        inst = BesselInstance(nu=1.0, kappa=F(1, 2), z=2.0)
        eq = bessel_equation(inst, Sign.MINUS)
        table = build_ray_table(eq, compute_xi(eq.potential, 2.0), 6)

        exact = bessel_table(6, F(1, 2), Sign.MINUS).derivative_matrix(table.path)
        scale = np.max(np.abs(exact), axis=1)[1:]
        error = np.max(np.abs(table.derivative_matrix() - exact), axis=1)[1:]
        assert np.all(error < 1e-8 * scale)

    def test_jets_reproduce_pointwise_coefficients(self):
        """Test the node jets of phi and psi against the direct formulas."""
        inst = BesselInstance(nu=1.0, kappa=F(1, 2), z=2.0)
        eq = bessel_equation(inst, Sign.MINUS)
        ray = build_ray_table(eq, compute_xi(eq.potential, 2.0), 1).path

        jets = RayJets.sample(eq, ray, 6)
        direct = RayCoefficients.sample(eq, ray)
        assert np.allclose(jets.phi[:, 0], direct.phi.values, rtol=1e-12, atol=1e-14)
        assert np.allclose(jets.psi[:, 0], direct.psi.values, rtol=1e-12, atol=1e-14)
        assert np.allclose(jets.d_xi(jets.phi)[:, 0], direct.dphi.values, rtol=1e-10, atol=1e-13)
        assert np.allclose(jets.q(Sign.MINUS)[:, 0], direct.q.values, rtol=1e-10, atol=1e-13)

    def test_exponential_form_matches_collocation(self):
        inst = BesselInstance(nu=1.0, kappa=F(1, 2), z=2.0)
        eq = bessel_equation(inst, Sign.MINUS)
        table = build_ray_table(eq, compute_xi(eq.potential, 2.0), 5)

        assembled = coeffs_from_exponential(eq, table.path, 5)
        assert np.max(np.abs(assembled.sample_matrix() - table.sample_matrix())) < 1e-7

    def test_exponential_tables(self):
        """Test E_1 = A_1 and the zero first entries."""
        inst = BesselInstance(nu=1.0, kappa=0, z=2.0)
        eq = bessel_equation(inst, Sign.MINUS)
        table = build_ray_table(eq, compute_xi(eq.potential, 2.0), 3)

        e_table, f_table = coeffs_appendixA(eq, table.path, 3)
        assert e_table.quantity == "E" and f_table.quantity == "F"
        assert np.all(e_table[0].values == 0)
        assert np.allclose(e_table[1].values, table[1].values, atol=1e-10)

    def test_oscillator_closed_forms(self):
        """Test A_1 and A_2 of the oscillator on the minus ray through z = 3."""
        inst = OscillatorInstance(u=10.0, lam=0.3, ell=1, z=3.0)
        eq = oscillator_equation(inst, Sign.MINUS)
        ray = build_ray_table(eq, compute_xi(eq.potential, 3.0), 2).path

        table = coeffs_collocation(eq, ray, 2)
        A1 = oscillator_A1(0.3, 1, 3.0, Sign.MINUS)
        A2 = oscillator_A2_zrec(0.3, 1, 3.0, Sign.MINUS)
        assert abs(table[1].anchor_value - A1) < 1e-7 * max(1.0, abs(A1))
        assert abs(table[2].anchor_value - A2) < 1e-6 * max(1.0, abs(A2))

    def test_oscillator_exact_states(self):
        """Test the minus coefficients vanish for lambda = 0 and l = 0."""
        inst = OscillatorInstance(u=10.0, lam=0.0, ell=0, z=3.0)
        eq = oscillator_equation(inst, Sign.MINUS)
        ray = build_ray_table(eq, compute_xi(eq.potential, 3.0), 1).path

        assert oscillator_A1(0.0, 0, 3.0, Sign.MINUS) == 0
        jets = RayJets.sample(eq, ray, 4)
        A1 = recursion_step(jets.constant(1.0, 3), jets, Sign.MINUS)
        assert A1.shape == (len(ray), 2)
        assert np.max(np.abs(A1)) < 1e-9
