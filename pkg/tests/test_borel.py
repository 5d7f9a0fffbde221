"""Tests for Borel-Pade-Laplace summation."""

import math

import numpy as np
import pytest
from scipy.special import exp1

from borelwkb.apps.bessel import BesselInstance, bessel_equation, bessel_eta, bessel_true_eta
from borelwkb.apps.summation import Method
from borelwkb.borel import (
    BorelSeries, BorelSummation, ContractionGrid, PadeApproximant, borel_radius, borel_series, borel_sum, check_poles,
    contraction_check, default_degrees, evaluate, laplace_eval, ode_residual, pade, remainder_formula
)
from borelwkb.coeffs import bessel_table
from borelwkb.coeffs.bessel import bessel_p_of_z
from borelwkb.coeffs.collocation import default_ray_map
from borelwkb.transform import Sign, compute_xi
from borelwkb.transform.rays import trace_mapped_ray
from borelwkb.utils.errors import DegeneratePade, PoleOnContour, ValidationError


def alternating_series(n_terms=8):
    """Borel transform 1/(1 + t), the Borel sum of sum (-1)^n n!/u^(n+1)."""
    coeffs = np.array([(-1.0) ** n for n in range(n_terms)], dtype=complex)
    return BorelSeries(coeffs=coeffs, point=0j, sign=Sign.MINUS, radius_estimate=1.0)


class TestPade:
    """Test Pade approximants."""

    def test_recovers_rational_function(self):
        approximant = pade(alternating_series(), 1, 1)

        assert abs(approximant(0.5) - 1.0 / 1.5) < 1e-14
        assert np.allclose(approximant.poles(), [-1.0])

    def test_derivative(self):
        approximant = pade(alternating_series(), 1, 1)

        assert abs(approximant.derivative(2)(1.0) - 2.0 / 8.0) < 1e-14

    def test_too_few_terms(self):
        with pytest.raises(ValidationError):
            pade(alternating_series(4), 2, 2)

    def test_rank_deficient(self):
        """Test a geometric series has no [1/2] approximant."""
        series = BorelSeries(coeffs=np.ones(5, dtype=complex), point=0j, sign=Sign.PLUS, radius_estimate=1.0)
        with pytest.raises(DegeneratePade):
            pade(series, 1, 2)

    def test_zero_series(self):
        series = BorelSeries(coeffs=np.zeros(5, dtype=complex), point=0j, sign=Sign.PLUS,
                             radius_estimate=math.inf)
        assert pade(series, 2, 2)(0.3) == 0

    def test_default_degrees(self):
        assert default_degrees(16) == (7, 7)
        assert default_degrees(5) == (2, 2)


class TestLaplace:
    """Test the Laplace integral and its companions."""

    def setup_method(self):
        """Setup test environment."""
        self.series = alternating_series()
        self.summation = BorelSummation.prepare(self.series, 1, 1, d=1.0)

    def test_exponential_integral(self):
        """Test the Laplace integral of 1/(1 + t) is e^u E1(u)."""
        value = laplace_eval(self.summation, 10.0)
        assert abs(value - math.exp(10.0) * exp1(10.0)) < 1e-13

    def test_truncation_point(self):
        result = evaluate(self.summation, 10.0)

        assert result.T == 4.0
        assert result.err_estimate > 0
        assert result.u == 10.0

    def test_needs_positive_real_part(self):
        with pytest.raises(ValidationError):
            laplace_eval(self.summation, -1.0 + 2.0j)

    def test_pole_on_contour(self):
        approximant = PadeApproximant(numerator=np.array([1.0]), denominator=np.array([1.0, -2.0]), L=0, M=1)
        with pytest.raises(PoleOnContour):
            check_poles(approximant, 2.0)

    def test_pole_off_contour(self):
        check_poles(pade(self.series, 1, 1), 4.0)

    @pytest.mark.parametrize("N", [1, 2, 4])
    def test_remainder_formula(self, N):
        """Test the remainder after N - 1 terms against the summed value."""
        u = 10.0
        value = laplace_eval(self.summation, u)
        expected = value - (self.series.asymptotic_sum(u, N - 1) if N > 1 else 0.0)

        assert abs(remainder_formula(self.series, self.summation, u, N) - expected) < 1e-13

    def test_ode_residual_of_exact_solution(self):
        """Test e^(-u xi) solves W'' = u^2 W."""
        zero = lambda s: 0j  # noqa: E731
        assert ode_residual(zero, zero, zero, Sign.MINUS, 5.0, 0.5) < 1e-12

    def test_ode_residual_needs_room(self):
        zero = lambda s: 0j  # noqa: E731
        with pytest.raises(ValidationError):
            ode_residual(zero, zero, zero, Sign.MINUS, 5.0, 0.01, h=0.05)


class TestBorelSeries:
    """Test Borel coefficients of the Bessel table."""

    def test_coefficients_are_scaled(self):
        table = bessel_table(6, 0, Sign.MINUS)
        p = 0.4j
        series = borel_series(table, p, 6)

        for n in range(6):
            assert abs(series.coeffs[n] * math.factorial(n) - complex(table[n + 1](p))) < 1e-15

    def test_asymptotic_sum(self):
        table = bessel_table(6, 0, Sign.MINUS)
        series = borel_series(table, 0.4j, 6)
        direct = sum(complex(table[n](0.4j)) / 20.0 ** n for n in range(1, 6))

        assert abs(series.asymptotic_sum(20.0, 5) - direct) < 1e-15

    def test_needs_terms(self):
        with pytest.raises(ValidationError):
            borel_series(bessel_table(3, 0), 0.4j, 0)

    def test_root_test_radius(self):
        """Test |c_n|^(-1/n) recovers the radius of a geometric series."""
        coeffs = np.array([2.0 ** -n for n in range(12)], dtype=complex)
        series = BorelSeries(coeffs=coeffs, point=0j, sign=Sign.MINUS, radius_estimate=2.0)

        assert borel_radius(series) == pytest.approx(2.0)
        assert borel_radius(alternating_series()) == pytest.approx(1.0)


@pytest.mark.slow
class TestBesselSummation:
    """Test summation of the Bessel corrections against the reference functions."""

    @pytest.mark.parametrize("sign", [Sign.MINUS, Sign.PLUS])
    def test_borel_sum_matches_reference(self, bessel_instance, sign):
        eta = bessel_eta(bessel_instance, sign, Method.BOREL, 16, L=7, M=7)
        truth = bessel_true_eta(bessel_instance, sign)

        assert eta.method is Method.BOREL
        assert abs(eta.value - truth) < 1e-8

    def test_borel_beats_truncation(self):
        """Test summation improves on the six-term truncated series at a moderate order."""
        inst = BesselInstance(nu=8.0, kappa=0, z=2.0)
        truth = bessel_true_eta(inst, Sign.MINUS)
        summed = bessel_eta(inst, Sign.MINUS, Method.BOREL, 16, L=7, M=7).value
        truncated = bessel_eta(inst, Sign.MINUS, Method.ASYMPTOTIC, 6).value

        assert abs(summed - truth) < abs(truncated - truth)

    def test_contraction(self):
        """Test the integral equation iteration contracts on the minus ray."""
        inst = BesselInstance(nu=1.0, kappa=0, z=2.0)
        eq = bessel_equation(inst, Sign.MINUS)
        anchor = compute_xi(eq.potential, 2.0)
        ray = trace_mapped_ray(eq.potential, anchor, Sign.MINUS, 128, default_ray_map(eq, anchor))

        report = contraction_check(eq, ray, ContractionGrid(n_x=48, n_s=48), K=10)

        assert report.iterations >= 2
        assert max(report.ratios) <= 0.6
        assert report.deltas[-1] < 1e-2 * report.deltas[0]

    @pytest.mark.parametrize("N", [2, 4, 6])
    def test_watson_consistency(self, bessel_instance, N):
        """Test the Borel sum differs from the N-term series by O(u^(-N-1))."""
        eq = bessel_equation(bessel_instance, Sign.MINUS)
        table = bessel_table(16, 0, Sign.MINUS)
        p = bessel_instance.p

        scaled = []
        for u in (20.0, 40.0, 80.0, 160.0):
            summed = borel_sum(table, p, u, 16, L=7, M=7, d=eq.d).value
            partial = sum(complex(table[n](p)) / u ** n for n in range(1, N + 1))
            scaled.append(abs(summed - partial) * u ** N)

        assert max(scaled[1:]) <= scaled[0]
        assert scaled[-1] < 0.5 * scaled[0]

    @pytest.mark.parametrize("nu", [10.0, 20.0, 40.0])
    @pytest.mark.parametrize("z", [2.0, 3.0])
    def test_pade_degrees_stable(self, nu, z):
        """Test raising both Pade degrees moves the sum by less than ten error estimates."""
        inst = BesselInstance(nu=nu, kappa=0, z=z)
        eq = bessel_equation(inst, Sign.MINUS)
        table = bessel_table(18, 0, Sign.MINUS)

        base = borel_sum(table, inst.p, nu, 18, L=7, M=7, d=eq.d)
        raised = borel_sum(table, inst.p, nu, 18, L=8, M=8, d=eq.d)

        assert abs(base.value - raised.value) < 10 * base.err_estimate

    def test_sum_decays_along_the_ray(self):
        """Test the Borel sum falls tenfold between the anchor and a distant ray sample."""
        inst = BesselInstance(nu=20.0, kappa=0, z=2.0)
        eq = bessel_equation(inst, Sign.MINUS)
        anchor = compute_xi(eq.potential, inst.z)
        ray = trace_mapped_ray(eq.potential, anchor, Sign.MINUS, 64, default_ray_map(eq, anchor))
        far = next(pt for pt in ray.samples if abs(pt.xi - anchor.xi) >= 40.0)
        table = bessel_table(8, 0, Sign.MINUS)

        near_value = borel_sum(table, inst.p, 20.0, 8, L=3, M=3, d=eq.d).value
        far_value = borel_sum(table, bessel_p_of_z(far.z), 20.0, 8, L=3, M=3, d=eq.d).value

        assert abs(far_value) <= 0.1 * abs(near_value)
