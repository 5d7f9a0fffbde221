"""Tests for Stirling numbers and factorial-series expansions."""

import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from borelwkb.apps.bessel import BesselInstance, bessel_bound_context, bessel_equation, bessel_eta, bessel_true_eta
from borelwkb.apps.summation import Method
from borelwkb.coeffs import PolyC, bessel_coeff_polys, bessel_table, build_ray_table
from borelwkb.factorial import (
    B_coefficient_bound, B_from_A, B_recursive, B_recursive_bessel, B_symbolic, FactorialSeriesExpansion,
    TailInputs, default_omega, default_sigma, eval_factorial_series, factorial_denominator_bound, factorial_expansion,
    factorial_tail_bound, log_denominator, omega_degree, stirling
)
from borelwkb.transform import Sign, compute_xi
from borelwkb.utils.errors import Overflow, ParameterOrder, ValidationError


class TestStirling:
    """Test the Stirling triangle."""

    def test_rows(self):
        S = stirling(4)

        assert S.row(0) == (1,)
        assert S.row(3) == (0, 2, -3, 1)
        assert S.row(4) == (0, -6, 11, -6, 1)

    @given(st.integers(min_value=0, max_value=15), st.integers(min_value=-10, max_value=20))
    @settings(max_examples=100, deadline=None)
    def test_falling_factorial(self, n, x):
        """Test rows expand x (x - 1) ... (x - n + 1)."""
        assert stirling(15).falling_factorial(n, x) == math.prod(x - j for j in range(n))

    def test_out_of_range(self):
        S = stirling(5)
        assert S(5, 7) == 0
        with pytest.raises(ValidationError):
            S(6, 1)

    def test_large_entries_stay_exact(self):
        """Test s(n, 1) = (-1)^(n-1) (n-1)! beyond 64 bits."""
        assert stirling(40)(40, 1) == -math.factorial(39)

    def test_int64_export(self):
        matrix = stirling(10).to_int64()
        assert matrix.dtype == np.int64
        assert matrix[10, 1] == -math.factorial(9)
        with pytest.raises(Overflow):
            stirling(30).to_int64()

    def test_negative_size(self):
        with pytest.raises(ValidationError):
            stirling(-1)


class TestFactorialCoefficients:
    """Test the conversion to factorial-series coefficients."""

    @pytest.mark.parametrize("kappa, sign", [(0, Sign.PLUS), (0, Sign.MINUS), (Fraction(1, 2), Sign.PLUS)])
    def test_stirling_sum_matches_recursion(self, kappa, sign):
        """Test the Stirling sum and the shifted recursion agree exactly."""
        omega = Fraction(5, 4)
        A = bessel_coeff_polys(7, kappa, sign)[1:]

        assert B_from_A(A, omega) == B_recursive_bessel(kappa, omega, 7, sign)

    def test_first_coefficients(self):
        """Test B_1 = A_1, B_2 = A_2 and B_3 = A_3 + omega A_2."""
        A = [Fraction(3), Fraction(-2), Fraction(7)]
        omega = Fraction(1, 2)

        assert B_from_A(A, omega) == [Fraction(3), Fraction(-2), Fraction(7) + omega * Fraction(-2)]

    def test_float_omega(self):
        A = [1.0, 2.0, 3.0, 4.0]
        B = B_from_A(A, 0.5)
        # B_4 = A_4 + 3 omega A_3 + 2 omega^2 A_2
        assert abs(B[3] - (4.0 + 1.5 * 3.0 + 0.5 * 2.0)) < 1e-15

    def test_symbolic_form(self):
        """Test the polynomial in omega evaluates to the Stirling sum."""
        polys = bessel_coeff_polys(5, 0)
        omega = Fraction(2, 3)
        expected = B_from_A(polys[1:], omega)

        for n, terms in enumerate(B_symbolic(polys, 5)):
            value = PolyC([])
            for j, term in terms.items():
                value = value + term * omega ** j
            assert value == expected[n]
            assert omega_degree(terms) == (n - 1 if n > 1 else 0)

    def test_empty(self):
        assert B_from_A([], 1.0) == []

    def test_concurrent_expansions(self):
        """Test expansions built on worker threads equal the serial ones."""
        table = bessel_table(20, 0, Sign.MINUS)
        points = [0.3j, 0.5j, -0.4j, 0.6j] * 4
        serial = [factorial_expansion(table, p, 1.5, 20, 0j).B for p in points]

        with ThreadPoolExecutor(max_workers=8) as pool:
            threaded = list(pool.map(lambda p: factorial_expansion(table, p, 1.5, 20, 0j).B, points))

        for expected, actual in zip(serial, threaded):
            assert np.array_equal(expected, actual)


class TestFactorialBounds:
    """Test the explicit bounds of the factorial series."""

    def test_denominator_bound_first_term(self):
        assert abs(factorial_denominator_bound(3.0 + 4.0j, 1.0, 0) - 1.0 / 3.0) < 1e-14

    @pytest.mark.parametrize("u", [3.0 + 4.0j, 10.0, 2.0 - 7.0j])
    def test_denominator_bound_holds(self, u):
        for n in range(8):
            exact = 1.0 / abs(np.prod(u + 1.5 * np.arange(n + 1)))
            assert exact <= factorial_denominator_bound(u, 1.5, n) * (1 + 1e-12)

    def test_log_denominator(self):
        u = 2.0 + 1.0j
        assert abs(np.exp(log_denominator(u, 0.5, 3)) - u * (u + 0.5) * (u + 1.0) * (u + 1.5)) < 1e-12

    def test_parameter_order(self):
        with pytest.raises(ParameterOrder):
            factorial_tail_bound(1.0, 0.0, 1.0, 0.5, 1.0, 0.9, 10)
        with pytest.raises(ParameterOrder):
            factorial_tail_bound(1.0, 0.0, 1.0, 1.0, 1.0, 5.0, 10)
        with pytest.raises(ParameterOrder):
            B_coefficient_bound(1.0, 0.0, 1.0, 2.0, 1.0, 3)

    def test_tail_bound_decreases(self):
        bounds = [factorial_tail_bound(1.0, 0.5, 1.0, 0.5, 1.0, 6.0, N) for N in (5, 10, 20)]
        assert bounds[0] > bounds[1] > bounds[2] > 0

    def test_zero_constant(self):
        assert B_coefficient_bound(0.0, 0.0, 1.0, 0.5, 1.0, 3) == 0.0

    def test_default_omega(self):
        assert abs(default_omega(1.0) - 1.25 * math.pi / 4.0) < 1e-15
        with pytest.raises(ValidationError):
            default_omega(0.0)


class TestFactorialEvaluation:
    """Test partial sums of the factorial series."""

    def setup_method(self):
        """Setup test environment."""
        self.expansion = FactorialSeriesExpansion(omega=1.0, sign=Sign.MINUS, B=np.array([1.0, 1.0, 2.0]),
                                                  xi=1.0)

    def test_partial_sum(self):
        value, tail = eval_factorial_series(self.expansion, 2.0)

        assert abs(value - (1 / 2 + 1 / 6 + 2 / 24)) < 1e-15
        assert math.isnan(tail)

    def test_tail_uncertified_below_omega(self):
        expansion = self.expansion.with_tail(TailInputs(C=1.0, V=0.0, sigma=0.25))

        assert math.isnan(eval_factorial_series(expansion, 0.5)[1])
        with pytest.raises(ParameterOrder):
            eval_factorial_series(expansion, 0.5, strict=True)

    def test_tail_certified(self):
        expansion = self.expansion.with_tail(TailInputs(C=1.0, V=0.0, sigma=0.25))
        _, tail = eval_factorial_series(expansion, 4.0, 3)

        assert tail == factorial_tail_bound(1.0, 0.0, 1.0, 0.25, 1.0, 4.0, 3)

    def test_bad_arguments(self):
        with pytest.raises(ValidationError):
            eval_factorial_series(self.expansion, 2.0, 4)
        with pytest.raises(ValidationError):
            eval_factorial_series(self.expansion, -2.0)


@pytest.mark.slow
class TestFactorialSeriesAccuracy:
    """Test the factorial series against reference values."""

    @pytest.mark.parametrize("z", [2.0, 2.5, 3.0])
    def test_bessel_reference(self, z):
        inst = BesselInstance(nu=25.0, kappa=0, z=z)
        eta = bessel_eta(inst, Sign.MINUS, Method.FACTORIAL, 30)

        assert abs(eta.value - bessel_true_eta(inst, Sign.MINUS)) < 1e-7

    def test_ray_recursion_matches_stirling_sum(self):
        """Test the shifted recursion on a ray against the Stirling sum of collocated A_n."""
        inst = BesselInstance(nu=1.0, kappa=Fraction(1, 2), z=2.0)
        eq = bessel_equation(inst, Sign.MINUS)
        table = build_ray_table(eq, compute_xi(eq.potential, 2.0), 5)
        omega = default_omega(eq.d)

        recursive = B_recursive(eq, table.path, omega, 5)
        summed = B_from_A([table[n] for n in range(1, 6)], omega)
        for b_rec, b_sum in zip(recursive, summed):
            assert abs(b_rec.anchor_value - b_sum.anchor_value) < 1e-7

    @pytest.mark.parametrize("z", [2.0, 3.0])
    def test_tail_bound_and_laplace_agreement(self, z):
        """Test the certified tail covers the true error and 40 terms reproduce the Laplace sum."""
        inst = BesselInstance(nu=25.0, kappa=0, z=z)
        eq = bessel_equation(inst, Sign.MINUS)
        omega = default_omega(eq.d)
        sigma = default_sigma(omega, inst.nu)
        context = bessel_bound_context(inst, Sign.MINUS, r=math.pi / (4.0 * omega))
        tail = TailInputs(C=context.C, V=context.V_unit / sigma, sigma=sigma, weight=context.weight)
        expansion = factorial_expansion(bessel_table(40, 0, Sign.MINUS), inst.p, omega, 40, inst.xi,
                                        eq.d).with_tail(tail)
        truth = bessel_true_eta(inst, Sign.MINUS)

        for N in (5, 10, 20, 30, 40):
            partial, bound = eval_factorial_series(expansion, inst.nu, N, strict=True)
            # The reference itself is only good to about 1e-15.
            assert abs(partial - truth) <= bound + 1e-13

        laplace = bessel_eta(inst, Sign.MINUS, Method.BOREL, 16, L=7, M=7).value
        assert abs(eval_factorial_series(expansion, inst.nu)[0] - laplace) < 1e-7
