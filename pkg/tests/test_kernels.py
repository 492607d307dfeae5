"""
Copyright (c) 2026 The shiftops developers

Released under the MIT license, see LICENSE.txt.
"""

from fractions import Fraction
import unittest

import numpy

from shiftops.kernels import (KernelParams, NumericCheckConfig, kernel_field,
    finite_difference_field, sample_points, residual_details, derivative_oracle_check,
    flat_shift_check, hyperbolic_shift_check, poisson_eigen_check, flat_bridge_check)

class TestKernels(unittest.TestCase):
    """ unit test the closed-form kernels and the numeric flat checks
    """

    config = NumericCheckConfig(points=20, seed=1)

    def test_params(self):
        """ check kernel parameters are validated
        """
        params = KernelParams(2.5, 1.2, 3)
        self.assertEqual(params.y, (0.0, 0.0, 0.0))
        self.assertAlmostEqual(params.alpha, -0.3)
        with self.assertRaises(ValueError):
            KernelParams(2.5, 1.2, 1)
        with self.assertRaises(ValueError):
            KernelParams(2.5, 1.2, 3, sign='*')
        with self.assertRaises(ValueError):
            KernelParams(2.5, 1.2, 3, y=(0.0, 0.0))

    def test_config(self):
        with self.assertRaises(ValueError):
            NumericCheckConfig(tolerance=0)
        with self.assertRaises(ValueError):
            NumericCheckConfig(points=0)

    def test_kernel_value(self):
        """ K+(lam, nu) = r^(lam + nu - n - 1) q^-nu at (1, 1, 0, 0)
        """
        params = KernelParams(4.0, 1.0, 3)
        field = kernel_field(params, (1.0, 1.0, 0.0, 0.0))
        self.assertAlmostEqual(field.value, 0.5)
        self.assertAlmostEqual(field.gradient[0], 0.0)
        self.assertAlmostEqual(field.gradient[1], -0.5)
        with self.assertRaises(ValueError):
            kernel_field(params, (0.0, 1.0, 0.0, 0.0))

    def test_finite_differences(self):
        """ fourth-order differences are exact on cubics
        """
        func = lambda p: p[0] ** 3 + p[0] * p[1] ** 2
        value, gradient, laplacian = finite_difference_field(func, numpy.array([1.0, 2.0]), 0.1)
        self.assertAlmostEqual(value, 5.0)
        self.assertAlmostEqual(gradient[0], 7.0)
        self.assertAlmostEqual(gradient[1], 4.0)
        self.assertAlmostEqual(laplacian, 8.0)

    def test_sampling_is_seeded(self):
        first = sample_points(3, self.config)
        second = sample_points(3, self.config)
        self.assertTrue(numpy.array_equal(first, second))
        self.assertEqual(first.shape, (20, 4))
        self.assertTrue((first[:, 0] >= 0.3).all())

        details = residual_details(self.config, first, [1e-12] * 20)
        self.assertEqual(sum(details['histogram']), 20)
        self.assertEqual(details['seed'], 1)

    def test_derivative_oracle(self):
        for sign in ('+', '-'):
            outcome = derivative_oracle_check(KernelParams(2.5, 1.2, 3, sign=sign), self.config)
            self.assertTrue(outcome.passed, outcome.residual)

    def test_flat_shift(self):
        for sign in ('+', '-'):
            outcome = flat_shift_check(KernelParams(2.5, 1.5, 3, sign=sign), self.config)
            self.assertTrue(outcome.passed, outcome.residual)

    def test_hyperbolic_shift(self):
        outcome = hyperbolic_shift_check(3, 0.9, 1.7, self.config)
        self.assertTrue(outcome.passed, outcome.residual)

    def test_poisson(self):
        outcome = poisson_eigen_check(5, 0.6, self.config)
        self.assertTrue(outcome.passed, outcome.residual)

    def test_bridge(self):
        outcome = flat_bridge_check(3, Fraction(1, 3), self.config)
        self.assertTrue(outcome.passed, outcome.residual)
