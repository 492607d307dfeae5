"""
Copyright (c) 2026 The shiftops developers

Released under the MIT license, see LICENSE.txt.
"""

import unittest

from shiftops.kernels import NumericCheckConfig
from shiftops.scattering import (scattering_matrix, expected_residue, symmetric_residue,
    richardson, scattering_residue_check, gamma_accuracy_check, MAX_LEVELS)

class TestScattering(unittest.TestCase):
    """ unit test residues of the cylinder scattering matrix
    """

    def test_expected_residue(self):
        """ for n = 5, mu = 1 the first residue is -3/16
        """
        self.assertAlmostEqual(expected_residue(5, 1, 1), -0.1875)
        self.assertAlmostEqual(expected_residue(4, 1, 1), 0.0)

    def test_symmetric_residue(self):
        self.assertAlmostEqual(symmetric_residue(lambda x: 1 / x, 0.0, 1e-3), 1.0)

    def test_richardson(self):
        """ even-power errors are removed level by level
        """
        diagonal = richardson([1.01, 1.0025])
        self.assertEqual(len(diagonal), 2)
        self.assertAlmostEqual(diagonal[-1], 1.0)

    def test_matrix_is_symmetric(self):
        matrix = scattering_matrix(3.3, 0.4, 5)
        self.assertAlmostEqual(matrix[0, 1], matrix[1, 0])

    def test_residue_check(self):
        outcome = scattering_residue_check(5, 1, 1, NumericCheckConfig())
        self.assertTrue(outcome.passed, outcome.residual)
        self.assertAlmostEqual(outcome.details['exact'], -0.1875)
        self.assertTrue(outcome.details['converged'])

    def test_nearby_gamma_pole(self):
        """ a gamma pole 1/14 away from n/2 + 1 slows the eps ladder down
        """
        for n in (7, 9):
            outcome = scattering_residue_check(n, 3 / 7, 1, NumericCheckConfig())
            self.assertTrue(outcome.passed, outcome.details)
            self.assertTrue(outcome.details['converged'])
            self.assertLessEqual(len(outcome.details['epsilons']), MAX_LEVELS)

    def test_extra_gamma_pole_skips(self):
        """ mu = 0 at n = 4 adds a gamma pole at the residue point
        """
        outcome = scattering_residue_check(4, 0, 1, NumericCheckConfig())
        self.assertIsNone(outcome.passed)

    def test_residue_index(self):
        with self.assertRaises(ValueError):
            scattering_residue_check(5, 1, 0, NumericCheckConfig())

    def test_gamma_accuracy(self):
        outcome = gamma_accuracy_check(NumericCheckConfig(points=50))
        self.assertTrue(outcome.passed, outcome.residual)
