"""
Copyright (c) 2026 The shiftops developers

Released under the MIT license, see LICENSE.txt.
"""

from fractions import Fraction
import math
import unittest

from shiftops.scalars import ScalarPoly
from shiftops.tangential import TangentialElement, LAP, EINSTEIN, FREE
from shiftops.geometry import flat_jets, einstein_jets, generic_jets, reduce_to_einstein

class TestFlatJets(unittest.TestCase):
    """ unit test the upper half space backend
    """

    def test_exact(self):
        jets = flat_jets(3)
        self.assertTrue(jets.exact)
        self.assertEqual(jets.order, math.inf)
        self.assertEqual(jets.mode, EINSTEIN)
        self.assertEqual(jets.J, 0)

    def test_low_dimension(self):
        with self.assertRaises(ValueError):
            flat_jets(1)

class TestEinsteinJets(unittest.TestCase):
    """ unit test the Poincare-Einstein collar over an Einstein boundary
    """

    def test_volume(self):
        """ on the round 3-sphere v = (1 - r^2/4)^3
        """
        jets = einstein_jets(3, Fraction(1, 2), 8)
        self.assertEqual(jets.order, 8)
        self.assertEqual(jets.v.coefficient(2), Fraction(-3, 4))
        self.assertEqual(jets.v.coefficient(4), Fraction(3, 16))
        self.assertEqual(jets.v.coefficient(6), Fraction(-1, 64))
        self.assertEqual(jets.dlogv.coefficient(1), Fraction(-3, 2))
        self.assertTrue((jets.w * jets.w).equal_to_order(jets.v))

    def test_boundary_scalar_curvature(self):
        """ J of the compactified metric restricts to J = n mu
        """
        jets = einstein_jets(5, Fraction(-1), 8)
        self.assertEqual(jets.J, -5)
        self.assertEqual(jets.j_bar().coefficient(0), -5)

    def test_truncation_too_small(self):
        with self.assertRaises(ValueError):
            einstein_jets(3, 0, 3)

class TestGenericJets(unittest.TestCase):
    """ unit test the collar over a general boundary metric
    """

    def test_orders(self):
        jets = generic_jets(3)
        self.assertEqual(jets.mode, FREE)
        self.assertEqual(jets.lap_h.order, 4)
        self.assertEqual(jets.v.order, 6)
        self.assertEqual(jets.dlogv.order, 5)
        self.assertEqual(jets.order, 4)
        self.assertEqual(jets.dlogv.coefficient(1), -ScalarPoly.atom('J'))

    def test_extension(self):
        """ Laplacian jets at r^4 raise the Laplacian order to six
        """
        extension = {'n': Fraction(3), 'deltaBar': {4: TangentialElement({(LAP, LAP): 1})},
            'v': {}}
        jets = generic_jets(3, extension)
        self.assertEqual(jets.lap_h.order, 6)

    def test_extension_mismatch(self):
        """ check jet files for the wrong n or order are rejected
        """
        with self.assertRaises(ValueError):
            generic_jets(3, {'n': Fraction(5), 'deltaBar': {}, 'v': {}})
        with self.assertRaises(ValueError):
            generic_jets(3, {'deltaBar': {6: TangentialElement({(LAP, ): 1})}, 'v': {}})
        with self.assertRaises(ValueError):
            generic_jets(3, {'deltaBar': {}, 'v': {8: ScalarPoly.const(1)}})
        with self.assertRaises(ValueError):
            generic_jets(1)

    def test_reduce_to_einstein(self):
        """ the generic volume reduces to (1 - mu r^2/2)^n
        """
        mu = Fraction(1, 2)
        _, v = reduce_to_einstein(generic_jets(3), mu)
        expected = einstein_jets(3, mu, 8).v
        self.assertTrue(v.equal_to_order(expected))
