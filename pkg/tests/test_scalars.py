"""
Copyright (c) 2026 The shiftops developers

Released under the MIT license, see LICENSE.txt.
"""

from fractions import Fraction
import math
import unittest

from shiftops.exceptions import UnreducibleApplication
from shiftops.scalars import ScalarPoly, ScalarSeries, scalar_apply, series_transcendental

J = ScalarPoly.atom('J')
PSQ = ScalarPoly.atom('Psq')
DJ = ScalarPoly.atom('DJ')

class TestScalarPoly(unittest.TestCase):
    """ unit test polynomials in J, Psq and DJ
    """

    def test_substitute(self):
        value = J * J - PSQ
        self.assertEqual(value.substitute({'J': 3, 'Psq': Fraction(3, 5), 'DJ': 0}),
            Fraction(42, 5))

    def test_str(self):
        self.assertEqual(str(J * 2 + 1), '1 + 2*J')
        self.assertEqual(str(ScalarPoly()), '0')

    def test_constant(self):
        self.assertTrue(ScalarPoly.const(4).is_constant())
        self.assertEqual(ScalarPoly.const(4), 4)
        with self.assertRaises(ValueError):
            J.constant_value()

    def test_cancellation(self):
        """ check zero coefficients are dropped
        """
        self.assertTrue((J - J).is_zero())
        self.assertEqual((J + 1) * (J - 1), J ** 2 - 1)

class TestScalarSeries(unittest.TestCase):
    """ unit test truncated series in r
    """

    def test_orders_drop_terms(self):
        """ check terms at or beyond the guaranteed order are dropped
        """
        series = ScalarSeries({1: 1, 5: 1}, order=4)
        self.assertEqual(set(series.coeffs), {Fraction(1)})
        with self.assertRaises(ValueError):
            ScalarSeries({-1: 1})
        with self.assertRaises(ValueError):
            ScalarSeries({Fraction(1, 2): 1})

    def test_product_order(self):
        first = ScalarSeries({0: 1}, order=4)
        second = ScalarSeries({1: 1}, order=3)
        product = first * second
        self.assertEqual(product.order, 3)
        self.assertEqual(product.coefficient(1), 1)

    def test_power(self):
        """ check (1 - r^2/2)^2 = 1 - r^2 + r^4/4
        """
        base = ScalarSeries({0: 1, 2: Fraction(-1, 2)})
        square = base.power(2, order=6)
        self.assertEqual(square.order, 6)
        self.assertEqual(square.coefficient(2), -1)
        self.assertEqual(square.coefficient(4), Fraction(1, 4))

        root = square.sqrt()
        self.assertTrue((root * root).equal_to_order(square))
        self.assertEqual(root.coefficient(2), Fraction(-1, 2))
        self.assertEqual(root.coefficient(4), 0)

    def test_negative_rational_power(self):
        """ check (1 - r^2/2)^(-1/2) = 1 + r^2/4 + 3 r^4/32 and 1/(1 + J r^2)
        """
        base = ScalarSeries({0: 1, 2: Fraction(-1, 2)}, order=6)
        value = base.power(Fraction(-1, 2))
        self.assertEqual(value.order, 6)
        self.assertEqual(value.coefficient(2), Fraction(1, 4))
        self.assertEqual(value.coefficient(4), Fraction(3, 32))
        self.assertTrue((value * value * base).equal_to_order(ScalarSeries({0: 1})))

        v = ScalarSeries({0: 1, 2: J}, order=5)
        self.assertEqual(v.reciprocal().coefficient(4), J * J)

    def test_power_needs_order(self):
        with self.assertRaises(ValueError):
            ScalarSeries({0: 1, 1: 1}).power(Fraction(1, 2))
        with self.assertRaises(ValueError):
            ScalarSeries({0: 2, 1: 1}).power(Fraction(1, 2), order=4)

    def test_log_derivative(self):
        """ check v'/v for v = 1 - J r^2 / 2
        """
        v = ScalarSeries({0: 1, 2: J * Fraction(-1, 2)}, order=5)
        dlogv = v.log_derivative()
        self.assertEqual(dlogv.order, 4)
        self.assertEqual(dlogv.coefficient(1), -J)
        self.assertEqual(dlogv.coefficient(3), J * J * Fraction(-1, 2))

    def test_equal_to_order(self):
        first = ScalarSeries({0: 1, 3: 1}, order=4)
        second = ScalarSeries({0: 1}, order=math.inf)
        self.assertTrue(first.equal_to_order(second, 3))
        self.assertFalse(first.equal_to_order(second))
        with self.assertRaises(ValueError):
            first.equal_to_order(second, 5)

    def test_transcendental(self):
        series = ScalarSeries({0: 1, 2: 1}, order=6)
        self.assertEqual(series_transcendental(series, 'd/dr'), series.derivative())
        self.assertEqual(series_transcendental(series, 'sqrt'), series.sqrt())
        with self.assertRaises(ValueError):
            series_transcendental(series, 'multiply')
        with self.assertRaises(ValueError):
            series_transcendental(series, 'exp')

class TestScalarApply(unittest.TestCase):
    """ unit test applying tangential words to scalars
    """

    def test_words_act_right_to_left(self):
        self.assertEqual(scalar_apply(('LAP', 'MULT_J'), 1), DJ)
        self.assertEqual(scalar_apply(('MULT_J', 'LAP'), 1), ScalarPoly())

    def test_constants_are_killed(self):
        for letter in ('GJD', 'DPD', 'L', 'LAP'):
            self.assertTrue(scalar_apply((letter, ), 5).is_zero())

    def test_unreducible(self):
        """ check steps outside the rule table raise
        """
        with self.assertRaises(UnreducibleApplication):
            scalar_apply(('LAP', ), PSQ)
        with self.assertRaises(UnreducibleApplication):
            scalar_apply(('GJD', ), J)
        with self.assertRaises(UnreducibleApplication):
            scalar_apply(('H4', ), 1)

    def test_declared_killers(self):
        self.assertTrue(scalar_apply(('H4', ), 1, killers=('H4', )).is_zero())
