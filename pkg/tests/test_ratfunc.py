"""
Copyright (c) 2026 The shiftops developers

Released under the MIT license, see LICENSE.txt.
"""

from fractions import Fraction
import unittest

from shiftops.ratfunc import (RatFunc, LAMBDA, RING, pochhammer, falling_factorial,
    parse_rational, to_fraction, to_qq)

class TestRatFunc(unittest.TestCase):
    """ unit test the exact rational functions in lambda
    """

    def test_reduced_form(self):
        """ check common factors cancel and the denominator is monic
        """
        value = RatFunc((1, 1), (-1, 0, 1))
        self.assertEqual(value.num, RING.one)
        self.assertEqual(value.den, RING.gens[0] - 1)

        value = RatFunc((2, ), (0, 2))
        self.assertEqual(value.num, RING.one)
        self.assertEqual(value.den, RING.gens[0])

        value = RatFunc((1, ), (3, -3))
        self.assertEqual(value.num, RING.ground_new(to_qq(Fraction(-1, 3))))
        self.assertEqual(value.den, RING.gens[0] - 1)

    def test_zero_denominator(self):
        with self.assertRaises(ZeroDivisionError):
            RatFunc((1, ), ())
        with self.assertRaises(ZeroDivisionError):
            LAMBDA / 0

    def test_rational_conversion(self):
        """ check Fractions survive the trip through QQ
        """
        for value in (Fraction(-3, 7), Fraction(0), Fraction(5)):
            self.assertEqual(to_fraction(to_qq(value)), value)

    def test_negative_power(self):
        self.assertEqual((2 * LAMBDA - 2) ** -1, RatFunc((Fraction(1, 2), ), (-1, 1)))
        self.assertEqual(LAMBDA ** 0, 1)
        with self.assertRaises(ZeroDivisionError):
            RatFunc() ** -1

    def test_arithmetic(self):
        """ check sums, products and quotients stay reduced
        """
        value = (LAMBDA ** 2 - 1) / (LAMBDA + 1)
        self.assertEqual(value, LAMBDA - 1)
        self.assertTrue(value.is_polynomial())
        self.assertEqual(RatFunc.constant(3), 3)
        self.assertEqual(2 * LAMBDA + Fraction(1, 2), RatFunc.polynomial([Fraction(1, 2), 2]))
        self.assertEqual(1 - LAMBDA, RatFunc.polynomial([1, -1]))

    def test_evaluate(self):
        self.assertEqual((LAMBDA ** 2 + 1).evaluate(Fraction(1, 2)), Fraction(5, 4))
        with self.assertRaises(ValueError):
            (1 / (LAMBDA - 2)).evaluate(2)

    def test_residue(self):
        """ check residues at simple poles, regular points and double poles
        """
        value = 3 / ((LAMBDA - 1) * (LAMBDA - 2))
        self.assertEqual(value.residue(1), -3)
        self.assertEqual(value.residue(2), 3)
        self.assertEqual(value.residue(0), 0)
        self.assertEqual(value.pole_order(1), 1)

        with self.assertRaises(ValueError):
            (1 / (LAMBDA - 1) ** 2).residue(1)

    def test_substitute(self):
        """ check lam -> 2 lam + 1 and substitution of a constant
        """
        self.assertEqual((LAMBDA ** 2).substitute(2, 1), RatFunc.polynomial([1, 4, 4]))
        self.assertEqual((LAMBDA + 3).substitute(0, 2), 5)

    def test_derivative(self):
        self.assertEqual((LAMBDA ** 3).derivative(2), 6 * LAMBDA)
        with self.assertRaises(ValueError):
            (1 / LAMBDA).derivative()

    def test_constant_value(self):
        self.assertEqual(RatFunc.constant(Fraction(2, 3)).constant_value(), Fraction(2, 3))
        with self.assertRaises(ValueError):
            LAMBDA.constant_value()

    def test_str(self):
        self.assertEqual(str(LAMBDA ** 2 - 2 * LAMBDA + Fraction(1, 2)), 'lam**2 - 2*lam + 1/2')
        self.assertEqual(str(RatFunc()), '0')
        self.assertEqual(str(1 / (LAMBDA - 1)), '(1)/(lam - 1)')

class TestFactorials(unittest.TestCase):
    """ unit test Pochhammer symbols and rational parsing
    """

    def test_pochhammer(self):
        self.assertEqual(pochhammer(Fraction(-2), 2), 2)
        self.assertEqual(pochhammer(Fraction(5), 0), 1)
        self.assertEqual(pochhammer(LAMBDA, 2), RatFunc.polynomial([0, 1, 1]))
        with self.assertRaises(ValueError):
            pochhammer(Fraction(1), -1)

    def test_falling_factorial(self):
        self.assertEqual(falling_factorial(Fraction(1, 2), 2), Fraction(-1, 4))
        self.assertEqual(falling_factorial(3, 4), 0)

    def test_parse_rational(self):
        """ check exact rationals parse and decimals are rejected
        """
        self.assertEqual(parse_rational('3/7'), Fraction(3, 7))
        self.assertEqual(parse_rational(' -1 '), -1)
        self.assertEqual(parse_rational(Fraction(1, 2)), Fraction(1, 2))
        for text in ('0.5', '1e3', ''):
            with self.assertRaises(ValueError):
                parse_rational(text)
