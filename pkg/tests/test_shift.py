"""
Copyright (c) 2026 The shiftops developers

Released under the MIT license, see LICENSE.txt.
"""

from fractions import Fraction
import unittest

from shiftops.ratfunc import LAMBDA, RatFunc
from shiftops.tangential import L
from shiftops.weyl import OperatorSeries, identity, ddr
from shiftops.geometry import flat_jets, einstein_jets, generic_jets
from shiftops.shift import (ShiftContext, shift_operator, iterated_shift, flat_shift_P,
    act_on_power, ddr_w)

class TestShiftOperator(unittest.TestCase):
    """ unit test the shift operator and its iterates
    """

    def setUp(self):
        self.flat = ShiftContext(flat_jets(3))
        self.sphere = ShiftContext(einstein_jets(3, Fraction(1, 2), 8))

    def test_flat_shift(self):
        """ on the upper half space S(lam) = r L + r d^2 - (2 lam - 2) d for n = 3
        """
        expected = OperatorSeries({(1, 0, (L, )): 1, (1, 2, ()): 1,
            (0, 1, ()): RatFunc.polynomial([2, -2])})
        self.assertEqual(shift_operator(self.flat), expected)
        self.assertEqual(flat_shift_P(3), shift_operator(self.flat, LAMBDA - 2))

    def test_conjugation_form(self):
        """ check both forms agree at a rational lambda
        """
        lam = Fraction(1, 3)
        self.assertEqual(shift_operator(self.flat, lam, 'conjugation'),
            shift_operator(self.flat, lam))
        with self.assertRaises(ValueError):
            shift_operator(self.flat, LAMBDA, 'conjugation')
        with self.assertRaises(ValueError):
            shift_operator(self.flat, LAMBDA, 'other')

    def test_iterated(self):
        """ check S_0 is the identity and iterates are memoized
        """
        self.assertEqual(iterated_shift(self.flat, LAMBDA, 0), identity(self.flat.context))
        first = iterated_shift(self.sphere, LAMBDA, 2)
        self.assertIs(iterated_shift(self.sphere, LAMBDA, 2), first)
        self.assertEqual(first, shift_operator(self.sphere) * shift_operator(self.sphere, LAMBDA + 1))

    def test_m(self):
        self.assertEqual(self.sphere.m, 2)
        self.assertEqual(ShiftContext(flat_jets(4)).m, Fraction(5, 2))

    def test_act_on_power(self):
        """ the compactified Laplacian of r is v'/v
        """
        image = act_on_power(self.sphere.jets.lap_bar, 1)
        self.assertEqual(image.coefficient(1, 0), Fraction(-3, 2))
        self.assertFalse(image.coefficient(0, 0))

    def test_ddr_w(self):
        self.assertEqual(ddr_w(self.flat), ddr(1, self.flat.context))
        half = ddr_w(self.sphere) - ddr(1, self.sphere.context)
        self.assertEqual(half.coefficient(1, 0), Fraction(-3, 4))

    def test_memo(self):
        """ the factory runs once and a raising factory leaves nothing behind
        """
        calls = []
        def factory():
            calls.append(1)
            return len(calls)
        self.assertEqual(self.flat.memo(('count', 1), factory), 1)
        self.assertEqual(self.flat.memo(('count', 1), factory), 1)
        self.assertEqual(len(calls), 1)

        def failing():
            raise RuntimeError('no value')
        with self.assertRaises(RuntimeError):
            self.flat.memo(('failing', ), failing)
        self.assertEqual(self.flat.memo(('failing', ), factory), 2)

class TestGenericShifts(unittest.TestCase):
    """ guaranteed orders of shifts over a general boundary metric
    """

    def setUp(self):
        self.ctx = ShiftContext(generic_jets(5))

    def test_orders(self):
        """ S is known to order 5 with one derivative in its tail, S_4 to order 2
        """
        shift = shift_operator(self.ctx)
        self.assertEqual((shift.order, shift.errdeg), (5, 1))
        fourth = iterated_shift(self.ctx, LAMBDA, 4)
        self.assertEqual(fourth.order, 2)
        self.assertTrue(fourth.integral)
