"""
Copyright (c) 2026 The shiftops developers

Released under the MIT license, see LICENSE.txt.
"""

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
import unittest

from shiftops.report import PASS, SKIPPED
from shiftops import symbolic_checks as sc

FLAT = {'backend': 'flat', 'n': Fraction(3), 'mu': None, 'K': None, 'jets': None}
SPHERE = {'backend': 'einstein', 'n': Fraction(3), 'mu': Fraction(1, 2), 'K': 8, 'jets': None}
GENERIC = {'backend': 'generic', 'n': Fraction(3), 'mu': None, 'K': None, 'jets': None}

class TestSymbolicChecks(unittest.TestCase):
    """ run small instances of the exact identity checks
    """

    def assertStatus(self, report, status=PASS):
        self.assertEqual(report.status, status, '{}: {}'.format(report.id, report.residual))

    def test_weyl_algebra(self):
        self.assertStatus(sc.heisenberg_check('weyl/heisenberg'))
        self.assertStatus(sc.conjugation_check('weyl/conjugation'))
        self.assertStatus(sc.associativity_check('weyl/associativity', seed=0))

    def test_dual_route(self):
        """ definition and conjugation forms agree on flat and sphere collars
        """
        for params in (FLAT, SPHERE):
            self.assertStatus(sc.dual_route_check('x', lam=Fraction(1, 3), **params))

    def test_flat_identities(self):
        self.assertStatus(sc.general_sl2_check('x', a=2, **FLAT))
        self.assertStatus(sc.gz_operator_check('x', **FLAT))
        self.assertStatus(sc.adjoint_shift_check('x', **FLAT))

    def test_collar(self):
        for params in (FLAT, SPHERE):
            self.assertStatus(sc.collar_consistency_check('x', **params))
        self.assertStatus(sc.einstein_agreement_check('x', n=Fraction(3),
            mu=Fraction(1, 2), K=8))

    def test_shift_context_is_memoized(self):
        first = sc.shift_context('einstein', Fraction(3), Fraction(1, 2), 8)
        self.assertIs(sc.shift_context('einstein', 3, Fraction(1, 2), 8), first)
        with self.assertRaises(ValueError):
            sc.shift_context('hyperbolic', Fraction(3))

    def test_shift_context_across_threads(self):
        """ concurrent requests share one context and one memoized iterate
        """
        def build(_):
            ctx = sc.shift_context('einstein', Fraction(5), Fraction(1, 2), 8)
            return ctx, sc.iterated_shift(ctx, sc.LAMBDA, 2)
        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(build, range(16)))
        self.assertEqual(len({id(ctx) for ctx, _ in results}), 1)
        self.assertEqual(len({id(shift) for _, shift in results}), 1)

    def test_delta(self):
        for N in (1, 2, 3):
            self.assertStatus(sc.delta_check('x', n=Fraction(3), N=N))

    def test_tangential(self):
        self.assertStatus(sc.tangential_even_check('x', N=1, **GENERIC))
        self.assertStatus(sc.tangential_odd_check('x', N=1, **GENERIC))

    def test_generic_paneitz(self):
        """ S_4 over a general metric is known far enough for P_4 and Q_4
        """
        params = dict(GENERIC, n=Fraction(5))
        self.assertStatus(sc.tangential_even_check('x', N=2, **params))
        self.assertStatus(sc.tangential_odd_check('x', N=2, **params))
        self.assertStatus(sc.q_vanish_check('x', N=2, **params))
        self.assertStatus(sc.jet_independence_check('x', n=Fraction(5), N=4))
        critical = dict(GENERIC, n=Fraction(4))
        self.assertStatus(sc.q_holographic_check('x', N=2, route='critical-derivative',
            **critical))

    def test_q_curvature(self):
        self.assertStatus(sc.q_holographic_check('x', N=1, route='shift', **GENERIC))

    def test_solution_operators(self):
        params = dict(GENERIC, n=Fraction(5))
        self.assertStatus(sc.t2_check('x', **params))

    def test_building_blocks(self):
        self.assertStatus(sc.m2_check('x', n=Fraction(3), mu=Fraction(1, 2), K=10))

    def test_skips(self):
        """ unavailable adjoint rules, even n and missing expansions are skipped
        """
        self.assertStatus(sc.adjoint_shift_check('x', **GENERIC), SKIPPED)
        self.assertStatus(sc.m2_check('x', n=Fraction(4), mu=Fraction(1, 2), K=10), SKIPPED)
        self.assertStatus(sc.second_np_check('x', n=Fraction(4), mu=Fraction(1, 2), K=10,
            N=2, k=1), SKIPPED)
        self.assertStatus(sc.leading_bracket_check('x', n=Fraction(3), mu=Fraction(1, 2),
            K=10, N=4), SKIPPED)
