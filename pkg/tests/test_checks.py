"""
Copyright (c) 2026 The shiftops developers

Released under the MIT license, see LICENSE.txt.
"""

import asyncio
from fractions import Fraction
import json
import os
import tempfile
import unittest

from shiftops.report import PASS, FAIL
from shiftops.check_decorators import report_check
from shiftops.checks import (SuiteConfig, SUITES, Check, make_check, collect_checks,
    kernel_shift_check, scattering_check)
from shiftops.runner import run_checks, run_suite, exit_code
from shiftops import symbolic_checks as sc

@report_check('always breaks')
def broken_check():
    raise KeyError('missing')

class TestSuiteConfig(unittest.TestCase):
    """ unit test configuration validation
    """

    def test_defaults(self):
        cfg = SuiteConfig(suites=['weyl'])
        cfg.validate()
        self.assertEqual(cfg.n_grid, [3, 5, 7, 9])
        self.assertEqual(cfg.to_dict()['mu'], ['0', '1/2', '-1', '3/7'])

    def test_invalid(self):
        """ check unusable configurations raise ValueError
        """
        bad = [SuiteConfig(),
            SuiteConfig(suites=['nope']),
            SuiteConfig(suites=['weyl'], n_grid=[]),
            SuiteConfig(suites=['weyl'], mu_grid=[]),
            SuiteConfig(suites=['weyl'], n_grid=[Fraction(1)]),
            SuiteConfig(suites=['weyl'], n_grid=[Fraction(7, 2)]),
            SuiteConfig(suites=['weyl'], nmax=0),
            SuiteConfig(suites=['numeric-flat'], points=0),
            SuiteConfig(suites=['weyl'], nmax=4, order=10)]
        for cfg in bad:
            with self.assertRaises(ValueError):
                cfg.validate()

    def test_low_order_without_einstein_suites(self):
        SuiteConfig(suites=['delta'], order=4).validate()

    def test_jet_file_dimension(self):
        handle, path = tempfile.mkstemp(suffix='.json')
        with os.fdopen(handle, 'wt') as output:
            json.dump({'n': '5'}, output)
        try:
            SuiteConfig(suites=['delta'], n_grid=[Fraction(5)], jets=path).validate()
            with self.assertRaises(ValueError):
                SuiteConfig(suites=['delta'], n_grid=[Fraction(3)], jets=path).validate()
        finally:
            os.remove(path)

class TestRegistry(unittest.TestCase):
    """ unit test building and naming checks
    """

    def test_make_check(self):
        """ check ids omit unset values, jet paths and truncation orders
        """
        check = make_check('weyl', 'dual-route', sc.dual_route_check, backend='einstein',
            n=Fraction(3), mu=Fraction(1, 2), K=14, jets=None, lam=Fraction(1, 3))
        self.assertEqual(check.id, 'weyl/dual-route/backend=einstein,n=3,mu=1/2,lam=1/3')
        self.assertEqual(check.anchor, 'definition and conjugation forms of the shift operator')
        self.assertEqual(check.params['K'], 14)

        check = make_check('numeric-flat', 'kernel-shift', kernel_shift_check, n=3, lam=2.5,
            nu=1.2, sign='+', seed=0, points=10)
        self.assertEqual(check.id, 'numeric-flat/kernel-shift/n=3,lam=2.5,nu=1.2,sign=+,seed=0')

    def test_collect(self):
        cfg = SuiteConfig(suites=['delta'], n_grid=[Fraction(3)])
        checks = collect_checks(cfg)
        self.assertEqual([x.id for x in checks], ['delta/delta/n=3,N=1',
            'delta/delta/n=3,N=2', 'delta/delta/n=3,N=3'])

    def test_all_suites(self):
        """ the full registry has unique ids and every check has an anchor
        """
        checks = collect_checks(SuiteConfig(suites=list(SUITES)))
        ids = [x.id for x in checks]
        self.assertEqual(len(ids), len(set(ids)))
        self.assertEqual(ids, sorted(ids))
        self.assertEqual({x.id.split('/')[0] for x in checks}, set(SUITES))
        for check in checks:
            self.assertTrue(check.anchor)

    def test_scattering_fixtures(self):
        checks = collect_checks(SuiteConfig(suites=['numeric-scattering'], n_grid=[Fraction(5)]))
        ids = [x.id for x in checks]
        self.assertIn('numeric-scattering/residue/n=4,mu=1,N=2,seed=0', ids)
        self.assertIn('numeric-scattering/gamma/seed=0', ids)

    def test_numeric_flat_follows_n_grid(self):
        checks = collect_checks(SuiteConfig(suites=['numeric-flat'], n_grid=[Fraction(3)]))
        ids = [x.id for x in checks]
        self.assertEqual(len(ids), 27)
        self.assertTrue(all('n=3,' in x for x in ids))
        self.assertFalse(any('n=5' in x for x in ids))
        self.assertIn('numeric-flat/kernel-shift/n=3,lam=2.5,nu=1.2,sign=+,seed=0', ids)

        checks = collect_checks(SuiteConfig(suites=['numeric-flat'],
            n_grid=[Fraction(3), Fraction(5)]))
        self.assertEqual(len(checks), 54)

    def test_run_scattering_check(self):
        report = scattering_check('x', n=Fraction(5), mu=Fraction(1), N=1, seed=0)
        self.assertEqual(report.status, PASS, report.residual)

class TestRunner(unittest.TestCase):
    """ unit test running checks concurrently
    """

    def test_run_checks(self):
        checks = [make_check('delta', 'delta', sc.delta_check, n=Fraction(3), N=N, jets=None)
            for N in (2, 1)]
        reports = asyncio.run(run_checks(checks, workers=2))
        self.assertEqual([x.id for x in reports], ['delta/delta/n=3,N=1', 'delta/delta/n=3,N=2'])
        self.assertEqual([x.status for x in reports], [PASS, PASS])
        self.assertEqual(exit_code(reports), 0)

    def test_unexpected_errors_fail(self):
        """ an exception escaping a check becomes a failing report
        """
        reports = asyncio.run(run_checks([Check('weyl/broken', broken_check, {})], workers=1))
        self.assertEqual(reports[0].status, FAIL)
        self.assertIn('KeyError', reports[0].residual)
        self.assertEqual(reports[0].anchor, 'always breaks')
        self.assertEqual(exit_code(reports), 1)

    def test_run_suite(self):
        cfg = SuiteConfig(suites=['delta'], n_grid=[Fraction(3)])
        reports = asyncio.run(run_suite(cfg, workers=1))
        self.assertEqual(len(reports), 3)
        self.assertEqual(exit_code(reports), 0)

    def test_default_scattering_grid(self):
        """ every scattering residue on the default grids passes or is skipped
        """
        cfg = SuiteConfig(suites=['numeric-scattering'])
        reports = asyncio.run(run_suite(cfg, workers=4))
        failed = [(x.id, x.residual) for x in reports if x.status == FAIL]
        self.assertEqual(failed, [])
        self.assertEqual(exit_code(reports), 0)

    def test_default_generic_registry(self):
        """ generic P_4 and Q_4 checks run on the default grid instead of skipping
        """
        cfg = SuiteConfig(suites=['tangential', 'q-holo'])
        checks = [x for x in collect_checks(cfg) if x.params.get('backend') == 'generic']
        reports = asyncio.run(run_checks(checks, workers=4))
        self.assertEqual([(x.id, x.residual) for x in reports if x.status == FAIL], [])
        status = {x.id: x.status for x in reports}
        for check_id in ('tangential/even/N=2,backend=generic,n=5',
                'tangential/odd/N=2,backend=generic,n=5',
                'q-holo/vanish/N=2,backend=generic,n=5',
                'q-holo/q-curvature/N=2,route=critical-derivative,backend=generic,n=4'):
            self.assertEqual(status[check_id], PASS, check_id)
