"""
Copyright (c) 2026 The shiftops developers

Released under the MIT license, see LICENSE.txt.
"""

import unittest

from shiftops.exceptions import TruncationInsufficient, AdjointRuleUnavailable
from shiftops.report import Outcome, PASS, FAIL, SKIPPED
from shiftops.weyl import r_power
from shiftops.check_decorators import report_check

@report_check('returns its arguments')
def echo(passed, residual, details=None):
    if details is None:
        return passed, residual
    return passed, residual, details

@report_check('raises')
def raising(error):
    raise error

class TestReportCheck(unittest.TestCase):
    """ unit test turning check bodies into reports
    """

    def test_pass(self):
        report = echo('weyl/echo', passed=True, residual='')
        self.assertEqual(report.status, PASS)
        self.assertEqual(report.id, 'weyl/echo')
        self.assertEqual(report.anchor, 'returns its arguments')
        self.assertEqual(report.params, {'passed': True, 'residual': ''})
        self.assertGreaterEqual(report.ms, 0)
        self.assertEqual(echo.anchor, 'returns its arguments')

    def test_fail_needs_a_residual(self):
        """ a failing body without a residual still carries text
        """
        report = echo('x', passed=False, residual='')
        self.assertEqual(report.status, FAIL)
        self.assertTrue(report.residual)

    def test_residual_rendering(self):
        report = echo('x', passed=False, residual=1e-3)
        self.assertEqual(report.residual, '1.000000e-03')
        report = echo('x', passed=False, residual=r_power(2))
        self.assertEqual(report.residual, r_power(2).serialize())

    def test_skip(self):
        report = echo('x', passed=None, residual='needs odd n', details={'n': 4})
        self.assertEqual(report.status, SKIPPED)
        self.assertEqual(report.residual, 'needs odd n')
        self.assertEqual(report.details, {'n': 4})

    def test_outcome(self):
        @report_check('outcome')
        def body():
            return Outcome(True, 0.0, {'seed': 1})
        report = body('x')
        self.assertEqual(report.status, PASS)
        self.assertEqual(report.details, {'seed': 1})

    def test_skippable_errors(self):
        for error in (TruncationInsufficient('order 2'), AdjointRuleUnavailable('GJD')):
            report = raising('x', error=error)
            self.assertEqual(report.status, SKIPPED)
            self.assertTrue(report.residual.startswith(type(error).__name__))

    def test_arithmetic_errors_fail(self):
        report = raising('x', error=ZeroDivisionError('division by zero'))
        self.assertEqual(report.status, FAIL)
        self.assertEqual(report.residual, 'ZeroDivisionError: division by zero')

    def test_other_errors_propagate(self):
        with self.assertRaises(KeyError):
            raising('x', error=KeyError('missing'))
