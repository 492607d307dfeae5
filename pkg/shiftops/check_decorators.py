""" turns check bodies into CheckReport producers
"""

import functools
import logging
import time

from shiftops.exceptions import (TruncationInsufficient, UnreducibleApplication,
    AdjointRuleUnavailable)
from shiftops.report import CheckReport, Outcome, PASS, FAIL, SKIPPED

SKIPPABLE = (TruncationInsufficient, UnreducibleApplication, AdjointRuleUnavailable)

def _render(residual):
    if residual is None:
        return ''
    if isinstance(residual, float):
        return '{:.6e}'.format(residual)
    if hasattr(residual, 'serialize'):
        return residual.serialize()
    return str(residual)

def report_check(anchor):
    ''' wrap a check body so that it returns a CheckReport

    The body is called with the check parameters as keyword arguments. It
    returns an Outcome, or a tuple of (passed, residual) with an optional
    details dict. A passed value of None marks the check as skipped, with the
    residual as the reason.

    Metadata and rule-table exceptions become skipped reports, other ValueErrors
    and ArithmeticErrors become failures carrying the exception text.
    '''
    def decorator(func):
        @functools.wraps(func)
        def wrapper(check_id, **params):
            start = time.perf_counter()
            details = {}
            try:
                result = func(**params)
                if not isinstance(result, Outcome):
                    result = Outcome(*result) if len(result) == 3 else Outcome(result[0], result[1], {})
                details = dict(result.details or {})
                residual = _render(result.residual)
                if result.passed is None:
                    status = SKIPPED
                    logging.warning('{} skipped: {}'.format(check_id, residual))
                elif result.passed:
                    status = PASS
                else:
                    status = FAIL
                    residual = residual.strip() or 'check returned false without a residual'
            except SKIPPABLE as err:
                status = SKIPPED
                residual = '{}: {}'.format(type(err).__name__, err)
                logging.warning('{} skipped: {}'.format(check_id, residual))
            except (ValueError, ArithmeticError) as err:
                status = FAIL
                residual = '{}: {}'.format(type(err).__name__, err)
            ms = (time.perf_counter() - start) * 1000
            return CheckReport(check_id, anchor, params, status, residual, ms, details)
        wrapper.anchor = anchor
        return wrapper
    return decorator
