""" Script to verify shift-operator identities exactly and numerically.
"""

import argparse
import asyncio
import logging
import sys

from shiftops.ratfunc import parse_rational
from shiftops.checks import SuiteConfig, SUITES, collect_checks
from shiftops.runner import run_checks, exit_code
from shiftops.report import emit_report

def _split(values):
    ''' flatten repeated and comma-separated option values
    '''
    if values is None:
        return None
    return [x.strip() for value in values for x in value.split(',') if x.strip()]

def get_options(argv=None):
    """ get the command line switches
    """

    ############################################################################
    # CLI options in common
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--log", default='shiftops.log', help="where to write log files")
    parent.add_argument("--workers", type=int, help="number of checks to run "
        "at once (defaults to the CPU count)")
    parent.add_argument("--processes", action="store_true", default=False,
        help="run checks in worker processes rather than threads")

    parser = argparse.ArgumentParser(parents=[parent],
        description='exact and numeric checks of shift-operator identities')
    parser.add_argument("--suite", action="append", help="suite to run, repeat "
        "or comma-separate for several. One of: {}. Defaults to all "
        "suites.".format(', '.join(SUITES)))
    parser.add_argument("--n", action="append", help="boundary dimensions, e.g. "
        "--n 3,5,7")
    parser.add_argument("--mu", action="append", help="Einstein constants as exact "
        "rationals, e.g. --mu 0,1/2,-1")
    parser.add_argument("--nmax", type=int, default=4, help="largest N for "
        "iterated identities")
    parser.add_argument("--order", type=int, default=14, help="truncation order "
        "of the Einstein collar series")
    parser.add_argument("--seed", type=int, default=0, help="seed for sampled "
        "points and random series")
    parser.add_argument("--points", type=int, default=100, help="sample points "
        "per numeric check")
    parser.add_argument("--jets", help="Path to a JSON file with further "
        "coefficients of the generic collar geometry.")
    parser.add_argument("--json", help="path to write the JSON report to")
    parser.add_argument("--format", choices=["text", "json"], default="text",
        help="format of the report on stdout or --out")
    parser.add_argument("--out", help="output filename, defaults to stdout")
    parser.add_argument("--list", action="store_true", default=False,
        help="list the selected checks with their anchors and exit")

    args = parser.parse_args(argv)
    return parser, args

def build_config(args):
    ''' SuiteConfig from parsed arguments

    Raises:
        ValueError for unparseable grid values
    '''
    suites = _split(args.suite)
    cfg = SuiteConfig(suites=list(SUITES) if suites is None else suites,
        nmax=args.nmax, order=args.order, seed=args.seed, jets=args.jets,
        points=args.points)
    if args.n is not None:
        cfg.n_grid = [parse_rational(x) for x in _split(args.n)]
    if args.mu is not None:
        cfg.mu_grid = [parse_rational(x) for x in _split(args.mu)]
    return cfg

def main(argv=None):
    parser, args = get_options(argv)
    FORMAT = '%(asctime)-15s %(message)s'
    logging.basicConfig(filename=args.log, format=FORMAT, level=logging.INFO)

    try:
        cfg = build_config(args)
        checks = collect_checks(cfg)
    except (ValueError, KeyError, OSError) as err:
        parser.error(str(err))

    if args.list:
        for check in checks:
            print('{}\t{}'.format(check.id, check.anchor))
        return 0

    reports = asyncio.run(run_checks(checks, args.workers, args.processes))

    config = cfg.to_dict()
    if args.json is not None:
        emit_report(reports, 'json', args.json, config)
    emit_report(reports, args.format, args.out, config, stream=sys.stdout)
    code = exit_code(reports)
    logging.info('finished {} checks, exit code {}'.format(len(reports), code))
    return code

if __name__ == '__main__':
    sys.exit(main())
