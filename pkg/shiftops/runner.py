""" runs checks concurrently and gathers their reports
"""

import asyncio
from concurrent.futures import ThreadPoolExecutor, ProcessPoolExecutor
import logging
import os

from shiftops.checks import collect_checks
from shiftops.report import CheckReport, FAIL

class CheckPool:
    ''' async context manager running checks in an executor

    At most `workers` checks are in flight at once. Checks are plain callables
    returning CheckReports, so they also run in worker processes.
    '''
    def __init__(self, workers=None, processes=False):
        ''' initialize the pool

        Args:
            workers: number of concurrent checks, defaults to the CPU count
            processes: use worker processes instead of threads
        '''
        self.workers = workers or os.cpu_count() or 1
        self.processes = processes
        self.executor = None
    async def __aenter__(self):
        kind = ProcessPoolExecutor if self.processes else ThreadPoolExecutor
        self.executor = kind(max_workers=self.workers)
        self.semaphore = asyncio.Semaphore(self.workers)
        return self
    async def __aexit__(self, *err):
        self.executor.shutdown(wait=True)
        self.executor = None

    async def run(self, check):
        ''' run one check, turning unexpected errors into a failing report
        '''
        async with self.semaphore:
            loop = asyncio.get_running_loop()
            try:
                report = await loop.run_in_executor(self.executor, check)
            except Exception as err:
                logging.exception('{} raised'.format(check.id))
                report = CheckReport(check.id, check.anchor, check.params, FAIL,
                    '{}: {}'.format(type(err).__name__, err))
        logging.info(f'{report.id}\t{report.status}\t{report.ms:.1f}ms')
        return report

async def run_checks(checks, workers=None, processes=False):
    ''' run checks and return their reports sorted by check id
    '''
    async with CheckPool(workers, processes) as pool:
        reports = await asyncio.gather(*[pool.run(x) for x in checks])
    return sorted(reports, key=lambda x: x.id)

async def run_suite(cfg, workers=None, processes=False):
    ''' run every check selected by a SuiteConfig
    '''
    return await run_checks(collect_checks(cfg), workers, processes)

def exit_code(reports):
    return 1 if any(x.status == FAIL for x in reports) else 0
