""" suite configuration and the registry of identity checks
"""

from collections import OrderedDict
from dataclasses import dataclass, field
from fractions import Fraction
import logging

from shiftops.check_decorators import report_check
from shiftops.load_jets import load_jets
from shiftops.kernels import (KernelParams, NumericCheckConfig, derivative_oracle_check,
    flat_shift_check, hyperbolic_shift_check, poisson_eigen_check, flat_bridge_check)
from shiftops.conformal_maps import (Identity, Translation, Dilation, Inversion,
    default_gaussian, equivariance_check)
from shiftops.scattering import scattering_residue_check, gamma_accuracy_check
from shiftops import symbolic_checks as sc

DEFAULT_N = (Fraction(3), Fraction(5), Fraction(7), Fraction(9))
DEFAULT_MU = (Fraction(0), Fraction(1, 2), Fraction(-1), Fraction(3, 7))
DEFAULT_NMAX = 4
DEFAULT_ORDER = 14

EINSTEIN_SUITES = {'weyl', 'factorization', 'tangential', 'bigGJMS', 'q-holo',
    'solution-ops', 'building-blocks', 'holo-laplacian', 'exploratory'}

DUAL_ROUTE_LAMBDAS = (Fraction(0), Fraction(1, 3), Fraction(5, 2))

# numeric fixtures are crossed with the n grid. lam is given as lam - n so the
# kernel exponents stay the same in every dimension.
KERNEL_FIXTURES = ((Fraction(-1, 2), Fraction(6, 5)), (Fraction(-1, 2), Fraction(3, 2)),
    (Fraction(-37, 10), Fraction(4, 5)))
HYPERBOLIC_FIXTURES = ((Fraction(-21, 10), Fraction(17, 10)), (Fraction(-3, 10), Fraction(17, 10)),
    (Fraction(-17, 5), Fraction(11, 5)))
POISSON_FIXTURES = (Fraction(17, 10), Fraction(3, 5))
EQUIVARIANCE_FIXTURES = (Fraction(-17, 10), Fraction(-29, 10))
BRIDGE_FIXTURES = (Fraction(1, 3), Fraction(7, 2))
# cylinder residues at n = 4, mu = 1 lie on a zero of the residue product
SCATTERING_FIXTURES = ((Fraction(4), Fraction(1), 1), (Fraction(4), Fraction(1), 2))

@dataclass
class SuiteConfig:
    """ what to run: suites, parameter grids and truncation
    """
    suites: list = field(default_factory=list)
    n_grid: list = field(default_factory=lambda: list(DEFAULT_N))
    mu_grid: list = field(default_factory=lambda: list(DEFAULT_MU))
    nmax: int = DEFAULT_NMAX
    order: int = DEFAULT_ORDER
    seed: int = 0
    jets: str = None
    points: int = 100

    def validate(self):
        """ raise ValueError on an unusable configuration
        """
        if not self.suites:
            raise ValueError('no suites selected')
        unknown = [x for x in self.suites if x not in SUITES]
        if unknown:
            raise ValueError('unknown suites: {}'.format(', '.join(unknown)))
        if not self.n_grid:
            raise ValueError('the n grid is empty')
        if not self.mu_grid:
            raise ValueError('the mu grid is empty')
        bad = [n for n in self.n_grid if n < 2 or n.denominator != 1]
        if bad:
            raise ValueError('dimensions must be integers >= 2, got {}'.format(bad))
        if self.nmax < 1:
            raise ValueError('nmax must be at least 1, not {}'.format(self.nmax))
        if self.points < 1:
            raise ValueError('need at least one sample point')
        if EINSTEIN_SUITES & set(self.suites) and self.order < 2 * self.nmax + 4:
            raise ValueError('truncation order {} is below 2 * nmax + 4 = {}'.format(
                self.order, 2 * self.nmax + 4))
        if self.jets is not None:
            extension = load_jets(self.jets)
            if extension['n'] is not None and any(n != extension['n'] for n in self.n_grid):
                raise ValueError('jet file {} is for n = {}, restrict the n grid to it'.format(
                    self.jets, extension['n']))

    def to_dict(self):
        return {'suites': list(self.suites), 'n': [str(x) for x in self.n_grid],
            'mu': [str(x) for x in self.mu_grid], 'nmax': self.nmax, 'order': self.order,
            'seed': self.seed, 'jets': self.jets, 'points': self.points}

class Check(object):
    """ one identity check with fixed parameters

    Args:
        id: unique check id, also the sort key of reports
        func: check function decorated with report_check
        params: dict of keyword arguments for func
    """
    def __init__(self, id, func, params):
        self.id = id
        self.func = func
        self.params = dict(params)

    @property
    def anchor(self):
        return self.func.anchor

    def __call__(self):
        return self.func(self.id, **self.params)

    def __repr__(self):
        return 'Check({})'.format(self.id)

def _param_text(value):
    if isinstance(value, float):
        return repr(value)
    return str(value)

def make_check(suite, name, func, **params):
    shown = ','.join('{}={}'.format(k, _param_text(v)) for k, v in params.items()
        if v is not None and k not in ('jets', 'K', 'points'))
    check_id = '{}/{}'.format(suite, name) + ('/' + shown if shown else '')
    return Check(check_id, func, params)

def _backends(cfg, kinds=('flat', 'einstein', 'generic')):
    """ backend keyword sets over the grids
    """
    for kind in kinds:
        for n in cfg.n_grid:
            if kind == 'einstein':
                for mu in cfg.mu_grid:
                    yield {'backend': kind, 'n': n, 'mu': mu, 'K': cfg.order, 'jets': None}
            else:
                yield {'backend': kind, 'n': n, 'mu': None, 'K': None,
                    'jets': cfg.jets if kind == 'generic' else None}

def _einstein(cfg):
    for n in cfg.n_grid:
        for mu in cfg.mu_grid:
            yield {'n': n, 'mu': mu, 'K': cfg.order}

# ------------------------------------------------------------- symbolic suites

def weyl_checks(cfg):
    checks = [make_check('weyl', 'heisenberg', sc.heisenberg_check),
        make_check('weyl', 'associativity', sc.associativity_check, seed=cfg.seed),
        make_check('weyl', 'conjugation', sc.conjugation_check)]
    for params in _backends(cfg, ('flat', 'einstein')):
        for lam in DUAL_ROUTE_LAMBDAS:
            checks.append(make_check('weyl', 'dual-route', sc.dual_route_check, lam=lam, **params))
        checks.append(make_check('weyl', 'adjoint-involution', sc.adjoint_involution_check, **params))
        checks.append(make_check('weyl', 'degenerate-laplacian', sc.degenerate_laplacian_check,
            **params))
        for k in range(1, 4):
            for j in range(1, 4):
                checks.append(make_check('weyl', 'vg-sl2', sc.vg_sl2_check, k=k, j=j, **params))
    for params in _backends(cfg):
        for a in (1, 2, 3):
            checks.append(make_check('weyl', 'general-sl2', sc.general_sl2_check, a=a, **params))
        # the generic adjoint needs a rule for <dJ, d.> and reports as skipped
        checks.append(make_check('weyl', 'adjoint-shift', sc.adjoint_shift_check, **params))
        checks.append(make_check('weyl', 'gz-operator', sc.gz_operator_check, **params))
        checks.append(make_check('weyl', 'collar', sc.collar_consistency_check, **params))
    for params in _backends(cfg, ('einstein', 'generic')):
        top = cfg.nmax if params['backend'] == 'einstein' else 2
        for N in range(1, top + 1):
            checks.append(make_check('weyl', 'comm-shift-m', sc.comm_shift_m_check, N=N, **params))
    for params in _einstein(cfg):
        checks.append(make_check('weyl', 'order-stability', sc.order_stability_check,
            N=cfg.nmax, **params))
        checks.append(make_check('weyl', 'einstein-agreement', sc.einstein_agreement_check,
            **params))
    for n in cfg.n_grid:
        for N in (1, 2, 3):
            checks.append(make_check('weyl', 'jet-independence', sc.jet_independence_check,
                n=n, N=N))
    return checks

def delta_checks(cfg):
    return [make_check('delta', 'delta', sc.delta_check, n=n, N=N, jets=cfg.jets)
        for n in cfg.n_grid for N in (1, 2, 3)]

def _ladder_orders(kind, N):
    return {'even-S': (2 * N, 2 * N - 1), 'odd-S': (2 * N + 1, 2 * N),
        'even-M': (2 * N, 2 * N + 1), 'odd-M': (2 * N - 1, 2 * N)}[kind]

def factorization_checks(cfg):
    checks = []
    for params in _backends(cfg, ('einstein', 'generic')):
        top = 7 if params['backend'] == 'einstein' else 3
        for kind in sc.LADDERS:
            for N in range(0, 4):
                orders = _ladder_orders(kind, N)
                if min(orders) < 0 or max(orders) > top:
                    continue
                checks.append(make_check('factorization', 'ladder', sc.ladder_check,
                    N=N, kind=kind, **params))
        for N, k in ((2, 1), (3, 1), (4, 1), (4, 2)):
            if params['backend'] == 'generic' and N > 3:
                continue
            checks.append(make_check('factorization', 'res-factor', sc.res_factor_check,
                N=N, k=k, **params))
    for params in _einstein(cfg):
        for N in range(2, cfg.nmax + 1):
            for k in range(1, N):
                checks.append(make_check('factorization', 'gjms-factorization',
                    sc.gjms_factorization_check, N=N, k=k, **params))
        for N, k in ((2, 1), (3, 1), (4, 1), (4, 2)):
            checks.append(make_check('factorization', 'second-np', sc.second_np_check,
                N=N, k=k, **params))
    return checks

def tangential_checks(cfg):
    checks = []
    for params in _backends(cfg, ('einstein', 'generic')):
        top = cfg.nmax if params['backend'] == 'einstein' else 2
        n = params['n']
        for N in range(1, top + 1):
            # even n only up to the critical order
            if n % 2 == 0 and 2 * N > n:
                continue
            checks.append(make_check('tangential', 'even', sc.tangential_even_check,
                N=N, **params))
            checks.append(make_check('tangential', 'odd', sc.tangential_odd_check,
                N=N, **params))
    for params in _einstein(cfg):
        for N in range(1, cfg.nmax + 1):
            checks.append(make_check('tangential', 'interpolating-even',
                sc.interpolating_even_check, N=N, **params))
            checks.append(make_check('tangential', 'interpolating-odd',
                sc.interpolating_odd_check, N=N, **params))
    return checks

def big_gjms_checks(cfg):
    return [make_check('bigGJMS', 'big-gjms', sc.big_gjms_check, N=N, **params)
        for params in _einstein(cfg) for N in range(1, cfg.nmax + 1)]

def q_holo_checks(cfg):
    checks = []
    for params in _backends(cfg, ('einstein', 'generic')):
        routes = ('shift', 'einstein') if params['backend'] == 'einstein' else ('shift', 'residue')
        n = params['n']
        for N in (1, 2):
            if 2 * N < n:
                for route in routes:
                    checks.append(make_check('q-holo', 'q-curvature', sc.q_holographic_check,
                        N=N, route=route, **params))
        for N in range(1, min(cfg.nmax, 2 if params['backend'] == 'generic' else cfg.nmax) + 1):
            if 2 * N <= n:
                checks.append(make_check('q-holo', 'vanish', sc.q_vanish_check, N=N, **params))
    # critical Q-curvature in dimensions two and four
    for n, N in ((Fraction(2), 1), (Fraction(4), 2)):
        params = {'backend': 'generic', 'n': n, 'mu': None, 'K': None, 'jets': None}
        checks.append(make_check('q-holo', 'q-curvature', sc.q_holographic_check,
            N=N, route='critical-derivative', **params))
    return checks

def solution_ops_checks(cfg):
    checks = []
    for params in _backends(cfg, ('einstein', 'generic')):
        generic = params['backend'] == 'generic'
        checks.append(make_check('solution-ops', 't2', sc.t2_check, **params))
        checks.append(make_check('solution-ops', 't4', sc.t4_check, **params))
        for j in range(1, (2 if generic else min(3, cfg.nmax)) + 1):
            checks.append(make_check('solution-ops', 'residue', sc.solution_residue_check,
                j=j, **params))
        for N in range(1, (1 if generic else 3) + 1):
            for parity in ('even', 'odd'):
                checks.append(make_check('solution-ops', 'leading-coefficient',
                    sc.leading_coefficient_check, N=N, parity=parity, **params))
    return checks

def building_block_checks(cfg):
    checks = []
    for params in _einstein(cfg):
        checks.append(make_check('building-blocks', 'm2', sc.m2_check, **params))
        checks.append(make_check('building-blocks', 'magic', sc.magic_check, **params))
        for N in (1, 2):
            checks.append(make_check('building-blocks', 'shift-expansion',
                sc.shift_expansion_check, N=N, **params))
    for n in cfg.n_grid:
        for N in (2, 3):
            checks.append(make_check('building-blocks', 'sphere-closed-form',
                sc.sphere_closed_form_check, n=n, K=cfg.order, N=N))
        for N in range(2, min(cfg.nmax, 4) + 1):
            checks.append(make_check('building-blocks', 'magic-2', sc.magic2_check,
                n=n, K=cfg.order, N=N))
    for params in _backends(cfg):
        for N in range(1, 4):
            checks.append(make_check('building-blocks', 'top-coefficient',
                sc.top_coefficient_check, N=N, **params))
    return checks

def holo_laplacian_checks(cfg):
    return [make_check('holo-laplacian', 'holo-laplacian', sc.holo_laplacian_check,
        n=n, K=cfg.order, eta_order=2 * min(cfg.nmax, 4)) for n in cfg.n_grid]

def exploratory_checks(cfg):
    return [make_check('exploratory', 'bracket', sc.leading_bracket_check, N=N, **params)
        for params in _einstein(cfg) for N in range(1, cfg.nmax + 1)]

# -------------------------------------------------------------- numeric suites

@report_check('closed-form kernel derivatives against finite differences')
def kernel_derivatives_check(n, lam, nu, sign, seed, points):
    config = NumericCheckConfig(points=points, seed=seed)
    return derivative_oracle_check(KernelParams(lam, nu, n, sign=sign), config)

@report_check('flat shift operator on kernels')
def kernel_shift_check(n, lam, nu, sign, seed, points):
    config = NumericCheckConfig(points=points, seed=seed, tolerance=1e-10)
    return flat_shift_check(KernelParams(lam, nu, n, sign=sign), config)

@report_check('hyperbolic shift operator on Poisson eigenfunctions')
def hyperbolic_check(n, lam, nu, seed, points):
    config = NumericCheckConfig(points=points, seed=seed, tolerance=1e-10)
    return hyperbolic_shift_check(n, lam, nu, config)

@report_check('Poisson kernel is a hyperbolic eigenfunction')
def poisson_check(n, nu, seed, points):
    config = NumericCheckConfig(points=points, seed=seed, tolerance=1e-10)
    return poisson_eigen_check(n, nu, config)

def _conformal_map(name, n):
    if name == 'identity':
        return Identity()
    elif name == 'translation':
        return Translation([0.3] * n)
    elif name == 'dilation':
        return Dilation(2.0)
    elif name == 'inversion':
        return Inversion()
    raise ValueError('unknown conformal map: {}'.format(name))

@report_check('equivariance of the flat shift operator')
def equivariance_map_check(n, lam, mapping, seed, points):
    config = NumericCheckConfig(points=points, seed=seed)
    return equivariance_check(_conformal_map(mapping, n), lam, n, default_gaussian(n), config)

@report_check('symbolic flat shift operator evaluated numerically')
def bridge_check(n, lam, seed, points):
    return flat_bridge_check(n, lam, NumericCheckConfig(points=points, seed=seed))

@report_check('residues of the cylinder scattering matrix')
def scattering_check(n, mu, N, seed):
    tolerance = 1e-5 if N == 1 else 1e-4
    config = NumericCheckConfig(seed=seed, scattering_tolerance=tolerance)
    return scattering_residue_check(n, mu, N, config)

@report_check('Lanczos gamma function accuracy')
def gamma_check(seed, points):
    return gamma_accuracy_check(NumericCheckConfig(points=points, seed=seed))

def numeric_flat_checks(cfg):
    checks = []
    common = {'seed': cfg.seed, 'points': cfg.points}
    for n in cfg.n_grid:
        dim = int(n)
        for offset, nu in KERNEL_FIXTURES:
            for sign in ('+', '-'):
                params = dict(n=dim, lam=float(n + offset), nu=float(nu), sign=sign, **common)
                checks.append(make_check('numeric-flat', 'kernel-derivatives',
                    kernel_derivatives_check, **params))
                checks.append(make_check('numeric-flat', 'kernel-shift', kernel_shift_check,
                    **params))
        for offset, nu in HYPERBOLIC_FIXTURES:
            checks.append(make_check('numeric-flat', 'hyperbolic', hyperbolic_check,
                n=dim, lam=float(n + offset), nu=float(nu), **common))
        for nu in POISSON_FIXTURES:
            checks.append(make_check('numeric-flat', 'poisson', poisson_check, n=dim,
                nu=float(nu), **common))
        for offset in EQUIVARIANCE_FIXTURES:
            for mapping in ('identity', 'translation', 'dilation', 'inversion'):
                checks.append(make_check('numeric-flat', 'equivariance', equivariance_map_check,
                    n=dim, lam=float(n + offset), mapping=mapping, **common))
        for lam in BRIDGE_FIXTURES:
            checks.append(make_check('numeric-flat', 'bridge', bridge_check, n=dim, lam=lam,
                **common))
    return checks

def numeric_scattering_checks(cfg):
    checks = []
    grid = [(n, mu, N) for n in cfg.n_grid for mu in cfg.mu_grid
        for N in range(1, min(cfg.nmax, 3) + 1)]
    grid += [x for x in SCATTERING_FIXTURES if x not in grid]
    for n, mu, N in grid:
        checks.append(make_check('numeric-scattering', 'residue', scattering_check,
            n=n, mu=mu, N=N, seed=cfg.seed))
    checks.append(make_check('numeric-scattering', 'gamma', gamma_check, seed=cfg.seed,
        points=cfg.points))
    return checks

SUITES = OrderedDict([
    ('weyl', weyl_checks),
    ('delta', delta_checks),
    ('factorization', factorization_checks),
    ('tangential', tangential_checks),
    ('bigGJMS', big_gjms_checks),
    ('q-holo', q_holo_checks),
    ('solution-ops', solution_ops_checks),
    ('building-blocks', building_block_checks),
    ('holo-laplacian', holo_laplacian_checks),
    ('numeric-flat', numeric_flat_checks),
    ('numeric-scattering', numeric_scattering_checks),
    ('exploratory', exploratory_checks),
])

def collect_checks(cfg):
    """ validate the configuration and build its checks, sorted by id

    Raises:
        ValueError for an invalid configuration or duplicate check ids
    """
    cfg.validate()
    checks = []
    for suite in SUITES:
        if suite not in cfg.suites:
            continue
        found = SUITES[suite](cfg)
        logging.info('suite {}: {} checks'.format(suite, len(found)))
        checks += found
    ids = [x.id for x in checks]
    if len(set(ids)) != len(ids):
        raise ValueError('duplicate check ids in the registry')
    return sorted(checks, key=lambda x: x.id)
