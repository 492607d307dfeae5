""" residues of the scattering matrix of the hyperbolic cylinder

On the eigenspace of the cross-section Laplacian with eigenvalue
-mu(n - 1 - mu) the scattering operator is the 2x2 matrix

    2^(n - 2 lam) / pi * G(n/2 - lam) / G(lam - n/2) * G(lam - mu) G(lam - n + 1 + mu)
        * [[sin pi(n/2 - mu), sin pi(n/2 - lam)], [sin pi(n/2 - lam), sin pi(n/2 - mu)]]

whose residues at lam = n/2 + N are diagonal.
"""

import math

import numpy
from scipy.special import gamma as scipy_gamma

from shiftops.gamma import gamma_fn
from shiftops.report import Outcome

# eps is halved from EPSILON_START until two Richardson levels agree
EPSILON_START = 1e-2
MAX_LEVELS = 8

def scattering_matrix(lam, mu, n):
    prefactor = 2.0 ** (n - 2 * lam) / math.pi * gamma_fn(n / 2 - lam) / gamma_fn(lam - n / 2) \
        * gamma_fn(lam - mu) * gamma_fn(lam - n + 1 + mu)
    diagonal = math.sin(math.pi * (n / 2 - mu))
    off = math.sin(math.pi * (n / 2 - lam))
    return prefactor * numpy.array([[diagonal, off], [off, diagonal]])

def expected_residue(n, mu, N):
    """ -1 / (2^2N N! (N-1)!) prod_{j=n/2}^{n/2+N-1} (j(n - 1 - j) - mu(n - 1 - mu))
    """
    product = 1.0
    for i in range(N):
        j = n / 2 + i
        product *= j * (n - 1 - j) - mu * (n - 1 - mu)
    return -product / (2 ** (2 * N) * math.factorial(N) * math.factorial(N - 1))

def symmetric_residue(func, point, eps):
    """ (eps f(point + eps) - eps f(point - eps)) / 2, exact up to O(eps^2) at a
    simple pole
    """
    return eps * (func(point + eps) - func(point - eps)) / 2

def richardson(estimates, ratio=2.0, power=2):
    """ Richardson table for estimates at eps, eps/ratio, eps/ratio^2, ...
    whose error expands in even powers of eps

    Returns:
        list of the diagonal of the table, the last entry is the best estimate
    """
    table = [list(estimates)]
    diagonal = [table[0][0]]
    level = 1
    while len(table[-1]) > 1:
        prev = table[-1]
        factor = ratio ** (power * level)
        table.append([(factor * prev[i + 1] - prev[i]) / (factor - 1) for i in range(len(prev) - 1)])
        diagonal.append(table[-1][0])
        level += 1
    return diagonal

def _singular_gamma_arguments(n, mu, N):
    point = n / 2 + N
    bad = []
    for arg in (point - mu, point - n + 1 + mu):
        if arg <= 0 and arg == math.floor(arg):
            bad.append(arg)
    return bad

def scattering_residue_check(n, mu, N, config):
    """ numeric residue of the scattering matrix at n/2 + N against the
    closed-form diagonal residue

    The error is |numeric - exact| / max(|exact|, 1) on the diagonal, and the
    off-diagonal residue on the same scale. The eps ladder takes at least
    config.richardson_levels steps and stops once two consecutive Richardson
    matrices agree to a hundredth of the tolerance, or after MAX_LEVELS steps.

    Returns:
        Outcome, with passed None when mu puts a further gamma pole at the
        residue point
    """
    n, mu = float(n), float(mu)
    if N < 1:
        raise ValueError('residues are taken at n/2 + N with N >= 1, not {}'.format(N))
    bad = _singular_gamma_arguments(n, mu, N)
    if bad:
        return Outcome(None, 'gamma pole at {} makes the residue point a higher-order pole'.format(bad), {})
    point = n / 2 + N
    func = lambda lam: scattering_matrix(lam, mu, n)
    epsilons, estimates = [], []
    eps = EPSILON_START
    while True:
        epsilons.append(eps)
        estimates.append(symmetric_residue(func, point, eps))
        diagonal = richardson(estimates)
        steps = [float(x[0, 0]) for x in diagonal]
        converged = len(diagonal) > 1 and bool(numpy.abs(diagonal[-1] - diagonal[-2]).max()
            <= config.scattering_tolerance / 100 * max(abs(steps[-1]), 1.0))
        if len(epsilons) >= MAX_LEVELS or (converged and len(epsilons) >= config.richardson_levels):
            break
        eps /= 2
    residue = diagonal[-1]
    exact = expected_residue(n, mu, N)
    scale = max(abs(exact), 1.0)
    error = max(abs(residue[0, 0] - exact), abs(residue[1, 1] - exact)) / scale
    off = max(abs(residue[0, 1]), abs(residue[1, 0])) / scale
    details = {'epsilons': list(epsilons), 'estimates': steps, 'exact': exact,
        'off_diagonal': off, 'converged': converged}
    passed = bool(converged and error < config.scattering_tolerance
        and off < config.scattering_tolerance / 100)
    return Outcome(passed, max(error, off), details)

def gamma_accuracy_check(config, low=0.5, high=30.0):
    """ the Lanczos gamma against scipy.special.gamma on [low, high]
    """
    rng = numpy.random.default_rng(config.seed)
    xs = numpy.concatenate([rng.uniform(low, high, size=config.points), [1.0, 0.5, 5.0]])
    errors = [abs(gamma_fn(x) - scipy_gamma(x)) / abs(scipy_gamma(x)) for x in xs]
    worst = max(errors)
    return Outcome(worst < 1e-12, worst, {'seed': config.seed, 'points': len(xs)})
