""" numeric checks on the flat and hyperbolic upper half space

Points are (r, x_1, ..., x_n) with r > 0. The kernels are

    K+(lam, nu) = r^(lam + nu - n - 1) q^(-nu),  q = |x - y|^2 + r^2
    K-(lam, nu) = r K+(lam - 1, nu)

and all derivatives used by the checks are closed forms. Fourth-order central
differences serve as an independent oracle for those closed forms.
"""

from collections import namedtuple
from dataclasses import dataclass
from fractions import Fraction
import hashlib

import numpy

from shiftops.report import Outcome
from shiftops.tangential import L
from shiftops.geometry import flat_jets
from shiftops.shift import ShiftContext, shift_operator, flat_shift_P

KernelField = namedtuple('KernelField', ['value', 'gradient', 'laplacian', 'd_rr', 'lap_x'])

HISTOGRAM_EDGES = numpy.arange(-18, 2, 2)
TINY = 1e-300

@dataclass
class KernelParams:
    lam: float
    nu: float
    n: int
    y: tuple = None
    sign: str = '+'

    def __post_init__(self):
        if self.n < 2:
            raise ValueError('kernels need n >= 2, not {}'.format(self.n))
        if self.sign not in ('+', '-'):
            raise ValueError('kernel sign must be + or -, not {}'.format(self.sign))
        if self.y is None:
            self.y = (0.0, ) * self.n
        if len(self.y) != self.n:
            raise ValueError('base point needs {} coordinates'.format(self.n))

    @property
    def alpha(self):
        return self.lam + self.nu - self.n - 1

@dataclass
class NumericCheckConfig:
    points: int = 100
    seed: int = 0
    tolerance: float = 1e-8
    step: float = 1e-3
    richardson_levels: int = 3
    scattering_tolerance: float = 1e-5

    def __post_init__(self):
        if self.tolerance <= 0 or self.scattering_tolerance <= 0:
            raise ValueError('tolerances must be positive')
        if self.points < 1:
            raise ValueError('need at least one sample point')
        if self.step <= 0:
            raise ValueError('finite-difference step must be positive')

def sample_points(n, config, r_range=(0.3, 2.0), x_range=(-1.5, 1.5)):
    """ seeded sample points with r in r_range and x in a cube
    """
    rng = numpy.random.default_rng(config.seed)
    r = rng.uniform(r_range[0], r_range[1], size=(config.points, 1))
    x = rng.uniform(x_range[0], x_range[1], size=(config.points, n))
    return numpy.hstack([r, x])

def residual_details(config, points, residuals):
    """ seed, point-list hash and a histogram of log10 residuals
    """
    logs = numpy.log10(numpy.asarray(residuals) + TINY)
    counts, _ = numpy.histogram(numpy.clip(logs, HISTOGRAM_EDGES[0], HISTOGRAM_EDGES[-1]),
        bins=HISTOGRAM_EDGES)
    digest = hashlib.sha256(numpy.ascontiguousarray(points).tobytes()).hexdigest()[:16]
    return {'seed': config.seed, 'points': len(points), 'points_sha256': digest,
        'histogram_edges': HISTOGRAM_EDGES.tolist(), 'histogram': counts.tolist()}

def _power_field(alpha, nu, point, y):
    """ closed-form derivatives of r^alpha q^-nu
    """
    r = point[0]
    diff = point[1:] - numpy.asarray(y, dtype=float)
    dist = float(diff @ diff)
    q = dist + r * r
    if r <= 0:
        raise ValueError('kernels are evaluated at r > 0, got r = {}'.format(r))
    if q == 0:
        raise ValueError('kernel evaluated at its singular point')
    n = len(diff)
    base = r ** alpha * q ** -nu
    value = base
    d_r = alpha * base / r - 2 * nu * r * base / q
    d_x = -2 * nu * diff * base / q
    d_rr = alpha * (alpha - 1) * base / r ** 2 - 2 * nu * (2 * alpha + 1) * base / q \
        + 4 * nu * (nu + 1) * r * r * base / q ** 2
    lap_x = -2 * nu * n * base / q + 4 * nu * (nu + 1) * dist * base / q ** 2
    gradient = numpy.concatenate([[d_r], d_x])
    return KernelField(value, gradient, d_rr + lap_x, d_rr, lap_x)

def kernel_field(params, point):
    """ value, gradient and flat Laplacian of K+ or K- at a point

    Args:
        params: KernelParams
        point: sequence (r, x_1, ..., x_n)

    Raises:
        ValueError at r <= 0 or at the singular point
    """
    point = numpy.asarray(point, dtype=float)
    if params.sign == '+':
        return _power_field(params.alpha, params.nu, point, params.y)
    # product rule for r K+(lam - 1, nu)
    r = point[0]
    inner = _power_field(params.alpha - 1, params.nu, point, params.y)
    gradient = r * inner.gradient
    gradient[0] += inner.value
    d_rr = 2 * inner.gradient[0] + r * inner.d_rr
    lap_x = r * inner.lap_x
    return KernelField(r * inner.value, gradient, d_rr + lap_x, d_rr, lap_x)

def finite_difference_field(func, point, step):
    """ fourth-order central differences for the gradient and Laplacian
    """
    point = numpy.asarray(point, dtype=float)
    value = func(point)
    gradient = numpy.zeros(len(point))
    laplacian = 0.0
    for i in range(len(point)):
        e = numpy.zeros(len(point))
        e[i] = step
        f2, f1 = func(point + 2 * e), func(point + e)
        b1, b2 = func(point - e), func(point - 2 * e)
        gradient[i] = (-f2 + 8 * f1 - 8 * b1 + b2) / (12 * step)
        laplacian += (-f2 + 16 * f1 - 30 * value + 16 * b1 - b2) / (12 * step ** 2)
    return value, gradient, laplacian

def derivative_oracle_check(params, config):
    """ closed-form kernel derivatives against finite differences
    """
    points = sample_points(params.n, config)
    func = lambda p: kernel_field(params, p).value
    residuals = []
    for point in points:
        field = kernel_field(params, point)
        _, gradient, laplacian = finite_difference_field(func, point, config.step)
        scale = max(abs(field.value), numpy.abs(field.gradient).max(), abs(field.laplacian), TINY)
        error = max(numpy.abs(gradient - field.gradient).max(), abs(laplacian - field.laplacian))
        residuals.append(error / scale)
    worst = max(residuals)
    return Outcome(worst < 1e-6, worst, residual_details(config, points, residuals))

def flat_shift_value(lam, n, field, r):
    """ P(lam) = r Lap - (2 lam - n - 3) d/dr applied to a field, with the
    magnitude of its terms
    """
    first = r * field.laplacian
    second = (2 * lam - n - 3) * field.gradient[0]
    return first - second, abs(first) + abs(second)

def flat_shift_check(params, config):
    """ P(lam) K(lam, nu) = (lam + nu - n - 1)(nu - lam + 1) K(lam - 1, nu) with
    the opposite sign on the right
    """
    lam, nu, n = params.lam, params.nu, params.n
    other = KernelParams(lam - 1, nu, n, params.y, '-' if params.sign == '+' else '+')
    factor = (lam + nu - n - 1) * (nu - lam + 1)
    points = sample_points(n, config)
    residuals = []
    for point in points:
        lhs, scale = flat_shift_value(lam, n, kernel_field(params, point), point[0])
        rhs = factor * kernel_field(other, point).value
        residuals.append(abs(lhs - rhs) / max(scale + abs(rhs), TINY))
    worst = max(residuals)
    return Outcome(worst < config.tolerance, worst, residual_details(config, points, residuals))

def apply_series(series, field, r):
    """ apply an operator series with constant coefficients to a kernel field

    Supports d/dr up to second order and the boundary Laplacian L.

    Returns:
        tuple of (value, sum of term magnitudes)
    """
    total, scale = 0.0, 0.0
    for (a, b, word), coeff in series.terms.items():
        c = float(coeff.constant_value())
        if word == () and b == 0:
            part = field.value
        elif word == () and b == 1:
            part = field.gradient[0]
        elif word == () and b == 2:
            part = field.d_rr
        elif word == (L, ) and b == 0:
            part = field.lap_x
        else:
            raise ValueError('cannot apply r^{} d^{} {} numerically'.format(a, b, word))
        term = c * r ** float(a) * part
        total += term
        scale += abs(term)
    return total, scale

def hyperbolic_shift_check(n, lam, nu, config):
    """ S(g_hyp; lam)(r^(lam - n + 1) u) = (lam + nu - n + 1)(nu - lam - 1) r^(lam - n) u
    for the Poisson kernel u = (r / q)^nu

    The shift operator is the symbolic one, evaluated at the exact rational
    value of lam.
    """
    ctx = ShiftContext(flat_jets(n))
    operator = shift_operator(ctx, Fraction(str(lam)))
    # r^(lam - n + 1) u has exponent lam + nu - n + 1, i.e. K+(lam + 2, nu)
    source = KernelParams(lam + 2, nu, n)
    target = KernelParams(lam + 1, nu, n)
    factor = (lam + nu - n + 1) * (nu - lam - 1)
    points = sample_points(n, config)
    residuals = []
    for point in points:
        lhs, scale = apply_series(operator, kernel_field(source, point), point[0])
        rhs = factor * kernel_field(target, point).value
        residuals.append(abs(lhs - rhs) / max(scale + abs(rhs), TINY))
    worst = max(residuals)
    return Outcome(worst < config.tolerance, worst, residual_details(config, points, residuals))

def poisson_eigen_check(n, nu, config):
    """ r^2 Lap u - (n - 1) r d/dr u + nu (n - nu) u = 0 for u = (r / q)^nu
    """
    params = KernelParams(n + 1, nu, n)
    points = sample_points(n, config)
    residuals = []
    for point in points:
        field = kernel_field(params, point)
        r = point[0]
        terms = [r * r * field.laplacian, -(n - 1) * r * field.gradient[0],
            nu * (n - nu) * field.value]
        residuals.append(abs(sum(terms)) / max(sum(abs(t) for t in terms), TINY))
    worst = max(residuals)
    return Outcome(worst < config.tolerance, worst, residual_details(config, points, residuals))

def _cubic_field(point):
    """ f = r^3 + r |x|^2 with its derivatives
    """
    r = point[0]
    x = point[1:]
    dist = float(x @ x)
    n = len(x)
    d_rr = 6 * r
    lap_x = 2 * n * r
    gradient = numpy.concatenate([[3 * r * r + dist], 2 * r * x])
    return KernelField(r ** 3 + r * dist, gradient, d_rr + lap_x, d_rr, lap_x)

def flat_bridge_check(n, lam, config):
    """ the symbolic flat shift operator at a rational lam against its
    closed-form action on r^3 + r |x|^2
    """
    lam = Fraction(lam)
    operator = flat_shift_P(n, lam)
    points = sample_points(n, config)
    residuals = []
    for point in points:
        r = point[0]
        field = _cubic_field(point)
        value, scale = apply_series(operator, field, r)
        expected = r * (6 * r + 2 * n * r) - float(2 * lam - n - 3) * field.gradient[0]
        residuals.append(abs(value - expected) / max(scale, TINY))
    worst = max(residuals)
    return Outcome(worst < 1e-12, worst, residual_details(config, points, residuals))
