""" conformal maps of the upper half space and the equivariance of P(lam)

A map phi acts on points p = (r, x) of R^(n+1). Every map supplies its image,
the transpose of its Jacobian applied to a vector, its conformal factor
Omega^2, the Laplacian of its components and the weight
W_k(p) = (r(phi(p)) / r)^k with its gradient and Laplacian.
"""

from dataclasses import dataclass

import numpy

from shiftops.report import Outcome
from shiftops.kernels import sample_points, residual_details, TINY

class Identity(object):
    name = 'identity'

    def image(self, p):
        return p

    def pullback(self, p, v):
        return v

    def conformal_factor(self, p):
        return 1.0

    def component_laplacian(self, p):
        return numpy.zeros(len(p))

    def weight(self, p, k):
        return 1.0, numpy.zeros(len(p)), 0.0

class Translation(Identity):
    """ translation along the boundary by a vector b in R^n
    """
    name = 'translation'

    def __init__(self, b):
        self.b = numpy.asarray(b, dtype=float)

    def image(self, p):
        return p + numpy.concatenate([[0.0], self.b])

class Dilation(Identity):
    """ p -> p / a
    """
    name = 'dilation'

    def __init__(self, a):
        if a <= 0:
            raise ValueError('dilation factor must be positive, not {}'.format(a))
        self.a = float(a)

    def image(self, p):
        return p / self.a

    def pullback(self, p, v):
        return v / self.a

    def conformal_factor(self, p):
        return self.a ** -2

    def weight(self, p, k):
        return self.a ** -k, numpy.zeros(len(p)), 0.0

class Inversion(Identity):
    """ p -> p / |p|^2
    """
    name = 'inversion'

    def _norm2(self, p):
        norm2 = float(p @ p)
        if norm2 == 0:
            raise ValueError('inversion evaluated at its singular point')
        return norm2

    def image(self, p):
        return p / self._norm2(p)

    def pullback(self, p, v):
        norm2 = self._norm2(p)
        return (v - 2 * p * float(p @ v) / norm2) / norm2

    def conformal_factor(self, p):
        return self._norm2(p) ** -2

    def component_laplacian(self, p):
        dim = len(p)
        return -2 * (dim - 2) * p / self._norm2(p) ** 2

    def weight(self, p, k):
        norm2 = self._norm2(p)
        dim = len(p)
        value = norm2 ** -k
        gradient = -2 * k * p * norm2 ** (-k - 1)
        laplacian = -2 * k * (-2 * k + dim - 2) * norm2 ** (-k - 1)
        return value, gradient, laplacian

@dataclass
class Gaussian:
    """ exp(-beta |q - c|^2) on R^(n+1)
    """
    beta: float
    center: tuple

    def field(self, q):
        diff = q - numpy.asarray(self.center, dtype=float)
        value = numpy.exp(-self.beta * float(diff @ diff))
        gradient = -2 * self.beta * diff * value
        laplacian = (4 * self.beta ** 2 * float(diff @ diff) - 2 * self.beta * len(q)) * value
        return value, gradient, laplacian

def default_gaussian(n):
    return Gaussian(0.7, (1.0, ) + (0.2, ) * n)

def equivariance_check(mapping, lam, n, testfn, config):
    """ W_(k+1)(p) (P(lam) F)(phi(p)) = P(lam)(W_k F o phi)(p) with k = n - lam + 1

    Args:
        mapping: Identity, Translation, Dilation or Inversion
        lam: spectral parameter
        n: boundary dimension
        testfn: Gaussian test function on R^(n+1)
        config: NumericCheckConfig
    """
    k = n - lam + 1
    c = 2 * lam - n - 3
    points = sample_points(n, config)
    residuals = []
    for p in points:
        q = mapping.image(p)
        value, gradient, laplacian = testfn.field(q)
        weight_next, _, _ = mapping.weight(p, k + 1)
        inner = q[0] * laplacian - c * gradient[0]
        lhs = weight_next * inner

        weight, weight_grad, weight_lap = mapping.weight(p, k)
        pulled_grad = mapping.pullback(p, gradient)
        pulled_lap = mapping.conformal_factor(p) * laplacian \
            + float(mapping.component_laplacian(p) @ gradient)
        grad = weight_grad * value + weight * pulled_grad
        lap = weight_lap * value + 2 * float(weight_grad @ pulled_grad) + weight * pulled_lap
        first, second = p[0] * lap, c * grad[0]
        rhs = first - second
        scale = abs(weight_next) * (abs(q[0] * laplacian) + abs(c * gradient[0])) \
            + abs(first) + abs(second)
        residuals.append(abs(lhs - rhs) / max(scale, TINY))
    worst = max(residuals)
    details = residual_details(config, points, residuals)
    details['map'] = mapping.name
    return Outcome(worst < config.tolerance, worst, details)
