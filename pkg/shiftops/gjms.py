""" GJMS operators and Q-curvatures

Boundary operators are TangentialElements, operators of the compactified
metric are OperatorSeries on the collar.
"""

from fractions import Fraction
import math

from shiftops.ratfunc import RatFunc
from shiftops.scalars import ScalarPoly, ScalarSeries
from shiftops.tangential import (TangentialElement, EINSTEIN, LAP, MULT_J,
    MULT_PSQ, MULT_DJ, DPD, GJD, L)
from shiftops.weyl import conjugate_by_power, restrict_boundary
from shiftops.shift import iterated_shift

def _require_einstein(ctx):
    if ctx.mode != EINSTEIN:
        raise ValueError('an Einstein backend is required, got {}'.format(ctx.mode))

def gjms_boundary(ctx, N):
    """ GJMS operator of order 2N on an Einstein boundary with P = mu h

    prod_{l=1..N} (L - 2 mu (n/2 + l - 1)(n/2 - l))
    """
    _require_einstein(ctx)
    n, mu = ctx.n, ctx.jets.mu
    ell = TangentialElement.generator(L, EINSTEIN)
    result = TangentialElement.identity(EINSTEIN)
    for l in range(1, N + 1):
        result = result * (ell - 2 * mu * (n / 2 + l - 1) * (n / 2 - l))
    return result

def gjms_free(n, N):
    """ Yamabe (N = 1) and Paneitz (N = 2) operators over the free alphabet
    """
    n = Fraction(n)
    gen = TangentialElement.generator
    if N == 0:
        return TangentialElement.identity()
    if N == 1:
        return gen(LAP) - gen(MULT_J) * (n / 2 - 1)
    if N == 2:
        scalar = TangentialElement({(MULT_J, MULT_J): n / 2, (MULT_PSQ, ): -2, (MULT_DJ, ): -1})
        return gen(LAP) * gen(LAP) - (gen(MULT_J) * gen(LAP) + gen(GJD)) * (n - 2) \
            - gen(DPD) * 4 + scalar * (n / 2 - 2)
    raise ValueError('no free-word GJMS operator of order {}'.format(2 * N))

def gjms_tangential(ctx, N):
    """ GJMS operator of order 2N of the boundary metric, in the context's mode
    """
    if ctx.mode == EINSTEIN:
        return gjms_boundary(ctx, N)
    return gjms_free(ctx.n, N)

def gjms_bar_product(ctx, N):
    """ GJMS operator of order 2N of the compactified metric

    Built as r^(-m-N) prod_{l=1..N} (Lap_+ + (m + l - 1)(m - l)) r^(m-N) from the
    Laplacian of the Poincare metric.

    Raises:
        ValueError for non-Einstein backends or when m - N is not an integer
    """
    _require_einstein(ctx)
    m = ctx.m
    alpha = m - N
    if alpha.denominator != 1:
        raise ValueError('conjugation exponent {} is not an integer (even n)'.format(alpha))
    lap_plus = ctx.jets.lap_gplus
    product = None
    for l in range(1, N + 1):
        factor = lap_plus + (m + l - 1) * (m - l)
        product = factor if product is None else product * factor
    return conjugate_by_power(product, alpha).shift_r(-2 * N)

def q_closed_formula(n, N):
    """ Q-curvature of order 2N in terms of J, Psq and DJ

    Raises:
        ValueError for orders other than 2 and 4, or when 2N > n
    """
    n = Fraction(n)
    if 2 * N > n:
        raise ValueError('Q_{} is not defined for n = {}'.format(2 * N, n))
    J = ScalarPoly.atom('J')
    if N == 1:
        return J
    if N == 2:
        return J * J * (n / 2) - ScalarPoly.atom('Psq') * 2 - ScalarPoly.atom('DJ')
    raise ValueError('no closed formula for Q_{}'.format(2 * N))

def q_einstein_values(ctx):
    n, mu = ctx.n, ctx.jets.mu
    return {'J': n * mu, 'Psq': n * mu * mu, 'DJ': 0}

def holographic_constant(N):
    """ (-1)^N 2^(2N-2) ((N-1)! / (2N-1)!)^2
    """
    ratio = Fraction(math.factorial(N - 1), math.factorial(2 * N - 1))
    return (-1) ** N * Fraction(2) ** (2 * N - 2) * ratio ** 2

def q_holographic(ctx, N, critical=False, route='shift'):
    """ Q-curvature of order 2N from the collar geometry

    Args:
        ctx: ShiftContext
        N: half the order
        critical: True when 2N = n
        route: 'shift' evaluates c_2N i^* S_{2N-1}(n/2 - N) on v'/v,
            'residue' evaluates (-1)^N D_{2N-1}(-n/2 + N - 1) on v'/v,
            'critical-derivative' evaluates -(-1)^(n/2) of the lambda-derivative
            of D_n at 0 on the constant 1 (critical case only),
            'einstein' evaluates (-1)^N P_2N(1) / (n/2 - N).

    Returns:
        ScalarPoly
    """
    # local import, residue families depend on this module
    from shiftops.residue_families import residue_family_of_order
    n = ctx.n
    if critical and 2 * N != n:
        raise ValueError('critical Q-curvature needs n = {}, not {}'.format(2 * N, n))
    if not critical and 2 * N >= n:
        raise ValueError('subcritical Q_{} needs n > {}'.format(2 * N, 2 * N))
    killers = ctx.jets.killers
    if route == 'shift':
        lam = n / 2 - N
        boundary = restrict_boundary(iterated_shift(ctx, RatFunc.constant(lam), 2 * N - 1))
        return boundary.apply_scalar(ctx.jets.dlogv, killers) * holographic_constant(N)
    elif route == 'residue':
        family = residue_family_of_order(ctx, 2 * N - 1, lam=-n / 2 + N - 1)
        return family.apply_scalar(ctx.jets.dlogv, killers) * (-1) ** N
    elif route == 'critical-derivative':
        if not critical:
            raise ValueError('the derivative route applies to critical Q-curvature only')
        family = residue_family_of_order(ctx, 2 * N).lambda_diff(1).evaluate(0)
        sign = (-1) ** int(n / 2)
        return family.apply_scalar(ScalarSeries({0: 1}), killers) * (-sign)
    elif route == 'einstein':
        if critical:
            raise ValueError('the Einstein route applies to subcritical Q-curvature only')
        constant = gjms_boundary(ctx, N).apply_scalar(ScalarPoly.const(1))
        return constant * ((-1) ** N / (n / 2 - N))
    raise ValueError('unknown Q-curvature route: {}'.format(route))
