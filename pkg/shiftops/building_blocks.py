""" building-block operators M_2N of the compactified metric

M_2 = P_2, M_4 = P_4 - P_2^2 and M_6 = P_6 - 2 P_2 P_4 - 2 P_4 P_2 + 3 P_2^3 are
built from the GJMS operators of the compactified metric. On the round
sphere M_2N has a closed form for every N >= 2.
"""

from fractions import Fraction
import math

from shiftops.ratfunc import LAMBDA, RatFunc
from shiftops.scalars import ScalarSeries
from shiftops.tangential import EINSTEIN
from shiftops.weyl import scalar_series_operator, tangential_series
from shiftops.shift import ddr_w
from shiftops.gjms import gjms_bar_product, gjms_boundary

SPHERE_MU = Fraction(1, 2)

def _require_einstein(ctx):
    if ctx.mode != EINSTEIN:
        raise ValueError('building blocks need an Einstein backend, got {}'.format(ctx.mode))

def _require_sphere(ctx):
    _require_einstein(ctx)
    if ctx.jets.mu != SPHERE_MU:
        raise ValueError('the round sphere has mu = 1/2, not {}'.format(ctx.jets.mu))

def bar_gjms(ctx, N):
    """ memoized GJMS operator of order 2N of the compactified metric
    """
    return ctx.memo(('bar-gjms', N), lambda: gjms_bar_product(ctx, N))

def _product_route(ctx, N):
    P2 = bar_gjms(ctx, 1)
    if N == 1:
        return P2
    P4 = bar_gjms(ctx, 2)
    if N == 2:
        return P4 - P2 * P2
    if N == 3:
        P6 = bar_gjms(ctx, 3)
        return P6 - (P2 * P4).scale(2) - (P4 * P2).scale(2) + (P2 * P2 * P2).scale(3)
    raise ValueError('no product formula for M_{}'.format(2 * N))

def sphere_closed_form(ctx, N):
    """ (N-1)! N! (1 - r^2/4)^(-N-1) P_2(g_sphere) for N >= 2
    """
    _require_sphere(ctx)
    if N < 2:
        raise ValueError('the sphere closed form holds for N >= 2, not {}'.format(N))
    base = ScalarSeries({0: 1, 2: Fraction(-1, 4)})
    factor = base.power(-N - 1, order=ctx.jets.order)
    constant = math.factorial(N - 1) * math.factorial(N)
    yamabe = tangential_series(gjms_boundary(ctx, 1), ctx.context)
    return (scalar_series_operator(factor, ctx.context) * yamabe).scale(constant)

def radial_adjoint_action(ctx, operator):
    """ R o ad(d^w): X -> r^-1 [d^w, X]
    """
    dw = ddr_w(ctx)
    return (dw * operator - operator * dw).shift_r(-1)

def building_blocks(ctx, N, route='product'):
    """ the building-block operator M_2N of the compactified metric

    Args:
        ctx: ShiftContext on an Einstein backend
        N: half the order
        route: 'product' combines GJMS operators (N <= 3), 'sphere' uses the
            round-sphere closed form, 'adjoint' uses
            2^(N-1) (N-1)! (R o ad(d^w))^(N-1) (M_2)

    Raises:
        ValueError for generic backends or an unavailable route
    """
    _require_einstein(ctx)
    if N < 1:
        raise ValueError('building blocks start at N = 1, not {}'.format(N))
    if route == 'product':
        return _product_route(ctx, N)
    elif route == 'sphere':
        if N == 1:
            _require_sphere(ctx)
            return bar_gjms(ctx, 1)
        return sphere_closed_form(ctx, N)
    elif route == 'adjoint':
        result = bar_gjms(ctx, 1)
        for _ in range(N - 1):
            result = radial_adjoint_action(ctx, result)
        return result.scale(2 ** (N - 1) * math.factorial(N - 1))
    raise ValueError('unknown building-block route: {}'.format(route))

class EtaOperatorSeries(object):
    """ power series in eta with operator-series coefficients

    Args:
        coeffs: dict of eta exponent to OperatorSeries
        order: guaranteed eta order
    """
    def __init__(self, coeffs, order):
        self.coeffs = {k: v for k, v in coeffs.items() if k < order}
        self.order = order
        contexts = {v.context for v in self.coeffs.values()}
        if len(contexts) > 1:
            raise ValueError('eta coefficients come from different contexts')

    def coefficient(self, exponent):
        if exponent >= self.order:
            raise ValueError('eta^{} lies beyond eta order {}'.format(exponent, self.order))
        return self.coeffs.get(exponent)

    def exponents(self):
        return sorted(self.coeffs)

    def compare(self, other):
        """ coefficientwise comparison below the smaller eta order

        Returns:
            dict of eta exponent to (equal, residual series)
        """
        order = min(self.order, other.order)
        result = {}
        for k in sorted(set(self.coeffs) | set(other.coeffs)):
            if k >= order:
                continue
            first, second = self.coeffs.get(k), other.coeffs.get(k)
            residual = first - second
            limit = min(first.order, second.order)
            residual = residual.truncate(limit)
            result[k] = (residual.is_zero(), residual)
        return result

    def __repr__(self):
        return 'EtaOperatorSeries(exponents={}, order={})'.format(self.exponents(), self.order)

def holographic_laplacian(ctx, eta_order):
    """ the holographic Laplacian of the compactified sphere metric, two ways

    Returns:
        tuple of EtaOperatorSeries: the generating series with eta^2k
        coefficient M_2k+2 / (4^k k!^2), and the exponential series with
        coefficient (R o ad(d^w))^k (M_2) / (2^k k!)
    """
    _require_sphere(ctx)
    if eta_order % 2:
        raise ValueError('eta order must be even, not {}'.format(eta_order))
    generating = {}
    exponential = {}
    current = bar_gjms(ctx, 1)
    for k in range(eta_order // 2):
        N = k + 1
        block = _product_route(ctx, N) if N <= 3 else sphere_closed_form(ctx, N)
        generating[2 * k] = block.scale(Fraction(1, 4 ** k * math.factorial(k) ** 2))
        if k > 0:
            current = radial_adjoint_action(ctx, current)
        exponential[2 * k] = current.scale(Fraction(1, 2 ** k * math.factorial(k)))
    return EtaOperatorSeries(generating, eta_order), EtaOperatorSeries(exponential, eta_order)

def shift_expansion(ctx, N):
    """ the r-layers of S_N(lam) in building blocks and d^w, N <= 3

    With x = 2 lam - n the layers X_j satisfy S_N = sum_j r^j X_j, e.g.
    S_1 = -(x + 1) d^w + r P_2.

    Returns:
        list of OperatorSeries, the j-th entry without its r^j prefactor
    """
    _require_einstein(ctx)
    x = LAMBDA * 2 - ctx.n
    dw = ddr_w(ctx)
    P2 = bar_gjms(ctx, 1)
    if N == 1:
        return [dw.scale(-(x + 1)), P2]
    P4 = bar_gjms(ctx, 2)
    if N == 2:
        return [(dw * dw).scale((x + 1) * (x + 3)) - P2.scale(x + 1),
            (dw * P2).scale((x + 1) * -2),
            P4.scale((x + 3) / 2) - (P2 * P2).scale((x + 1) / 2)]
    if N == 3:
        P6 = bar_gjms(ctx, 3)
        half = Fraction(3, 2) * (x + 1)
        dw3 = dw * dw * dw
        P22 = P2 * P2
        return [((dw * P2).scale(3) - dw3.scale(x + 5)).scale((x + 1) * (x + 3)),
            (P4.scale(x + 5) - P22.scale(x + 3) - (dw * dw * P2).scale((x + 3) * 2)).scale(-half),
            ((dw * P4).scale(x + 5) - (dw * P22).scale(x + 3)).scale(-half),
            ((P2 * P4).scale((x + 1) * (x + 5) * -2) + P6.scale((x + 3) * (x + 5))
                - (P4 * P2).scale((x + 1) * (x + 3) * 2)
                + (P22 * P2).scale((x + 1) * (x + 3) * 3)).scale(Fraction(1, 8))]
    raise ValueError('no building-block expansion for S_{}'.format(N))

def assemble_layers(layers):
    result = layers[0]
    for j, layer in enumerate(layers[1:], start=1):
        result = result + layer.shift_r(j)
    return result

def leading_bracket(ctx, N, shifted):
    """ the r^N bracket of S_N and its leading lambda coefficient

    Args:
        ctx: ShiftContext on an Einstein backend
        N: 1, 2 or 3
        shifted: the iterated shift S_N(lam)

    Returns:
        tuple of (bracket, its lam^(N-1) coefficient, M_2N, ratio) where ratio
        is the constant c with coefficient = c M_2N, or None if there is none
    """
    lower = shift_expansion(ctx, N)[:N]
    bracket = (shifted - assemble_layers(lower)).shift_r(-N)
    leading = bracket.map_coefficients(lambda c: RatFunc.constant(c.coefficient(N - 1)))
    block = building_blocks(ctx, N)
    order = min(leading.order, block.order)
    leading, block = leading.truncate(order), block.truncate(order)
    if block.is_zero():
        return bracket, leading, block, None
    key = block.sorted_terms()[0][0]
    if key not in leading.terms:
        return bracket, leading, block, None
    ratio = (leading.terms[key] / block.terms[key]).constant_value()
    if not (leading - block.scale(ratio)).is_zero():
        return bracket, leading, block, None
    return bracket, leading, block, ratio

def lambda_top_coefficient(shifted, N):
    """ (1/N!) d^N/dlam^N S_N, the lam^N coefficient of S_N
    """
    return shifted.map_coefficients(lambda c: RatFunc.constant(c.coefficient(N)))

def expected_top_coefficient(ctx, N):
    return (ddr_w(ctx) ** N).scale((-2) ** N)

