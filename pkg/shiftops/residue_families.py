""" residue families, solution operators and their residues

Residue families are obtained from restricted iterated shifts by an exact
division in lambda. Solution operators are produced by a recursion in the
radial coefficients of the shift operator.
"""

from fractions import Fraction
import math

from shiftops.exceptions import TruncationInsufficient
from shiftops.ratfunc import LAMBDA, RatFunc, pochhammer
from shiftops.tangential import (TangentialElement, EINSTEIN, FREE, LAP, MULT_J,
    MULT_PSQ, DPD, GJD, reduce_leibniz)
from shiftops.weyl import BoundaryOperator, ddr, restrict_boundary
from shiftops.shift import iterated_shift, shift_operator

def delta_explicit(n, N, context=None):
    """ the explicit restricted families delta_N(lam) for N <= 3

    Args:
        n: boundary dimension
        N: order, 1, 2 or 3
        context: optional Context attached to the result
    """
    n = Fraction(n)
    if N not in (1, 2, 3):
        raise ValueError('no explicit formula for delta_{}'.format(N))
    if N == 1:
        return BoundaryOperator({(1, ()): 1}, context)
    pole = 1 / ((n - 2 - 2 * LAMBDA) * 2)
    yamabe_like = {(LAP, ): pole, (MULT_J, ): (LAMBDA - n + 2) * pole}
    b = N - 2
    terms = {(N, ()): Fraction(1, math.factorial(N))}
    for word, coeff in yamabe_like.items():
        terms[(b, word)] = coeff
    return BoundaryOperator(terms, context)

def _normalization(n, N, parity):
    if parity == 'even':
        return pochhammer(Fraction(-2 * N), N) * pochhammer(LAMBDA + n / 2 - 2 * N + Fraction(1, 2), N)
    return 2 * pochhammer(Fraction(-2 * N - 1), N + 1) \
        * pochhammer(LAMBDA + n / 2 - 2 * N - Fraction(1, 2), N + 1)

def residue_family(ctx, N, parity='even', lam=None):
    """ the residue family of order 2N (even) or 2N + 1 (odd)

    D_2N(lam) = i^* S_2N(lam + n - 2N) / ((-2N)_N (lam + n/2 - 2N + 1/2)_N)
    D_2N+1(lam) = i^* S_2N+1(lam + n - 2N - 1) / (2 (-2N-1)_{N+1} (lam + n/2 - 2N - 1/2)_{N+1})

    Args:
        ctx: ShiftContext
        N: half the even order
        parity: 'even' or 'odd'
        lam: optional rational point to evaluate at

    Raises:
        NonCancellingPole if the normalization does not divide the restriction
    """
    if parity not in ('even', 'odd'):
        raise ValueError('parity must be even or odd, not {}'.format(parity))
    order = 2 * N if parity == 'even' else 2 * N + 1

    def divide():
        n = ctx.n
        shifted = iterated_shift(ctx, LAMBDA + (n - order), order)
        boundary = restrict_boundary(shifted)
        if ctx.mode == FREE:
            boundary = boundary.reduce_leibniz()
        return boundary.divide(_normalization(n, N, parity))

    family = ctx.memo(('residue', order), divide)
    if lam is not None:
        return family.evaluate(lam)
    return family

def residue_family_of_order(ctx, order, lam=None):
    if order % 2 == 0:
        return residue_family(ctx, order // 2, 'even', lam)
    return residue_family(ctx, (order - 1) // 2, 'odd', lam)

def leading_coefficient(ctx, N, parity='even'):
    """ lambda^N coefficient of a residue family and its expected form

    Returns:
        tuple of (computed coefficient, (-1)^N 2^2N N! / k! i^* d^k (w .)) with
        k = 2N or 2N + 1
    """
    order = 2 * N if parity == 'even' else 2 * N + 1
    family = residue_family(ctx, N, parity)
    computed = family.lambda_coefficient(N)
    constant = Fraction((-1) ** N * 2 ** (2 * N) * math.factorial(N), math.factorial(order))
    expected = restrict_boundary(ddr(order, ctx.context) * ctx.jets.w_operator())
    if ctx.mode == FREE:
        computed = computed.reduce_leibniz()
        expected = expected.reduce_leibniz()
    return computed, expected.scale(constant)

class SolutionOperatorTable(object):
    """ solution operators T_0, T_2, ..., T_2Nmax with rational coefficients in lambda
    """
    def __init__(self, operators, n, mode):
        self.operators = list(operators)
        self.n = n
        self.mode = mode

    def __getitem__(self, k):
        return self.operators[k]

    def __len__(self):
        return len(self.operators)

def radial_coefficients(ctx, count):
    """ S^(k)(lam) for k < count: the r^(k+1) coefficient of S(lam) acting on
    functions independent of r
    """
    shift = shift_operator(ctx, LAMBDA)
    if count > shift.order - 1:
        raise TruncationInsufficient('need {} radial coefficients, series has order {}'.format(
            count, shift.order))
    return [shift.coefficient(k + 1, 0) for k in range(count)]

def solution_recursion(ctx, Nmax):
    """ solve for the solution operators T_2N

    -2N (2 lam - n + 2N) T_2N = sum_{k<N} S^(2N-2k-2)(n - lam - 2k - 1) T_2k

    Raises:
        TruncationInsufficient when the jets do not reach r^(2 Nmax - 1)
    """
    n = ctx.n
    mode = ctx.mode
    radial = radial_coefficients(ctx, max(2 * Nmax - 1, 0))
    table = [TangentialElement.identity(mode)]
    for N in range(1, Nmax + 1):
        total = TangentialElement({}, mode)
        for k in range(N):
            coeff = radial[2 * N - 2 * k - 2].substitute(-1, n - 2 * k - 1)
            total = total + coeff * table[k]
        denominator = (2 * LAMBDA - n + 2 * N) * (-2 * N)
        operator = total * (1 / denominator)
        if mode == FREE:
            operator = reduce_leibniz(operator)
        table.append(operator)
    return SolutionOperatorTable(table, n, mode)

def t2_closed_form(n, mode=FREE, mu=None):
    """ (LAP - lam J) / (2 (n - 2 lam - 2))
    """
    n = Fraction(n)
    element = TangentialElement({(LAP, ): 1, (MULT_J, ): -LAMBDA}) * (1 / ((n - 2 * LAMBDA - 2) * 2))
    if mode == EINSTEIN:
        return element.einstein_reduce(n, mu)
    return element

def t4_closed_form(n, mode=FREE, mu=None):
    """ 1/(4(n-4-2 lam)) [ (LAP-(lam+2)J)(LAP-lam J)/(2(n-2-2 lam)) - lam Psq/2 - DPD - GJD/2 ]
    """
    n = Fraction(n)
    first = TangentialElement({(LAP, ): 1, (MULT_J, ): -(LAMBDA + 2)})
    second = TangentialElement({(LAP, ): 1, (MULT_J, ): -LAMBDA})
    rest = TangentialElement({(MULT_PSQ, ): LAMBDA * Fraction(-1, 2), (DPD, ): -1,
        (GJD, ): Fraction(-1, 2)})
    bracket = first * second * (1 / ((n - 2 - 2 * LAMBDA) * 2)) + rest
    element = bracket * (1 / ((n - 4 - 2 * LAMBDA) * 4))
    if mode == EINSTEIN:
        return element.einstein_reduce(n, mu)
    return reduce_leibniz(element)

def residue_extract(table, j):
    """ residue of T_2j at lam = n/2 - j

    Raises:
        ValueError on a pole of order greater than one
    """
    if j < 1 or j >= len(table):
        raise ValueError('no solution operator T_{} in the table'.format(2 * j))
    return table[j].residue(table.n / 2 - j)

def expected_residue(gjms, j):
    """ -P_2j / (2^2j j! (j-1)!)
    """
    return gjms * Fraction(-1, 2 ** (2 * j) * math.factorial(j) * math.factorial(j - 1))
