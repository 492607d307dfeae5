""" exact identity checks on the operator algebra and the collar geometries

Each check body takes plain, picklable parameters (backend name, n, mu,
truncation order, optional jet file) and builds what it needs from a memoized
ShiftContext. Bodies return (passed, residual) tuples or Outcomes, and the
report_check decorator turns them into CheckReports.
"""

from fractions import Fraction
import functools
import math
import threading

import numpy

from shiftops.exceptions import TruncationInsufficient
from shiftops.ratfunc import LAMBDA, pochhammer
from shiftops.scalars import ScalarPoly, ScalarSeries
from shiftops.tangential import (TangentialElement, FREE, FREE_ALPHABET, LAP, MULT_J,
    reduce_leibniz)
from shiftops.weyl import (OperatorSeries, BoundaryOperator, ddr, r_power, identity,
    conjugate_by_power, restrict_boundary, adjoint_series, equal_to_order)
from shiftops.geometry import flat_jets, einstein_jets, generic_jets, reduce_to_einstein
from shiftops.load_jets import load_jets
from shiftops.shift import (ShiftContext, shift_operator, iterated_shift, flat_shift_P,
    gz_operator, degenerate_laplacian, ddr_w)
from shiftops.gjms import (gjms_tangential, q_closed_formula, q_einstein_values,
    q_holographic)
from shiftops.residue_families import (delta_explicit, residue_family_of_order,
    leading_coefficient, solution_recursion, t2_closed_form, t4_closed_form,
    residue_extract, expected_residue)
from shiftops.building_blocks import (SPHERE_MU, bar_gjms, building_blocks,
    holographic_laplacian, shift_expansion, assemble_layers, leading_bracket,
    lambda_top_coefficient, expected_top_coefficient)
from shiftops.check_decorators import report_check
from shiftops.report import Outcome

HEISENBERG_EXPONENTS = (Fraction(-2), Fraction(-1, 2), Fraction(1), Fraction(3), Fraction(7, 2))
CONJUGATION_EXPONENTS = (Fraction(1, 2), Fraction(2), Fraction(-3))

# coefficient ratios of the r^N bracket against M_2N seen for N = 1, 2, 3
BRACKET_REFERENCE = {1: Fraction(1), 2: Fraction(1), 3: Fraction(1, 2)}

_CONTEXT_LOCK = threading.Lock()

def shift_context(backend, n, mu=None, K=None, jets=None):
    """ memoized ShiftContext for a backend, one per parameter set across threads

    Args:
        backend: 'flat', 'einstein' or 'generic'
        n: boundary dimension
        mu: Einstein constant (einstein backend)
        K: truncation order (einstein backend)
        jets: path to a jet-extension file (generic backend)
    """
    with _CONTEXT_LOCK:
        return _build_context(backend, n, mu, K, jets)

@functools.lru_cache(maxsize=None)
def _build_context(backend, n, mu, K, jets):
    if backend == 'flat':
        return ShiftContext(flat_jets(n))
    elif backend == 'einstein':
        return ShiftContext(einstein_jets(n, mu, K))
    elif backend == 'generic':
        extension = load_jets(jets) if jets else None
        return ShiftContext(generic_jets(n, extension))
    raise ValueError('unknown backend: {}'.format(backend))

def _compare(first, second, order=None):
    """ compare two operator series below their common guaranteed order

    Raises:
        TruncationInsufficient if nothing below r^0 is certified
    """
    limit = min(first.order, second.order) if order is None else order
    if not limit > 0:
        raise TruncationInsufficient('comparison certified only below r^{}'.format(limit))
    return equal_to_order(first, second, limit)

def _compare_boundary(first, second):
    difference = first - second
    if difference.mode == FREE:
        difference = difference.reduce_leibniz()
    return difference.is_zero(), difference

def _compare_elements(first, second):
    difference = reduce_leibniz(first - second)
    return not difference.terms, str(difference)

def _first_failure(results):
    """ combine (passed, residual) pairs, reporting the first failure
    """
    for passed, residual in results:
        if not passed:
            return False, residual
    return True, ''

def _needs_odd_n(ctx):
    if ctx.m.denominator != 1:
        return Outcome(None, 'compactified GJMS operators need odd n, got n = {}'.format(ctx.n), {})
    return None

def _needs_sphere(n, K):
    return shift_context('einstein', Fraction(n), SPHERE_MU, K)

# ---------------------------------------------------------------- weyl suite

def _ddr_left(series):
    """ d o series, commuting d past each monomial one step at a time
    """
    terms = {}
    for (a, b, word), coeff in series.terms.items():
        for key, value in (((a, b + 1, word), coeff), ((a - 1, b, word), coeff * a)):
            if value:
                terms[key] = terms[key] + value if key in terms else value
    return OperatorSeries(terms, context=series.context)

@report_check('normal ordering of d^b r^a')
def heisenberg_check():
    results = []
    for b in range(7):
        for a in HEISENBERG_EXPONENTS:
            stepwise = r_power(a)
            for _ in range(b):
                stepwise = _ddr_left(stepwise)
            equal, residual = equal_to_order(ddr(b) * r_power(a), stepwise)
            results.append((equal, 'b={} a={}\n{}'.format(b, a, residual.serialize())))
    return _first_failure(results)

def _random_series(rng, order=math.inf):
    exponents = (Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2))
    terms = {}
    for _ in range(int(rng.integers(1, 7))):
        a = exponents[int(rng.integers(len(exponents)))]
        b = int(rng.integers(3))
        word = tuple(FREE_ALPHABET[int(i)] for i in rng.integers(len(FREE_ALPHABET),
            size=int(rng.integers(3))))
        coeff = Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 5)))
        terms[(a, b, word)] = LAMBDA * int(rng.integers(-2, 3)) + coeff
    return OperatorSeries(terms, order, integral=False)

@report_check('associativity of normal-ordered products')
def associativity_check(seed):
    rng = numpy.random.default_rng(seed)
    first, second = _random_series(rng), _random_series(rng)
    third = _random_series(rng, Fraction(10))
    left = (first * second) * third
    right = first * (second * third)
    equal, residual = _compare(left, right)
    return equal, residual, {'seed': seed}

@report_check('conjugation by powers of r')
def conjugation_check():
    results = []
    for alpha in CONJUGATION_EXPONENTS:
        expected = ddr(1) + r_power(-1).scale(alpha)
        equal, residual = equal_to_order(conjugate_by_power(ddr(1), alpha), expected)
        results.append((equal, residual))
        equal, residual = equal_to_order(conjugate_by_power(identity(), alpha), identity())
        results.append((equal, residual))
    return _first_failure(results)

@report_check('definition and conjugation forms of the shift operator')
def dual_route_check(backend, n, mu, K, jets, lam):
    ctx = shift_context(backend, n, mu, K, jets)
    definition = shift_operator(ctx, LAMBDA).evaluate(lam)
    conjugation = shift_operator(ctx, lam, form='conjugation')
    return _compare(definition, conjugation)

@report_check('shift operator composed with r^a')
def general_sl2_check(backend, n, mu, K, jets, a):
    ctx = shift_context(backend, n, mu, K, jets)
    r_a = r_power(a, ctx.context)
    lhs = shift_operator(ctx) * r_a
    rhs = r_a * shift_operator(ctx, LAMBDA - a) \
        - r_power(a - 1, ctx.context).scale((2 * LAMBDA - n + 2 - a) * a)
    return _compare(lhs, rhs)

@report_check('iterated shift composed with r')
def comm_shift_m_check(backend, n, mu, K, jets, N):
    ctx = shift_context(backend, n, mu, K, jets)
    r = r_power(1, ctx.context)
    lhs = iterated_shift(ctx, LAMBDA, N) * r
    rhs = r * iterated_shift(ctx, LAMBDA - 1, N) \
        - iterated_shift(ctx, LAMBDA, N - 1).scale((2 * LAMBDA - n + N) * N)
    return _compare(lhs, rhs)

@report_check('binomial commutation of S_k with r^j')
def vg_sl2_check(backend, n, mu, K, jets, k, j):
    ctx = shift_context(backend, n, mu, K, jets)
    lhs = iterated_shift(ctx, LAMBDA, k) * r_power(j, ctx.context)
    rhs = OperatorSeries({}, context=ctx.context)
    for l in range(k + 1):
        factor = pochhammer(Fraction(-j), l) * pochhammer(2 * LAMBDA - n - j + k + 1, l) \
            * math.comb(k, l)
        term = iterated_shift(ctx, LAMBDA - j + l, k - l).shift_r(j - l)
        rhs = rhs + term.scale(factor)
    return _compare(lhs, rhs)

@report_check('formal adjoint is an involution')
def adjoint_involution_check(backend, n, mu, K, jets):
    ctx = shift_context(backend, n, mu, K, jets)
    results = []
    for series in (shift_operator(ctx), ddr(2, ctx.context) * r_power(1, ctx.context)):
        twice = adjoint_series(adjoint_series(series, ctx.jets), ctx.jets)
        results.append(_compare(series, twice))
    return _first_failure(results)

@report_check('formal adjoint of the shift operator')
def adjoint_shift_check(backend, n, mu, K, jets):
    ctx = shift_context(backend, n, mu, K, jets)
    adjoint = adjoint_series(shift_operator(ctx), ctx.jets)
    return _compare(adjoint, shift_operator(ctx, n - 2 - LAMBDA))

@report_check('iterated shift is stable under a longer truncation')
def order_stability_check(n, mu, K, N):
    short = iterated_shift(shift_context('einstein', n, mu, K), LAMBDA, N)
    longer = iterated_shift(shift_context('einstein', n, mu, K + 2), LAMBDA, N)
    equal, residual = _compare(short, longer, min(short.order, longer.order))
    return equal, residual, {'order': str(min(short.order, longer.order))}

@report_check('restricted shifts ignore jets beyond their order')
def jet_independence_check(n, N):
    base = shift_context('generic', n)
    extension = {'n': n, 'deltaBar': {4: TangentialElement({(LAP, LAP): Fraction(1, 3),
        (MULT_J, LAP): Fraction(-2, 5)})}, 'v': {}}
    extended = ShiftContext(generic_jets(n, extension))
    first = restrict_boundary(iterated_shift(base, LAMBDA, N))
    second = restrict_boundary(iterated_shift(extended, LAMBDA, N))
    return _compare_boundary(first, second)

@report_check('degenerate Laplacian for the scale r')
def degenerate_laplacian_check(backend, n, mu, K, jets):
    ctx = shift_context(backend, n, mu, K, jets)
    if backend == 'flat':
        # -(I.D)[r, lam - n - 1] is the flat shift operator P(lam)
        operator = degenerate_laplacian(ctx, LAMBDA - n - 1)
        return _compare(operator, -flat_shift_P(n))
    operator = degenerate_laplacian(ctx, LAMBDA - n + 1)
    return _compare(operator, -shift_operator(ctx))

@report_check('shift operator as a second-order operator D_lam')
def gz_operator_check(backend, n, mu, K, jets):
    ctx = shift_context(backend, n, mu, K, jets)
    results = [_compare(shift_operator(ctx), -gz_operator(ctx, LAMBDA + 1))]
    if backend == 'flat':
        flat = flat_shift_P(n)
        results.append(_compare(flat, -gz_operator(ctx, LAMBDA - 1)))
        results.append(_compare(flat, shift_operator(ctx, LAMBDA - 2)))
    return _first_failure(results)

@report_check('collar series are consistent')
def collar_consistency_check(backend, n, mu, K, jets):
    ctx = shift_context(backend, n, mu, K, jets)
    series = ctx.jets
    results = [(series.w * series.w).equal_to_order(series.v),
        (series.dlogv * series.v).equal_to_order(series.v.derivative())]
    results = [(equal, 'volume series mismatch') for equal in results]
    # S((n - 1)/2) = r (Lap_bar - (n - 1)/2 J_bar)
    yamabe = series.lap_bar - series.j_bar_operator().scale((n - 1) / 2)
    results.append(_compare(shift_operator(ctx, (n - 1) / 2), yamabe.shift_r(1)))
    return _first_failure(results)

@report_check('generic jets reduce to the Einstein collar')
def einstein_agreement_check(n, mu, K):
    lap_bar, v = reduce_to_einstein(shift_context('generic', n).jets, mu)
    jets = shift_context('einstein', n, mu, K).jets
    equal, residual = _compare(lap_bar, jets.lap_bar)
    if not equal:
        return equal, residual
    return v.equal_to_order(jets.v), 'volume series mismatch'

# --------------------------------------------------------------- delta suite

@report_check('restricted iterated shifts against explicit families')
def delta_check(n, N, jets=None):
    ctx = shift_context('generic', n, jets=jets)
    restricted = restrict_boundary(iterated_shift(ctx, LAMBDA, N))
    factor = pochhammer(Fraction(-N), N) * pochhammer(2 * LAMBDA - n + 1, N)
    expected = delta_explicit(n, N, ctx.context).scale(factor)
    return _compare_boundary(restricted, expected)

# ------------------------------------------------------- factorization suite

LADDERS = ('even-S', 'odd-S', 'even-M', 'odd-M')

@report_check('residue family ladders')
def ladder_check(backend, n, mu, K, jets, N, kind):
    ctx = shift_context(backend, n, mu, K, jets)
    family = lambda order: residue_family_of_order(ctx, order)
    shift = shift_operator(ctx, LAMBDA + n - 1)
    r = r_power(1, ctx.context)
    if kind == 'even-S':
        lhs = family(2 * N)
        rhs = family(2 * N - 1).substitute(1, -1).compose(shift)
    elif kind == 'odd-S':
        lhs = family(2 * N + 1).scale((2 * LAMBDA + n - 2 * N - 1) * -(2 * N + 1))
        rhs = family(2 * N).substitute(1, -1).compose(shift)
    elif kind == 'even-M':
        lhs = family(2 * N)
        rhs = family(2 * N + 1).substitute(1, 1).compose(r)
    elif kind == 'odd-M':
        lhs = family(2 * N - 1).scale((2 * LAMBDA + n - 2 * N + 2) * (-2 * N))
        rhs = family(2 * N).substitute(1, 1).compose(r)
    else:
        raise ValueError('unknown ladder: {}'.format(kind))
    return _compare_boundary(lhs, rhs)

def _gjms_factorization(ctx, N, k):
    lam = ctx.m - k - 1
    lhs = iterated_shift(ctx, lam, N)
    rhs = iterated_shift(ctx, lam, k) * bar_gjms(ctx, N - k).shift_r(N - k)
    return _compare(lhs, rhs)

@report_check('iterated shifts factor through compactified GJMS operators')
def gjms_factorization_check(n, mu, K, N, k):
    ctx = shift_context('einstein', n, mu, K)
    return _needs_odd_n(ctx) or _gjms_factorization(ctx, N, k)

@report_check('residue families factor through compactified GJMS operators')
def second_np_check(n, mu, K, N, k):
    ctx = shift_context('einstein', n, mu, K)
    skip = _needs_odd_n(ctx)
    if skip:
        return skip
    lhs = residue_family_of_order(ctx, N, lam=-(n + 1) / 2 + k)
    rhs = residue_family_of_order(ctx, N - 2 * k, lam=-(n + 1) / 2 - k).compose(bar_gjms(ctx, k))
    return _compare_boundary(lhs, rhs)

@report_check('residue families factor through boundary GJMS operators')
def res_factor_check(backend, n, mu, K, jets, N, k):
    ctx = shift_context(backend, n, mu, K, jets)
    lam = -n / 2 + N - k
    lhs = residue_family_of_order(ctx, N, lam=lam)
    rhs = residue_family_of_order(ctx, N - 2 * k, lam=lam).left_mul(gjms_tangential(ctx, k))
    return _compare_boundary(lhs, rhs)

# ---------------------------------------------------------- tangential suite

def _double_factorial(k):
    return math.prod(range(k, 0, -2))

@report_check('even iterated shifts restrict to boundary GJMS operators')
def tangential_even_check(backend, n, mu, K, jets, N):
    ctx = shift_context(backend, n, mu, K, jets)
    restricted = restrict_boundary(iterated_shift(ctx, n / 2 - N, 2 * N))
    expected = BoundaryOperator.from_tangential(gjms_tangential(ctx, N), 0, ctx.context)
    return _compare_boundary(restricted, expected.scale(_double_factorial(2 * N - 1) ** 2))

@report_check('odd iterated shifts restrict to zero')
def tangential_odd_check(backend, n, mu, K, jets, N):
    ctx = shift_context(backend, n, mu, K, jets)
    restricted = restrict_boundary(iterated_shift(ctx, (n + 1) / 2 - N, 2 * N - 1))
    return _compare_boundary(restricted, BoundaryOperator({}, ctx.context))

@report_check('even interpolating shifts restrict to compactified GJMS operators')
def interpolating_even_check(n, mu, K, N):
    ctx = shift_context('einstein', n, mu, K)
    skip = _needs_odd_n(ctx)
    if skip:
        return skip
    restricted = restrict_boundary(iterated_shift(ctx, (n - 1) / 2 - N, 2 * N))
    expected = restrict_boundary(bar_gjms(ctx, N)).scale(math.factorial(2 * N))
    return _compare_boundary(restricted, expected)

@report_check('odd interpolating shifts restrict to d of compactified GJMS operators')
def interpolating_odd_check(n, mu, K, N):
    ctx = shift_context('einstein', n, mu, K)
    skip = _needs_odd_n(ctx)
    if skip:
        return skip
    restricted = restrict_boundary(iterated_shift(ctx, (n - 3) / 2 - N, 2 * N + 1))
    expected = restrict_boundary(ddr(1, ctx.context) * bar_gjms(ctx, N))
    return _compare_boundary(restricted, expected.scale(math.factorial(2 * N + 2)))

# ------------------------------------------------------------ bigGJMS suite

@report_check('iterated shift at m - 1 is r^N times a compactified GJMS operator')
def big_gjms_check(n, mu, K, N):
    ctx = shift_context('einstein', n, mu, K)
    return _needs_odd_n(ctx) or _gjms_factorization(ctx, N, 0)

# ------------------------------------------------------------- q-holo suite

def _expected_q(ctx, N):
    closed = q_closed_formula(ctx.n, N)
    if ctx.mode == FREE:
        return closed
    return ScalarPoly.const(closed.substitute(q_einstein_values(ctx)))

@report_check('holographic formulas for Q-curvature')
def q_holographic_check(backend, n, mu, K, jets, N, route):
    ctx = shift_context(backend, n, mu, K, jets)
    critical = 2 * N == n
    computed = q_holographic(ctx, N, critical, route)
    expected = _expected_q(ctx, N)
    difference = computed - expected
    return difference.is_zero(), str(difference), {'computed': str(computed)}

@report_check('even residue families at zero kill constants')
def q_vanish_check(backend, n, mu, K, jets, N):
    ctx = shift_context(backend, n, mu, K, jets)
    family = residue_family_of_order(ctx, 2 * N, lam=0)
    value = family.apply_scalar(ScalarSeries({0: 1}), ctx.jets.killers)
    return value.is_zero(), str(value)

# ------------------------------------------------------- solution-ops suite

@report_check('second solution operator')
def t2_check(backend, n, mu, K, jets):
    ctx = shift_context(backend, n, mu, K, jets)
    table = solution_recursion(ctx, 1)
    return _compare_elements(table[1], t2_closed_form(n, ctx.mode, ctx.jets.mu))

@report_check('fourth solution operator')
def t4_check(backend, n, mu, K, jets):
    ctx = shift_context(backend, n, mu, K, jets)
    table = solution_recursion(ctx, 2)
    return _compare_elements(table[2], t4_closed_form(n, ctx.mode, ctx.jets.mu))

@report_check('residues of solution operators are GJMS operators')
def solution_residue_check(backend, n, mu, K, jets, j):
    ctx = shift_context(backend, n, mu, K, jets)
    table = solution_recursion(ctx, j)
    return _compare_elements(residue_extract(table, j), expected_residue(gjms_tangential(ctx, j), j))

@report_check('leading lambda coefficient of residue families')
def leading_coefficient_check(backend, n, mu, K, jets, N, parity):
    ctx = shift_context(backend, n, mu, K, jets)
    computed, expected = leading_coefficient(ctx, N, parity)
    return _compare_boundary(computed, expected)

# ---------------------------------------------------- building-blocks suite

def _block(ctx, N):
    return building_blocks(ctx, N, 'product' if N <= 3 else 'sphere')

@report_check('M_2 is the compactified Yamabe operator')
def m2_check(n, mu, K):
    ctx = shift_context('einstein', n, mu, K)
    skip = _needs_odd_n(ctx)
    if skip:
        return skip
    yamabe = ctx.jets.lap_bar - ctx.jets.j_bar_operator().scale((n - 1) / 2)
    return _compare(building_blocks(ctx, 1), yamabe)

@report_check('sphere closed form of the building blocks')
def sphere_closed_form_check(n, K, N):
    ctx = _needs_sphere(n, K)
    skip = _needs_odd_n(ctx)
    if skip:
        return skip
    return _compare(building_blocks(ctx, N, 'product'), building_blocks(ctx, N, 'sphere'))

@report_check('r M_4 is twice the commutator of d^w with M_2')
def magic_check(n, mu, K):
    ctx = shift_context('einstein', n, mu, K)
    skip = _needs_odd_n(ctx)
    if skip:
        return skip
    dw = ddr_w(ctx)
    M2 = building_blocks(ctx, 1)
    return _compare(building_blocks(ctx, 2).shift_r(1), (dw * M2 - M2 * dw).scale(2))

@report_check('r M_2N is 2(N-1) times the commutator of d^w with M_2N-2')
def magic2_check(n, K, N):
    ctx = _needs_sphere(n, K)
    skip = _needs_odd_n(ctx)
    if skip:
        return skip
    dw = ddr_w(ctx)
    lower = _block(ctx, N - 1)
    commutator = (dw * lower - lower * dw).scale(2 * (N - 1))
    return _compare(_block(ctx, N).shift_r(1), commutator)

@report_check('iterated shifts in building blocks and d^w')
def shift_expansion_check(n, mu, K, N):
    ctx = shift_context('einstein', n, mu, K)
    skip = _needs_odd_n(ctx)
    if skip:
        return skip
    return _compare(iterated_shift(ctx, LAMBDA, N), assemble_layers(shift_expansion(ctx, N)))

@report_check('top lambda coefficient of iterated shifts')
def top_coefficient_check(backend, n, mu, K, jets, N):
    ctx = shift_context(backend, n, mu, K, jets)
    computed = lambda_top_coefficient(iterated_shift(ctx, LAMBDA, N), N)
    return _compare(computed, expected_top_coefficient(ctx, N))

# ----------------------------------------------------- holo-laplacian suite

@report_check('holographic Laplacian by generating series and exponential')
def holo_laplacian_check(n, K, eta_order):
    ctx = _needs_sphere(n, K)
    skip = _needs_odd_n(ctx)
    if skip:
        return skip
    generating, exponential = holographic_laplacian(ctx, eta_order)
    results = []
    for k, (equal, residual) in sorted(generating.compare(exponential).items()):
        results.append((equal, 'eta^{}\n{}'.format(k, residual.serialize())))
    passed, residual = _first_failure(results)
    return passed, residual, {'eta_exponents': generating.exponents()}

# -------------------------------------------------------- exploratory suite

@report_check('r^N bracket of iterated shifts against M_2N')
def leading_bracket_check(n, mu, K, N):
    ctx = shift_context('einstein', n, mu, K)
    skip = _needs_odd_n(ctx)
    if skip:
        return skip
    if N > 3:
        return Outcome(None, 'no building-block expansion of S_{} below r^{}'.format(N, N), {})
    _, leading, _, ratio = leading_bracket(ctx, N, iterated_shift(ctx, LAMBDA, N))
    details = {'ratio': ratio, 'reference': BRACKET_REFERENCE[N]}
    if ratio is None:
        return Outcome(True, leading.serialize(), details)
    return Outcome(True, 'ratio {}'.format(ratio), details)
