""" normal-form arithmetic for truncated operator series in r and d/dr

A series is a sum of monomials c * r^a * d^b * w where a is rational, b is a
non-negative integer and w a tangential word. Tangential words commute with r
and d/dr. Every series carries a guaranteed order: terms with r-exponent at or
above it are unknown, and the unknown tail contains at most errdeg
derivatives in r. A series flagged integral has its unknown tail at integer
exponents only.
"""

from collections import namedtuple
from fractions import Fraction
import math

from shiftops.exceptions import TruncationInsufficient, AdjointRuleUnavailable, \
    NonCancellingPole
from shiftops.ratfunc import RatFunc, as_ratfunc, falling_factorial
from shiftops.scalars import ScalarPoly, scalar_apply
from shiftops.tangential import (TangentialElement, FREE, EINSTEIN, LAP, MULT_J,
    MULT_PSQ, MULT_DJ, DPD, GJD, L, reduce_leibniz, word_str)

Context = namedtuple('Context', ['n', 'mode', 'mu'])

def merge_contexts(first, second):
    if first is None:
        return second
    if second is None or first == second:
        return first
    raise ValueError('cannot combine series from contexts {} and {}'.format(first, second))

def _is_natural(value):
    return value >= 0 and value.denominator == 1

def _finite(order):
    return order != math.inf

def _integral_exponents(series):
    return all(a.denominator == 1 for a, _, _ in series.terms)

class OperatorSeries(object):
    """ truncated operator series in normal form

    Args:
        terms: dict of (a, b, word) to coefficient (RatFunc or number)
        order: guaranteed order, math.inf for exact series
        errdeg: bound on the d/dr degree of the unknown tail
        context: evaluation Context, or None for context-free series
        integral: True when every unknown term has an integer exponent
    """
    __slots__ = ('terms', 'order', 'errdeg', 'context', 'integral')

    def __init__(self, terms=None, order=math.inf, errdeg=0, context=None, integral=True):
        clean = {}
        dropped = 0
        for (a, b, word), coeff in (terms or {}).items():
            if not isinstance(a, Fraction):
                a = Fraction(a)
            if not isinstance(coeff, RatFunc):
                coeff = as_ratfunc(coeff)
            if not coeff:
                continue
            if a >= order:
                dropped = max(dropped, b)
                integral = integral and a.denominator == 1
                continue
            clean[(a, b, tuple(word))] = coeff
        self.terms = clean
        self.order = order
        self.errdeg = max(errdeg, dropped) if _finite(order) else 0
        self.context = context
        self.integral = integral if _finite(order) else True

    @property
    def mode(self):
        return self.context.mode if self.context else None

    def is_zero(self):
        return not self.terms

    def drop_known(self):
        return min((a - b for a, b, _ in self.terms), default=math.inf)

    def max_deriv(self):
        return max((b for _, b, _ in self.terms), default=0)

    def min_exponent(self):
        return min((a for a, _, _ in self.terms), default=math.inf)

    def with_context(self, context):
        return OperatorSeries(self.terms, self.order, self.errdeg,
            merge_contexts(self.context, context), self.integral)

    def truncate(self, order):
        if order >= self.order:
            return self
        return OperatorSeries(self.terms, order, self.errdeg, self.context, self.integral)

    def coefficient(self, a, b):
        """ tangential coefficient of r^a d^b
        """
        a = Fraction(a)
        if a >= self.order:
            raise TruncationInsufficient('r^{} lies beyond guaranteed order {}'.format(a, self.order))
        mode = self.mode or FREE
        return TangentialElement({w: c for (x, y, w), c in self.terms.items()
            if x == a and y == b}, mode)

    def __add__(self, other):
        if not isinstance(other, OperatorSeries):
            other = identity(self.context).scale(other)
        context = merge_contexts(self.context, other.context)
        order = min(self.order, other.order)
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            terms[key] = terms[key] + coeff if key in terms else coeff
        errdeg = 0
        if _finite(order):
            errdeg = max(self.errdeg if _finite(self.order) else 0,
                other.errdeg if _finite(other.order) else 0)
        return OperatorSeries(terms, order, errdeg, context, self.integral and other.integral)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, OperatorSeries):
            other = identity(self.context).scale(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor):
        factor = as_ratfunc(factor)
        if not factor:
            return OperatorSeries({}, self.order, self.errdeg, self.context, self.integral)
        return OperatorSeries({k: c * factor for k, c in self.terms.items()},
            self.order, self.errdeg, self.context, self.integral)

    def __mul__(self, other):
        if isinstance(other, OperatorSeries):
            return normal_order_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, power):
        result = identity(self.context)
        for _ in range(power):
            result = result * self
        return result

    def shift_r(self, k):
        """ left multiplication by r^k
        """
        k = Fraction(k)
        return OperatorSeries({(a + k, b, w): c for (a, b, w), c in self.terms.items()},
            self.order + k, self.errdeg, self.context, self.integral and k.denominator == 1)

    def map_coefficients(self, func):
        return OperatorSeries({k: func(c) for k, c in self.terms.items()},
            self.order, self.errdeg, self.context, self.integral)

    def evaluate(self, lam):
        lam = Fraction(lam)
        return self.map_coefficients(lambda c: RatFunc.constant(c.evaluate(lam)))

    def substitute(self, scale=1, shift=0):
        """ substitute lam -> scale * lam + shift in every coefficient
        """
        return self.map_coefficients(lambda c: c.substitute(scale, shift))

    def map_words(self, func, context=None):
        """ replace every word by the TangentialElement func(word)
        """
        terms = {}
        for (a, b, word), coeff in self.terms.items():
            for new_word, factor in func(word).terms.items():
                key = (a, b, new_word)
                value = coeff * factor
                terms[key] = terms[key] + value if key in terms else value
        return OperatorSeries(terms, self.order, self.errdeg,
            self.context if context is None else context, self.integral)

    def reduce_leibniz(self):
        return self.map_words(lambda w: reduce_leibniz(TangentialElement({w: 1})))

    def einstein_reduce(self, n, mu):
        context = Context(Fraction(n), EINSTEIN, Fraction(mu))
        return self.map_words(lambda w: TangentialElement({w: 1}).einstein_reduce(n, mu), context)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda x: (x[0][0], x[0][1], x[0][2]))

    def serialize(self):
        """ one term per line: coefficient, exponent, d-degree and word
        """
        lines = ['{}\t{}\t{}\t{}'.format(c, a, b, word_str(w))
            for (a, b, w), c in self.sorted_terms()]
        lines.append('# order {} errdeg {}'.format(self.order, self.errdeg))
        return '\n'.join(lines)

    def __eq__(self, other):
        if not isinstance(other, OperatorSeries):
            return NotImplemented
        return self.terms == other.terms and self.order == other.order

    def __str__(self):
        return self.serialize()

    def __repr__(self):
        return 'OperatorSeries({} terms, order={})'.format(len(self.terms), self.order)

def monomial(a=0, b=0, word=(), coeff=1, context=None):
    return OperatorSeries({(Fraction(a), b, tuple(word)): coeff}, context=context)

def identity(context=None):
    return monomial(context=context)

def ddr(b=1, context=None):
    return monomial(b=b, context=context)

def r_power(a, context=None):
    return monomial(a=a, context=context)

def tangential_series(element, context=None):
    return OperatorSeries({(Fraction(0), 0, w): c for w, c in element.terms.items()},
        context=context)

def scalar_series_operator(series, context):
    """ multiplication by a ScalarSeries, as an operator series
    """
    terms = {}
    for exponent, value in series.coeffs.items():
        element = TangentialElement.from_scalar(value, context.mode if context else FREE)
        for word, coeff in element.terms.items():
            terms[(exponent, 0, word)] = coeff
    return OperatorSeries(terms, series.order, 0, context)

def _tail_loss(errdeg, exponent):
    # d^b r^c loses at most min(b, c) powers of r when c is a natural number
    return min(errdeg, exponent) if _is_natural(exponent) else errdeg

def _product_order(left, right):
    bounds = []
    if _finite(right.order):
        bounds.append(left.drop_known() + right.order)
    if _finite(left.order):
        losses = [c - _tail_loss(left.errdeg, c) for c, _, _ in right.terms]
        if losses:
            bounds.append(left.order + min(losses))
        if _finite(right.order):
            if right.integral and right.order >= 0:
                lowest = Fraction(math.ceil(right.order))
                bounds.append(left.order + lowest - _tail_loss(left.errdeg, lowest))
            else:
                bounds.append(left.order + right.order - left.errdeg)
    return min(bounds, default=math.inf)

def _product_integral(left, right):
    integral = True
    if _finite(right.order):
        integral = integral and right.integral and _integral_exponents(left)
    if _finite(left.order):
        integral = integral and left.integral and _integral_exponents(right)
    return integral

def _product_errdeg(left, right):
    errdeg = 0
    if _finite(right.order):
        errdeg = max(errdeg, left.max_deriv() + right.errdeg)
    if _finite(left.order):
        errdeg = max(errdeg, left.errdeg + right.max_deriv())
        if _finite(right.order):
            errdeg = max(errdeg, left.errdeg + right.errdeg)
    return errdeg

def normal_order_mul(left, right):
    """ product of two series in normal form

    Uses d^b r^c = sum_k C(b, k) c(c-1)...(c-k+1) r^(c-k) d^(b-k), which is
    valid for rational c.
    """
    context = merge_contexts(left.context, right.context)
    order = _product_order(left, right)
    errdeg = _product_errdeg(left, right)
    integral = _product_integral(left, right)
    terms = {}
    falling = {}
    for (a, b, w1), c1 in left.terms.items():
        for (c, d, w2), c2 in right.terms.items():
            coeff = c1 * c2
            word = w1 + w2
            for k in range(b + 1):
                key = (c, k)
                if key not in falling:
                    falling[key] = falling_factorial(c, k)
                factor = math.comb(b, k) * falling[key]
                if factor == 0:
                    break
                exponent = a + c - k
                if exponent >= order:
                    errdeg = max(errdeg, b + d - k)
                    integral = integral and exponent.denominator == 1
                    continue
                mono = (exponent, b + d - k, word)
                value = coeff * factor
                terms[mono] = terms[mono] + value if mono in terms else value
    return OperatorSeries(terms, order, errdeg, context, integral)

def conjugate_by_power(series, alpha):
    """ r^(-alpha) E r^alpha in normal form
    """
    alpha = as_ratfunc(alpha).constant_value() if isinstance(alpha, RatFunc) else Fraction(alpha)
    terms = {}
    for (a, b, word), coeff in series.terms.items():
        for k in range(b + 1):
            factor = math.comb(b, k) * falling_factorial(alpha, k)
            if factor == 0:
                break
            key = (a - k, b - k, word)
            value = coeff * factor
            terms[key] = terms[key] + value if key in terms else value
    order = series.order
    if _finite(order):
        order = order - _tail_loss(series.errdeg, alpha)
    return OperatorSeries(terms, order, series.errdeg, series.context, series.integral)

def restrict_boundary(series):
    """ restriction to r = 0, keeping the terms with exponent zero

    Raises:
        TruncationInsufficient if unknown terms may reach exponent zero
        ValueError if a known term is singular at r = 0
    """
    if not series.order > 0:
        raise TruncationInsufficient('guaranteed order {} does not reach past r^0'.format(series.order))
    terms = {}
    for (a, b, word), coeff in series.terms.items():
        if a < 0:
            raise ValueError('term r^{} is singular at the boundary'.format(a))
        if a == 0:
            terms[(b, word)] = coeff
    return BoundaryOperator(terms, series.context)

def default_adjoint_rules(mode):
    if mode == EINSTEIN:
        return {L: TangentialElement.generator(L, EINSTEIN)}
    return {letter: TangentialElement.generator(letter)
        for letter in (LAP, MULT_J, MULT_PSQ, MULT_DJ, DPD)}

GJD_ADJOINT_RULE = {GJD: TangentialElement({(GJD, ): -1, (MULT_DJ, ): -1})}

def word_adjoint(word, rules, mode=FREE):
    result = TangentialElement.identity(mode)
    for letter in reversed(word):
        if letter not in rules:
            raise AdjointRuleUnavailable('no formal adjoint for {}'.format(letter))
        result = result * rules[letter]
    return result

def adjoint_series(series, jets, rules=None):
    """ formal adjoint with respect to the volume form v(r) dr dvol(h)

    Args:
        series: OperatorSeries
        jets: GeometryJets supplying the log-derivative of v and any declared
            adjoint rules
        rules: extra generator adjoints, e.g. GJD_ADJOINT_RULE

    Raises:
        AdjointRuleUnavailable for generators without a rule
    """
    context = merge_contexts(series.context, jets.context)
    mode = context.mode if context else FREE
    table = default_adjoint_rules(mode)
    table.update(jets.adjoint_rules)
    table.update(rules or {})
    d_star = -ddr(1, context) - jets.t
    powers = [identity(context)]
    result = OperatorSeries({}, context=context)
    for (a, b, word), coeff in series.sorted_terms():
        while len(powers) <= b:
            powers.append(powers[-1] * d_star)
        adjoint = tangential_series(word_adjoint(word, table, mode), context)
        result = result + (adjoint * powers[b] * r_power(a, context)).scale(coeff)
    if _finite(series.order):
        result = result.truncate(series.order - series.errdeg)
        result = OperatorSeries(result.terms, result.order,
            max(result.errdeg, series.errdeg), context, result.integral and series.integral)
    return result

def lambda_diff(series, k=1):
    """ k-th derivative in lambda of every coefficient

    Raises:
        ValueError if a coefficient is not polynomial in lambda
    """
    return series.map_coefficients(lambda c: c.derivative(k))

def equal_to_order(first, second, order=None):
    """ compare two series below an order

    Returns:
        tuple of (equal, residual series)
    """
    limit = min(first.order, second.order)
    order = limit if order is None else order
    if order > limit:
        raise ValueError('order {} exceeds guaranteed order {}'.format(order, limit))
    residual = (first - second).truncate(order)
    return residual.is_zero(), residual

class BoundaryOperator(object):
    """ restriction operator sum c * i^* d^b w

    Args:
        terms: dict of (b, word) to coefficient
        context: evaluation Context or None
    """
    __slots__ = ('terms', 'context')

    def __init__(self, terms=None, context=None):
        clean = {}
        for (b, word), coeff in (terms or {}).items():
            coeff = as_ratfunc(coeff)
            if coeff:
                clean[(b, tuple(word))] = coeff
        self.terms = clean
        self.context = context

    @classmethod
    def from_tangential(cls, element, b=0, context=None):
        return cls({(b, w): c for w, c in element.terms.items()}, context)

    @property
    def mode(self):
        return self.context.mode if self.context else FREE

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        context = merge_contexts(self.context, other.context)
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            terms[key] = terms[key] + coeff if key in terms else coeff
        return BoundaryOperator(terms, context)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor):
        factor = as_ratfunc(factor)
        return BoundaryOperator({k: c * factor for k, c in self.terms.items()}, self.context)

    def __mul__(self, factor):
        return self.scale(factor)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, BoundaryOperator):
            return NotImplemented
        return self.terms == other.terms

    def map_coefficients(self, func):
        return BoundaryOperator({k: func(c) for k, c in self.terms.items()}, self.context)

    def to_series(self):
        return OperatorSeries({(Fraction(0), b, w): c for (b, w), c in self.terms.items()},
            context=self.context)

    def compose(self, series):
        """ the boundary operator self o series
        """
        return restrict_boundary(self.to_series() * series)

    def left_mul(self, element):
        """ the boundary operator element o self, for a tangential element
        """
        terms = {}
        for (b, word), coeff in self.terms.items():
            for w, c in element.terms.items():
                key = (b, w + word)
                value = coeff * c
                terms[key] = terms[key] + value if key in terms else value
        return BoundaryOperator(terms, self.context)

    def tangential_part(self, b=0):
        return TangentialElement({w: c for (x, w), c in self.terms.items() if x == b}, self.mode)

    def max_deriv(self):
        return max((b for b, _ in self.terms), default=0)

    def evaluate(self, lam):
        lam = Fraction(lam)
        return self.map_coefficients(lambda c: RatFunc.constant(c.evaluate(lam)))

    def substitute(self, scale=1, shift=0):
        return self.map_coefficients(lambda c: c.substitute(scale, shift))

    def lambda_diff(self, k=1):
        return self.map_coefficients(lambda c: c.derivative(k))

    def lambda_coefficient(self, power):
        return self.map_coefficients(lambda c: RatFunc.constant(c.coefficient(power)))

    def lambda_degree(self):
        return max((c.degree() for c in self.terms.values()), default=-1)

    def divide(self, denominator):
        """ divide every coefficient, auditing that no pole survives

        Raises:
            NonCancellingPole if some quotient is not polynomial in lambda
        """
        denominator = as_ratfunc(denominator)
        terms = {}
        for key, coeff in self.terms.items():
            quotient = coeff / denominator
            if not quotient.is_polynomial():
                raise NonCancellingPole('{} does not divide {} (term {})'.format(
                    denominator, coeff, key))
            terms[key] = quotient
        return BoundaryOperator(terms, self.context)

    def reduce_leibniz(self):
        terms = {}
        for (b, word), coeff in self.terms.items():
            for w, c in reduce_leibniz(TangentialElement({word: 1})).terms.items():
                key = (b, w)
                terms[key] = terms[key] + coeff * c if key in terms else coeff * c
        return BoundaryOperator(terms, self.context)

    def einstein_reduce(self, n, mu):
        context = Context(Fraction(n), EINSTEIN, Fraction(mu))
        terms = {}
        for (b, word), coeff in self.terms.items():
            for w, c in TangentialElement({word: 1}).einstein_reduce(n, mu).terms.items():
                key = (b, w)
                terms[key] = terms[key] + coeff * c if key in terms else coeff * c
        return BoundaryOperator(terms, context)

    def apply_scalar(self, series, killers=()):
        """ apply to a scalar series f: sum c * w(b! f_b)

        Raises:
            TruncationInsufficient if f is not known to the needed order
        """
        total = ScalarPoly()
        for (b, word), coeff in self.terms.items():
            if b >= series.order:
                raise TruncationInsufficient('need the r^{} coefficient of a series of order {}'.format(
                    b, series.order))
            value = series.coefficient(b) * math.factorial(b)
            total = total + scalar_apply(word, value, killers) * coeff.constant_value()
        return total

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda x: (x[0][0], x[0][1]))

    def serialize(self):
        return '\n'.join('{}\t{}\t{}'.format(c, b, word_str(w)) for (b, w), c in self.sorted_terms())

    def __str__(self):
        return self.serialize() or '0'

    def __repr__(self):
        return 'BoundaryOperator({} terms)'.format(len(self.terms))
