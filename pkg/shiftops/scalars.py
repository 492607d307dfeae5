""" commutative scalar fields on the boundary and their series in r

Scalar fields are polynomials in the atoms J, Psq (the squared norm of the
Schouten tensor) and DJ (the Laplacian of J). Series in r carry a guaranteed
order, every stored exponent lies below it.
"""

from fractions import Fraction
import math

from sympy import Rational
from sympy.polys.domains import QQ
from sympy.polys.rings import ring
from sympy.polys.ring_series import rs_diff, rs_log, rs_mul, rs_pow

from shiftops.exceptions import UnreducibleApplication
from shiftops.ratfunc import to_fraction, to_qq

ATOMS = ('J', 'Psq', 'DJ')
_CONST = (0, 0, 0)

# series variable first, then the atoms
SERIES_RING = ring('r,J,Psq,DJ', QQ)[0]
R_VAR = SERIES_RING.gens[0]

class ScalarPoly(object):
    """ polynomial in J, Psq and DJ with rational coefficients
    """
    __slots__ = ('terms', )

    def __init__(self, terms=None):
        clean = {}
        for mono, coeff in (terms or {}).items():
            if coeff:
                clean[tuple(mono)] = Fraction(coeff)
        self.terms = clean

    @classmethod
    def const(cls, value):
        return cls({_CONST: value})

    @classmethod
    def atom(cls, name, power=1):
        mono = [0, 0, 0]
        mono[ATOMS.index(name)] = power
        return cls({tuple(mono): 1})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(mono == _CONST for mono in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError('{} is not constant'.format(self))
        return self.terms.get(_CONST, Fraction(0))

    def __add__(self, other):
        other = _as_poly(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            terms[mono] = terms.get(mono, 0) + coeff
        return ScalarPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return ScalarPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ScalarPoly({m: c * other for m, c in self.terms.items()})
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                terms[mono] = terms.get(mono, 0) + c1 * c2
        return ScalarPoly(terms)

    __rmul__ = __mul__

    def __pow__(self, power):
        result = ScalarPoly.const(1)
        for _ in range(power):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ScalarPoly.const(other)
        if not isinstance(other, ScalarPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def substitute(self, values):
        """ evaluate with exact values for the atoms

        Args:
            values: dict of atom name to Fraction, e.g. {'J': 3, 'Psq': 3/5, 'DJ': 0}
        """
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            term = coeff
            for name, power in zip(ATOMS, mono):
                if power:
                    term *= Fraction(values[name]) ** power
            total += term
        return total

    def sorted_terms(self):
        # degree-lexicographic over the atom order
        return sorted(self.terms.items(), key=lambda x: (sum(x[0]), tuple(-p for p in x[0])))

    def __str__(self):
        if not self.terms:
            return '0'
        parts = []
        for mono, coeff in self.sorted_terms():
            factors = []
            for name, power in zip(ATOMS, mono):
                if power == 1:
                    factors.append(name)
                elif power > 1:
                    factors.append('{}^{}'.format(name, power))
            if not factors:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append('*'.join(factors))
            else:
                parts.append('{}*{}'.format(coeff, '*'.join(factors)))
        return ' + '.join(parts)

    def __repr__(self):
        return "ScalarPoly('{}')".format(self)

def _as_poly(value):
    if isinstance(value, ScalarPoly):
        return value
    return ScalarPoly.const(value)

class ScalarSeries(object):
    """ truncated series sum_e c_e r^e with ScalarPoly coefficients

    Exponents are non-negative integers. Products, powers and logarithms go
    through sympy's ring_series on SERIES_RING, truncated in r.

    Args:
        coeffs: dict of exponent to ScalarPoly (or number)
        order: guaranteed order, terms at or above it are unknown. math.inf
            marks an exact series.
    """
    __slots__ = ('coeffs', 'order')

    def __init__(self, coeffs=None, order=math.inf):
        clean = {}
        for exponent, value in (coeffs or {}).items():
            exponent = Fraction(exponent)
            value = _as_poly(value)
            if exponent < 0 or exponent.denominator != 1:
                raise ValueError('exponent {} in scalar series is not a natural number'.format(exponent))
            if value and exponent < order:
                clean[exponent] = value
        self.coeffs = clean
        self.order = order

    def to_ring(self):
        """ the known terms as an element of SERIES_RING
        """
        terms = {}
        for exponent, value in self.coeffs.items():
            for mono, coeff in value.terms.items():
                terms[(int(exponent), ) + mono] = to_qq(coeff)
        return SERIES_RING.from_dict(terms)

    @classmethod
    def from_ring(cls, poly, order=math.inf):
        coeffs = {}
        for (exponent, *mono), coeff in poly.terms():
            coeffs.setdefault(exponent, {})[tuple(mono)] = to_fraction(coeff)
        return cls({e: ScalarPoly(terms) for e, terms in coeffs.items()}, order)

    def coefficient(self, exponent):
        return self.coeffs.get(Fraction(exponent), ScalarPoly())

    def min_exponent(self):
        return min(self.coeffs) if self.coeffs else math.inf

    def truncate(self, order):
        return ScalarSeries(self.coeffs, min(order, self.order))

    def __add__(self, other):
        if not isinstance(other, ScalarSeries):
            other = ScalarSeries({0: other})
        coeffs = dict(self.coeffs)
        for exponent, value in other.coeffs.items():
            coeffs[exponent] = coeffs[exponent] + value if exponent in coeffs else value
        return ScalarSeries(coeffs, min(self.order, other.order))

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if not isinstance(other, ScalarSeries):
            other = ScalarSeries({0: other})
        return self + (-other)

    def scale(self, factor):
        return ScalarSeries({e: c * factor for e, c in self.coeffs.items()}, self.order)

    def __mul__(self, other):
        if not isinstance(other, ScalarSeries):
            return self.scale(other)
        order = min(self.order + other.min_exponent(),
            self.min_exponent() + other.order, self.order + other.order)
        if order == math.inf:
            return ScalarSeries.from_ring(self.to_ring() * other.to_ring())
        product = rs_mul(self.to_ring(), other.to_ring(), R_VAR, max(math.ceil(order), 0))
        return ScalarSeries.from_ring(product, order)

    __rmul__ = __mul__

    def shift(self, k):
        """ multiply by r^k, k may be negative when the series allows it
        """
        return ScalarSeries({e + k: c for e, c in self.coeffs.items()}, self.order + k)

    def derivative(self):
        return ScalarSeries.from_ring(rs_diff(self.to_ring(), R_VAR), self.order - 1)

    def _expansion_order(self, order):
        if self.coefficient(0) != ScalarPoly.const(1):
            raise ValueError('constant term must be 1 for a power series expansion')
        target = self.order if order is None else min(self.order, order)
        if target == math.inf and set(self.coeffs) - {0}:
            raise ValueError('an explicit order is needed to expand an exact series')
        return target

    def power(self, alpha, order=None):
        """ binomial expansion of self ** alpha

        Args:
            alpha: rational exponent
            order: truncation for exact inputs. The result never claims more
                than the order of self.

        Raises:
            ValueError if the constant term is not 1, or an exact series
                needs an expansion and no order is given
        """
        alpha = Fraction(alpha)
        target = self._expansion_order(order)
        if target == math.inf:
            return ScalarSeries({0: 1})
        expanded = rs_pow(self.to_ring(), Rational(alpha.numerator, alpha.denominator),
            R_VAR, math.ceil(target))
        return ScalarSeries.from_ring(expanded, target)

    def sqrt(self, order=None):
        return self.power(Fraction(1, 2), order)

    def reciprocal(self, order=None):
        return self.power(-1, order)

    def log_derivative(self, order=None):
        """ d/dr log of the series
        """
        target = self._expansion_order(order)
        if target == math.inf:
            return ScalarSeries({})
        log = rs_log(self.to_ring(), R_VAR, math.ceil(target))
        return ScalarSeries.from_ring(rs_diff(log, R_VAR), target - 1)

    def substitute(self, values):
        return ScalarSeries({e: ScalarPoly.const(c.substitute(values))
            for e, c in self.coeffs.items()}, self.order)

    def equal_to_order(self, other, order=None):
        limit = min(self.order, other.order)
        order = limit if order is None else order
        if order > limit:
            raise ValueError('order {} exceeds guaranteed order {}'.format(order, limit))
        return not (self - other).truncate(order).coeffs

    def __eq__(self, other):
        if not isinstance(other, ScalarSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __str__(self):
        if not self.coeffs:
            body = '0'
        else:
            body = ' + '.join('({})*r^{}'.format(self.coeffs[e], e) for e in sorted(self.coeffs))
        return '{} + O(r^{})'.format(body, self.order)

    def __repr__(self):
        return "ScalarSeries('{}')".format(self)

def series_transcendental(series, op, other=None, order=None):
    """ dispatch the one-variable series operations by name

    Args:
        series: ScalarSeries
        op: one of 'sqrt', 'log-then-d/dr', 'reciprocal', 'multiply', 'd/dr'
        other: second factor for 'multiply'
        order: truncation used when expanding an exact input
    """
    if op == 'sqrt':
        return series.sqrt(order)
    elif op == 'log-then-d/dr':
        return series.log_derivative(order)
    elif op == 'reciprocal':
        return series.reciprocal(order)
    elif op == 'multiply':
        if other is None:
            raise ValueError('multiply needs a second series')
        return series * other
    elif op == 'd/dr':
        return series.derivative()
    raise ValueError('unknown series operation: {}'.format(op))

_MULTIPLIERS = {'MULT_J': 'J', 'MULT_Psq': 'Psq', 'MULT_DJ': 'DJ'}
_KILL_CONSTANTS = ('GJD', 'DPD', 'L')

def _apply_letter(letter, value, killers):
    if letter in _MULTIPLIERS:
        return value * ScalarPoly.atom(_MULTIPLIERS[letter])
    if letter == 'LAP':
        result = ScalarPoly()
        for mono, coeff in value.terms.items():
            if mono == _CONST:
                continue
            elif mono == (1, 0, 0):
                result = result + ScalarPoly.atom('DJ') * coeff
            else:
                raise UnreducibleApplication('LAP applied to {}'.format(ScalarPoly({mono: 1})))
        return result
    if letter in _KILL_CONSTANTS or letter in killers:
        if value.is_constant():
            return ScalarPoly()
        raise UnreducibleApplication('{} applied to {}'.format(letter, value))
    raise UnreducibleApplication('no scalar rule for {}'.format(letter))

def scalar_apply(word, value, killers=()):
    """ apply a tangential word to a scalar field

    Letters act right to left, so the last letter of the word is applied first.

    Args:
        word: tuple of generator names
        value: ScalarPoly
        killers: extra generator names declared to annihilate constants

    Raises:
        UnreducibleApplication when the rule table does not cover a step
    """
    value = _as_poly(value)
    for letter in reversed(word):
        value = _apply_letter(letter, value, killers)
    return value
