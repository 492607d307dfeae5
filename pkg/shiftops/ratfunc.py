""" exact rational functions of the spectral parameter lambda

Numerators and denominators are sympy polynomials over QQ in the single
generator lam. Every RatFunc is kept reduced with a monic denominator.
"""

from fractions import Fraction
import math

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, ring

RING, LAM = ring('lam', QQ)

def to_qq(value):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)

def to_fraction(value):
    return Fraction(int(value.numerator), int(value.denominator))

def _as_poly(coeffs):
    """ polynomial from a PolyElement or coefficients listed lowest degree first
    """
    if isinstance(coeffs, PolyElement):
        return coeffs
    return RING.from_dict({(i, ): to_qq(c) for i, c in enumerate(coeffs) if c})

class RatFunc(object):
    """ reduced quotient of two polynomials in lam with a monic denominator

    Args:
        num: numerator, a PolyElement of RING or coefficients lowest degree first
        den: denominator in the same form
        reduced: skip the cancellation when the caller knows num and den
            are coprime
    """
    __slots__ = ('num', 'den')

    def __init__(self, num=(), den=(1, ), reduced=False):
        num = _as_poly(num)
        den = _as_poly(den)
        if not den:
            raise ZeroDivisionError('rational function with zero denominator')
        if not num:
            den = RING.one
        elif not reduced and not den.is_ground:
            num, den = num.cancel(den)
        lead = den.LC
        if lead != QQ.one:
            num = num.quo_ground(lead)
            den = den.quo_ground(lead)
        self.num = num
        self.den = den

    @classmethod
    def _raw(cls, num, den=None):
        # caller guarantees canonical form
        obj = object.__new__(cls)
        obj.num = num
        obj.den = RING.one if den is None else den
        return obj

    @classmethod
    def constant(cls, value):
        return cls._raw(RING.ground_new(to_qq(value)))

    @classmethod
    def polynomial(cls, coeffs):
        return cls._raw(_as_poly(coeffs))

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self):
        return self.den.is_one

    def is_constant(self):
        return self.den.is_one and self.num.is_ground

    def constant_value(self):
        if not self.is_constant():
            raise ValueError('{} depends on lam'.format(self))
        return to_fraction(self.num.LC)

    def degree(self):
        if not self.is_polynomial():
            raise ValueError('{} is not a polynomial'.format(self))
        return self.num.degree() if self.num else -1

    def coefficient(self, power):
        if not self.is_polynomial():
            raise ValueError('{} is not a polynomial'.format(self))
        return to_fraction(self.num.get((power, ), QQ.zero))

    def __add__(self, other):
        other = as_ratfunc(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            num = self.num + other.num
            if self.den.is_one:
                return RatFunc._raw(num)
            return RatFunc(num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        other = as_ratfunc(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RatFunc._raw(RING.zero)
            return RatFunc._raw(self.num.mul_ground(to_qq(other)), self.den)
        other = as_ratfunc(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        if self.den.is_one and other.den.is_one:
            return RatFunc._raw(self.num * other.num)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_ratfunc(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        if not other:
            raise ZeroDivisionError('division by the zero rational function')
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return as_ratfunc(other) / self

    def __pow__(self, power):
        if not isinstance(power, int):
            raise ValueError('only integer powers are supported')
        if power < 0:
            return RatFunc(self.den ** -power, self.num ** -power, reduced=True)
        return RatFunc._raw(self.num ** power, self.den ** power)

    def __eq__(self, other):
        other = as_ratfunc(other, strict=False)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.num, self.den))

    def evaluate(self, point):
        """ evaluate at an exact rational point

        Raises:
            ValueError if the point is a pole
        """
        point = to_qq(point)
        den = self.den.evaluate(LAM, point)
        if not den:
            raise ValueError('{} has a pole at lam = {}'.format(self, to_fraction(point)))
        return to_fraction(self.num.evaluate(LAM, point)) / to_fraction(den)

    def substitute(self, scale=1, shift=0):
        """ substitute lam -> scale * lam + shift
        """
        if scale == 0:
            return RatFunc.constant(self.evaluate(shift))
        inner = LAM.mul_ground(to_qq(scale)) + to_qq(shift)
        return RatFunc(self.num.compose(LAM, inner), self.den.compose(LAM, inner),
            reduced=True)

    def pole_order(self, point):
        linear = LAM - to_qq(point)
        den, order = self.den, 0
        while not den.is_ground:
            quot, rem = divmod(den, linear)
            if rem:
                break
            den = quot
            order += 1
        return order

    def residue(self, point):
        """ coefficient of (lam - point)^-1 at a simple pole

        Returns zero at regular points.

        Raises:
            ValueError if the pole has order greater than one
        """
        order = self.pole_order(point)
        if order == 0:
            return Fraction(0)
        if order > 1:
            raise ValueError('pole of order {} at lam = {}'.format(order, point))
        value = to_qq(point)
        rest = divmod(self.den, LAM - value)[0]
        return to_fraction(self.num.evaluate(LAM, value)) / to_fraction(rest.evaluate(LAM, value))

    def derivative(self, k=1):
        if not self.is_polynomial():
            raise ValueError('cannot differentiate non-polynomial coefficient {}'.format(self))
        num = self.num
        for _ in range(k):
            num = num.diff(LAM)
        return RatFunc._raw(num)

    def __str__(self):
        if self.den.is_one:
            return str(self.num)
        return '({})/({})'.format(self.num, self.den)

    def __repr__(self):
        return "RatFunc('{}')".format(self)

def as_ratfunc(value, strict=True):
    """ coerce ints, Fractions and RatFuncs to RatFunc
    """
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, (int, Fraction)):
        return RatFunc.constant(value)
    if strict:
        raise TypeError('cannot use {!r} as a rational function'.format(value))
    return NotImplemented

LAMBDA = RatFunc._raw(LAM)

def pochhammer(a, N):
    """ rising factorial a(a+1)...(a+N-1), equal to 1 for N = 0

    Args:
        a: Fraction, int or RatFunc
        N: non-negative integer
    """
    if N < 0:
        raise ValueError('Pochhammer length must be non-negative, not {}'.format(N))
    result = RatFunc.constant(1) if isinstance(a, RatFunc) else Fraction(1)
    for i in range(N):
        result = result * (a + i)
    return result

def falling_factorial(a, k):
    """ a(a-1)...(a-k+1) for rational a
    """
    result = Fraction(1)
    for i in range(k):
        result *= (a - i)
    return result

def binomial(n, k):
    return math.comb(n, k)

def parse_rational(text):
    """ parse an exact rational from a "p/q" or integer string

    Raises:
        ValueError for decimal or exponent notation
    """
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    text = str(text).strip()
    if not text or any(c in text for c in '.eE'):
        raise ValueError('expected an exact rational like "3/7", got {!r}'.format(text))
    return Fraction(text)
