""" the tangential operator algebra

In free mode an element is a linear combination of words over the generators
below, with rational-function coefficients. Words act right to left: the word
('LAP', 'MULT_J') is the operator f -> LAP(J f). In einstein mode the only
generator is L (the boundary Laplacian) and words are powers of L.
"""

from fractions import Fraction

from shiftops.ratfunc import RatFunc, as_ratfunc
from shiftops.scalars import ScalarPoly, scalar_apply

LAP = 'LAP'
MULT_J = 'MULT_J'
MULT_PSQ = 'MULT_Psq'
MULT_DJ = 'MULT_DJ'
DPD = 'DPD'       # f -> delta(P#df)
GJD = 'GJD'       # f -> <dJ, df>
L = 'L'

FREE = 'free'
EINSTEIN = 'einstein'

FREE_ALPHABET = (LAP, MULT_J, MULT_PSQ, MULT_DJ, DPD, GJD)
MULTIPLIERS = {MULT_J: 'J', MULT_PSQ: 'Psq', MULT_DJ: 'DJ'}
_MULTIPLIER_RANK = {MULT_J: 0, MULT_PSQ: 1, MULT_DJ: 2}

class TangentialElement(object):
    """ linear combination of tangential words

    Args:
        terms: dict of word (tuple of generator names) to coefficient
        mode: FREE or EINSTEIN
    """
    __slots__ = ('terms', 'mode')

    def __init__(self, terms=None, mode=FREE):
        clean = {}
        for word, coeff in (terms or {}).items():
            coeff = as_ratfunc(coeff)
            if coeff:
                clean[tuple(word)] = coeff
        self.terms = clean
        self.mode = mode

    @classmethod
    def identity(cls, mode=FREE):
        return cls({(): 1}, mode)

    @classmethod
    def generator(cls, letter, mode=FREE):
        return cls({(letter, ): 1}, mode)

    @classmethod
    def from_scalar(cls, value, mode=FREE):
        """ multiplication by a scalar field as a tangential element
        """
        if mode == EINSTEIN:
            return cls({(): value.constant_value()}, mode)
        terms = {}
        for mono, coeff in value.terms.items():
            word = (MULT_J, ) * mono[0] + (MULT_PSQ, ) * mono[1] + (MULT_DJ, ) * mono[2]
            terms[word] = terms.get(word, 0) + coeff
        return cls(terms, mode)

    def _check(self, other):
        if self.mode != other.mode:
            raise ValueError('cannot combine {} and {} tangential elements'.format(self.mode, other.mode))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if not isinstance(other, TangentialElement):
            other = TangentialElement({(): other}, self.mode)
        self._check(other)
        terms = dict(self.terms)
        for word, coeff in other.terms.items():
            terms[word] = terms[word] + coeff if word in terms else coeff
        return TangentialElement(terms, self.mode)

    __radd__ = __add__

    def __neg__(self):
        return TangentialElement({w: -c for w, c in self.terms.items()}, self.mode)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TangentialElement):
            other = as_ratfunc(other)
            return TangentialElement({w: c * other for w, c in self.terms.items()}, self.mode)
        self._check(other)
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 + w2
                value = c1 * c2
                terms[word] = terms[word] + value if word in terms else value
        return TangentialElement(terms, self.mode)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, power):
        result = TangentialElement.identity(self.mode)
        for _ in range(power):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, TangentialElement):
            other = TangentialElement({(): other}, self.mode)
        return self.mode == other.mode and self.terms == other.terms

    def __hash__(self):
        return hash((self.mode, frozenset(self.terms.items())))

    def map_coefficients(self, func):
        return TangentialElement({w: func(c) for w, c in self.terms.items()}, self.mode)

    def evaluate(self, lam):
        return self.map_coefficients(lambda c: RatFunc.constant(c.evaluate(lam)))

    def substitute(self, scale=1, shift=0):
        return self.map_coefficients(lambda c: c.substitute(scale, shift))

    def residue(self, point):
        return self.map_coefficients(lambda c: RatFunc.constant(c.residue(point)))

    def pole_order(self, point):
        return max([c.pole_order(point) for c in self.terms.values()] + [0])

    def einstein_reduce(self, n, mu):
        """ reduce free words on an Einstein boundary metric with P = mu h
        """
        if self.mode == EINSTEIN:
            return self
        table = einstein_table(n, mu)
        result = TangentialElement({}, EINSTEIN)
        for word, coeff in self.terms.items():
            term = TangentialElement({(): coeff}, EINSTEIN)
            for letter in word:
                if letter not in table:
                    raise ValueError('no Einstein reduction for {}'.format(letter))
                term = term * table[letter]
            result = result + term
        return result

    def apply_scalar(self, value, killers=()):
        """ apply to a scalar field. Coefficients must be constant in lambda.
        """
        total = ScalarPoly()
        for word, coeff in self.terms.items():
            total = total + scalar_apply(word, value, killers) * coeff.constant_value()
        return total

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda x: (len(x[0]), x[0]))

    def __str__(self):
        if not self.terms:
            return '0'
        return ' + '.join('({})*{}'.format(c, word_str(w)) for w, c in self.sorted_terms())

    def __repr__(self):
        return "TangentialElement('{}')".format(self)

def word_str(word):
    return '*'.join(word) if word else '1'

def einstein_table(n, mu):
    """ images of the free generators when P = mu h, so that J = n mu
    """
    n, mu = Fraction(n), Fraction(mu)
    ell = TangentialElement.generator(L, EINSTEIN)
    const = lambda x: TangentialElement({(): x}, EINSTEIN)
    return {LAP: ell, MULT_J: const(n * mu), MULT_PSQ: const(n * mu * mu),
        MULT_DJ: const(0), DPD: ell * (-mu), GJD: const(0), L: ell}

def _leibniz_step(word):
    for i in range(len(word) - 1):
        head, tail = word[:i], word[i + 2:]
        pair = word[i:i + 2]
        if pair == (LAP, MULT_J):
            # LAP(J f) = J LAP f + 2 <dJ, df> + (LAP J) f
            return [(head + (MULT_J, LAP) + tail, 1), (head + (GJD, ) + tail, 2),
                (head + (MULT_DJ, ) + tail, 1)]
        if pair[0] in MULTIPLIERS and pair[1] in MULTIPLIERS and \
                _MULTIPLIER_RANK[pair[0]] > _MULTIPLIER_RANK[pair[1]]:
            return [(head + (pair[1], pair[0]) + tail, 1)]
    return None

def reduce_leibniz(element):
    """ move J multiplications left of LAP and sort adjacent multiplications

    Only the product rule for LAP against J and the commutativity of
    multiplication operators are used.
    """
    if element.mode != FREE:
        return element
    pending = dict(element.terms)
    done = {}
    while pending:
        word, coeff = pending.popitem()
        rewritten = _leibniz_step(word)
        if rewritten is None:
            done[word] = done[word] + coeff if word in done else coeff
            continue
        for new_word, factor in rewritten:
            value = coeff * factor
            pending[new_word] = pending[new_word] + value if new_word in pending else value
    return TangentialElement(done, FREE)
