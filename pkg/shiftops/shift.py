""" shift operators and their iterated compositions

S(lam) = r Lap_bar - (2 lam - n + 1) d - (lam - n + 1) v'/v on the collar,
where Lap_bar is the Laplacian of the compactified metric.
"""

from fractions import Fraction
import math
import threading

from shiftops.exceptions import TruncationInsufficient
from shiftops.ratfunc import LAMBDA, as_ratfunc
from shiftops.scalars import scalar_apply
from shiftops.tangential import TangentialElement, FREE
from shiftops.weyl import (OperatorSeries, conjugate_by_power, ddr, identity,
    scalar_series_operator)
from shiftops.geometry import flat_jets

class ShiftContext(object):
    """ a collar geometry together with m = (n + 1) / 2

    Operators derived from the geometry are memoized per context. The memo is
    shared by the checks running on the pool's threads, so it is guarded by a
    reentrant lock.
    """
    def __init__(self, jets):
        self.jets = jets
        self.n = jets.n
        self.m = (jets.n + 1) / 2
        self.context = jets.context
        self.mode = jets.mode
        self._memo = {}
        self._lock = threading.RLock()

    def memo(self, key, factory):
        """ the value cached under key, calling factory() on the first request

        Args:
            key: hashable key, a tuple led by the name of the cached quantity
                e.g. ('shift', lam, N)
            factory: callable without arguments

        Errors raised by the factory propagate and nothing is cached.
        """
        with self._lock:
            if key not in self._memo:
                self._memo[key] = factory()
            return self._memo[key]

    def __repr__(self):
        return 'ShiftContext({!r})'.format(self.jets)

def shift_operator(ctx, lam=LAMBDA, form='definition'):
    """ the shift operator S(lam)

    Args:
        ctx: ShiftContext
        lam: RatFunc (usually affine in lambda) or rational number
        form: 'definition' builds r Lap_bar - (2 lam - n + 1) d - (lam - n + 1) v'/v,
            'conjugation' builds r^(lam - n) (Lap_+ + (lam + 1)(n - lam - 1)) r^(n - lam - 1)
            from the Laplacian of the Poincare metric. The latter needs a
            rational lam.
    """
    lam = as_ratfunc(lam)
    jets = ctx.jets
    n = ctx.n
    if form == 'definition':
        return jets.lap_bar.shift_r(1) - ddr(1, ctx.context).scale(2 * lam - n + 1) \
            - jets.t.scale(lam - n + 1)
    elif form == 'conjugation':
        if not lam.is_constant():
            raise ValueError('conjugation form needs a rational lambda, not {}'.format(lam))
        value = lam.constant_value()
        inner = jets.lap_gplus + (value + 1) * (n - value - 1)
        return conjugate_by_power(inner, n - value - 1).shift_r(-1)
    raise ValueError('unknown shift operator form: {}'.format(form))

def iterated_shift(ctx, lam, N):
    """ S_N(lam) = S(lam) S(lam + 1) ... S(lam + N - 1)

    Raises:
        TruncationInsufficient if the composition has no certified terms
    """
    lam = as_ratfunc(lam)

    def compose():
        if N == 0:
            return identity(ctx.context)
        result = iterated_shift(ctx, lam, N - 1) * shift_operator(ctx, lam + N - 1)
        if not result.order > 0:
            raise TruncationInsufficient('S_{} has guaranteed order {}'.format(N, result.order))
        return result

    return ctx.memo(('shift', lam, N), compose)

def flat_shift_P(n, lam=LAMBDA):
    """ the flat shift operator r Lap - (2 lam - n - 3) d on the upper half space
    """
    jets = flat_jets(n)
    lam = as_ratfunc(lam)
    return jets.lap_bar.shift_r(1) - ddr(1, jets.context).scale(2 * lam - jets.n - 3)

def gz_operator(ctx, lam=LAMBDA):
    """ the second-order operator D_lam = -r d^2 + (2 lam - n - 1 - r v'/v) d
    - (n - lam) v'/v - r Lap_{h_r}
    """
    lam = as_ratfunc(lam)
    jets = ctx.jets
    n = ctx.n
    d = ddr(1, ctx.context)
    return -ddr(2, ctx.context).shift_r(1) + d.scale(2 * lam - n - 1) \
        - jets.t.shift_r(1) * d - jets.t.scale(n - lam) - jets.lap_h.shift_r(1)

def act_on_power(series, k):
    """ apply an operator series to the function r^k

    Tangential words act on the constant function 1. The result is a series of
    multiplication operators.
    """
    k = Fraction(k)
    mode = series.mode
    terms = {}
    for (a, b, word), coeff in series.terms.items():
        factor = Fraction(1)
        for i in range(b):
            factor *= k - i
        if factor == 0:
            continue
        value = scalar_apply(word, 1)
        element = TangentialElement.from_scalar(value, mode or FREE)
        for w, c in element.terms.items():
            key = (a + k - b, 0, w)
            term = coeff * (c * factor)
            terms[key] = terms[key] + term if key in terms else term
    order = series.order
    if order != math.inf:
        loss = min(series.errdeg, k) if k >= 0 and k.denominator == 1 else series.errdeg
        order = order + k - loss
    return OperatorSeries(terms, order, 0, series.context, series.integral and k.denominator == 1)

def degenerate_laplacian(ctx, omega):
    """ the degenerate Laplacian for the scale r with weight omega

    -r Lap_bar + (n + 2 omega - 1)(d - omega / (n + 1) Lap_bar(r))
    - 2 omega (n + omega) / (n + 1) r J_bar
    """
    omega = as_ratfunc(omega)
    jets = ctx.jets
    n = ctx.n
    lap_of_r = act_on_power(jets.lap_bar, 1)
    j_bar = scalar_series_operator(jets.j_bar(), ctx.context)
    d = ddr(1, ctx.context)
    inner = d - lap_of_r.scale(omega / (n + 1))
    return -jets.lap_bar.shift_r(1) + inner.scale(n + 2 * omega - 1) \
        - j_bar.shift_r(1).scale(2 * omega * (n + omega) / (n + 1))

def ddr_w(ctx):
    """ the conjugated derivative w^-1 d (w .) = d + w'/w, with w'/w = v'/(2v)
    """
    return ddr(1, ctx.context) + ctx.jets.t.scale(Fraction(1, 2))
