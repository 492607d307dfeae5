""" collar geometries g = dr^2 + h_r near the boundary r = 0

Each backend provides the Laplacian of the compactified metric, the volume
function v(r) with dvol(h_r) = v(r) dvol(h), w = sqrt(v) and the
log-derivative of v, which equals half the trace of h_r^-1 times dh_r/dr.
"""

from fractions import Fraction

from shiftops.scalars import ScalarPoly, ScalarSeries
from shiftops.tangential import FREE, EINSTEIN, LAP, DPD, GJD, L
from shiftops.weyl import (Context, OperatorSeries, ddr, r_power, monomial,
    scalar_series_operator)

class GeometryJets(object):
    """ series data of a collar geometry

    Args:
        context: Context(n, mode, mu)
        lap_h: OperatorSeries for the Laplacian of h_r (tangential words only)
        v: ScalarSeries for the volume function
        dlogv: ScalarSeries for v'/v
        w: ScalarSeries for sqrt(v)
        exact: True when the series are closed forms (flat backend)
        adjoint_rules: dict of declared generator adjoints
        killers: declared generators that annihilate constants
    """
    def __init__(self, context, lap_h, v, dlogv, w, exact=False, adjoint_rules=None,
            killers=()):
        self.context = context
        self.n = context.n
        self.mode = context.mode
        self.mu = context.mu
        self.lap_h = lap_h.with_context(context)
        self.v = v
        self.dlogv = dlogv
        self.trace = dlogv
        self.w = w
        self.exact = exact
        self.adjoint_rules = dict(adjoint_rules or {})
        self.killers = tuple(killers)

        self.t = scalar_series_operator(dlogv, context)
        d = ddr(1, context)
        self.lap_bar = self.lap_h + ddr(2, context) + self.t * d
        r = r_power(1, context)
        self.lap_gplus = r * r * self.lap_bar - (r * d).scale(self.n - 1)
        self.order = self.lap_bar.order

    @property
    def J(self):
        if self.mode != EINSTEIN:
            raise ValueError('J is a constant only on Einstein backends')
        return self.n * self.mu

    def t_operator(self):
        return self.t

    def j_bar(self):
        """ scalar curvature J of the compactified metric, -(v'/v)/r
        """
        return self.dlogv.shift(-1).scale(-1)

    def j_bar_operator(self):
        return scalar_series_operator(self.j_bar(), self.context)

    def w_operator(self):
        return scalar_series_operator(self.w, self.context)

    def __repr__(self):
        return 'GeometryJets(n={}, mode={}, mu={}, order={})'.format(self.n,
            self.mode, self.mu, self.order)

def flat_jets(n, K=None):
    """ upper half space with the hyperbolic metric, h_r = h flat

    The series are exact. K is accepted for a uniform interface.
    """
    n = Fraction(n)
    if n < 2:
        raise ValueError('dimension must be at least 2, not {}'.format(n))
    context = Context(n, EINSTEIN, Fraction(0))
    lap_h = monomial(word=(L, ), context=context)
    one = ScalarSeries({0: 1})
    return GeometryJets(context, lap_h, one, ScalarSeries({}), one, exact=True)

def einstein_jets(n, mu, K):
    """ Poincare-Einstein collar over an Einstein boundary with P = mu h

    Here h_r = (1 - mu r^2 / 2)^2 h, so the Laplacian of h_r is
    (1 - mu r^2 / 2)^-2 L and v = (1 - mu r^2 / 2)^n.

    Args:
        n: boundary dimension
        mu: Einstein constant, J = n mu
        K: truncation order of every series
    """
    n, mu, K = Fraction(n), Fraction(mu), Fraction(K)
    if K < 4:
        raise ValueError('truncation order {} is too small, need at least 4'.format(K))
    context = Context(n, EINSTEIN, mu)
    half = mu / 2
    lap_terms = {}
    dlogv = {}
    j = 0
    while 2 * j < K:
        lap_terms[(2 * j, 0, (L, ))] = (j + 1) * half ** j
        if 2 * j + 1 < K:
            dlogv[2 * j + 1] = -n * mu * half ** j
        j += 1
    lap_h = OperatorSeries(lap_terms, K, 0, context)
    base = ScalarSeries({0: 1, 2: -half})
    v = base.power(n, order=K)
    w = base.power(n / 2, order=K)
    return GeometryJets(context, lap_h, v, ScalarSeries(dlogv, K), w)

def _v_generic():
    J = ScalarPoly.atom('J')
    Psq = ScalarPoly.atom('Psq')
    return {0: ScalarPoly.const(1), 2: J * Fraction(-1, 2), 4: (J * J - Psq) * Fraction(1, 8)}

def generic_jets(n, extension=None):
    """ collar over a general boundary metric, known to order r^3 in the Laplacian

    h_r is even in r, so v is even as well and its r^5 coefficient vanishes:
    v is known to order 6.

    Args:
        n: boundary dimension
        extension: optional dict from load_jets() with further coefficients.
            Laplacian or volume entries of order 2k raise the guaranteed
            order to 2k + 2.
    """
    n = Fraction(n)
    if n < 2:
        raise ValueError('generic backend needs n >= 2, not {}'.format(n))
    context = Context(n, FREE, None)
    lap_terms = {(0, 0, (LAP, )): 1, (2, 0, (DPD, )): -1, (2, 0, (GJD, )): Fraction(-1, 2)}
    lap_order = 4
    v_terms = _v_generic()
    v_order = 6
    adjoint_rules = {}
    killers = ()

    if extension is not None:
        if extension.get('n') is not None and Fraction(extension['n']) != n:
            raise ValueError('jet file is for n = {}, not {}'.format(extension['n'], n))
        for order in sorted(extension.get('deltaBar', {})):
            if order != lap_order:
                raise ValueError('Laplacian jets must continue at order {}, got {}'.format(lap_order, order))
            for word, coeff in extension['deltaBar'][order].terms.items():
                key = (order, 0, word)
                lap_terms[key] = lap_terms.get(key, 0) + coeff
            lap_order = order + 2
        for order in sorted(extension.get('v', {})):
            if order != v_order:
                raise ValueError('volume jets must continue at order {}, got {}'.format(v_order, order))
            v_terms[order] = v_terms.get(order, ScalarPoly()) + extension['v'][order]
            v_order = order + 2
        adjoint_rules = dict(extension.get('adjoint_rules', {}))
        killers = tuple(extension.get('killers', ()))

    lap_h = OperatorSeries(lap_terms, Fraction(lap_order), 0, context)
    v = ScalarSeries(v_terms, Fraction(v_order))
    return GeometryJets(context, lap_h, v, v.log_derivative(), v.sqrt(),
        adjoint_rules=adjoint_rules, killers=killers)

def reduce_to_einstein(jets, mu):
    """ substitute the Einstein reductions into generic jets

    Returns:
        tuple of (Laplacian of the compactified metric, v) on the Einstein context
    """
    n = jets.n
    values = {'J': n * mu, 'Psq': n * mu * mu, 'DJ': 0}
    return jets.lap_bar.einstein_reduce(n, mu), jets.v.substitute(values)
