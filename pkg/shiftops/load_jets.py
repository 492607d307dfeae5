""" loads a jet-extension file for the generic backend
"""

import json

from shiftops.ratfunc import parse_rational
from shiftops.scalars import ScalarPoly, ATOMS
from shiftops.tangential import TangentialElement, FREE_ALPHABET

def _parse_word(word, declared):
    if isinstance(word, str):
        word = [word]
    word = tuple(word)
    for letter in word:
        if letter not in FREE_ALPHABET and letter not in declared:
            raise ValueError('undeclared generator {} in jet file'.format(letter))
    return word

def _parse_monomial(mono):
    for name in mono:
        if name not in ATOMS:
            raise ValueError('unknown scalar atom {} in jet file'.format(name))
    return tuple(int(mono.get(name, 0)) for name in ATOMS)

def _parse_order(entry):
    order = parse_rational(entry['order'])
    if order.denominator != 1 or order % 2:
        raise ValueError('jet orders must be even integers, not {}'.format(order))
    return int(order)

def load_jets(path):
    """ load extra Taylor coefficients of the collar geometry

    Args:
        path: path to a JSON file e.g.
            {"n": "5",
             "words": [{"name": "H4", "selfAdjoint": true, "annihilatesConstants": true}],
             "deltaBar": [{"order": 4, "terms": [{"word": ["H4"], "coeff": "1/3"}]}],
             "v": [{"order": 6, "terms": [{"monomial": {"J": 3}, "coeff": "-1/48"}]}]}
            Coefficients are exact "p/q" strings. Words used in "deltaBar" must be
            generators of the free alphabet or declared under "words".

    Returns:
        dict with the keys 'n', 'deltaBar' (order to TangentialElement), 'v'
        (order to ScalarPoly), 'words', 'adjoint_rules' and 'killers'
    """
    with open(path, 'rt') as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as err:
            raise ValueError('cannot parse jet file {}: {}'.format(path, err))

    declared = {}
    adjoint_rules = {}
    killers = []
    for entry in data.get('words', []):
        name = entry['name']
        if name in FREE_ALPHABET:
            raise ValueError('{} is already a generator'.format(name))
        declared[name] = entry
        if entry.get('selfAdjoint'):
            adjoint_rules[name] = TangentialElement.generator(name)
        if entry.get('annihilatesConstants'):
            killers.append(name)

    delta_bar = {}
    for entry in data.get('deltaBar', []):
        order = _parse_order(entry)
        terms = {}
        for term in entry['terms']:
            word = _parse_word(term['word'], declared)
            terms[word] = terms.get(word, 0) + parse_rational(term['coeff'])
        delta_bar[order] = TangentialElement(terms)

    volume = {}
    for entry in data.get('v', []):
        order = _parse_order(entry)
        terms = {}
        for term in entry['terms']:
            mono = _parse_monomial(term.get('monomial', {}))
            terms[mono] = terms.get(mono, 0) + parse_rational(term['coeff'])
        volume[order] = ScalarPoly(terms)

    n = data.get('n')
    return {'n': parse_rational(n) if n is not None else None,
        'deltaBar': delta_bar, 'v': volume, 'words': declared,
        'adjoint_rules': adjoint_rules, 'killers': tuple(killers)}
