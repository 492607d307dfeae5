""" Lanczos approximation of the gamma function, g = 7 with nine coefficients
"""

import math

LANCZOS_G = 7
LANCZOS_COEFFICIENTS = [float(x) for x in (
    '0.99999999999980993',
    '676.5203681218851',
    '-1259.1392167224028',
    '771.32342877765313',
    '-176.61502916214059',
    '12.507343278686905',
    '-0.13857109526572012',
    '9.9843695780195716e-6',
    '1.5056327351493116e-7',
    )]

def gamma_fn(x):
    """ gamma function for real arguments

    Args:
        x: float, not a non-positive integer

    Raises:
        ValueError at the poles
    """
    x = float(x)
    if x <= 0 and x == math.floor(x):
        raise ValueError('gamma has a pole at {}'.format(x))
    if x < 0.5:
        # reflection
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1 - x))

    x -= 1
    total = LANCZOS_COEFFICIENTS[0]
    for i, coeff in enumerate(LANCZOS_COEFFICIENTS[1:], start=1):
        total += coeff / (x + i)
    t = x + LANCZOS_G + 0.5
    return math.sqrt(2 * math.pi) * t ** (x + 0.5) * math.exp(-t) * total
