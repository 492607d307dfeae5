""" error types raised by the symbolic engine
"""

class TruncationInsufficient(ValueError):
    """ the order metadata of a series cannot certify the requested result
    """

class UnreducibleApplication(ValueError):
    """ a tangential generator was applied to a scalar outside the rule table
    """

class AdjointRuleUnavailable(ValueError):
    """ no formal adjoint is known for a tangential generator
    """

class NonCancellingPole(ValueError):
    """ a normalizing denominator failed to divide a residue family numerator
    """
