# -*- coding: utf-8 -*-

'''
Exceptions and warnings raised by pyultradiff.

Condition checks never raise for a failed inequality: a failure is a verdict
(see :mod:`pyultradiff.reports`). Exceptions are reserved for invalid input
and for numerical procedures that could not finish.
'''


class UltradiffError(Exception):
    ''' Base class of all pyultradiff errors '''
    pass


class ConfigError(UltradiffError, ValueError):
    ''' Invalid descriptor, parameter or input file '''
    pass


class InvalidSequenceError(ConfigError):
    pass


class DegenerateSequenceError(UltradiffError):
    ''' (M_p)^{1/p} does not grow on the tabulated window '''
    pass


class ExtrapolationError(UltradiffError):
    ''' A tabulated weight was evaluated beyond its last abscissa '''
    pass


class DomainError(UltradiffError, ValueError):
    pass


class PreconditionError(UltradiffError):
    ''' The hypotheses of a construction are not met '''
    pass


class NonConcavityError(UltradiffError):
    pass


class UnboundedObjectiveError(UltradiffError):
    pass


class BoundaryOptimumError(UltradiffError):
    pass


class DivergenceError(UltradiffError):
    pass


class IntegrabilityError(DivergenceError):
    pass


class BudgetExhaustedError(UltradiffError):
    ''' A numerical budget (nodes, breakpoints, expansions) ran out '''
    pass


class NodeBudgetError(BudgetExhaustedError):
    pass


class BreakpointExhaustedError(BudgetExhaustedError):

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class MatrixInvariantError(UltradiffError):
    pass


class TruncationWarning(UserWarning):
    ''' A supremum was attained at the last tabulated index '''
    pass
