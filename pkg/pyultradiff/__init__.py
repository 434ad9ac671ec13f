from . import __version__ as version_info
from .__version__ import __author__, __email__, __copyright__, __maintainer__
from .__version__ import __credits__, __license__, __description__, __url__
from .__version__ import __version_major__, __version_long__, __version__, __status__
from .errors import UltradiffError, ConfigError, PreconditionError, DomainError, BudgetExhaustedError
from .reports import ConditionReport, HOLDS, FAILS, INCONCLUSIVE
from .defaults import TailGrid, QuadratureConfig
from .sequences import WeightSequence, parse_sequence, derive, check_sequence_condition, compare_sequences
from .weights import (WeightFunction, GevreyPower, LogPower, FromSequence, Tabulated, Ramified, CustomWeight,
                      parse_weight, evaluate, check_weight_condition, compare_weights)
from .conjugates import (young_conjugate, upper_conjugate, lower_envelope, biconjugate, verify_sandwich,
                         upper_conjugate_reciprocal, lower_envelope_of_reciprocal)
from .matrices import SequenceMatrix, WeightMatrix, build_matrix, build_ramified, check_matrix_condition
from .gamma import GammaConfig, GammaEstimate, estimate_gamma, verify_index_identity
from .flat import FlatFunction, SectorPoint, outer_function, flat_function, flat_derivatives
from .jets import Jet, jet_norm, complexify, ramify_jet, y_operator_coefficients
from .surgery import SurgeryConfig, SurgeryWeight, build_surgery_weight


__all__ = ['WeightSequence', 'WeightFunction', 'GevreyPower', 'LogPower', 'FromSequence', 'Tabulated',
           'Ramified', 'CustomWeight', 'WeightMatrix', 'SequenceMatrix', 'FlatFunction', 'SectorPoint',
           'Jet', 'SurgeryWeight', 'ConditionReport', 'GammaEstimate', 'GammaConfig', 'SurgeryConfig',
           'TailGrid', 'QuadratureConfig', 'parse_sequence', 'parse_weight', 'derive', 'evaluate',
           'check_sequence_condition', 'compare_sequences', 'check_weight_condition', 'compare_weights',
           'young_conjugate', 'upper_conjugate', 'lower_envelope', 'biconjugate', 'verify_sandwich',
           'upper_conjugate_reciprocal', 'lower_envelope_of_reciprocal', 'build_matrix', 'build_ramified',
           'check_matrix_condition', 'estimate_gamma', 'verify_index_identity', 'outer_function',
           'flat_function', 'flat_derivatives', 'jet_norm', 'complexify', 'ramify_jet',
           'y_operator_coefficients', 'build_surgery_weight',
           'UltradiffError', 'ConfigError', 'PreconditionError', 'DomainError', 'BudgetExhaustedError',
           'HOLDS', 'FAILS', 'INCONCLUSIVE']
