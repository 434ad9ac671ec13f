# -*- coding: utf-8 -*-

'''
Growth index gamma(omega).

gamma(omega) is the supremum of all gamma > 0 such that for some K > 1

    limsup_{t -> inf} omega(K^gamma t) / omega(t) < K.

The supremum is bracketed from both sides: a gamma is *admitted* when one K of
the K grid keeps the tail maximum below K (1 - margin) and *rejected* when every
K pushes it above K. Everything in between is left open, so the bracket is
conservative by construction.
'''

import math
import logging
from dataclasses import dataclass, field, replace
from typing import Dict, Optional

import numpy as np

from .defaults import GAMMA_MARGIN, GAMMA_TOL, GAMMA_MAX, K_GRID_SIZE, K_MAX, MATRIX_P_MAX, TailGrid, k_grid
from .errors import ConfigError
from .reports import holds, fails, inconclusive, clean_number
from .weights import Ramified, check_weight_condition, compare_weights
from .sequences import WeightSequence


def getLogger():
    return logging.getLogger(__name__)


# rejection needs the ratio above K by more than rounding
REJECT_SLACK = 1e-9
# fewer usable tail points than this and a K is skipped
MIN_TAIL_POINTS = 20
# rows of Shat are tabulated this deep so that the rejected side of its bracket is reachable
RAMIFIED_P_MAX = 512
# how far above the expected index the bisection for Shat may look
RAMIFIED_GAMMA_HEADROOM = 2.0


@dataclass(frozen=True)
class GammaConfig:
    margin: float = GAMMA_MARGIN
    tol: float = GAMMA_TOL
    gamma_max: float = GAMMA_MAX
    k_size: int = K_GRID_SIZE
    k_max: float = K_MAX
    grid: TailGrid = field(default_factory=TailGrid)
    check_stability: bool = True

    def k_values(self):
        return k_grid(self.k_size, self.k_max)

    def widened(self):
        ''' the same settings on a tail grid reaching ten times further '''
        return replace(self, grid=self.grid.scaled(10.0), check_stability=False)

    def describe(self):
        return {'gamma_max': self.gamma_max, 'tol': self.tol, 'margin': self.margin,
                'k_grid': [self.k_size, self.k_max], 'tail_grid': [self.grid.low, self.grid.high, self.grid.points]}


@dataclass(frozen=True)
class GammaEstimate:
    ''' Bracket [lower, upper] for gamma(omega); ``upper`` None means no finite upper bound was found '''
    subject: str
    lower: float
    upper: Optional[float]
    witness_K: Dict[str, float]
    exceeds_max: bool
    inconclusive: bool = False
    config: GammaConfig = field(default_factory=GammaConfig)

    @property
    def upper_value(self):
        return math.inf if self.upper is None else self.upper

    @property
    def upper_text(self):
        return 'inf' if self.upper is None else f"{self.upper:g}"

    def contains(self, value, tol=0.0):
        return self.lower - tol <= value <= self.upper_value + tol

    def overlaps(self, other, shift=0.0, tol=None):
        ''' brackets of self and ``other + shift`` intersect within the combined tolerance '''
        tol = self.config.tol + other.config.tol if tol is None else tol
        if self.exceeds_max and other.exceeds_max:
            return True
        lo = max(self.lower, other.lower + shift)
        hi = min(self.upper_value, other.upper_value + shift)
        return lo <= hi + tol

    def to_dict(self):
        return {
            'subject': self.subject,
            'lower': clean_number(self.lower),
            'upper': clean_number(self.upper),
            'exceeds_max': self.exceeds_max,
            'inconclusive': self.inconclusive,
            'witness_K': clean_number(dict(sorted(self.witness_K.items())))
        }

    def __str__(self):
        return f"gamma({self.subject}) in [{self.lower:g}, {self.upper_text}]"


# ------------------------------------------------------------------------------
# Estimation
# ------------------------------------------------------------------------------

def _tail_ratios(w, gamma, config):
    ''' rows: per K the max over usable tail points of omega(K^gamma t)/omega(t), nan when unusable '''
    t = config.grid.tail()
    base = w(t)
    K = config.k_values()
    scale = K ** gamma
    usable = (scale[:, None] * t[None, :] <= w.valid_limit) & (base[None, :] > 0)
    T = np.where(usable, scale[:, None] * t[None, :], t[None, :])
    with np.errstate(divide='ignore', invalid='ignore'):
        ratio = w(T) / base[None, :]
    ratio = np.where(usable, ratio, -np.inf)
    best = np.max(ratio, axis=1)
    enough = np.sum(usable, axis=1) >= min(MIN_TAIL_POINTS, t.size)
    return K, np.where(enough, best, np.nan)


def find_witness_K(w, gamma, config=None):
    ''' the first K of the grid admitting gamma, or None '''
    config = config or GammaConfig()
    if gamma <= 0:
        return float(config.k_values()[0])
    K, best = _tail_ratios(w, gamma, config)
    ok = np.isfinite(best) & (best <= K * (1 - config.margin))
    return float(K[int(np.argmax(ok))]) if np.any(ok) else None


def _rejected(w, gamma, config):
    K, best = _tail_ratios(w, gamma, config)
    if not np.all(np.isfinite(best)):
        return False
    return bool(np.all(best > K * (1 + REJECT_SLACK)))


def _bisect(test, lo, hi, tol):
    ''' largest point where a monotone test still passes, between lo (passes) and hi (fails) '''
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if test(mid):
            lo = mid
        else:
            hi = mid
    return lo, hi


def _estimate(w, config):
    witness = {}
    step = config.tol / 8

    def admitted(g):
        K = find_witness_K(w, g, config)
        if K is not None:
            witness[f"{g:.6g}"] = K
        return K is not None

    if admitted(config.gamma_max):
        return config.gamma_max, None, witness, True
    lower, _ = _bisect(admitted, 0.0, config.gamma_max, step)
    if not _rejected(w, config.gamma_max, config):
        return lower, None, witness, False
    # rejection is monotone too: it persists for larger gamma
    _, upper = _bisect(lambda g: not _rejected(w, g, config), lower, config.gamma_max, step)
    return lower, upper, witness, False


def estimate_gamma(w, config=None):
    ''' Bracket the growth index of ``w``

    The bracket is downgraded to inconclusive when it moves by more than ``tol``
    on a tail grid reaching ten times further, or when the rejected side stays open.

    :rtype: GammaEstimate
    '''
    config = config or GammaConfig()
    lower, upper, witness, exceeds = _estimate(w, config)
    unstable = False
    if config.check_stability:
        wide = _estimate(w, config.widened())
        moved_low = abs(wide[0] - lower) > config.tol
        moved_up = (wide[1] is None) != (upper is None) or (upper is not None and abs(wide[1] - upper) > config.tol)
        unstable = moved_low or (moved_up and not exceeds)
        if unstable:
            getLogger().warning(f"gamma bracket of {w.name} moved on the widened grid: "
                                f"[{lower:g}, {upper}] -> [{wide[0]:g}, {wide[1]}]")
    est = GammaEstimate(w.name, lower, upper, witness, exceeds,
                        inconclusive=unstable or (upper is None and not exceeds), config=config)
    getLogger().debug(f"{est}, K witnesses: {len(witness)}")
    return est


# ------------------------------------------------------------------------------
# Index identities
# ------------------------------------------------------------------------------

IDENTITY_ANCHORS = {
    'strong_iff_above_one': 'gamma/strong-iff-above-one',
    'om1_iff_positive': 'gamma/doubling-iff-positive',
    'upper_conjugate_shift': 'gamma/upper-conjugate-shift',
    'matrix_chain': 'gamma/matrix-chain',
    'lower_envelope_shift': 'gamma/lower-envelope-shift',
    'factorial_shift': 'gamma/factorial-shift',
    'scaling': 'gamma/scaling',
    'equivalence_invariance': 'gamma/equivalence-invariance',
    'ramified_shift': 'gamma/ramified-shift',
}


def _bracket(est):
    return {'lower': est.lower, 'upper': est.upper_value}


def _above(est, value):
    ''' True / False when the bracket decides gamma > value, None otherwise '''
    if est.inconclusive and not est.exceeds_max:
        return None
    if est.lower > value:
        return True
    if est.upper is not None and est.upper <= value:
        return False
    return None


def _iff(kind, condition_report, est, value, kw):
    ''' cross-check a condition verdict against gamma > value '''
    side = _above(est, value)
    notes = {'condition': condition_report.verdict, 'gamma_lower': est.lower, 'gamma_upper': est.upper_value}
    if condition_report.inconclusive or side is None:
        return inconclusive(kind, str(est), notes=notes, **kw)
    witnesses = dict(_bracket(est))
    witnesses['agreement'] = 1.0
    if condition_report.holds == side:
        return holds(kind, witnesses, str(est), notes=notes, **kw)
    return fails(kind, est.lower, str(est), notes=notes, **kw)


def _compare(kind, left, right, shift, kw, scale=1.0):
    ''' gamma(left) = scale * gamma(right) + shift, judged by bracket overlap '''
    notes = {'left': str(left), 'right': str(right)}
    if left.inconclusive or right.inconclusive:
        return inconclusive(kind, f"{left}; {right}", notes=notes, **kw)
    if scale != 1.0:
        right = replace(right, lower=right.lower * scale,
                        upper=None if right.upper is None else right.upper * scale)
    tol = left.config.tol + right.config.tol * scale
    witnesses = {'left_lower': left.lower, 'left_upper': left.upper_value,
                 'right_lower': right.lower + shift, 'right_upper': right.upper_value + shift}
    if left.overlaps(right, shift, tol):
        return holds(kind, witnesses, f"{left}; {right}", notes=notes, **kw)
    return fails(kind, (left.lower, right.lower + shift), f"{left}; {right}", witnesses=witnesses, notes=notes, **kw)


def verify_index_identity(kind, w, config=None, x=1.0, s=2.0, q=2.0, other=None, indices=None, p_max=MATRIX_P_MAX):
    ''' Check an identity between growth indices by estimating both sides

    :param x: matrix index for ``matrix_chain``, ``factorial_shift`` and ``ramified_shift``
    :param s: exponent for ``scaling`` (gamma(omega^{1/s}) = s gamma(omega))
    :param q: ramification exponent for ``ramified_shift``
    :param other: second weight for ``equivalence_invariance``
    :rtype: pyultradiff.reports.ConditionReport
    '''
    if kind not in IDENTITY_ANCHORS:
        raise ConfigError(f"Unknown index identity {kind!r}")
    config = config or GammaConfig()
    kw = {'anchor': IDENTITY_ANCHORS[kind], 'subject': w.name}
    est = estimate_gamma(w, config)
    if kind == 'strong_iff_above_one':
        report = _iff(kind, check_weight_condition(w, 'om_snq'), est, 1.0, kw)
    elif kind == 'om1_iff_positive':
        report = _iff(kind, check_weight_condition(w, 'om1'), est, 0.0, kw)
    elif kind == 'upper_conjugate_shift':
        if _above(est, 1.0) is not True:
            return inconclusive(kind, str(est), notes={'reason': 'needs gamma > 1'}, **kw)
        from .conjugates import upper_conjugate_reciprocal
        report = _compare(kind, est, estimate_gamma(upper_conjugate_reciprocal(w), config), 1.0, kw)
    elif kind == 'matrix_chain':
        from .matrices import build_matrix
        from .weights import FromSequence
        m = build_matrix(w, indices or (x,), p_max)
        big = estimate_gamma(FromSequence(m.row(x)), config)
        small = estimate_gamma(FromSequence(m.divided_row(x)), config)
        report = _compare(kind, est, big, 0.0, kw)
        if report.holds:
            report = _compare(kind, est, small, 1.0, kw)
    elif kind == 'lower_envelope_shift':
        from .conjugates import lower_envelope_of_reciprocal
        report = _compare(kind, estimate_gamma(lower_envelope_of_reciprocal(w), config), est, 1.0, kw)
    elif kind == 'factorial_shift':
        from .matrices import build_matrix
        from .weights import FromSequence
        m = build_matrix(w, indices or (x,), p_max)
        report = _compare(kind, estimate_gamma(FromSequence(m.shifted_row(x)), config), est, 1.0, kw)
    elif kind == 'scaling':
        report = _compare(kind, estimate_gamma(Ramified(w, 1.0 / s), config), est, 0.0, kw, scale=s)
    elif kind == 'equivalence_invariance':
        if other is None:
            raise ConfigError("equivalence_invariance needs a second weight")
        premise = compare_weights(w, other, 'sim')
        if not premise.holds:
            return inconclusive(kind, premise.tested_range, notes={'premise': premise.verdict}, **kw)
        report = _compare(kind, est, estimate_gamma(other, config), 0.0, kw)
    else:
        report = _ramified_shift(w, est, config, x, q, p_max, kw)
    getLogger().debug(f"identity {kind} for {w.name}: {report.verdict}")
    return report


def _ramified_shift(w, est, config, x, q, p_max, kw):
    ''' gamma(omega_{Shat^{x,q}}) = q gamma(omega) - q + 1 '''
    from .matrices import build_ramified
    from .weights import FromSequence
    if _above(est, 1.0) is not True:
        return inconclusive('ramified_shift', str(est), notes={'reason': 'needs gamma > 1'}, **kw)
    if est.upper is None:
        return inconclusive('ramified_shift', str(est), notes={'reason': 'gamma(omega) has no finite bracket'}, **kw)
    rm = build_ramified(w, q, (x,), max(p_max, RAMIFIED_P_MAX), require_gamma=False)
    hat = FromSequence(rm.S_hat_q(x))
    # a tabulated row is only known up to its last quotient: K^gamma t must stay below it
    limit = hat.valid_limit
    high = min(config.grid.high, limit ** 0.5)
    if not high > 10 * config.grid.low:
        return inconclusive('ramified_shift', str(est), notes={'reason': f"Shat is known up to t={limit:g}"}, **kw)
    gamma_cap = min(config.gamma_max, q * est.upper - q + 1 + RAMIFIED_GAMMA_HEADROOM)
    k_max = min(config.k_max, (limit / high) ** (1.0 / gamma_cap))
    hat_config = replace(config, grid=TailGrid(config.grid.low, high, config.grid.points), gamma_max=gamma_cap,
                         k_max=k_max, check_stability=False)
    right = estimate_gamma(hat, hat_config)
    getLogger().debug(f"{right} on t <= {high:g}, K <= {k_max:g}")
    return _compare('ramified_shift', right, est, 1.0 - q, kw, scale=q)


def gamma_of_sequence(seq, config=None):
    ''' gamma(omega_M) for a weight sequence '''
    from .weights import FromSequence
    if not isinstance(seq, WeightSequence):
        raise ConfigError("gamma_of_sequence needs a WeightSequence")
    return estimate_gamma(FromSequence(seq), config)
