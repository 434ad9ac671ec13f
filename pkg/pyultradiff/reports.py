# -*- coding: utf-8 -*-

'''
Verdicts of condition checks and the window statistics they are built on
'''

import math
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from .defaults import STABILITY_MARGIN, DECAY_RATE


HOLDS = 'holds_with_witness'
FAILS = 'fails_with_counterexample'
INCONCLUSIVE = 'inconclusive'
VERDICTS = (HOLDS, FAILS, INCONCLUSIVE)


def getLogger():
    return logging.getLogger(__name__)


def clean_number(value, digits=12):
    ''' Round a number for structured output; non-finite values become strings '''
    if value is None:
        return None
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if math.isnan(value):
            return 'nan'
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        return float(f"{value:.{digits}g}")
    if isinstance(value, complex):
        return [clean_number(value.real, digits), clean_number(value.imag, digits)]
    if isinstance(value, dict):
        return {str(k): clean_number(v, digits) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [clean_number(v, digits) for v in value]
    return value


@dataclass
class ConditionReport:
    ''' Outcome of a grid-checked inequality or asymptotic condition

    :param condition: condition tag, e.g. ``'mg'``, ``'om1'``
    :param verdict: one of :data:`HOLDS`, :data:`FAILS`, :data:`INCONCLUSIVE`
    :param witnesses: fitted constants by name
    :param counterexample: index, abscissa or tuple violating the inequality
    :param tested_range: human readable description of the window
    '''
    condition: str
    verdict: str
    witnesses: Dict[str, float] = field(default_factory=dict)
    counterexample: Optional[Any] = None
    tested_range: str = ''
    anchor: str = ''
    subject: str = ''
    notes: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"Unknown verdict {self.verdict!r}")
        if self.verdict == HOLDS and not self.witnesses:
            raise ValueError(f"A holding verdict for {self.condition} needs witnesses")

    @property
    def holds(self):
        return self.verdict == HOLDS

    @property
    def fails(self):
        return self.verdict == FAILS

    @property
    def inconclusive(self):
        return self.verdict == INCONCLUSIVE

    def witness(self, name, default=None):
        return self.witnesses.get(name, default)

    def sort_key(self):
        return (self.anchor, self.subject, self.condition)

    def to_dict(self):
        return {
            'anchor': self.anchor,
            'subject': self.subject,
            'condition': self.condition,
            'verdict': self.verdict,
            'witnesses': clean_number(dict(sorted(self.witnesses.items()))),
            'counterexample': clean_number(self.counterexample),
            'tested_range': self.tested_range,
            'notes': clean_number(dict(sorted(self.notes.items())))
        }

    def __str__(self):
        return f"{self.condition}: {self.verdict} {self.witnesses}"

    def __repr__(self):
        return f"ConditionReport({self.condition!r}, {self.verdict!r})"


def holds(condition, witnesses, tested_range='', **kwargs):
    return ConditionReport(condition, HOLDS, witnesses=dict(witnesses), tested_range=tested_range, **kwargs)


def fails(condition, counterexample, tested_range='', witnesses=None, **kwargs):
    return ConditionReport(condition, FAILS, witnesses=dict(witnesses or {}), counterexample=counterexample,
                           tested_range=tested_range, **kwargs)


def inconclusive(condition, tested_range='', witnesses=None, **kwargs):
    return ConditionReport(condition, INCONCLUSIVE, witnesses=dict(witnesses or {}),
                           tested_range=tested_range, **kwargs)


def combine(condition, reports, tested_range='', **kwargs):
    ''' Conjunction of reports: fails if any fails, holds if all hold '''
    reports = list(reports)
    witnesses = {}
    for idx, r in enumerate(reports):
        for k, v in r.witnesses.items():
            witnesses[f"{r.condition}.{k}" if len(reports) > 1 else k] = v
    for r in reports:
        if r.fails:
            return fails(condition, r.counterexample, tested_range or r.tested_range, witnesses=witnesses, **kwargs)
    if reports and all(r.holds for r in reports):
        return holds(condition, witnesses, tested_range or reports[0].tested_range, **kwargs)
    return inconclusive(condition, tested_range, witnesses=witnesses, **kwargs)


# ------------------------------------------------------------------------------
# Window statistics
# ------------------------------------------------------------------------------

@dataclass(frozen=True)
class WindowSup:
    ''' Supremum of a quantity over a window compared with the same sup on the first half '''
    value: float
    first_half: float
    index: int
    stable: bool


def window_sup(values, margin=STABILITY_MARGIN, log=False):
    ''' Fit sup over an ordered window and decide whether it has settled

    When ``log`` is set the values are logarithms and the margin is applied
    additively as ``log(1 + margin)``.
    '''
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise ValueError("Empty window")
    half = max(1, values.size // 2)
    full = float(np.max(values))
    first = float(np.max(values[:half]))
    idx = int(np.argmax(values))
    if log:
        stable = full <= first + math.log1p(margin)
    else:
        stable = full <= first * (1.0 + margin) if first > 0 else full <= first + margin
    return WindowSup(full, first, idx, bool(stable))


def settled_sup(values, margin=STABILITY_MARGIN, blocks=4, rate=DECAY_RATE):
    ''' Like :func:`window_sup`, but a sup still creeping towards its limit counts as settled

    The window is cut into ``blocks`` pieces and the running sup is read at the end of
    each. When those rises shrink geometrically (ratio at most ``rate``) the remaining
    tail of the series is added and the sup is reported as stable.
    '''
    ws = window_sup(values, margin)
    if ws.stable:
        return ws
    running = np.maximum.accumulate(np.asarray(values, dtype=float))
    edges = np.linspace(0, running.size, blocks + 1).astype(int)[1:] - 1
    rises = np.diff(running[edges])
    if rises.size < 2 or np.any(rises[:-1] <= 0):
        return ws
    ratios = rises[1:] / rises[:-1]
    if not np.all(ratios <= rate):
        return ws
    rho = float(ratios[-1])
    limit = float(running[-1]) + float(rises[-1]) * rho / (1.0 - rho)
    return WindowSup(limit, ws.first_half, ws.index, True)


def decay_trend(ratios, margin=STABILITY_MARGIN):
    ''' Classify a nonnegative ratio sampled along a tail window as decaying or not

    :returns: ``'decays'``, ``'persists'`` or ``'unclear'``
    '''
    r = np.asarray(ratios, dtype=float)
    if r.size < 3:
        return 'unclear'
    first, mid, last = r[0], r[r.size // 2], r[-1]
    if last <= (1 - margin) * mid and mid <= (1 - margin) * first:
        return 'decays'
    if last >= (1 - margin) * mid and mid >= (1 - margin) * first:
        return 'persists'
    return 'unclear'
