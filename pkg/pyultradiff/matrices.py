# -*- coding: utf-8 -*-

'''
Weight matrices associated with a weight function.

For a weight omega the matrix Omega = {W^l: l > 0} has rows
``log W^l_j = phi*_omega(l j) / l``. Rows are tabulated lazily: from a closed-form
generator when the weight family has one, by the numerical Young conjugate
otherwise.
'''

import math
import logging
import threading

import numpy as np
from scipy.special import gammaln

from .defaults import MATRIX_INDICES, MATRIX_P_MAX, OMEGA7_GRID, STABILITY_MARGIN, TailGrid, slack
from .errors import ConfigError, MatrixInvariantError, PreconditionError
from .reports import holds, fails, inconclusive, window_sup
from .sequences import WeightSequence, derive, check_sequence_condition, compare_sequences
from .weights import FromSequence, Ramified
from .conjugates import young_conjugate_array
from .render import write_csv


def getLogger():
    return logging.getLogger(__name__)


_ROW_CACHE = {}
_ROW_LOCK = threading.Lock()


# ------------------------------------------------------------------------------
# Matrices
# ------------------------------------------------------------------------------

class SequenceMatrix(object):
    ''' A family of weight sequences indexed by positive reals

    :param rows: mapping index -> :class:`WeightSequence`
    '''

    def __init__(self, rows, name='matrix'):
        if not rows:
            raise ConfigError("A weight matrix needs at least one row")
        self.__rows = dict(rows)
        self.__name = name

    @property
    def name(self):
        return self.__name

    @property
    def indices(self):
        return tuple(sorted(self.__rows))

    @property
    def p_max(self):
        return min(self.row(l).p_max for l in self.indices)

    def row(self, l):
        if l not in self.__rows:
            raise ConfigError(f"Index {l:g} is not tabulated in {self.name}")
        return self.__rows[l]

    def divided_row(self, l):
        ''' w^l_p = W^l_p / p! '''
        return derive(self.row(l), 'divided_m')

    def shifted_row(self, l):
        ''' p! W^l_p '''
        return derive(self.row(l), 'factorial_shifted')

    def mapped(self, func, name):
        ''' the matrix of ``func(row)`` over the same indices '''
        return SequenceMatrix({l: func(l, self.row(l)) for l in self.indices}, name=name)

    def to_rows(self):
        return [(l, p, v) for l in self.indices for p, v in self.row(l).rows()]

    def write_csv(self, path, overwrite=False):
        write_csv(path, ('l', 'p', 'logW'), self.to_rows(), overwrite=overwrite)

    def __repr__(self):
        return f"{self.__class__.__name__}({self.name!r}, indices={self.indices})"


class WeightMatrix(SequenceMatrix):
    ''' Omega = {W^l} for a weight, tabulated to ``p_max`` on the given indices '''

    def __init__(self, source, indices=MATRIX_INDICES, p_max=MATRIX_P_MAX, closed_form=True):
        indices = tuple(sorted(float(l) for l in indices))
        if not indices or indices[0] <= 0:
            raise ConfigError("Matrix indices must be positive")
        self.__source = source
        self.__indices = indices
        self.__p_max = int(p_max)
        self.__closed = closed_form
        self.__lock = threading.Lock()
        self.__rows = {}

    @property
    def source(self):
        return self.__source

    @property
    def name(self):
        return f"Omega[{self.__source.name}]"

    @property
    def indices(self):
        return self.__indices

    @property
    def p_max(self):
        return min(self.row(l).p_max for l in self.__indices)

    def __row_length(self, l):
        # a tabulated sequence only knows phi* up to its own p_max
        seq = getattr(self.__source, 'sequence', None)
        if seq is not None and (seq.generator is None or not seq.generator.log_convex):
            return max(1, min(self.__p_max, int(seq.p_max // l)))
        return self.__p_max

    def row(self, l):
        ''' W^l, computed on first use '''
        l = float(l)
        with self.__lock:
            if l in self.__rows:
                return self.__rows[l]
        key = (self.__source.fingerprint, l, self.__p_max, self.__closed)
        with _ROW_LOCK:
            cached = _ROW_CACHE.get(key)
        if cached is None:
            cached = self.__build_row(l)
            with _ROW_LOCK:
                _ROW_CACHE[key] = cached
        with self.__lock:
            self.__rows[l] = cached
        return cached

    def __build_row(self, l):
        name = f"W^{l:g}[{self.__source.name}]"
        gen = self.__source.matrix_generator(l) if self.__closed else None
        if gen is not None:
            return WeightSequence.from_generator(gen, self.__p_max, name=name)
        n = self.__row_length(l)
        x = l * np.arange(n + 1, dtype=float)
        closed = self.__source.phi_star(x) if self.__closed else None
        values = closed if closed is not None else young_conjugate_array(self.__source, x)
        getLogger().debug(f"Row {name}: p_max={n}, {'interpolated' if closed is not None else 'numeric'}")
        return WeightSequence(np.asarray(values, dtype=float) / l, name=name)

    def check_monotone(self):
        ''' W^x <= W^y for x <= y on the common window

        :raises MatrixInvariantError: on a violation
        '''
        for x, y in zip(self.__indices, self.__indices[1:]):
            a, b = self.row(x).log_values, self.row(y).log_values
            P = min(a.size, b.size)
            bad = a[:P] > b[:P] + slack(a[:P], b[:P])
            if np.any(bad):
                raise MatrixInvariantError(f"W^{x:g} > W^{y:g} at p={int(np.argmax(bad))} for {self.__source.name}")


def build_matrix(w, indices=MATRIX_INDICES, p_max=MATRIX_P_MAX, closed_form=True):
    ''' Tabulate the weight matrix of ``w`` and verify monotonicity in the index

    :rtype: WeightMatrix
    '''
    m = WeightMatrix(w, indices, p_max, closed_form)
    m.check_monotone()
    getLogger().debug(f"Built {m!r}, p_max={m.p_max}")
    return m


class RamifiedMatrix(object):
    ''' S^x from omega_{w^1} and its ramifications S^{x,q} = (S^x)^q, Shat^{x,q} = p! (S^x)^q '''

    def __init__(self, base_matrix, q, indices=MATRIX_INDICES, p_max=MATRIX_P_MAX):
        if not q > 0:
            raise ConfigError(f"Ramification exponent must be positive (q={q})")
        self.__base = base_matrix
        self.__q = float(q)
        w1 = base_matrix.divided_row(1.0)
        self.__weight = FromSequence(w1, name=f"omega_w1[{base_matrix.source.name}]")
        self.__s = WeightMatrix(self.__weight, indices, p_max)

    @property
    def base_matrix(self):
        return self.__base

    @property
    def base_weight(self):
        ''' omega_{w^1} '''
        return self.__weight

    @property
    def q(self):
        return self.__q

    @property
    def indices(self):
        return self.__s.indices

    def S(self, x):
        return self.__s.row(x)

    def S_q(self, x):
        row = self.__s.row(x)
        gen = row.generator.power(1.0 / self.__q) if row.generator is not None else None
        return WeightSequence(self.__q * row.log_values, generator=gen, name=f"S^({x:g},{self.__q:g})")

    def S_hat_q(self, x):
        return derive(self.S_q(x), 'factorial_shifted')

    def s_matrix(self):
        return self.__s

    def hat_matrix(self):
        ''' {Shat^{x,q}: x} as a plain matrix '''
        return SequenceMatrix({x: self.S_hat_q(x) for x in self.indices}, name=f"Shat^q={self.__q:g}")


def build_ramified(w, q, x_indices=MATRIX_INDICES, p_max=MATRIX_P_MAX, gamma_config=None, require_gamma=True):
    ''' Build S, S^q and Shat^q for a weight with growth index above one

    :raises PreconditionError: when the estimated index does not exceed 1
    :rtype: RamifiedMatrix
    '''
    if require_gamma:
        from .gamma import estimate_gamma
        est = estimate_gamma(w, gamma_config)
        if not est.lower > 1:
            raise PreconditionError(f"Ramified matrices need gamma > 1; {w.name} has gamma in "
                                    f"[{est.lower:g}, {est.upper_text}]")
    base = build_matrix(w, sorted(set(x_indices) | {1.0}), p_max)
    return RamifiedMatrix(base, q, x_indices, p_max)


# ------------------------------------------------------------------------------
# Conditions
# ------------------------------------------------------------------------------

def _pairs(m, factor):
    ''' index pairs (l, factor * l) that are both tabulated '''
    return [(l, l * factor) for l in m.indices if any(math.isclose(l * factor, k) for k in m.indices)]


def _snap(m, value):
    return next(k for k in m.indices if math.isclose(k, value))


def _sharp_mg(m, small, large):
    ''' max_{j+k=n} (log W^small_n - log W^large_j - log W^large_k) and its argmax, n = 0..P '''
    a = m.row(small).log_values
    b = m.row(large).log_values
    P = min(a.size, b.size) - 1
    worst, where = -np.inf, None
    for n in range(P + 1):
        jj = np.arange(n + 1)
        gap = a[n] - b[jj] - b[n - jj]
        gap = gap - slack(a[n], b[jj] + b[n - jj])
        j = int(np.argmax(gap))
        if gap[j] > worst:
            worst, where = float(gap[j]), (j, n - j)
    return worst, where


def _check_mg(m, cond, anchor):
    pairs = _pairs(m, 2.0)
    if not pairs:
        return inconclusive(cond, 'no (l, 2l) pair', anchor=anchor, subject=m.name)
    witnesses = {}
    for l, l2 in pairs:
        small, large = (l, _snap(m, l2))
        worst, where = _sharp_mg(m, small, large)
        tag = f"y[x={small:g}]" if cond == 'mg_roumieu' else f"y[x={large:g}]"
        if worst > 0:
            return fails(cond, (small, large) + where, f"l in {m.indices}", anchor=anchor, subject=m.name)
        witnesses[tag] = large if cond == 'mg_roumieu' else small
    witnesses['C'] = 1.0
    return holds(cond, witnesses, f"l in {m.indices}, j + k <= {m.p_max}", anchor=anchor, subject=m.name)


def _absorb_excess(m, small, large, h):
    ''' j log h + log W^small_j - log W^large_j '''
    a = m.row(small).log_values
    b = m.row(large).log_values
    P = min(a.size, b.size)
    return np.arange(P) * math.log(h) + a[:P] - b[:P]


def _check_L(m, cond, h, margin, anchor):
    ''' one A for all testable l with h^j W^l_j <= D W^{Al}_j (Beurling: h^j W^{l/A}_j <= D W^l_j) '''
    factors = sorted({round(b / a, 12) for a in m.indices for b in m.indices if b > a})
    rng = f"h={h:g}, l in {m.indices}"
    for A in factors:
        pairs = _pairs(m, A)
        if not pairs:
            continue
        witnesses = {'A': A}
        ok = True
        for l, lA in pairs:
            small, large = l, _snap(m, lA)
            ws = window_sup(_absorb_excess(m, small, large, h), margin, log=True)
            if not ws.stable:
                ok = False
                break
            key = f"D[l={small:g}]" if cond == 'L_roumieu' else f"D[l={large:g}]"
            witnesses[key] = math.exp(max(ws.value, 0.0))
        if ok:
            return holds(cond, witnesses, rng, anchor=anchor, subject=m.name)
    return fails(cond, h, rng, notes={'factors_tried': factors}, anchor=anchor, subject=m.name)


def _check_constant(m, margin, anchor):
    witnesses = {}
    for i, x in enumerate(m.indices):
        for y in m.indices[i + 1:]:
            r = compare_sequences(m.row(x), m.row(y), 'approx', margin)
            if not r.holds:
                return fails('constant', (x, y), f"l in {m.indices}", anchor=anchor, subject=m.name,
                             notes={'pair_verdict': r.verdict})
            witnesses[f"C[{x:g},{y:g}]"] = max(r.witness('C'), r.witness('C_reverse'))
    return holds('constant', witnesses, f"l in {m.indices}", anchor=anchor, subject=m.name)


def _check_sc(m, anchor):
    notes = {}
    for l in m.indices:
        lc = check_sequence_condition(m.row(l), 'lc')
        notes[f"slc[l={l:g}]"] = check_sequence_condition(m.row(l), 'slc').verdict
        if not lc.holds:
            return fails('sc', (l, lc.counterexample), f"l in {m.indices}", anchor=anchor, subject=m.name,
                         notes=notes)
    return holds('sc', {'rows': float(len(m.indices))}, f"l in {m.indices}", anchor=anchor, subject=m.name,
                 notes=notes)


MATRIX_ANCHORS = {
    'mg_roumieu': 'matrix/moderate-growth',
    'mg_beurling': 'matrix/moderate-growth',
    'L_roumieu': 'matrix/exponential-absorption',
    'L_beurling': 'matrix/exponential-absorption',
    'constant': 'matrix/constant',
    'sc': 'matrix/standard-log-convex',
}


def check_matrix_condition(m, cond, h=2.0, margin=STABILITY_MARGIN):
    ''' Matrix-level conditions on the tabulated rows

    ``mg_roumieu`` and ``mg_beurling`` test the sharp pairing W^l_{j+k} <= W^{2l}_j W^{2l}_k;
    ``L_roumieu``/``L_beurling`` fit D for the factor ``h``; ``constant`` asks W^l ~ W^n for all
    tabulated indices and ``sc`` asks every row to be log-convex.

    :rtype: pyultradiff.reports.ConditionReport
    '''
    if cond not in MATRIX_ANCHORS:
        raise ConfigError(f"Unknown matrix condition {cond!r}")
    anchor = MATRIX_ANCHORS[cond]
    if cond in ('mg_roumieu', 'mg_beurling'):
        report = _check_mg(m, cond, anchor)
    elif cond in ('L_roumieu', 'L_beurling'):
        report = _check_L(m, cond, h, margin, anchor)
    elif cond == 'constant':
        report = _check_constant(m, margin, anchor)
    else:
        report = _check_sc(m, anchor)
    getLogger().debug(f"{cond} on {m.name}: {report.verdict}")
    return report


def check_matrix_omega7(m, grid=OMEGA7_GRID, margin=STABILITY_MARGIN):
    ''' Search (A, B) with W^l_{2j} <= C_l B^j W^{Al}_j and (W^l_j)^2 <= C_l B^j W^{Al}_j for all tested l

    B is capped at the largest grid value and the cap is reported. The factorial
    absorption j! W^l_j <= C_l (D_l B)^j W^{Al}_j is recorded through D_l with
    j! <= D_l^j W^l_j.
    '''
    anchor = 'matrix/omega7'
    notes = {'B_cap': max(grid)}
    rng = f"(A, B) in {tuple(grid)}^2, l in {m.indices}"
    for A in grid:
        pairs = [(l, _snap(m, lA)) for l, lA in _pairs(m, A)]
        if not pairs:
            continue
        for B in grid:
            witnesses = {'A': float(A), 'B': float(B)}
            ok = True
            for l, lA in pairs:
                a = m.row(l).log_values
                b = m.row(lA).log_values
                J = min((a.size - 1) // 2, b.size - 1)
                j = np.arange(J + 1)
                doubled = a[2 * j] - j * math.log(B) - b[j]
                squared = 2 * a[j] - j * math.log(B) - b[j]
                fits = [window_sup(doubled, margin, log=True), window_sup(squared, margin, log=True)]
                if not all(f.stable for f in fits):
                    ok = False
                    break
                witnesses[f"C[l={l:g}]"] = math.exp(max(fits[0].value, fits[1].value, 0.0))
                jj = np.arange(1, a.size)
                D = window_sup((gammaln(jj + 1) - a[1:]) / jj, margin, log=True)
                if D.stable:
                    witnesses[f"D[l={l:g}]"] = math.exp(max(D.value, 0.0))
            if ok:
                return holds('omega7', witnesses, rng, anchor=anchor, subject=m.name, notes=notes)
    return fails('omega7', (max(grid), max(grid)), rng, anchor=anchor, subject=m.name, notes=notes)


def check_ramified_sandwich(rm, q=None):
    ''' S^l_j <= (S^l_{qj})^{1/q} <= S^{2^{q-1} l}_j for integer q, where 2^{q-1} l is tabulated '''
    q = int(round(rm.q if q is None else q))
    if q < 1:
        raise ConfigError(f"Sandwich needs an integer q >= 1 (q={q})")
    anchor = 'matrix/ramified-sandwich'
    subject = rm.s_matrix().name
    tested = []
    for l in rm.indices:
        top = l * 2 ** (q - 1)
        if not any(math.isclose(top, k) for k in rm.indices):
            continue
        lo = rm.S(l).log_values
        hi = rm.S(next(k for k in rm.indices if math.isclose(k, top))).log_values
        J = min((lo.size - 1) // q, hi.size - 1)
        j = np.arange(J + 1)
        mid = lo[q * j] / q
        for left, right in ((lo[j], mid), (mid, hi[j])):
            bad = left > right + slack(left, right)
            if np.any(bad):
                return fails('ramified_sandwich', (l, int(np.argmax(bad))), f"q={q}", anchor=anchor, subject=subject)
        tested.append(l)
    if not tested:
        return inconclusive('ramified_sandwich', f"q={q}", notes={'reason': 'no (l, 2^(q-1) l) pair'},
                            anchor=anchor, subject=subject)
    return holds('ramified_sandwich', {'q': float(q), 'indices_tested': float(len(tested))}, f"q={q}",
                 anchor=anchor, subject=subject)


def check_ramification_identity(w, l, s, p_max=MATRIX_P_MAX):
    ''' V^{l,s}_j = (W^{l/s}_j)^{1/s}, with V computed numerically from omega^s '''
    v = WeightMatrix(Ramified(w, s), (l,), p_max, closed_form=False).row(l).log_values
    target = WeightMatrix(w, (l / s,), p_max).row(l / s).log_values / s
    P = min(v.size, target.size)
    err = np.abs(v[:P] - target[:P])
    anchor = 'matrix/ramification-identity'
    rng = f"j in [0, {P - 1}]"
    tol = 1e-8 * np.maximum(1.0, np.abs(target[:P]))
    if np.any(err > tol):
        return fails('ramification_identity', int(np.argmax(err > tol)), rng,
                     witnesses={'max_log_error': float(np.max(err))}, anchor=anchor, subject=w.name)
    return holds('ramification_identity', {'max_log_error': float(np.max(err))}, rng,
                 anchor=anchor, subject=w.name)


def check_weight_matrix_equivalence(m, l, grid=None, margin=STABILITY_MARGIN):
    ''' l omega_{W^l} <= omega <= 2 l omega_{W^l} + C_l on t >= 1 '''
    grid = grid or TailGrid()
    w = m.source
    t = grid.values()
    big = FromSequence(m.row(l))
    t = t[t <= min(big.valid_limit, w.valid_limit)]
    lower = l * big(t)
    omega = w(t)
    anchor = 'matrix/weight-equivalence'
    rng = f"t in [{t[0]:g}, {t[-1]:g}]"
    bad = lower > omega + slack(lower, omega)
    if np.any(bad):
        return fails('weight_matrix_equivalence', float(t[int(np.argmax(bad))]), rng, anchor=anchor, subject=m.name)
    ws = window_sup(omega - 2 * l * big(t), margin, log=True)
    if not ws.stable:
        return fails('weight_matrix_equivalence', float(t[ws.index]), rng,
                     witnesses={'C_first_half': max(ws.first_half, 0.0)}, anchor=anchor, subject=m.name)
    return holds('weight_matrix_equivalence', {'C': max(ws.value, 0.0), 'l': float(l)}, rng,
                 anchor=anchor, subject=m.name)


def compare_matrices(a, b, margin=STABILITY_MARGIN):
    ''' {approx}: every row of a is precsim some row of b and conversely

    Witnesses name the matched index and its constant per row.
    '''
    anchor = 'matrix/equivalence'
    subject = f"({a.name}, {b.name})"
    witnesses = {}
    for first, second, tag in ((a, b, 'y'), (b, a, 'x')):
        for x in first.indices:
            match = None
            for y in second.indices:
                r = compare_sequences(first.row(x), second.row(y), 'precsim', margin)
                if r.holds:
                    match = (y, r.witness('C'))
                    break
            if match is None:
                return fails('matrix_approx', (tag, x), f"indices {a.indices} / {b.indices}",
                             witnesses=witnesses, anchor=anchor, subject=subject)
            witnesses[f"{tag}[{x:g}]"] = match[0]
            witnesses[f"C_{tag}[{x:g}]"] = match[1]
    return holds('matrix_approx', witnesses, f"indices {a.indices} / {b.indices}", anchor=anchor, subject=subject)
