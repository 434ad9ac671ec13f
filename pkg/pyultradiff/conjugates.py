# -*- coding: utf-8 -*-

'''
Conjugates of weights: the Young conjugate of phi_omega, the upper Legendre
conjugate omega^star and the lower Legendre envelope h_star, with the
inequalities tying them to associated weights of sequences and matrices.

Scalar entry points return :class:`ConjugateResult`; the ``*_array`` variants
evaluate many arguments at once and are what derived weights use.
'''

import math
import logging
import threading
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from .defaults import GOLDEN_MAX_ITER, GOLDEN_XTOL, SCAN_POINTS, SCAN_RANGE, SCAN_EXPANSIONS, BRACKET_DOUBLINGS
from .defaults import MATRIX_INDICES, STABILITY_MARGIN, H_GRID, TailGrid, slack
from .errors import ConfigError, NonConcavityError, UnboundedObjectiveError, BoundaryOptimumError
from .errors import PreconditionError
from .reports import holds, fails, inconclusive, window_sup
from .sequences import derive, check_sequence_condition
from .weights import WeightFunction, FromSequence, compare_weights


def getLogger():
    return logging.getLogger(__name__)


INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
SANDWICH_GRID = np.geomspace(1e-3, 1e3, 61)


@dataclass(frozen=True)
class ConjugateResult:
    ''' value of a conjugate with its optimizer (y, t or s) and the search interval '''
    value: float
    argument: float
    error_estimate: float
    bracket: Tuple[float, float]


# ------------------------------------------------------------------------------
# Golden section
# ------------------------------------------------------------------------------

def _concave_at(x0, f0, x1, f1, x2, f2):
    if not (math.isfinite(f0) and math.isfinite(f1) and math.isfinite(f2)):
        return True
    chord = f0 + (f2 - f0) * (x1 - x0) / (x2 - x0)
    return f1 >= chord - float(slack(f1, chord))


def golden_max(f, a, b, xtol=GOLDEN_XTOL, max_iter=GOLDEN_MAX_ITER, concave=False):
    ''' Maximize a scalar function on [a, b]

    :param concave: verify three-point concavity on every new triple
    :returns: (argmax, max, error estimate)
    '''
    fa, fb = f(a), f(b)
    c, d = b - INVPHI * (b - a), a + INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if concave and not (_concave_at(a, fa, c, fc, d, fd) and _concave_at(c, fc, d, fd, b, fb)):
            raise NonConcavityError(f"Objective is not concave near [{a:.6g}, {b:.6g}]")
        if b - a <= xtol or abs(fc - fd) <= 1e-12 * max(1.0, abs(fc)) * 1e-3:
            break
        if fc >= fd:
            b, fb = d, fd
            d, fd = c, fc
            c = b - INVPHI * (b - a)
            fc = f(c)
        else:
            a, fa = c, fc
            c, fc = d, fd
            d = a + INVPHI * (b - a)
            fd = f(d)
    if fc >= fd:
        return c, fc, abs(fc - fd)
    return d, fd, abs(fc - fd)


def golden_max_array(f, a, b, xtol=GOLDEN_XTOL, max_iter=GOLDEN_MAX_ITER):
    ''' Elementwise golden section; f maps an array of abscissae (one per problem) to values '''
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    c = b - INVPHI * (b - a)
    d = a + INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if np.all(b - a <= xtol):
            break
        left = fc >= fd
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        new = np.where(left, b - INVPHI * (b - a), a + INVPHI * (b - a))
        fnew = f(new)
        c, d, fc, fd = (np.where(left, new, d), np.where(left, c, new),
                        np.where(left, fnew, fd), np.where(left, fc, fnew))
    best = fc >= fd
    return np.where(best, c, d), np.where(best, fc, fd), np.abs(fc - fd)


# ------------------------------------------------------------------------------
# Young conjugate
# ------------------------------------------------------------------------------

def young_conjugate(w, x):
    ''' phi*_omega(x) = sup_{y >= 0} (x y - phi_omega(y))

    The bracket [0, Y] doubles Y until the objective decreases, then a golden
    section refines the maximizer to 1e-10.

    :raises NonConcavityError: phi_omega is not convex where it was sampled
    :raises UnboundedObjectiveError: the objective kept increasing
    :rtype: ConjugateResult
    '''
    if x < 0:
        raise ConfigError(f"Young conjugate is taken at x >= 0 (x={x})")

    def objective(y):
        with np.errstate(over='ignore'):
            return x * y - float(w.phi(y))

    Y = 1.0
    for _ in range(BRACKET_DOUBLINGS):
        if objective(Y) < objective(Y / 2):
            break
        Y *= 2
    else:
        raise UnboundedObjectiveError(f"x y - phi(y) still increasing at y = {Y:g} for {w.name}, x = {x:g}")
    y, val, err = golden_max(objective, 0.0, Y, concave=True)
    f0 = objective(0.0)
    if f0 >= val:
        y, val = 0.0, f0
    return ConjugateResult(val, y, err, (0.0, Y))


def _bracket_array(objective, n):
    Y = np.ones(n)
    for _ in range(BRACKET_DOUBLINGS):
        grow = objective(Y) >= objective(Y / 2)
        if not np.any(grow):
            return Y
        Y = np.where(grow, Y * 2, Y)
    raise UnboundedObjectiveError(f"Objective still increasing at y = {float(np.max(Y)):g}")


def young_conjugate_array(w, x):
    ''' phi*_omega on an array of x >= 0, by vectorized bracketing and golden section '''
    x = np.asarray(x, dtype=float)
    flat = x.ravel()
    if np.any(flat < 0):
        raise ConfigError("Young conjugate is taken at x >= 0")

    def objective(y):
        with np.errstate(over='ignore', invalid='ignore'):
            v = flat * y - w.phi(y)
        return np.where(np.isnan(v), -np.inf, v)

    Y = _bracket_array(objective, flat.size)
    _, val, _ = golden_max_array(objective, np.zeros_like(Y), Y)
    return np.maximum(val, objective(np.zeros_like(Y))).reshape(x.shape)


def phi_star_values(w, x, closed_form=True):
    ''' phi*_omega from the closed form when the family has one, numerically otherwise '''
    if closed_form:
        closed = w.phi_star(x)
        if closed is not None:
            return closed
    return young_conjugate_array(w, x)


def biconjugate(w, y, closed_form=True):
    ''' phi**_omega(y) = sup_{x >= 0} (x y - phi*_omega(x)); equals phi_omega for y >= 0 '''
    y = np.asarray(y, dtype=float)
    flat = y.ravel()

    def objective(x):
        with np.errstate(over='ignore', invalid='ignore'):
            v = x * flat - phi_star_values(w, x, closed_form)
        return np.where(np.isnan(v), -np.inf, v)

    X = _bracket_array(objective, flat.size)
    _, val, _ = golden_max_array(objective, np.zeros_like(X), X)
    out = np.maximum(val, objective(np.zeros_like(X))).reshape(y.shape)
    return float(out) if y.ndim == 0 else out


# ------------------------------------------------------------------------------
# Log-grid scans
# ------------------------------------------------------------------------------

def _clean(v):
    return np.where(np.isnan(v), -np.inf, v)


def _scan_max(block, n, left_needed, right_needed, y_max=math.inf):
    ''' Coarse maximization over log abscissae with boundary expansion

    :param block: block(y, cols) -> values of shape (len(y), len(cols))
    :param left_needed: left_needed(best, cols) -> mask of columns whose left-edge maximum calls for expansion
    :param right_needed: same for the right edge
    :returns: (best values, argmax y, cell half width, final grid range)
    '''
    lo, hi = SCAN_RANGE
    hi = min(hi, y_max)
    y = np.linspace(lo, hi, SCAN_POINTS)
    step = y[1] - y[0]
    width = hi - lo
    cols = np.arange(n)
    vals = _clean(block(y, cols))
    j = np.argmax(vals, axis=0)
    best = vals[j, cols]
    arg = y[j]
    edge = np.where(j == 0, -1, np.where(j == y.size - 1, 1, 0))
    for k in range(1, SCAN_EXPANSIONS + 1):
        left = np.nonzero((edge == -1) & left_needed(best, cols))[0]
        right = np.nonzero((edge == 1) & right_needed(best, cols))[0]
        if hi + (k - 1) * width >= y_max:
            right = right[:0]
        if left.size == 0 and right.size == 0:
            break
        for picked, side in ((left, -1), (right, 1)):
            if picked.size == 0:
                continue
            if side < 0:
                yy = np.linspace(lo - k * width, lo - (k - 1) * width, SCAN_POINTS)
            else:
                yy = np.linspace(hi + (k - 1) * width, min(hi + k * width, y_max), SCAN_POINTS)
            v = _clean(block(yy, picked))
            jj = np.argmax(v, axis=0)
            bb = v[jj, np.arange(picked.size)]
            better = bb > best[picked]
            best[picked[better]] = bb[better]
            arg[picked[better]] = yy[jj[better]]
            far = 0 if side < 0 else SCAN_POINTS - 1
            edge[picked] = np.where(better & (jj == far), side, 0)
    stuck = ((edge == -1) & left_needed(best, cols)) | ((edge == 1) & right_needed(best, cols) & (arg < y_max))
    if np.any(stuck):
        c = int(np.argmax(stuck))
        raise BoundaryOptimumError(f"Scan optimum stays at the boundary y = {arg[c]:.1f} after "
                                   f"{SCAN_EXPANSIONS} expansions")
    return best, arg, step


def _refine(point, best, arg, step, y_max=math.inf):
    ''' golden section on the cell around each scan optimum '''
    lo = arg - step
    hi = np.minimum(arg + step, y_max)
    y, val, err = golden_max_array(lambda yy: _clean(point(yy)), lo, hi)
    better = val > best
    return np.where(better, val, best), np.where(better, y, arg), err


# ------------------------------------------------------------------------------
# Upper Legendre conjugate
# ------------------------------------------------------------------------------

def _upper(w, s):
    s = np.asarray(s, dtype=float).ravel()
    if np.any(s <= 0):
        raise ConfigError("omega^star is taken at s > 0")
    y_max = math.log(w.valid_limit) if math.isfinite(w.valid_limit) else math.inf

    def block(y, cols):
        with np.errstate(over='ignore', invalid='ignore'):
            return w.phi(y)[:, None] - s[cols][None, :] * np.exp(y)[:, None]

    def point(y):
        with np.errstate(over='ignore', invalid='ignore'):
            return w.phi(y) - s * np.exp(y)

    # a left-edge maximum that is not positive means the sup is omega(0) = 0
    best, arg, step = _scan_max(block, s.size, lambda b, c: b > 0, lambda b, c: np.ones(c.size, bool), y_max)
    val, y, err = _refine(point, best, arg, step, y_max)
    at_zero = val <= 0
    return np.where(at_zero, 0.0, val), np.where(at_zero, 0.0, np.exp(y)), err, step


def upper_conjugate(w, s):
    ''' omega^star(s) = sup_{t >= 0} (omega(t) - s t)

    :raises BoundaryOptimumError: the maximum keeps sitting on the scan boundary
    :rtype: ConjugateResult
    '''
    val, t, err, step = _upper(w, s)
    return ConjugateResult(float(val[0]), float(t[0]), float(err[0]),
                           (float(t[0] * math.exp(-step)), float(t[0] * math.exp(step))))


def upper_conjugate_array(w, s):
    s = np.asarray(s, dtype=float)
    return _upper(w, s)[0].reshape(s.shape)


# ------------------------------------------------------------------------------
# Lower Legendre envelope
# ------------------------------------------------------------------------------

def check_envelope_input(h):
    ''' h nonincreasing on (0, inf) with h(s) -> inf as s -> 0, judged on a log grid '''
    s = np.geomspace(1e-12, 1e12, 97)
    v = np.asarray(h(s), dtype=float)
    if np.any(np.diff(v) > slack(v[1:], v[:-1])):
        raise PreconditionError("Lower envelope needs a nonincreasing function")
    if not v[0] > v[v.size // 2] + 1.0:
        raise PreconditionError("Lower envelope needs h(s) -> inf as s -> 0")


def _lower(h, t):
    t = np.asarray(t, dtype=float).ravel()
    if np.any(t < 0):
        raise ConfigError("h_star is taken at t >= 0")

    def block(u, cols):
        with np.errstate(over='ignore', invalid='ignore'):
            return -(np.asarray(h(np.exp(u)), dtype=float)[:, None] + t[cols][None, :] * np.exp(u)[:, None])

    def point(u):
        with np.errstate(over='ignore', invalid='ignore'):
            return -(np.asarray(h(np.exp(u)), dtype=float) + t * np.exp(u))

    best, arg, step = _scan_max(block, t.size, lambda b, c: np.ones(c.size, bool), lambda b, c: t[c] > 0)
    val, u, err = _refine(point, best, arg, step)
    return -val, np.exp(u), err, step


def lower_envelope(h, t):
    ''' h_star(t) = inf_{s > 0} (h(s) + t s) for a nonincreasing h

    :rtype: ConjugateResult (argument is the minimizing s)
    '''
    val, s, err, step = _lower(h, t)
    return ConjugateResult(float(val[0]), float(s[0]), float(err[0]),
                           (float(s[0] * math.exp(-step)), float(s[0] * math.exp(step))))


def lower_envelope_array(h, t):
    t = np.asarray(t, dtype=float)
    return _lower(h, t)[0].reshape(t.shape)


# ------------------------------------------------------------------------------
# Conjugate-derived weights
# ------------------------------------------------------------------------------

class UpperConjugateReciprocal(WeightFunction):
    ''' (omega^star)^iota(t) = omega^star(1/t), set to 0 at t = 0 '''

    family = 'upper-star'

    def __init__(self, base, closed_form=True):
        super().__init__()
        self.__base = base
        self.__closed = closed_form

    @property
    def base(self):
        return self.__base

    @property
    def descriptor(self):
        return f"upper-star:{self.__base.descriptor}"

    @property
    def fingerprint(self):
        return ('upper-star', self.__base.fingerprint, self.__closed)

    @property
    def normalized(self):
        return False

    def _omega(self, t):
        sigma = 1.0 / t
        if self.__closed:
            closed = self.__base.upper_star(sigma)
            if closed is not None:
                return closed
        return upper_conjugate_array(self.__base, sigma)


class LowerEnvelopeOfReciprocal(WeightFunction):
    ''' (omega^iota)_star(t) = inf_{s > 0} (omega(1/s) + t s) '''

    family = 'lower-star'

    def __init__(self, base, closed_form=True):
        super().__init__()
        self.__base = base
        self.__closed = closed_form

    @property
    def base(self):
        return self.__base

    @property
    def descriptor(self):
        return f"lower-star:{self.__base.descriptor}"

    @property
    def fingerprint(self):
        return ('lower-star', self.__base.fingerprint, self.__closed)

    @property
    def normalized(self):
        return False

    def _omega(self, t):
        if self.__closed:
            closed = self.__base.reciprocal_lower_star(t)
            if closed is not None:
                return closed
        return lower_envelope_array(self.__base.reciprocal, t)


_DERIVED = {}
_DERIVED_LOCK = threading.Lock()


def _memoized(cls, base, closed_form):
    key = (cls.family, base.fingerprint, closed_form)
    with _DERIVED_LOCK:
        if key not in _DERIVED:
            _DERIVED[key] = cls(base, closed_form)
        return _DERIVED[key]


def upper_conjugate_reciprocal(base, closed_form=True):
    ''' memoized (omega^star)^iota '''
    return _memoized(UpperConjugateReciprocal, base, closed_form)


def lower_envelope_of_reciprocal(base, closed_form=True):
    ''' memoized (omega^iota)_star '''
    return _memoized(LowerEnvelopeOfReciprocal, base, closed_form)


# ------------------------------------------------------------------------------
# Sandwich inequalities
# ------------------------------------------------------------------------------

SANDWICH_ANCHORS = {
    'omega_star_vs_omega_m': 'sandwich/omega-star-vs-omega-m',
    'conjugate_vs_matrix': 'sandwich/conjugate-vs-matrix',
    'conjugate_vs_h': 'sandwich/conjugate-vs-h',
    'mixed_moderate_growth': 'sandwich/mixed-moderate-growth',
    'conjugate_doubling': 'sandwich/conjugate-doubling',
    'h_squaring': 'sandwich/h-squaring',
}


def _first_violation(lhs, rhs, grid):
    ''' abscissa of the first lhs > rhs beyond slack, or None '''
    lhs = np.asarray(lhs, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    bad = lhs > rhs + slack(lhs, rhs)
    return float(grid[int(np.argmax(bad))]) if np.any(bad) else None


def _srange(s):
    return f"s in [{s[0]:g}, {s[-1]:g}], {len(s)} points"


def _as_matrix(subject, indices):
    from .matrices import WeightMatrix, build_matrix
    if isinstance(subject, WeightMatrix):
        return subject
    return build_matrix(subject, indices)


def _fit_constant(excess, margin):
    ''' C >= 1 bounding the excess of an upper inequality; ordered towards s -> 0 '''
    ws = window_sup(np.maximum(excess[::-1], 0.0) + 1.0, margin)
    return max(ws.value, 1.0), ws


def _omega_star_vs_omega_m(seq, s, margin, kw):
    ''' omega_M^star(s) <= omega_m(1/s) <= omega_M^star(s/e) '''
    m = derive(seq, 'divided_m')
    big, small = FromSequence(seq), FromSequence(m)
    lo = upper_conjugate_array(big, s)
    mid = small(1.0 / s)
    hi = upper_conjugate_array(big, s / math.e)
    lm = m.log_values[1:]
    p = np.arange(1, m.p_max + 1)
    root = lm / p
    notes = {'m_root_growth': float(root[-1] - root[root.size // 2])}
    for lhs, rhs in ((lo, mid), (mid, hi)):
        where = _first_violation(lhs, rhs, s)
        if where is not None:
            return fails('omega_star_vs_omega_m', where, _srange(s), notes=notes, **kw)
    return holds('omega_star_vs_omega_m', {'max_gap_left': float(np.max(lo - mid)),
                                           'max_gap_right': float(np.max(mid - hi))},
                 _srange(s), notes=notes, **kw)


def _conjugate_vs_matrix(w, s, indices, margin, kw, h_form=False):
    kind = 'conjugate_vs_h' if h_form else 'conjugate_vs_matrix'
    matrix = _as_matrix(w, indices)
    source = getattr(matrix, 'source', None)
    if source is not None and not source.normalized:
        # both sandwiches need omega = 0 on [0, 1]
        notes = {'precondition': 'om0', 'reason': f"{source.name} is not normalized"}
        return inconclusive(kind, _srange(s), notes=notes, **kw)
    star = upper_conjugate_array(w, s)
    witnesses = {}
    for x in matrix.indices:
        row = FromSequence(matrix.row(x))
        small = FromSequence(matrix.divided_row(x))
        if h_form:
            # log h_{w^x}(e s/x)^x >= -omega^star(s) >= -C_x + 2x log h_{w^x}(s/(2x))
            log_h_left = -small(x / (math.e * s))
            log_h_right = -small(2 * x / s)
            pairs = [(-star, x * log_h_left, star + 2 * x * log_h_right)]
        else:
            pairs = [(x * upper_conjugate_array(row, s / x), star,
                      star - 2 * x * upper_conjugate_array(row, s / (2 * x))),
                     (x * small(x / (math.e * s)), star, star - 2 * x * small(2 * x / s))]
        for lhs, rhs, excess in pairs:
            where = _first_violation(lhs, rhs, s)
            if where is not None:
                return fails(kind, where, _srange(s), witnesses=witnesses, notes={'x': x}, **kw)
            C, ws = _fit_constant(excess, margin)
            if not ws.stable:
                return fails(kind, float(s[::-1][ws.index]), _srange(s), witnesses=witnesses,
                             notes={'x': x, 'C_first_half': ws.first_half}, **kw)
            key = f"C[x={x:g}]"
            witnesses[key] = max(witnesses.get(key, 1.0), C)
    return holds(kind, witnesses, _srange(s), **kw)


def _smallest_factor(lhs_fn, rhs_fn, t, factors):
    for A in factors:
        lhs, rhs = lhs_fn(t), rhs_fn(A, t)
        if _first_violation(lhs, rhs, t) is None:
            return A
    return None


def _mixed_moderate_growth(seq, other, grid, margin, kw):
    ''' (M, N) moderate growth iff 2 omega_N(t) <= omega_M(A t) for some A '''
    other = other if other is not None else seq
    big, small = FromSequence(seq), FromSequence(other)
    mg = check_sequence_condition(seq, 'mixed_mg', other=other, margin=margin)
    t = grid.full()
    limit = min(big.valid_limit, small.valid_limit)
    factors = [A for A in H_GRID if A * t[-1] <= limit] or [1.0]
    t = t[t * factors[-1] <= limit]
    lhs_fn = lambda tt: 2 * small(tt)
    rhs_fn = lambda A, tt: big(A * tt)
    A_full = _smallest_factor(lhs_fn, rhs_fn, t, factors)
    A_half = _smallest_factor(lhs_fn, rhs_fn, t[:t.size // 2], factors)
    function_side = A_full is not None and A_half is not None and A_full <= 2 * A_half
    notes = {'sequence_verdict': mg.verdict, 'A_first_half': A_half, 'A_full': A_full}
    rng = f"t in [{t[0]:g}, {t[-1]:g}]"
    if mg.inconclusive:
        return inconclusive('mixed_moderate_growth', rng, notes=notes, **kw)
    if mg.holds == function_side:
        witnesses = {'agreement': 1.0}
        if function_side:
            witnesses.update({'A': A_full, 'C': mg.witness('C')})
        return holds('mixed_moderate_growth', witnesses, rng, notes=notes, **kw)
    return fails('mixed_moderate_growth', mg.counterexample, rng, notes=notes, **kw)


def _conjugate_doubling(w, s, indices, kw):
    ''' 2 omega^star_{W^{2l}}(s) <= omega^star_{W^l}(2 s) for tabulated pairs (l, 2l) '''
    matrix = _as_matrix(w, indices)
    gaps = {}
    for l in matrix.indices:
        if 2 * l not in matrix.indices:
            continue
        lhs = 2 * upper_conjugate_array(FromSequence(matrix.row(2 * l)), s)
        rhs = upper_conjugate_array(FromSequence(matrix.row(l)), 2 * s)
        where = _first_violation(lhs, rhs, s)
        if where is not None:
            return fails('conjugate_doubling', where, _srange(s), notes={'l': l}, **kw)
        gaps[f"max_gap[l={l:g}]"] = float(np.max(lhs - rhs))
    if not gaps:
        return inconclusive('conjugate_doubling', _srange(s), notes={'reason': 'no (l, 2l) pair'}, **kw)
    return holds('conjugate_doubling', gaps, _srange(s), **kw)


H_SQUARING_FACTORS = tuple(2.0 ** (k / 4) for k in range(0, 41))


def _h_squaring(w, s, indices, kw):
    ''' one A >= 1 with h_{w^l}(s) <= h_{w^{2l}}(A s)^2 for all pairs, i.e. 2 omega_{w^{2l}}(1/(A s)) <= omega_{w^l}(1/s) '''
    matrix = _as_matrix(w, indices)
    pairs = [(FromSequence(matrix.divided_row(l)), FromSequence(matrix.divided_row(2 * l)))
             for l in matrix.indices if 2 * l in matrix.indices]
    if not pairs:
        return inconclusive('h_squaring', _srange(s), notes={'reason': 'no (l, 2l) pair'}, **kw)
    for A in H_SQUARING_FACTORS:
        if all(_first_violation(2 * double(1.0 / (A * s)), single(1.0 / s), s) is None for single, double in pairs):
            return holds('h_squaring', {'A': A}, _srange(s), **kw)
    return fails('h_squaring', float(H_SQUARING_FACTORS[-1]), _srange(s), **kw)


def verify_sandwich(kind, subject, other=None, s_grid=None, indices=MATRIX_INDICES, grid=None,
                    margin=STABILITY_MARGIN):
    ''' Check one of the conjugate sandwich inequalities on a grid

    :param kind: ``omega_star_vs_omega_m`` and ``mixed_moderate_growth`` take a
                 :class:`WeightSequence` subject (and ``other`` for the mixed case);
                 ``conjugate_vs_matrix``, ``conjugate_vs_h``, ``conjugate_doubling``
                 and ``h_squaring`` take a weight or an already built matrix
    :rtype: pyultradiff.reports.ConditionReport
    '''
    if kind not in SANDWICH_ANCHORS:
        raise ConfigError(f"Unknown sandwich {kind!r}")
    s = np.asarray(s_grid if s_grid is not None else SANDWICH_GRID, dtype=float)
    name = getattr(subject, 'name', str(subject))
    if other is not None:
        name = f"({name}, {other.name})"
    kw = {'anchor': SANDWICH_ANCHORS[kind], 'subject': name}
    if kind == 'omega_star_vs_omega_m':
        report = _omega_star_vs_omega_m(subject, s, margin, kw)
    elif kind == 'conjugate_vs_matrix':
        report = _conjugate_vs_matrix(subject, s, indices, margin, kw)
    elif kind == 'conjugate_vs_h':
        report = _conjugate_vs_matrix(subject, s, indices, margin, kw, h_form=True)
    elif kind == 'mixed_moderate_growth':
        report = _mixed_moderate_growth(subject, other, grid or TailGrid(), margin, kw)
    elif kind == 'conjugate_doubling':
        report = _conjugate_doubling(subject, s, indices, kw)
    else:
        report = _h_squaring(subject, s, indices, kw)
    getLogger().debug(f"sandwich {kind} for {name}: {report.verdict}")
    return report


def check_envelope_transport(alpha, beta, grid=None, margin=STABILITY_MARGIN, closed_form=True):
    ''' alpha ~ beta implies (alpha^iota)_star ~ (beta^iota)_star '''
    premise = compare_weights(alpha, beta, 'sim', grid, margin)
    kw = {'anchor': 'conjugate/envelope-transport', 'subject': f"({alpha.name}, {beta.name})"}
    if not premise.holds:
        return inconclusive('envelope_transport', premise.tested_range, notes={'premise': premise.verdict}, **kw)
    conclusion = compare_weights(lower_envelope_of_reciprocal(alpha, closed_form),
                                 lower_envelope_of_reciprocal(beta, closed_form), 'sim', grid, margin)
    witnesses = {'C_premise': premise.witness('C'), 'C_premise_reverse': premise.witness('C_reverse')}
    if conclusion.holds:
        witnesses.update({'C': conclusion.witness('C'), 'C_reverse': conclusion.witness('C_reverse')})
        return holds('envelope_transport', witnesses, conclusion.tested_range, **kw)
    if conclusion.fails:
        return fails('envelope_transport', conclusion.counterexample, conclusion.tested_range,
                     witnesses=witnesses, **kw)
    return inconclusive('envelope_transport', conclusion.tested_range, witnesses=witnesses, **kw)
