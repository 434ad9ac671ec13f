# -*- coding: utf-8 -*-

'''
Weight functions and the condition battery on them.

A weight is a nondecreasing function omega: [0, inf) -> [0, inf) with omega(0) = 0
and omega(t) -> inf. Every weight evaluates ``omega(t)`` and ``phi(y) = omega(e^y)``;
families with a closed-form Young conjugate or matrix generator expose it through
:meth:`WeightFunction.phi_star` and :meth:`WeightFunction.matrix_generator`.
'''

import math
import logging
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .defaults import TailGrid, QuadratureConfig, k_grid
from .defaults import STABILITY_MARGIN, GAMMA_MARGIN, CONVEXITY_TOL, DN_C_GRID, H_GRID, DIVERGENCE_RATIO, P_MAX
from .defaults import slack
from .errors import ConfigError, ExtrapolationError, DivergenceError
from .reports import holds, fails, inconclusive, combine, window_sup, settled_sup, decay_trend
from .sequences import SequenceGenerator, WeightSequence
from .sequences import gevrey_matrix_generator, logpow_matrix_generator, parse_sequence, parse_params, omega_from_log


def getLogger():
    return logging.getLogger(__name__)


def _out(value, like):
    return float(value) if np.ndim(like) == 0 else value


# ------------------------------------------------------------------------------
# Weight functions
# ------------------------------------------------------------------------------

class WeightFunction(object):
    ''' Base class of all weights

    Subclasses implement ``_omega(t)`` for positive abscissae or :meth:`phi` on log
    abscissae, each default being written in terms of the other.
    '''

    family = 'weight'

    def __init__(self, name=None):
        self.__name = name
        self.__normalized = None

    @property
    def name(self):
        return self.__name or self.descriptor

    @property
    def descriptor(self):
        return self.family

    @property
    def fingerprint(self):
        return self.descriptor

    @property
    def valid_limit(self):
        ''' largest abscissa at which the weight is known '''
        return math.inf

    def __call__(self, t):
        t_arr = np.asarray(t, dtype=float)
        scalar = t_arr.ndim == 0
        t_arr = np.atleast_1d(t_arr)
        if np.any(t_arr < 0):
            raise ConfigError(f"{self.name} is defined for t >= 0")
        out = np.zeros_like(t_arr)
        pos = t_arr > 0
        if np.any(pos):
            out[pos] = self._omega(t_arr[pos])
        return float(out[0]) if scalar else out

    def _omega(self, t):
        return self.phi(np.log(t))

    def phi(self, y):
        ''' phi_omega(y) = omega(e^y) '''
        with np.errstate(over='ignore'):
            t = np.exp(np.asarray(y, dtype=float))
        return self(t)

    def reciprocal(self, t):
        ''' omega^iota(t) = omega(1/t) for t > 0 '''
        t = np.asarray(t, dtype=float)
        return _out(self(1.0 / t), t)

    def phi_star(self, x):
        ''' closed-form Young conjugate, or None when the family has none '''
        return None

    def upper_star(self, s):
        ''' closed-form upper Legendre conjugate, or None '''
        return None

    def matrix_generator(self, l):
        ''' closed-form generator of the row W^l of the associated matrix, or None '''
        return None

    def reciprocal_lower_star(self, t):
        ''' closed-form lower envelope of omega(1/s), or None '''
        return None

    @property
    def normalized(self):
        ''' omega vanishes on [0, 1] '''
        if self.__normalized is None:
            self.__normalized = bool(np.all(self(np.linspace(0.0, 1.0, 65)) <= 0.0))
        return self.__normalized

    def __repr__(self):
        return f"{self.__class__.__name__}({self.descriptor!r})"


class GevreyPower(WeightFunction):
    ''' omega(t) = t^{1/s} '''

    family = 'gevrey'

    def __init__(self, s, name=None):
        if not s > 0:
            raise ConfigError(f"Gevrey weights need s > 0 (s={s})")
        super().__init__(name)
        self.__s = float(s)

    @property
    def s(self):
        return self.__s

    @property
    def descriptor(self):
        return f"gevrey:s={self.__s:g}"

    @property
    def normalized(self):
        return False

    def _omega(self, t):
        return np.power(t, 1.0 / self.__s)

    def phi(self, y):
        with np.errstate(over='ignore'):
            return np.exp(np.asarray(y, dtype=float) / self.__s)

    def phi_star(self, x):
        # stationary point y = s log(s x); below s x = 1 the sup sits at y = 0
        x = np.asarray(x, dtype=float)
        sx = self.__s * x
        with np.errstate(divide='ignore', invalid='ignore'):
            val = sx * (np.log(np.where(sx > 0, sx, 1.0)) - 1.0)
        return _out(np.where(sx >= 1.0, val, -1.0), x)

    def upper_star(self, sigma):
        sigma = np.asarray(sigma, dtype=float)
        s = self.__s
        if s > 1:
            return _out((s - 1) / s * np.power(s * sigma, -1.0 / (s - 1)), sigma)
        if s == 1:
            return _out(np.where(sigma >= 1, 0.0, np.inf), sigma)
        return _out(np.full_like(sigma, np.inf), sigma)

    def matrix_generator(self, l):
        return gevrey_matrix_generator(self.__s, l)

    def reciprocal_lower_star(self, t):
        # inf_u u^{-1/s} + t u is attained at u = (s t)^{-s/(s+1)}
        t = np.asarray(t, dtype=float)
        s = self.__s
        return _out((s + 1) / s * np.power(s * t, 1.0 / (s + 1)), t)


class LogPower(WeightFunction):
    ''' sigma_s(t) = max(0, log t)^s, s > 1 '''

    family = 'logpow'

    def __init__(self, s, name=None):
        if not s > 1:
            raise ConfigError(f"Log-power weights need s > 1 (s={s})")
        super().__init__(name)
        self.__s = float(s)

    @property
    def s(self):
        return self.__s

    @property
    def descriptor(self):
        return f"logpow:s={self.__s:g}"

    @property
    def normalized(self):
        return True

    def _omega(self, t):
        return np.power(np.maximum(np.log(t), 0.0), self.__s)

    def phi(self, y):
        return np.power(np.maximum(np.asarray(y, dtype=float), 0.0), self.__s)

    def phi_star(self, x):
        x = np.asarray(x, dtype=float)
        s = self.__s
        return _out((s - 1) * np.power(np.maximum(x, 0.0) / s, s / (s - 1)), x)

    def matrix_generator(self, l):
        return logpow_matrix_generator(self.__s, l)


def _interpolated_log_value(gen, x):
    ''' piecewise-linear interpolation of log M_p between integer p '''
    lo = np.floor(x)
    frac = x - lo
    return (1 - frac) * gen.log_value(lo) + frac * gen.log_value(lo + 1)


class FromSequence(WeightFunction):
    ''' The associated weight omega_M of a weight sequence '''

    family = 'fromseq'

    def __init__(self, seq, name=None):
        super().__init__(name)
        self.__seq = seq

    @property
    def sequence(self):
        return self.__seq

    @property
    def descriptor(self):
        return f"fromseq:{self.__seq.name}"

    @property
    def fingerprint(self):
        return ('fromseq',) + tuple(self.__seq.fingerprint)

    @property
    def valid_limit(self):
        gen = self.__seq.generator
        if gen is not None and gen.log_convex:
            return math.inf
        # beyond mu_P the sup would need indices past the table
        return float(np.exp(self.__seq.log_mu[-1]))

    @property
    def normalized(self):
        return self.__seq.normalized and self.__seq.log_mu[1] >= 0

    def phi(self, y):
        y = np.asarray(y, dtype=float)
        return _out(omega_from_log(self.__seq, np.atleast_1d(y)).reshape(y.shape), y)

    def __conjugate_ready(self):
        seq = self.__seq
        return seq.is_log_convex and seq.normalized and seq.log_mu[1] >= 0

    def phi_star(self, x):
        # for normalized log-convex M the conjugate interpolates p -> log M_p
        if not self.__conjugate_ready():
            return None
        x = np.asarray(x, dtype=float)
        gen = self.__seq.generator
        if gen is not None and gen.log_convex:
            return _out(_interpolated_log_value(gen, x), x)
        if np.any(x > self.__seq.p_max):
            return None
        return _out(np.interp(x, np.arange(self.__seq.p_max + 1), self.__seq.log_values), x)

    def matrix_generator(self, l):
        gen = self.__seq.generator
        if gen is None or not gen.log_convex or not self.__conjugate_ready():
            return None

        def log_value(p):
            return _interpolated_log_value(gen, l * p) / l

        def log_mu(p):
            return log_value(p) - log_value(p - 1)

        return SequenceGenerator('fromseq-matrix', gen.params + (('l', l),), log_value, log_mu,
                                 descriptor=f"{gen.descriptor}|matrix:l={l:g}")


class Tabulated(WeightFunction):
    ''' Piecewise-linear interpolation in (log t, omega) of a table; linear from (0, 0) to the first row '''

    family = 'table'

    def __init__(self, abscissae, values, name=None):
        t = np.array(abscissae, dtype=float)
        v = np.array(values, dtype=float)
        if t.ndim != 1 or t.shape != v.shape or t.size < 2:
            raise ConfigError("A weight table needs matching abscissae and values (at least two rows)")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(v))):
            raise ConfigError("A weight table must be finite")
        if t[0] <= 0 or np.any(np.diff(t) <= 0):
            raise ConfigError("Table abscissae must be positive and strictly increasing")
        if v[0] < 0 or np.any(np.diff(v) < 0):
            raise ConfigError("Table values must be nonnegative and nondecreasing")
        super().__init__(name)
        self.__label = name or "inline"
        t.setflags(write=False)
        v.setflags(write=False)
        self.__t = t
        self.__v = v

    @staticmethod
    def from_csv(path, name=None):
        ''' Read a CSV file with header ``t,omega`` '''
        with open(path, encoding='utf-8') as infile:
            header = infile.readline().strip().replace(' ', '')
        if header != 't,omega':
            raise ConfigError(f"{path}: expected header 't,omega', found {header!r}")
        data = np.loadtxt(path, delimiter=',', skiprows=1, ndmin=2)
        return Tabulated(data[:, 0], data[:, 1], name=name or str(path))

    @property
    def abscissae(self):
        return self.__t

    @property
    def values(self):
        return self.__v

    @property
    def descriptor(self):
        return f"table:{self.__label}"

    @property
    def fingerprint(self):
        return ('table', hash(self.__t.tobytes()), hash(self.__v.tobytes()))

    @property
    def valid_limit(self):
        return float(self.__t[-1])

    def _omega(self, t):
        if np.any(t > self.__t[-1] * (1 + 1e-12)):
            raise ExtrapolationError(f"{self.name} is tabulated up to t={self.__t[-1]:g}, "
                                     f"asked for t={float(np.max(t)):g}")
        inner = np.interp(np.log(np.maximum(t, self.__t[0])), np.log(self.__t), self.__v)
        return np.where(t < self.__t[0], self.__v[0] * t / self.__t[0], inner)


class Ramified(WeightFunction):
    ''' omega^s(t) = omega(t^s) '''

    family = 'ramified'

    def __init__(self, base, s, name=None):
        if not s > 0:
            raise ConfigError(f"Ramification needs s > 0 (s={s})")
        super().__init__(name)
        self.__base = base
        self.__s = float(s)

    @property
    def base(self):
        return self.__base

    @property
    def s(self):
        return self.__s

    @property
    def descriptor(self):
        return f"ramified:{self.__base.descriptor}^{self.__s:g}"

    @property
    def fingerprint(self):
        return ('ramified', self.__base.fingerprint, self.__s)

    @property
    def valid_limit(self):
        return self.__base.valid_limit ** (1.0 / self.__s)

    @property
    def normalized(self):
        return self.__base.normalized

    def _omega(self, t):
        return self.__base(np.power(t, self.__s))

    def phi(self, y):
        return self.__base.phi(self.__s * np.asarray(y, dtype=float))

    def phi_star(self, x):
        inner = self.__base.phi_star(np.asarray(x, dtype=float) / self.__s)
        return None if inner is None else _out(inner, x)

    def matrix_generator(self, l):
        # W^l of omega^s is (W^{l/s})^{1/s} of omega
        gen = self.__base.matrix_generator(l / self.__s)
        return None if gen is None else gen.power(self.__s)


class CustomWeight(WeightFunction):
    ''' A weight given by a vectorized callable '''

    family = 'custom'

    def __init__(self, func, name='custom', valid_limit=math.inf):
        super().__init__(name)
        self.__func = func
        self.__limit = valid_limit

    @property
    def descriptor(self):
        return f"custom:{self.name}"

    @property
    def fingerprint(self):
        return ('custom', self.name, id(self.__func))

    @property
    def valid_limit(self):
        return self.__limit

    def _omega(self, t):
        return np.asarray(self.__func(t), dtype=float) * np.ones_like(t)


class Kappa(WeightFunction):
    ''' kappa_omega(t) = int_1^inf omega(t u) / u^2 du '''

    family = 'kappa'

    def __init__(self, base, config=None, name=None):
        super().__init__(name)
        self.__base = base
        self.__config = config or QuadratureConfig()

    @property
    def base(self):
        return self.__base

    @property
    def descriptor(self):
        return f"kappa:{self.__base.descriptor}"

    @property
    def fingerprint(self):
        return ('kappa', self.__base.fingerprint)

    @property
    def normalized(self):
        return False

    def _omega(self, t):
        return kappa_values(self.__base, t, self.__config)


def evaluate(w, t):
    ''' omega(t) for a scalar or an array of nonnegative abscissae '''
    return w(t)


# ------------------------------------------------------------------------------
# Descriptors
# ------------------------------------------------------------------------------

SEQUENCE_PREFIXES = ('gevrey-seq:', 'factorial', 'custom:')


def parse_weight(descriptor, p_max=P_MAX):
    ''' Build a weight from ``gevrey:s=``, ``logpow:s=``, ``fromseq:<sequence descriptor or path>``,
    ``table:<csv path>`` or ``ramified:<descriptor>^<s>``
    '''
    descriptor = descriptor.strip()
    kind, _, rest = descriptor.partition(':')
    if kind == 'gevrey':
        return GevreyPower(_required(parse_params(rest), 's', descriptor))
    elif kind == 'logpow':
        return LogPower(_required(parse_params(rest), 's', descriptor))
    elif kind == 'fromseq':
        if rest.startswith(SEQUENCE_PREFIXES):
            return FromSequence(parse_sequence(rest, p_max))
        return FromSequence(WeightSequence.from_csv(rest))
    elif kind == 'table':
        return Tabulated.from_csv(rest)
    elif kind == 'ramified':
        base, sep, s = rest.rpartition('^')
        if not sep:
            raise ConfigError(f"Missing ^<s> in {descriptor!r}")
        try:
            s = float(s)
        except ValueError:
            raise ConfigError(f"Ramification exponent is not a number: {s!r}")
        return Ramified(parse_weight(base, p_max), s)
    raise ConfigError(f"Unknown weight descriptor {descriptor!r}")


def _required(args, key, descriptor):
    if key not in args:
        raise ConfigError(f"Missing {key} in {descriptor!r}")
    return args[key]


# ------------------------------------------------------------------------------
# Half-line integrals
# ------------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureResult:
    value: float
    error: float


DECADE = math.log(10.0)


def _segment(w, x0, x1):
    ''' int_{x0}^{x1} phi(x) e^{-x} dx '''
    def integrand(x):
        return float(w.phi(np.array(x))) * math.exp(-x)
    val, err = integrate.quad(integrand, x0, x1, limit=200)
    return val, err


def log_tail_integral(w, x0, config=None):
    ''' int_{x0}^inf phi(x) e^{-x} dx = int_{e^{x0}}^inf omega(v) / v^2 dv

    Decades in x are integrated with scipy until a contribution falls below
    ``tol`` times the total; the rest is bounded by the geometric series of the
    last decade ratio.

    :raises DivergenceError: when decade contributions stop decreasing
    :rtype: QuadratureResult
    '''
    config = config or QuadratureConfig()
    total, error = 0.0, 0.0
    prev = None
    x = float(x0)
    for k in range(config.max_segments):
        val, err = _segment(w, x, x + DECADE)
        if not math.isfinite(val):
            raise DivergenceError(f"Integrand of {w.name} overflows near t = e^{x:.1f}")
        total += val
        error += err
        if prev:
            ratio = val / prev
            if k >= 4 and ratio >= DIVERGENCE_RATIO:
                raise DivergenceError(f"Decade contributions of {w.name} do not decay (ratio {ratio:.4f} "
                                      f"at t = e^{x:.1f})")
            if ratio < 1 and val <= config.tol * total:
                tail = val * ratio / (1 - ratio)
                getLogger().debug(f"tail integral of {w.name} from e^{x0:.2f}: {k + 1} decades, ratio {ratio:.3g}")
                return QuadratureResult(total + tail, error + tail)
        prev = val
        x += DECADE
    raise DivergenceError(f"Integral of {w.name} did not stabilize within {config.max_segments} decades")


def kappa(w, t, config=None):
    ''' kappa_omega(t) = t int_t^inf omega(v)/v^2 dv with kappa(0) = 0

    :rtype: QuadratureResult
    '''
    if t < 0:
        raise ConfigError("kappa is defined for t >= 0")
    if t == 0:
        return QuadratureResult(0.0, 0.0)
    res = log_tail_integral(w, math.log(t), config)
    return QuadratureResult(t * res.value, t * res.error)


def kappa_values(w, t, config=None):
    ''' kappa_omega on an array of positive abscissae, accumulating segment integrals from the right '''
    t = np.asarray(t, dtype=float)
    flat = t.ravel()
    order = np.unique(flat)
    xs = np.log(order)
    integrals = np.empty_like(xs)
    integrals[-1] = log_tail_integral(w, xs[-1], config).value
    for i in range(xs.size - 2, -1, -1):
        acc = integrals[i + 1]
        # split wide gaps so every quad call spans at most one decade
        edges = np.append(np.arange(xs[i], xs[i + 1], DECADE), xs[i + 1])
        for a, b in zip(edges[:-1], edges[1:]):
            acc += _segment(w, a, b)[0]
        integrals[i] = acc
    out = order * integrals
    return out[np.searchsorted(order, flat)].reshape(t.shape)


# ------------------------------------------------------------------------------
# Conditions
# ------------------------------------------------------------------------------

ANCHORS = {
    'weight': 'weight/axioms',
    'om0': 'weight/normalization',
    'om1': 'weight/doubling',
    'om2': 'weight/linear-bound',
    'om3': 'weight/log-domination',
    'om4': 'weight/convexity-in-log',
    'om5': 'weight/sublinearity',
    'om6': 'weight/doubling-absorption',
    'om7': 'weight/squaring',
    'om_nq': 'weight/non-quasianalyticity',
    'om_snq': 'weight/strong-non-quasianalyticity',
    'dn': 'weight/dn',
}


def _known(w, t, factor=1.0):
    ''' abscissae for which factor * t stays where w is known '''
    t = np.asarray(t, dtype=float)
    return t[t * factor <= w.valid_limit]


def _range(t):
    if len(t) == 0:
        return 'empty window'
    return f"t in [{t[0]:g}, {t[-1]:g}], {len(t)} points"


def _report_kwargs(w, cond):
    return {'anchor': ANCHORS[cond], 'subject': w.name}


def check_weight_axioms(w, grid=None, margin=STABILITY_MARGIN):
    ''' omega(0) = 0, nondecreasing on the grid and growing along the tail '''
    grid = grid or TailGrid()
    kw = _report_kwargs(w, 'weight')
    t = _known(w, grid.full())
    if t.size < 8:
        return inconclusive('weight', _range(t), **kw)
    rng = _range(t)
    if w(0.0) != 0.0:
        return fails('weight', 0.0, rng, witnesses={'omega_at_zero': w(0.0)}, **kw)
    v = w(t)
    drop = np.diff(v) < -slack(v[1:], v[:-1])
    if np.any(drop):
        return fails('weight', float(t[int(np.argmax(drop)) + 1]), rng, **kw)
    tail = v[v.size // 2:]
    if not tail[-1] > max(tail[0], 0.0) * (1 + margin):
        return fails('weight', float(t[-1]), rng, witnesses={'growth_on_tail': float(tail[-1] - tail[0])}, **kw)
    return holds('weight', {'omega_at_end': float(v[-1]), 'growth_on_tail': float(tail[-1] / max(tail[0], 1e-300))},
                 rng, **kw)


def _check_om0(w, grid, margin, quad):
    axioms = check_weight_axioms(w, grid, margin)
    s = np.linspace(0.0, 1.0, 65)
    v = w(s)
    kw = _report_kwargs(w, 'om0')
    if np.any(v > 0):
        return fails('om0', float(s[int(np.argmax(v > 0))]), 't in [0, 1]', **kw)
    unit = holds('normalized', {'max_on_unit_interval': float(np.max(v))}, 't in [0, 1]')
    return combine('om0', [axioms, unit], _range(grid.full()), **kw)


def _check_om1(w, grid, margin, quad):
    kw = _report_kwargs(w, 'om1')
    t = _known(w, grid.full(), 2.0)
    if t.size < 8:
        return inconclusive('om1', _range(t), **kw)
    ratio = w(2 * t) / (w(t) + 1.0)
    ws = settled_sup(ratio, margin)
    if ws.stable:
        return holds('om1', {'L': ws.value}, _range(t), **kw)
    return fails('om1', float(t[ws.index]), _range(t), witnesses={'L_first_half': ws.first_half}, **kw)


def _bounded_ratio(w, cond, grid, margin):
    kw = _report_kwargs(w, cond)
    t = _known(w, grid.values())
    if t.size < 8:
        return inconclusive(cond, _range(t), **kw)
    ws = window_sup(w(t) / t, margin)
    if ws.stable:
        return holds(cond, {'C': ws.value}, _range(t), **kw)
    return fails(cond, float(t[ws.index]), _range(t), witnesses={'C_first_half': ws.first_half}, **kw)


def _check_om2(w, grid, margin, quad):
    return _bounded_ratio(w, 'om2', grid, margin)


def _little_o(w, cond, grid, margin, numerator, denominator):
    ''' numerator(t) = o(denominator(t)) judged by the trend of their ratio on the tail '''
    kw = _report_kwargs(w, cond)
    t = _known(w, grid.tail())
    if t.size < 8:
        return inconclusive(cond, _range(t), **kw)
    den = denominator(t)
    if np.any(den <= 0):
        return fails(cond, float(t[int(np.argmax(den <= 0))]), _range(t), **kw)
    ratio = numerator(t) / den
    trend = decay_trend(ratio, margin)
    witnesses = {'ratio_at_start': float(ratio[0]), 'ratio_at_end': float(ratio[-1])}
    if trend == 'decays':
        return holds(cond, witnesses, _range(t), **kw)
    if trend == 'persists':
        return fails(cond, float(t[-1]), _range(t), witnesses=witnesses, **kw)
    return inconclusive(cond, _range(t), witnesses=witnesses, **kw)


def _check_om3(w, grid, margin, quad):
    return _little_o(w, 'om3', grid, margin, np.log, w)


def _check_om5(w, grid, margin, quad):
    return _little_o(w, 'om5', grid, margin, w, lambda t: t)


def _check_om4(w, grid, margin, quad):
    kw = _report_kwargs(w, 'om4')
    full = _known(w, grid.full())
    if full.size < 8:
        return inconclusive('om4', _range(full), **kw)
    y = np.linspace(math.log(full[0]), math.log(full[-1]), 2 * grid.points)
    v = w.phi(y)
    d2 = v[:-2] - 2 * v[1:-1] + v[2:]
    bad = d2 < -CONVEXITY_TOL * np.maximum(1.0, np.abs(v[1:-1]))
    if np.any(bad):
        j = int(np.argmax(bad))
        return fails('om4', float(math.exp(y[j + 1])), _range(full), witnesses={'second_difference': float(d2[j])},
                     **kw)
    return holds('om4', {'min_second_difference': float(np.min(d2))}, _range(full), **kw)


def _check_om6(w, grid, margin, quad):
    ''' smallest H with omega(H t) >= 2 omega(t) along the tail, then the additive constant on the full grid '''
    kw = _report_kwargs(w, 'om6')
    for H in H_GRID:
        t = _known(w, grid.tail(), H)
        if t.size < 8:
            break
        base = w(t)
        if np.any(base <= 0):
            continue
        q = w(H * t) / base
        if np.min(q) < 2.0 - 1e-9:
            continue
        mid = q[q.size // 2]
        if q[-1] < (1 - margin) * mid:
            # the doubling factor erodes along the tail: no fixed H survives
            return fails('om6', float(t[-1]), _range(t), witnesses={'H_tail': H, 'ratio_at_end': float(q[-1])},
                         **kw)
        full = _known(w, grid.full(), H)
        additive = float(np.max(2 * w(full) - w(H * full)))
        return holds('om6', {'H': max(H, additive)}, _range(full), notes={'H_multiplicative': H}, **kw)
    t = _known(w, grid.tail())
    return fails('om6', float(t[-1]) if t.size else None, _range(t), witnesses={'H_max_tried': H_GRID[-1]}, **kw)


def _check_om7(w, grid, margin, quad):
    kw = _report_kwargs(w, 'om7')
    t = np.geomspace(10.0, math.sqrt(grid.high), grid.points // 2)
    t = t[t * t <= w.valid_limit]
    if t.size < 8:
        return inconclusive('om7', _range(t), **kw)
    lhs = w(t * t)
    best = None
    worst = None
    for H in (2.0 ** k for k in range(0, 11)):
        tt = _known(w, t, H)
        if tt.size < t.size:
            continue
        ratio = lhs / (w(H * t) + 1.0)
        ws = window_sup(ratio, margin)
        if ws.stable and (best is None or ws.value < best[1]):
            best = (H, ws.value)
        if worst is None:
            worst = (H, ws)
    if best is not None:
        H, C = best
        return holds('om7', {'H': H, 'C': max(C, 1.0)}, _range(t), **kw)
    if worst is None:
        return inconclusive('om7', _range(t), **kw)
    H, ws = worst
    return fails('om7', float(t[ws.index]), _range(t), witnesses={'C_first_half': ws.first_half, 'H': H}, **kw)


def _check_om_nq(w, grid, margin, quad):
    kw = _report_kwargs(w, 'om_nq')
    rng = 'int over t in [1, inf)'
    try:
        res = log_tail_integral(w, 0.0, quad)
    except DivergenceError as ex:
        getLogger().debug(f"{w.name}: {ex}")
        return fails('om_nq', 'divergent', rng, notes={'reason': str(ex)}, **kw)
    return holds('om_nq', {'integral': res.value, 'error': res.error}, rng, **kw)


def snq_profile(w, K, t):
    ''' max over t of omega(K t)/omega(t), ignoring abscissae where omega vanishes '''
    t = _known(w, t, K)
    base = w(t)
    keep = base > 0
    if not np.any(keep):
        return math.inf, None
    ratio = w(K * t[keep]) / base[keep]
    j = int(np.argmax(ratio))
    return float(ratio[j]), float(t[keep][j])


def _check_om_snq(w, grid, margin, quad):
    kw = _report_kwargs(w, 'om_snq')
    tail = grid.tail()
    rng = _range(tail)
    last = None
    for K in k_grid():
        limsup, where = snq_profile(w, K, tail)
        last = where
        if limsup > K * (1 - GAMMA_MARGIN):
            continue
        limsup2, _ = snq_profile(w, K * K, tail)
        if limsup2 <= K * K * (1 - GAMMA_MARGIN):
            return holds('om_snq', {'K': float(K), 'limsup_ratio': limsup, 'limsup_ratio_K2': limsup2}, rng, **kw)
    return fails('om_snq', last, rng, witnesses={'K_max': float(k_grid()[-1])}, **kw)


DELTA_GRID = np.geomspace(1e-4, 1.0, 81)[:-1]


def _check_dn(w, grid, margin, quad):
    ''' for each C find the smallest delta < 1 with omega(t)^2 <= omega(C t) omega(delta t) along the tail '''
    kw = _report_kwargs(w, 'dn')
    witnesses = {}
    rng = None
    for C in DN_C_GRID:
        t = _known(w, grid.tail(), C)
        rng = _range(t)
        if t.size < 8:
            return inconclusive('dn', rng, witnesses=witnesses, **kw)
        lhs = w(t) ** 2
        upper = w(C * t)
        delta = None
        for d in DELTA_GRID:
            rhs = upper * w(d * t)
            if np.all(lhs <= rhs + slack(lhs, rhs)):
                delta = float(d)
                break
        if delta is None:
            return fails('dn', C, rng, witnesses=witnesses, **kw)
        witnesses[f"delta[C={C:g}]"] = delta
    return holds('dn', witnesses, rng, **kw)


CONDITIONS = {
    'om0': _check_om0,
    'om1': _check_om1,
    'om2': _check_om2,
    'om3': _check_om3,
    'om4': _check_om4,
    'om5': _check_om5,
    'om6': _check_om6,
    'om7': _check_om7,
    'om_nq': _check_om_nq,
    'om_snq': _check_om_snq,
    'dn': _check_dn,
}


def check_weight_condition(w, cond, grid=None, margin=STABILITY_MARGIN, quad=None):
    ''' Decide a weight condition on the tail grid

    :param cond: one of ``om0`` .. ``om7``, ``om_nq``, ``om_snq``, ``dn``
    :rtype: pyultradiff.reports.ConditionReport
    '''
    if cond not in CONDITIONS:
        raise ConfigError(f"Unknown weight condition {cond!r}")
    report = CONDITIONS[cond](w, grid or TailGrid(), margin, quad or QuadratureConfig())
    getLogger().debug(f"{w.name} {cond}: {report.verdict} {report.witnesses}")
    return report


# ------------------------------------------------------------------------------
# Comparisons
# ------------------------------------------------------------------------------

def compare_weights(a, b, relation, grid=None, margin=STABILITY_MARGIN):
    ''' ``preceq``: b(t) <= C (a(t) + 1) on the tail grid, i.e. b = O(a); ``sim``: both directions '''
    grid = grid or TailGrid()
    subject = f"({a.name}, {b.name})"
    t = _known(b, _known(a, grid.values()))
    rng = _range(t)
    if relation == 'preceq':
        if t.size < 8:
            return inconclusive('preceq', rng, anchor='weight/order', subject=subject)
        ws = window_sup(b(t) / (a(t) + 1.0), margin)
        if ws.stable:
            return holds('preceq', {'C': ws.value}, rng, anchor='weight/order', subject=subject)
        return fails('preceq', float(t[ws.index]), rng, witnesses={'C_first_half': ws.first_half},
                     anchor='weight/order', subject=subject)
    elif relation == 'sim':
        there = compare_weights(a, b, 'preceq', grid, margin)
        back = compare_weights(b, a, 'preceq', grid, margin)
        witnesses = {'C': there.witness('C', math.nan), 'C_reverse': back.witness('C', math.nan)}
        if there.holds and back.holds:
            return holds('sim', witnesses, rng, anchor='weight/equivalence', subject=subject)
        failed = there if not there.holds else back
        if failed.fails:
            return fails('sim', failed.counterexample, rng, anchor='weight/equivalence', subject=subject,
                         notes={'direction': 'forward' if failed is there else 'reverse'})
        return inconclusive('sim', rng, anchor='weight/equivalence', subject=subject)
    raise ConfigError(f"Unknown relation {relation!r}")
