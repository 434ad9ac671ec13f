# -*- coding: utf-8 -*-

'''
Weight sequences in log domain.

A weight sequence M = (M_p) is stored as ``log M_p`` for p = 0..P. Sequences
with a closed form carry a :class:`SequenceGenerator` so that quantities like
the associated function can be evaluated far beyond the tabulated prefix.
'''

import math
import logging
import warnings

import numpy as np
from scipy.special import gammaln

from .defaults import P_MAX, STABILITY_MARGIN, DIVERGENCE_RATIO, slack
from .errors import ConfigError, InvalidSequenceError, DegenerateSequenceError, TruncationWarning
from .reports import holds, fails, inconclusive, window_sup


def getLogger():
    return logging.getLogger(__name__)


# ------------------------------------------------------------------------------
# Closed forms
# ------------------------------------------------------------------------------

class SequenceGenerator(object):
    ''' Closed-form description of a sequence: ``log M_p`` and ``log mu_p`` for real p >= 0

    :param family: family tag, e.g. ``'gevrey-seq'``
    :param params: tuple of (name, value) pairs
    :param log_value: vectorized function p -> log M_p
    :param log_mu: vectorized function p -> log M_p - log M_{p-1} (p >= 1)
    '''

    def __init__(self, family, params, log_value, log_mu, descriptor=None):
        self.family = family
        self.params = tuple(params)
        self.__log_value = log_value
        self.__log_mu = log_mu
        self.__descriptor = descriptor
        self.__log_convex = None

    @property
    def descriptor(self):
        if self.__descriptor:
            return self.__descriptor
        args = ','.join(f"{k}={v:g}" for k, v in self.params)
        return f"{self.family}:{args}" if args else self.family

    def log_value(self, p):
        p = np.asarray(p, dtype=float)
        return self.__log_value(p)

    def log_mu(self, p):
        p = np.asarray(p, dtype=float)
        out = self.__log_mu(np.maximum(p, 1.0))
        return np.where(p < 1, 0.0, out)

    @property
    def log_convex(self):
        ''' quotients nondecreasing on a sparse sample reaching p ~ 1e15 '''
        if self.__log_convex is None:
            p = np.unique(np.concatenate([np.arange(1, 1025), np.floor(np.geomspace(1024, 1e15, 200))]))
            mu = self.log_mu(p)
            self.__log_convex = bool(np.all(np.diff(mu) >= -1e-9 * np.maximum(1.0, np.abs(mu[1:]))))
        return self.__log_convex

    def power(self, s):
        ''' generator of (M_p^{1/s}) '''
        return SequenceGenerator(self.family, self.params + (('power', s),),
                                 lambda p: self.log_value(p) / s,
                                 lambda p: self.log_mu(p) / s,
                                 descriptor=f"{self.descriptor}|power={s:g}")

    def divided(self):
        ''' generator of (M_p / p!) '''
        return SequenceGenerator(self.family, self.params + (('divided', 1),),
                                 lambda p: self.log_value(p) - gammaln(p + 1),
                                 lambda p: self.log_mu(p) - np.log(p),
                                 descriptor=f"{self.descriptor}|divided")

    def factorial_shifted(self):
        ''' generator of (p! M_p) '''
        return SequenceGenerator(self.family, self.params + (('shifted', 1),),
                                 lambda p: self.log_value(p) + gammaln(p + 1),
                                 lambda p: self.log_mu(p) + np.log(p),
                                 descriptor=f"{self.descriptor}|shifted")

    def __repr__(self):
        return f"SequenceGenerator({self.descriptor!r})"


def gevrey_generator(s=1.0):
    ''' M_p = p!^s '''
    if s <= 0:
        raise ConfigError(f"Gevrey exponent must be positive (s={s})")
    family = 'factorial' if s == 1 else 'gevrey-seq'
    params = () if s == 1 else (('s', s),)
    return SequenceGenerator(family, params,
                             lambda p: s * gammaln(p + 1),
                             lambda p: s * np.log(p))


def gevrey_matrix_generator(s, l):
    ''' W^l for the weight t^{1/s}: log W^l_p = phi*(l p)/l with phi*(x) = s x (log(s x) - 1), or -1 if s x < 1 '''

    def phi_star(x):
        sx = s * x
        with np.errstate(divide='ignore', invalid='ignore'):
            val = sx * (np.log(np.where(sx > 0, sx, 1.0)) - 1.0)
        return np.where(sx >= 1.0, val, -1.0)

    def log_value(p):
        return phi_star(l * p) / l

    def log_mu(p):
        prev = p - 1.0
        direct = log_value(p) - log_value(prev)
        with np.errstate(divide='ignore', invalid='ignore'):
            safe_prev = np.where(prev > 0, prev, 1.0)
            stable = s * np.log(s * l * p) - s + s * prev * np.log1p(1.0 / safe_prev)
        return np.where(s * l * prev >= 1.0, stable, direct)

    return SequenceGenerator('gevrey-matrix', (('s', s), ('l', l)), log_value, log_mu)


def logpow_matrix_generator(s, l):
    ''' W^l for sigma_s(t) = max(0, log t)^s: phi*(x) = (s-1)(x/s)^{s/(s-1)} '''
    r = s / (s - 1.0)
    c = (s - 1.0) * (l / s) ** r / l

    def log_value(p):
        return c * np.power(p, r)

    def log_mu(p):
        # c (p^r - (p-1)^r) without cancellation
        return -c * np.power(p, r) * np.expm1(r * np.log1p(-1.0 / np.maximum(p, 1.0)))

    return SequenceGenerator('logpow-matrix', (('s', s), ('l', l)), log_value, log_mu)


# ------------------------------------------------------------------------------
# Sequences
# ------------------------------------------------------------------------------

class WeightSequence(object):
    ''' Log-domain weight sequence p -> log M_p, p = 0..p_max '''

    GENERATOR_RTOL = 1e-12

    def __init__(self, log_values, generator=None, name=None):
        lv = np.array(log_values, dtype=float)
        if lv.ndim != 1 or lv.size < 2:
            raise InvalidSequenceError("A weight sequence needs at least M_0 and M_1")
        if not np.all(np.isfinite(lv)):
            bad = int(np.argmin(np.isfinite(lv)))
            raise InvalidSequenceError(f"Non-finite log M_p at p={bad}")
        if generator is not None:
            ref = generator.log_value(np.arange(lv.size))
            if not np.all(np.abs(ref - lv) <= self.GENERATOR_RTOL * np.maximum(1.0, np.abs(ref))):
                raise InvalidSequenceError(f"Tabulated values disagree with generator {generator.descriptor}")
        lv.setflags(write=False)
        self.__log_values = lv
        self.__generator = generator
        self.__name = name
        self.__log_convex = None

    @staticmethod
    def from_generator(generator, p_max=P_MAX, name=None):
        lv = generator.log_value(np.arange(p_max + 1))
        return WeightSequence(lv, generator=generator, name=name or generator.descriptor)

    @staticmethod
    def gevrey(s=1.0, p_max=P_MAX):
        ''' M_p = p!^s '''
        return WeightSequence.from_generator(gevrey_generator(s), p_max)

    @staticmethod
    def from_values(values, name=None):
        values = np.asarray(values, dtype=float)
        if np.any(values <= 0):
            raise InvalidSequenceError("Weight sequences are positive")
        return WeightSequence(np.log(values), name=name)

    @staticmethod
    def from_csv(path, name=None):
        ''' Read a CSV file with header ``p,logM`` '''
        with open(path, encoding='utf-8') as infile:
            header = infile.readline().strip().replace(' ', '')
        if header != 'p,logM':
            raise ConfigError(f"{path}: expected header 'p,logM', found {header!r}")
        data = np.loadtxt(path, delimiter=',', skiprows=1, ndmin=2)
        p = data[:, 0]
        if not np.array_equal(p, np.arange(len(p))):
            raise ConfigError(f"{path}: indices must run 0..P without gaps")
        return WeightSequence(data[:, 1], name=name or f"custom:{path}")

    def rows(self):
        return [(p, float(v)) for p, v in enumerate(self.__log_values)]

    @property
    def log_values(self):
        return self.__log_values

    @property
    def values(self):
        with np.errstate(over='ignore'):
            return np.exp(self.__log_values)

    @property
    def generator(self):
        return self.__generator

    @property
    def name(self):
        if self.__name:
            return self.__name
        return self.__generator.descriptor if self.__generator else 'tabulated'

    @property
    def fingerprint(self):
        if self.__generator is not None:
            return (self.__generator.descriptor, self.p_max)
        return (self.name, self.p_max, hash(self.__log_values.tobytes()))

    @property
    def p_max(self):
        return self.__log_values.size - 1

    @property
    def normalized(self):
        return abs(self.__log_values[0]) <= 1e-15

    @property
    def log_mu(self):
        ''' log mu_p = log M_p - log M_{p-1}, with mu_0 = 1 '''
        mu = np.empty_like(self.__log_values)
        mu[0] = 0.0
        mu[1:] = np.diff(self.__log_values)
        return mu

    @property
    def is_log_convex(self):
        if self.__log_convex is None:
            lv = self.__log_values
            d2 = lv[:-2] - 2 * lv[1:-1] + lv[2:]
            self.__log_convex = bool(np.all(d2 >= -slack(lv[1:-1])))
        return self.__log_convex

    def extended(self, p_max):
        ''' Tabulate to a longer prefix using the generator '''
        if self.__generator is None:
            raise InvalidSequenceError(f"{self.name} has no generator and cannot be extended")
        return WeightSequence.from_generator(self.__generator, p_max, name=self.__name)

    def truncated(self, p_max):
        return WeightSequence(self.__log_values[:p_max + 1], generator=self.__generator, name=self.__name)

    def __len__(self):
        return self.__log_values.size

    def __repr__(self):
        return f"WeightSequence({self.name!r}, p_max={self.p_max})"


def parse_sequence(descriptor, p_max=P_MAX):
    ''' Build a sequence from ``gevrey-seq:s=<real>``, ``factorial`` or ``custom:<path>`` '''
    descriptor = descriptor.strip()
    if descriptor == 'factorial':
        return WeightSequence.gevrey(1.0, p_max)
    if descriptor.startswith('gevrey-seq:'):
        args = parse_params(descriptor[len('gevrey-seq:'):])
        if 's' not in args:
            raise ConfigError(f"Missing s in {descriptor!r}")
        return WeightSequence.gevrey(args['s'], p_max)
    if descriptor.startswith('custom:'):
        return WeightSequence.from_csv(descriptor[len('custom:'):])
    raise ConfigError(f"Unknown sequence descriptor {descriptor!r}")


def parse_params(text):
    args = {}
    for item in filter(None, text.split(',')):
        if '=' not in item:
            raise ConfigError(f"Malformed parameter {item!r}")
        key, value = item.split('=', 1)
        try:
            args[key.strip()] = float(value)
        except ValueError:
            raise ConfigError(f"Parameter {key} is not a number: {value!r}")
    return args


# ------------------------------------------------------------------------------
# Derived sequences
# ------------------------------------------------------------------------------

def derive(seq, kind, s=None):
    ''' Derived sequences: ``quotients_mu`` (array of log mu_p), ``divided_m`` (M_p/p!),
    ``factorial_shifted`` (p! M_p) and ``power`` ((M_p)^{1/s})
    '''
    p = np.arange(seq.p_max + 1)
    gen = seq.generator
    if kind == 'quotients_mu':
        return seq.log_mu
    elif kind == 'divided_m':
        return WeightSequence(seq.log_values - gammaln(p + 1), generator=gen.divided() if gen else None,
                              name=f"{seq.name}/p!")
    elif kind == 'factorial_shifted':
        return WeightSequence(seq.log_values + gammaln(p + 1), generator=gen.factorial_shifted() if gen else None,
                              name=f"p!*{seq.name}")
    elif kind == 'power':
        if s is None or s <= 0:
            raise ConfigError(f"power needs a positive exponent (s={s})")
        return WeightSequence(seq.log_values / s, generator=gen.power(s) if gen else None,
                              name=f"{seq.name}^(1/{s:g})")
    raise ConfigError(f"Unknown derived sequence {kind!r}")


def log_convex_minorant(seq):
    ''' Largest log-convex sequence below M: lower convex hull of (p, log M_p) '''
    lv = seq.log_values
    P = seq.p_max
    mid = max(1, P // 2)
    if not lv[P] / P > lv[mid] / mid:
        raise DegenerateSequenceError(f"(M_p)^(1/p) does not grow on p in [{mid}, {P}] for {seq.name}")
    if seq.is_log_convex:
        return seq
    hull = []
    for x, y in enumerate(lv):
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            # keep collinear points on the boundary
            if (x1 - x0) * (y - y0) - (y1 - y0) * (x - x0) < 0:
                hull.pop()
            else:
                break
        hull.append((x, y))
    hx, hy = zip(*hull)
    getLogger().debug(f"Convex minorant of {seq.name}: {len(hull)} hull vertices out of {P + 1}")
    return WeightSequence(np.interp(np.arange(P + 1), hx, hy), name=f"{seq.name}^lc")


# ------------------------------------------------------------------------------
# Associated functions
# ------------------------------------------------------------------------------

def _count_quotients(gen, log_t):
    ''' n(t) = #{p >= 1: log mu_p <= log t} for a log-convex generator '''
    n = np.zeros_like(log_t)
    active = gen.log_mu(np.ones_like(log_t)) <= log_t
    if not np.any(active):
        return n
    hi = np.where(active, 2.0, 1.0)
    for _ in range(60):
        grow = active & (gen.log_mu(hi) <= log_t)
        if not np.any(grow):
            break
        hi = np.where(grow, hi * 2, hi)
    lo = np.where(active, np.floor(hi / 2), 0.0)
    # invariant: mu_lo <= t < mu_hi
    for _ in range(64):
        gap = hi - lo > 1
        if not np.any(gap):
            break
        mid = np.floor((lo + hi) / 2)
        ok = gen.log_mu(mid) <= log_t
        lo = np.where(gap & ok, mid, lo)
        hi = np.where(gap & ~ok, mid, hi)
    return lo


def associated_function(seq, t, mode='auto'):
    ''' omega_M(t) = sup_p log(t^p / M_p), with omega_M(0) = 0

    :param mode: ``'auto'`` picks the quotient formula for log-convex input
                 (closed form when a generator is present), ``'quotient'`` or ``'sup'``
    :returns: float for scalar t, array otherwise
    '''
    t_arr = np.asarray(t, dtype=float)
    scalar = t_arr.ndim == 0
    t_arr = np.atleast_1d(t_arr)
    if np.any(t_arr < 0):
        raise ConfigError("omega_M is defined for t >= 0")
    out = np.zeros_like(t_arr)
    pos = t_arr > 0
    if np.any(pos):
        out[pos] = omega_from_log(seq, np.log(t_arr[pos]), mode)
    return float(out[0]) if scalar else out


def omega_from_log(seq, log_t, mode='auto'):
    ''' sup_p (p log t - log M_p) for an array of log t, without forming t '''
    log_t = np.asarray(log_t, dtype=float)
    gen = seq.generator
    if mode == 'auto':
        if gen is not None and gen.log_convex:
            mode = 'generator'
        elif seq.is_log_convex:
            mode = 'quotient'
        else:
            mode = 'sup'
    if mode == 'generator':
        if gen is None:
            raise ConfigError(f"{seq.name} has no generator")
        n = _count_quotients(gen, log_t)
        return n * log_t - gen.log_value(n)
    elif mode == 'quotient':
        lmu = seq.log_mu[1:]
        n = np.searchsorted(lmu, log_t, side='right')
        if np.any(n >= seq.p_max):
            _warn_truncation(seq, np.exp(log_t[n >= seq.p_max]))
        return n * log_t - seq.log_values[n]
    elif mode == 'sup':
        return _sup_omega(seq, np.atleast_1d(log_t).ravel()).reshape(log_t.shape)
    raise ConfigError(f"Unknown evaluation mode {mode!r}")


def _sup_omega(seq, log_t, chunk=4096):
    lv = seq.log_values
    p = np.arange(lv.size, dtype=float)[:, None]
    res = np.empty_like(log_t)
    for start in range(0, log_t.size, chunk):
        lt = log_t[start:start + chunk]
        vals = p * lt[None, :] - lv[:, None]
        idx = np.argmax(vals, axis=0)
        res[start:start + chunk] = vals[idx, np.arange(lt.size)]
        if np.any(idx == seq.p_max):
            _warn_truncation(seq, np.exp(lt[idx == seq.p_max]))
    return res


def _warn_truncation(seq, where):
    warnings.warn(f"sup attained at the last tabulated index p={seq.p_max} of {seq.name} "
                  f"(first t={float(np.min(where)):g})", TruncationWarning, stacklevel=3)


def h_function(seq, t, mode='identity'):
    ''' h_M(t) = inf_k M_k t^k = exp(-omega_M(1/t)) '''
    t_arr = np.asarray(t, dtype=float)
    scalar = t_arr.ndim == 0
    t_arr = np.atleast_1d(t_arr)
    if np.any(t_arr <= 0):
        raise ConfigError("h_M is defined for t > 0")
    if mode == 'identity':
        out = np.exp(-associated_function(seq, 1.0 / t_arr))
    elif mode == 'inf':
        k = np.arange(seq.p_max + 1, dtype=float)[:, None]
        out = np.exp(np.min(seq.log_values[:, None] + k * np.log(t_arr)[None, :], axis=0))
    else:
        raise ConfigError(f"Unknown evaluation mode {mode!r}")
    return float(out[0]) if scalar else out


# ------------------------------------------------------------------------------
# Conditions
# ------------------------------------------------------------------------------

def _window(seq):
    return f"p in [0, {seq.p_max}]"


def check_sequence_condition(seq, cond, other=None, margin=STABILITY_MARGIN, nq_p_max=4096):
    ''' Decide one of the conditions lc, slc, mg, nq, beta1, gamma1, mixed_mg on the tabulated window

    :param other: the second sequence N for ``mixed_mg`` (M, N)
    :param nq_p_max: generator-backed sequences are extended to this length for summability tests
    :rtype: pyultradiff.reports.ConditionReport
    '''
    subject = seq.name
    if cond == 'lc':
        return _check_lc(seq, 'lc', subject)
    elif cond == 'slc':
        report = _check_lc(derive(seq, 'divided_m'), 'slc', subject)
        return report
    elif cond == 'mg':
        return _check_mixed_mg(seq, seq, 'mg', margin, subject)
    elif cond == 'mixed_mg':
        if other is None:
            raise ConfigError("mixed_mg needs a second sequence")
        return _check_mixed_mg(seq, other, 'mixed_mg', margin, f"({subject}, {other.name})")
    elif cond == 'nq':
        return _check_nq(_summable_window(seq, nq_p_max), margin, subject)
    elif cond == 'beta1':
        return _check_beta1(seq, margin, subject)
    elif cond == 'gamma1':
        return _check_gamma1(_summable_window(seq, nq_p_max), margin, subject)
    raise ConfigError(f"Unknown sequence condition {cond!r}")


def _summable_window(seq, p_max):
    if seq.generator is not None and seq.p_max < p_max:
        return seq.extended(p_max)
    return seq


def _check_lc(seq, tag, subject):
    lv = seq.log_values
    d2 = lv[:-2] - 2 * lv[1:-1] + lv[2:]
    bad = d2 < -slack(lv[1:-1])
    anchor = 'sequence/log-convexity'
    if np.any(bad):
        j = int(np.argmax(bad)) + 1
        return fails(tag, j, _window(seq), witnesses={'second_difference': float(d2[j - 1])},
                     anchor=anchor, subject=subject)
    return holds(tag, {'min_second_difference': float(np.min(d2))}, _window(seq), anchor=anchor, subject=subject)


def _mixed_mg_profile(a, b):
    ''' g[n-1] = max_{j+k=n} (log M_n - log N_j - log N_k)/n for n = 1..P '''
    P = min(a.p_max, b.p_max)
    lb = b.log_values[:P + 1]
    g = np.full(P, -np.inf)
    arg = np.zeros(P, dtype=int)
    for n in range(1, P + 1):
        jj = np.arange(n + 1)
        vals = (a.log_values[n] - lb[jj] - lb[n - jj]) / n
        arg[n - 1] = int(np.argmax(vals))
        g[n - 1] = vals[arg[n - 1]]
    return g, arg


def _check_mixed_mg(a, b, tag, margin, subject):
    g, arg = _mixed_mg_profile(a, b)
    ws = window_sup(g, margin, log=True)
    anchor = 'sequence/moderate-growth'
    rng = f"j + k <= {g.size}"
    if ws.stable:
        return holds(tag, {'C': math.exp(max(ws.value, 0.0))}, rng, anchor=anchor, subject=subject)
    n = ws.index + 1
    return fails(tag, (int(arg[ws.index]), int(n - arg[ws.index])), rng,
                 witnesses={'C_first_half': math.exp(max(ws.first_half, 0.0))}, anchor=anchor, subject=subject)


def _dyadic_blocks(terms):
    ''' sums of terms[p-1] over p in [2^k, 2^(k+1)) for complete blocks '''
    blocks = []
    k = 0
    while 2 ** (k + 1) - 1 <= terms.size:
        blocks.append(float(np.sum(terms[2 ** k - 1:2 ** (k + 1) - 1])))
        k += 1
    return np.array(blocks)


def _series_tail(seq, margin):
    ''' (partial sum, geometric tail bound or None, block ratio) for sum_p 1/mu_p '''
    terms = np.exp(-seq.log_mu[1:])
    blocks = _dyadic_blocks(terms)
    if blocks.size < 3:
        return float(np.sum(terms)), None, float('nan')
    ratio = blocks[-1] / blocks[-2] if blocks[-2] > 0 else 0.0
    tail = None
    if ratio < 1 - margin:
        # blocks beyond the last complete one decay at least geometrically
        covered = 2 ** blocks.size - 1
        rest = float(np.sum(terms[covered:]))
        tail = max(blocks[-1] * ratio / (1 - ratio) - rest, 0.0)
    return float(np.sum(terms)), tail, float(ratio)


def _check_nq(seq, margin, subject):
    partial, tail, ratio = _series_tail(seq, margin)
    anchor = 'sequence/non-quasianalyticity'
    rng = _window(seq)
    if tail is not None:
        return holds('nq', {'partial_sum': partial, 'tail_bound': tail, 'sum_estimate': partial + tail,
                            'block_ratio': ratio}, rng, anchor=anchor, subject=subject)
    if ratio >= DIVERGENCE_RATIO:
        return fails('nq', seq.p_max, rng, witnesses={'block_ratio': ratio}, anchor=anchor, subject=subject)
    return inconclusive('nq', rng, witnesses={'partial_sum': partial, 'block_ratio': ratio},
                        anchor=anchor, subject=subject)


def _check_beta1(seq, margin, subject):
    lmu = seq.log_mu
    anchor = 'sequence/beta1'
    rng = _window(seq)
    notes = {}
    persists = True
    last_p = None
    for Q in range(2, 9):
        top = seq.p_max // Q
        if top < 4:
            break
        p = np.arange(1, top + 1)
        ratio = lmu[Q * p] - lmu[p]
        tail = ratio[ratio.size // 2:]
        notes[f"Q={Q}"] = float(np.exp(np.min(tail)))
        if np.min(tail) >= math.log(Q) + math.log1p(margin):
            return holds('beta1', {'Q': float(Q), 'liminf_ratio': float(np.exp(np.min(tail)))}, rng,
                         anchor=anchor, subject=subject, notes=notes)
        flat = np.max(tail) <= math.log(Q) + math.log1p(margin) and tail[-1] <= tail[0] + math.log1p(margin)
        persists = persists and flat
        last_p = int(p[p.size // 2 + int(np.argmax(tail))])
    if notes and persists:
        return fails('beta1', last_p, rng, anchor=anchor, subject=subject, notes=notes)
    return inconclusive('beta1', rng, anchor=anchor, subject=subject, notes=notes)


def _check_gamma1(seq, margin, subject):
    anchor = 'sequence/gamma1'
    rng = _window(seq)
    partial, tail, ratio = _series_tail(seq, margin)
    if tail is None:
        if ratio >= DIVERGENCE_RATIO:
            return fails('gamma1', seq.p_max, rng, witnesses={'block_ratio': ratio}, anchor=anchor, subject=subject)
        return inconclusive('gamma1', rng, witnesses={'block_ratio': ratio}, anchor=anchor, subject=subject)
    lmu = seq.log_mu
    terms = np.exp(-lmu[1:])
    # tail sums sum_{k >= p} 1/mu_k, p = 1..P
    tails = np.cumsum(terms[::-1])[::-1] + tail
    p = np.arange(1, seq.p_max + 1)
    values = np.exp(lmu[1:]) / p * tails
    values = values[:seq.p_max // 2]
    ws = window_sup(values, margin)
    if ws.stable:
        return holds('gamma1', {'sup': ws.value}, rng, anchor=anchor, subject=subject)
    return fails('gamma1', ws.index + 1, rng, witnesses={'sup_first_half': ws.first_half},
                 anchor=anchor, subject=subject)


# ------------------------------------------------------------------------------
# Comparisons
# ------------------------------------------------------------------------------

def precsim_profile(a, b):
    ''' (log M_p - log N_p)/p for p = 1..P over the common window '''
    P = min(a.p_max, b.p_max)
    p = np.arange(1, P + 1)
    return (a.log_values[1:P + 1] - b.log_values[1:P + 1]) / p


def compare_sequences(a, b, relation, margin=STABILITY_MARGIN):
    ''' Compare two sequences with ``le`` (pointwise), ``precsim`` (M_p <= C^p N_p) or ``approx`` (both ways)

    The precsim witness is C = exp(sup_p (log M_p - log N_p)/p) over the window.
    '''
    P = min(a.p_max, b.p_max)
    subject = f"({a.name}, {b.name})"
    rng = f"p in [0, {P}]"
    if relation == 'le':
        d = a.log_values[:P + 1] - b.log_values[:P + 1]
        bad = d > slack(a.log_values[:P + 1], b.log_values[:P + 1])
        if np.any(bad):
            return fails('le', int(np.argmax(bad)), rng, anchor='sequence/order', subject=subject)
        return holds('le', {'max_log_gap': float(np.max(d))}, rng, anchor='sequence/order', subject=subject)
    elif relation == 'precsim':
        ws = window_sup(precsim_profile(a, b), margin, log=True)
        if ws.stable:
            return holds('precsim', {'C': math.exp(ws.value)}, rng, anchor='sequence/precsim', subject=subject)
        return fails('precsim', ws.index + 1, rng, witnesses={'C_first_half': math.exp(ws.first_half)},
                     anchor='sequence/precsim', subject=subject)
    elif relation == 'approx':
        there = compare_sequences(a, b, 'precsim', margin)
        back = compare_sequences(b, a, 'precsim', margin)
        witnesses = {'C': there.witness('C', float('nan')), 'C_reverse': back.witness('C', float('nan'))}
        if there.holds and back.holds:
            return holds('approx', witnesses, rng, anchor='sequence/approx', subject=subject)
        failed = there if not there.holds else back
        if failed.fails:
            return fails('approx', failed.counterexample, rng, anchor='sequence/approx', subject=subject,
                         notes={'direction': 'forward' if failed is there else 'reverse'})
        return inconclusive('approx', rng, anchor='sequence/approx', subject=subject)
    raise ConfigError(f"Unknown relation {relation!r}")
