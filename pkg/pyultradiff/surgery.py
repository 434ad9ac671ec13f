# -*- coding: utf-8 -*-

'''
Weight surgery: from a weight omega, a majorant h with omega = o(h) and a
target gamma below the growth index of omega, build sigma with

    omega = o(sigma),  sigma = o(h),  gamma(sigma) > gamma.

sigma(x) = n omega(x) - sum_{i<=n} omega(x_i) on [x_n, x_{n+1}).
'''

import math
import logging
import threading
from dataclasses import dataclass, field

import numpy as np

from .defaults import SURGERY_POINTS_PER_DECADE, SURGERY_X_MAX, SURGERY_MIN_BREAKPOINTS
from .defaults import STABILITY_MARGIN, TailGrid, slack
from .errors import BreakpointExhaustedError, ConfigError, PreconditionError
from .reports import holds, fails, inconclusive, combine, decay_trend
from .sequences import parse_params
from .weights import WeightFunction, parse_weight
from .gamma import GammaConfig, estimate_gamma, find_witness_K
from .render import write_csv


def getLogger():
    return logging.getLogger(__name__)


CONDITIONS = ('growth', 'doubling', 'majorant')


@dataclass(frozen=True)
class SurgeryConfig:
    points_per_decade: int = SURGERY_POINTS_PER_DECADE
    x_min: float = 1.0
    x_max: float = SURGERY_X_MAX
    min_breakpoints: int = SURGERY_MIN_BREAKPOINTS
    gamma: GammaConfig = field(default_factory=GammaConfig)
    margin: float = STABILITY_MARGIN

    def scan_grid(self):
        decades = math.log10(self.x_max / self.x_min)
        return np.geomspace(self.x_min, self.x_max, int(round(decades * self.points_per_decade)) + 1)


class Majorant(object):
    ''' A named vectorized function h(t) >= 0 '''

    def __init__(self, func, name):
        self.__func = func
        self.name = name

    def __call__(self, t):
        return np.asarray(self.__func(np.asarray(t, dtype=float)), dtype=float)

    def __repr__(self):
        return f"Majorant({self.name!r})"


def parse_majorant(descriptor):
    ''' ``power:a=<real>`` for t^a, or ``weight:<weight descriptor>`` '''
    kind, _, rest = descriptor.strip().partition(':')
    if kind == 'power':
        args = parse_params(rest)
        if 'a' not in args or not args['a'] > 0:
            raise ConfigError(f"Majorant {descriptor!r} needs a positive exponent a")
        a = args['a']
        return Majorant(lambda t: np.power(t, a), f"t^{a:g}")
    elif kind == 'weight':
        w = parse_weight(rest)
        return Majorant(w, w.name)
    raise ConfigError(f"Unknown majorant descriptor {descriptor!r}")


class SurgeryWeight(WeightFunction):
    ''' sigma built from breakpoints 0 = x_1 < x_2 < ... '''

    family = 'surgery'

    def __init__(self, base, majorant, gamma, K, breakpoints, config=None, name=None):
        super().__init__(name)
        x = np.array(breakpoints, dtype=float)
        if x.size < 1 or x[0] != 0 or np.any(np.diff(x) <= 0):
            raise ConfigError("Breakpoints must start at 0 and increase strictly")
        x.setflags(write=False)
        self.__base = base
        self.__h = majorant
        self.__gamma = float(gamma)
        self.__K = float(K)
        self.__x = x
        sums = np.cumsum(base(x))
        sums.setflags(write=False)
        self.__sums = sums
        self.__config = config or SurgeryConfig()
        self.__checked_to = self.__config.x_max
        self.__valid = True
        self.__diagnostic = None
        self.__lock = threading.Lock()

    @property
    def base(self):
        return self.__base

    @property
    def majorant(self):
        return self.__h

    @property
    def gamma_target(self):
        return self.__gamma

    @property
    def K(self):
        return self.__K

    @property
    def config(self):
        return self.__config

    @property
    def breakpoints(self):
        return self.__x

    @property
    def partial_sums(self):
        return self.__sums

    @property
    def valid(self):
        return self.__valid

    @property
    def diagnostic(self):
        return self.__diagnostic

    @property
    def descriptor(self):
        return f"surgery:{self.__base.descriptor}|h={self.__h.name}|gamma={self.__gamma:g}"

    @property
    def fingerprint(self):
        return ('surgery', self.__base.fingerprint, self.__h.name, self.__gamma, hash(self.__x.tobytes()))

    def segment(self, t):
        ''' n with t in [x_n, x_{n+1}) '''
        return np.searchsorted(self.__x, np.asarray(t, dtype=float), side='right')

    def _omega(self, t):
        n = self.segment(t)
        beyond = t > self.__checked_to
        if np.any(beyond):
            self.__recheck(t[beyond], n[beyond])
        return n * self.__base(t) - self.__sums[n - 1]

    def __recheck(self, t, n):
        ''' h >= n^2 omega beyond the scanned range '''
        with self.__lock:
            bad = self.__h(t) < n ** 2 * self.__base(t) - slack(self.__h(t))
            if np.any(bad) and self.__valid:
                where = float(t[int(np.argmax(bad))])
                self.__valid = False
                self.__diagnostic = f"h(x) < n^2 omega(x) at x={where:g} beyond the scanned range"
                getLogger().warning(f"{self.name}: {self.__diagnostic}")
            self.__checked_to = max(self.__checked_to, float(np.max(t)))

    def margins(self, grid=None):
        ''' per breakpoint x_n, n >= 2: the slack factors of the three breakpoint conditions (>= 1 means met) '''
        grid = self.__config.scan_grid() if grid is None else np.asarray(grid, dtype=float)
        x = self.__x
        wx = self.__base(x)
        growth_factor = self.__K ** self.__gamma
        ratio = self.__h(grid) / np.maximum(self.__base(grid), np.finfo(float).tiny)
        rows = []
        for n in range(1, x.size):
            prev = np.arange(n)
            scale = 2.0 ** (n - prev)
            mask = wx[prev] > 0
            doubling = float(np.min(wx[n] / (scale[mask] * wx[prev][mask]))) if np.any(mask) else math.inf
            tail = grid >= x[n]
            major = float(np.min(ratio[tail]) / (n + 1) ** 2) if np.any(tail) else math.inf
            growth = x[n] / (growth_factor * x[n - 1]) if x[n - 1] > 0 else math.inf
            rows.append({'n': n + 1, 'x': float(x[n]), 'growth': growth, 'doubling': doubling, 'majorant': major})
        return rows

    def to_rows(self):
        return [(i + 1, float(x), float(s)) for i, (x, s) in enumerate(zip(self.__x, self.__sums))]

    def write_csv(self, path, overwrite=False):
        write_csv(path, ('n', 'x', 'partial_sum'), self.to_rows(), overwrite=overwrite)


def _first_index(ok, start):
    idx = np.flatnonzero(ok[start:])
    return int(start + idx[0]) if idx.size else None


def build_breakpoints(base, h, gamma, K, config=None):
    ''' Greedy breakpoints: each x_{n+1} is the smallest scan abscissa meeting
    x >= K^gamma x_n, omega(x) >= 2^{n+1-i} omega(x_i) for i <= n, and
    h(y) >= (n+1)^2 omega(y) for all scanned y >= x.

    :raises BreakpointExhaustedError: fewer than ``min_breakpoints`` fit below x_max
    '''
    config = config or SurgeryConfig()
    grid = config.scan_grid()
    wg = base(grid)
    hg = h(grid)
    with np.errstate(divide='ignore', invalid='ignore'):
        ratio = np.where(wg > 0, hg / wg, np.inf)
    # min over y >= x of h(y)/omega(y)
    suffix = np.minimum.accumulate(ratio[::-1])[::-1]
    growth_factor = K ** gamma
    x = [0.0]
    wx = [0.0]
    pos = 0
    while True:
        n = len(x)
        need = max(2.0 ** (n + 1 - i) * wx[i - 1] for i in range(1, n + 1))
        idx = {
            'growth': _first_index(grid >= growth_factor * x[-1], pos),
            'doubling': _first_index((wg >= need) & (wg > 0), pos),
            'majorant': _first_index(suffix >= (n + 1) ** 2, pos),
        }
        missing = [c for c in CONDITIONS if idx[c] is None]
        if missing:
            if n < config.min_breakpoints:
                raise BreakpointExhaustedError(f"Breakpoint x_{n + 1} cannot meet the {missing[0]} condition "
                                               f"below x_max={config.x_max:g}", missing[0])
            break
        nxt = max(idx.values())
        x.append(float(grid[nxt]))
        wx.append(float(wg[nxt]))
        pos = nxt + 1
        if pos >= grid.size:
            break
    getLogger().debug(f"{len(x)} breakpoints up to {x[-1]:g}")
    if len(x) < config.min_breakpoints:
        raise BreakpointExhaustedError(f"Only {len(x)} breakpoints fit below x_max={config.x_max:g}", 'growth')
    return np.array(x)


def build_surgery_weight(base, h, gamma, config=None):
    ''' sigma with omega = o(sigma), sigma = o(h) and gamma(sigma) > gamma

    :raises PreconditionError: gamma is not below the estimated index of omega,
        or omega = o(h) is not seen on the tail grid
    :rtype: SurgeryWeight
    '''
    config = config or SurgeryConfig()
    if isinstance(h, str):
        h = parse_majorant(h)
    elif not isinstance(h, Majorant):
        h = Majorant(h, getattr(h, 'name', getattr(h, '__name__', 'h')))
    est = estimate_gamma(base, config.gamma)
    if not gamma < est.lower:
        raise PreconditionError(f"Surgery needs gamma < gamma(omega); {base.name} has gamma in "
                                f"[{est.lower:g}, {est.upper_text}], asked for {gamma:g}")
    t = config.gamma.grid.tail()
    if decay_trend(base(t) / h(t), config.margin) != 'decays':
        raise PreconditionError(f"omega = o(h) is not seen on {config.gamma.grid.describe()} for h={h.name}")
    K = find_witness_K(base, gamma, config.gamma)
    if K is None:
        raise PreconditionError(f"No K in the grid admits gamma={gamma:g} for {base.name}")
    x = build_breakpoints(base, h, gamma, K, config)
    getLogger().info(f"Surgery on {base.name}: K={K:g}, {x.size} breakpoints, last at {x[-1]:g}")
    return SurgeryWeight(base, h, gamma, K, x, config)


# ------------------------------------------------------------------------------
# Checks
# ------------------------------------------------------------------------------

def _kw(sw):
    return {'anchor': 'surgery/weight-surgery', 'subject': sw.name}


def check_lower_comparison(sw, grid=None):
    ''' sigma(x) >= (n - 2) omega(x) on [x_n, x_{n+1}), n >= 2 '''
    grid = sw.breakpoints[1] * np.geomspace(1.0, 1e4, 400) if grid is None else np.asarray(grid, dtype=float)
    n = sw.segment(grid)
    sigma = sw(grid)
    lower = (n - 2) * sw.base(grid)
    mask = n >= 2
    gap = lower - sigma - slack(sigma, lower)
    rng = f"x in [{grid[0]:g}, {grid[-1]:g}], {grid.size} points"
    if np.any(gap[mask] > 0):
        return fails('lower_comparison', float(grid[mask][int(np.argmax(gap[mask]))]), rng, **_kw(sw))
    with np.errstate(divide='ignore', invalid='ignore'):
        worst = float(np.min(np.where(lower[mask] > 0, sigma[mask] / lower[mask], np.inf), initial=np.inf))
    return holds('lower_comparison', {'min_ratio': worst}, rng, **_kw(sw))


def check_breakpoints(sw):
    ''' every margin of the three breakpoint conditions is at least 1 '''
    rows = sw.margins()
    for row in rows:
        for cond in CONDITIONS:
            if row[cond] < 1 - 1e-12:
                return fails('breakpoints', (row['n'], cond), f"{len(rows) + 1} breakpoints", **_kw(sw))
    witnesses = {f"min_{c}": min((r[c] for r in rows), default=math.inf) for c in CONDITIONS}
    return holds('breakpoints', witnesses, f"{len(rows) + 1} breakpoints", **_kw(sw))


def check_initial_segment(sw, points=64):
    ''' sigma = omega on [0, x_2) '''
    end = sw.breakpoints[1] if sw.breakpoints.size > 1 else sw.breakpoints[0] + 1
    t = np.linspace(0.0, end, points, endpoint=False)
    gap = np.abs(sw(t) - sw.base(t))
    rng = f"x in [0, {end:g})"
    if np.all(gap <= slack(sw.base(t))):
        return holds('initial_segment', {'max_gap': float(np.max(gap))}, rng, **_kw(sw))
    return fails('initial_segment', float(t[int(np.argmax(gap))]), rng, **_kw(sw))


def check_gamma_target(sw, estimate=None):
    ''' gamma(sigma) > gamma: the admitted side of the bracket already lies above the target

    :param estimate: a :class:`GammaEstimate` of sigma, estimated here when omitted
    '''
    est = estimate or estimate_gamma(sw, sw.config.gamma)
    target = sw.gamma_target
    witnesses = {'gamma_lower': est.lower, 'gamma_upper': est.upper_value, 'target': target}
    notes = {'bracket_inconclusive': est.inconclusive}
    if est.lower > target:
        return holds('gamma_above_target', witnesses, str(est), notes=notes, **_kw(sw))
    if est.upper is not None and est.upper <= target:
        return fails('gamma_above_target', est.upper, str(est), witnesses=witnesses, notes=notes, **_kw(sw))
    return inconclusive('gamma_above_target', str(est), witnesses=witnesses, notes=notes, **_kw(sw))


def check_surgery(sw, grid=None, estimate=None):
    ''' breakpoints, sigma = omega near 0, omega = o(sigma), sigma = o(h), sigma >= (n-2) omega, gamma(sigma) > gamma '''
    grid = grid or TailGrid()
    t = grid.values()
    sigma = sw(t)
    rng = grid.describe()
    reports = [check_breakpoints(sw), check_initial_segment(sw), check_lower_comparison(sw)]
    for cond, ratio in (('omega_o_sigma', sw.base(t) / sigma), ('sigma_o_h', sigma / sw.majorant(t))):
        trend = decay_trend(ratio[len(t) // 2:])
        if trend == 'decays':
            reports.append(holds(cond, {'last_ratio': float(ratio[-1])}, rng, **_kw(sw)))
        else:
            reports.append(fails(cond, float(t[-1]), rng, witnesses={'last_ratio': float(ratio[-1])},
                                 notes={'trend': trend}, **_kw(sw)))
    reports.append(check_gamma_target(sw, estimate))
    return combine('surgery', reports, rng, **_kw(sw))
