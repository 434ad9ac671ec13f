# -*- coding: utf-8 -*-

'''
Outer functions on the right half-plane and sectorially flat functions.

For a kernel k(t) (the upper conjugate omega^star, possibly ramified) the outer
function is

    F_a(w) = exp( (1/pi) int_R -a k(|t|)/(1+t^2) (itw-1)/(it-w) dt )

Folding t and -t together gives the half-line form used here:

    log F_a(w) = -(2 a w / pi) int_0^inf k(t) / (t^2 + w^2) dt,     Re w > 0.

The flat function is G_a(xi) = F_a(xi^s) on a sector of the Riemann surface
of the logarithm, with points kept as (modulus, argument).
'''

import math
import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from .defaults import QuadratureConfig, H_GRID, DIVERGENCE_RATIO, CONTOUR_NODES_MIN, CONTOUR_NODES_MAX
from .defaults import CONTOUR_TOL, STABILITY_MARGIN, slack
from .errors import ConfigError, DomainError, IntegrabilityError, NodeBudgetError, PreconditionError
from .reports import holds, fails, inconclusive, window_sup
from .sequences import h_function
from .conjugates import upper_conjugate_reciprocal
from .render import write_csv


def getLogger():
    return logging.getLogger(__name__)


# graded cells near the origin halve in length
GRADING_RATIO = 0.5
MIN_GRADED_CELLS = 4


# ------------------------------------------------------------------------------
# Sector points
# ------------------------------------------------------------------------------

@dataclass(frozen=True)
class SectorPoint:
    ''' A point (r, theta) of the Riemann surface of the logarithm, r > 0 '''
    r: float
    theta: float

    def __post_init__(self):
        if not self.r > 0:
            raise DomainError(f"Sector points need r > 0 (r={self.r})")

    def power(self, s):
        ''' (r, theta)^s = (r^s, s theta) '''
        return SectorPoint(self.r ** s, s * self.theta)

    def to_complex(self):
        return self.r * complex(math.cos(self.theta), math.sin(self.theta))

    @staticmethod
    def from_complex(z):
        z = complex(z)
        return SectorPoint(abs(z), math.atan2(z.imag, z.real))

    def in_sector(self, opening):
        ''' |theta| < opening * pi / 2 '''
        return abs(self.theta) < opening * math.pi / 2


def _as_polar(points):
    if isinstance(points, SectorPoint):
        points = [points]
    r = np.array([p.r for p in points], dtype=float)
    theta = np.array([p.theta for p in points], dtype=float)
    return r, theta


# ------------------------------------------------------------------------------
# Quadrature
# ------------------------------------------------------------------------------

@lru_cache(maxsize=16)
def _legendre(n):
    x, wts = np.polynomial.legendre.leggauss(n)
    return x, wts


def _cells_rule(edges, n):
    ''' Gauss-Legendre nodes and weights on consecutive cells; shapes (cells, n) '''
    x, wts = _legendre(n)
    lo, hi = edges[:-1, None], edges[1:, None]
    half = (hi - lo) / 2
    return lo + half * (x[None, :] + 1), half * wts[None, :]


def _cell_sums(integrand, edges, n):
    ''' per-cell integrals with n and n/2 nodes; integrand maps (cells, n) -> (cells, n, W) '''
    t, wt = _cells_rule(edges, n)
    fine = np.einsum('cn,cnw->cw', wt, integrand(t))
    t, wt = _cells_rule(edges, max(2, n // 2))
    coarse = np.einsum('cn,cnw->cw', wt, integrand(t))
    return fine, coarse


def _graded_tail(kernel_cells, cells):
    ''' extrapolate the graded cells towards 0 by their kernel ratio

    :returns: (tail factor r/(1-r), error factor)
    '''
    if kernel_cells.size < 3 or kernel_cells[-2] <= 0:
        return 0.0, 0.0
    r = kernel_cells[-1] / kernel_cells[-2]
    r_prev = kernel_cells[-2] / kernel_cells[-3] if kernel_cells[-3] > 0 else r
    if r >= DIVERGENCE_RATIO:
        raise IntegrabilityError(f"Kernel cell integrals do not decay towards 0 (ratio {r:.4f} "
                                 f"after {cells} graded cells)")
    factor = r / (1 - r)
    prev = r_prev / (1 - r_prev) if r_prev < 1 else factor
    return factor, abs(factor - prev)


def kernel_integral(kernel, w, config=None):
    ''' int_0^inf k(t) / (t^2 + w^2) dt for an array of complex w with Re w > 0

    The half line is split at lo = min|w|/4 and T: [lo, T] gets a geometric mesh,
    [0, lo] a mesh graded by halving down to ``eps_min`` and the rest is
    extrapolated geometrically; beyond T the integrand is bounded by 4 k(T) / (3 T).

    :raises IntegrabilityError: the graded cell integrals do not decay
    :returns: (values, error estimates)
    '''
    config = config or QuadratureConfig()
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    if np.any(w.real <= 0):
        raise DomainError("Outer functions live on Re w > 0")
    w2 = (w * w)[None, None, :]

    def integrand(t):
        k = np.asarray(kernel(t.ravel()), dtype=float).reshape(t.shape)
        return k[:, :, None] / (t[:, :, None] ** 2 + w2)

    absw = np.abs(w)
    lo = min(1.0, float(np.min(absw)) / 4)
    T = max(1.0, 4 * float(np.max(absw)))
    while T < config.t_max and float(kernel(np.array([T]))[0]) / T >= config.tol / 10:
        T *= 2
    ncells = max(1, int(math.ceil(math.log(T / lo) / math.log(config.mesh_ratio))))
    edges = np.geomspace(lo, T, ncells + 1)
    fine, coarse = _cell_sums(integrand, edges, config.nodes)
    total = fine.sum(axis=0)
    err = np.abs(fine - coarse).sum(axis=0)

    # graded cells towards 0
    graded, kernel_cells = [], []
    x_hi = lo
    while x_hi > config.eps_min and len(graded) < config.max_segments:
        cell = np.array([x_hi * GRADING_RATIO, x_hi])
        f, c = _cell_sums(integrand, cell, config.nodes)
        graded.append(f[0])
        err = err + np.abs(f[0] - c[0])
        t, wt = _cells_rule(cell, config.nodes)
        kernel_cells.append(float(np.sum(wt * kernel(t.ravel()).reshape(t.shape))))
        x_hi *= GRADING_RATIO
        small = np.max(np.abs(f[0])) < config.tol * max(1.0, float(np.max(np.abs(total)))) / (ncells + len(graded))
        if len(graded) >= MIN_GRADED_CELLS and small:
            break
    graded = np.array(graded)
    total = total + graded.sum(axis=0)
    factor, factor_err = _graded_tail(np.array(kernel_cells), len(kernel_cells))
    total = total + graded[-1] * factor
    err = err + np.abs(graded[-1]) * factor_err

    kT = float(kernel(np.array([T]))[0])
    err = err + 4 * kT / (3 * T)
    getLogger().debug(f"kernel integral: {ncells} mesh cells on [{lo:.3g}, {T:.3g}], {len(graded)} graded cells")
    return total, np.maximum(err, 1e-15 * np.abs(total))


# ------------------------------------------------------------------------------
# Flat functions
# ------------------------------------------------------------------------------

class FlatFunction(object):
    ''' G_a(xi) = F_a(xi^s) built on the upper conjugate of a weight

    :param weight: the weight omega; the kernel is omega^star(t^{1/s})
    :param a: exponent scale, a > 0
    :param s: ramification exponent (s = 1 gives the outer function itself)
    :param gamma: opening of the sector S_gamma the estimates are stated on
    :param delta: opening with gamma < delta, s delta < 1
    '''

    def __init__(self, weight, a=1.0, s=1.0, gamma=None, delta=None, quad=None, closed_form=True):
        if not a > 0 or not s > 0:
            raise ConfigError(f"Flat functions need a > 0 and s > 0 (a={a}, s={s})")
        self.__weight = weight
        self.__a = float(a)
        self.__s = float(s)
        self.__delta = float(delta) if delta is not None else 1.0 / self.__s
        self.__gamma = float(gamma) if gamma is not None else self.__delta / 2
        if not self.__gamma < self.__delta or self.__s * self.__delta > 1 + 1e-12:
            raise PreconditionError(f"Need gamma < delta and s delta <= 1 (gamma={self.__gamma}, "
                                    f"delta={self.__delta}, s={self.__s})")
        self.__quad = quad or QuadratureConfig()
        self.__star = upper_conjugate_reciprocal(weight, closed_form)

    @staticmethod
    def build(weight, a=1.0, gamma=None, gamma_config=None, quad=None):
        ''' Choose s and delta from an estimate of gamma((omega^star)^iota)

        With g the lower end of that estimate: gamma defaults to g/2,
        delta = (gamma + g)/2 and s = 2/(delta + g), so s delta < 1 < s g.
        '''
        from .gamma import estimate_gamma
        est = estimate_gamma(upper_conjugate_reciprocal(weight), gamma_config)
        g = est.lower
        if not g > 0:
            raise PreconditionError(f"Flat functions need gamma((omega^star)^iota) > 0 for {weight.name}")
        gamma = g / 2 if gamma is None else float(gamma)
        if not 0 < gamma < g:
            raise PreconditionError(f"Sector opening {gamma} must lie in (0, {g:g})")
        delta = (gamma + g) / 2
        s = 2 / (delta + g)
        getLogger().info(f"Flat function for {weight.name}: gamma={gamma:g}, delta={delta:g}, s={s:g} "
                         f"(kernel index >= {g:g})")
        return FlatFunction(weight, a, s, gamma, delta, quad)

    @property
    def weight(self):
        return self.__weight

    @property
    def a(self):
        return self.__a

    @property
    def s(self):
        return self.__s

    @property
    def gamma(self):
        return self.__gamma

    @property
    def delta(self):
        return self.__delta

    @property
    def quad(self):
        return self.__quad

    def with_quad(self, quad):
        return FlatFunction(self.__weight, self.__a, self.__s, self.__gamma, self.__delta, quad)

    def with_a(self, a):
        return FlatFunction(self.__weight, a, self.__s, self.__gamma, self.__delta, self.__quad)

    def upper_star(self, sigma):
        ''' omega^star(sigma), sigma > 0 '''
        sigma = np.asarray(sigma, dtype=float)
        return self.__star(1.0 / sigma)

    def kernel(self, t):
        ''' omega^star(t^{1/s}) '''
        t = np.asarray(t, dtype=float)
        return self.upper_star(np.power(t, 1.0 / self.__s))

    def log_outer(self, w):
        ''' log F_a(w) and its error estimate for an array of complex w '''
        w = np.atleast_1d(np.asarray(w, dtype=complex))
        integral, err = kernel_integral(self.kernel, w, self.__quad)
        scale = 2 * self.__a * w / math.pi
        return -scale * integral, np.abs(scale) * err

    def log_values(self, r, theta):
        ''' log G_a at points given by modulus and argument arrays '''
        r = np.asarray(r, dtype=float)
        theta = np.asarray(theta, dtype=float)
        arg = self.__s * theta
        if np.any(np.abs(arg) >= math.pi / 2):
            raise DomainError(f"s theta reaches pi/2 (s={self.__s:g}, max |theta|={float(np.max(np.abs(theta))):g})")
        w = np.power(r, self.__s) * np.exp(1j * arg)
        return self.log_outer(w.ravel())[0].reshape(r.shape)

    def __call__(self, xi):
        r, theta = _as_polar(xi)
        out = np.exp(self.log_values(r, theta))
        return complex(out[0]) if isinstance(xi, SectorPoint) else out

    def __repr__(self):
        return f"FlatFunction({self.__weight.name!r}, a={self.__a:g}, s={self.__s:g})"


def outer_function(f, w):
    ''' F_a(w) for complex w with Re w > 0 '''
    w_arr = np.asarray(w, dtype=complex)
    val = np.exp(f.log_outer(w_arr.ravel())[0]).reshape(w_arr.shape)
    return complex(val) if w_arr.ndim == 0 else val


def flat_function(f, xi):
    ''' G_a(xi) = F_a(xi^s) for a :class:`SectorPoint` or a list of them '''
    return f(xi)


# ------------------------------------------------------------------------------
# Derivatives by Cauchy integrals
# ------------------------------------------------------------------------------

def default_eps(f):
    return 0.9 * min(1.0, f.delta - f.gamma) * math.pi / 2


def _contour_log_derivatives(log_fn, xi, j_max, eps, tol=CONTOUR_TOL):
    ''' log|f^{(j)}(xi)| and unit phases, j = 0..j_max, from the circle of radius sin(eps)|xi|

    :param log_fn: (r, theta) arrays -> complex log f
    :raises NodeBudgetError: when the Fourier tail does not drop below tol
    '''
    rho_rel = math.sin(eps)
    n = CONTOUR_NODES_MIN
    while n <= CONTOUR_NODES_MAX:
        if j_max < n // 4:
            phi = 2 * np.pi * np.arange(n) / n
            local = np.log1p(rho_rel * np.exp(1j * phi))
            r = xi.r * np.exp(local.real)
            theta = xi.theta + local.imag
            L = log_fn(r, theta)
            top = float(np.max(L.real))
            c = np.fft.fft(np.exp(L - top)) / n
            band = np.abs(c[n // 2 - n // 8: n // 2 + n // 8])
            if float(np.max(band)) <= tol * float(np.max(np.abs(c))):
                j = np.arange(j_max + 1)
                rho = rho_rel * xi.r
                with np.errstate(divide='ignore'):
                    log_abs = top + np.log(np.abs(c[:j_max + 1])) + gammaln(j + 1) - j * math.log(rho)
                phase = np.exp(1j * (np.angle(c[:j_max + 1]) - j * xi.theta))
                return log_abs, phase, n
        n *= 2
    raise NodeBudgetError(f"Contour derivatives at r={xi.r:g}, theta={xi.theta:g} need more than "
                          f"{CONTOUR_NODES_MAX} nodes")


def flat_derivatives(f, xi, j_max, eps=None, log=False):
    ''' G_a^{(j)}(xi), j = 0..j_max, by the trapezoidal rule on a Cauchy circle

    :param eps: the circle has radius sin(eps)|xi|; defaults to 0.9 min(1, delta - gamma) pi/2
    :param log: return log|G_a^{(j)}(xi)| instead of complex values
    '''
    eps = default_eps(f) if eps is None else eps
    log_abs, phase, n = _contour_log_derivatives(f.log_values, xi, j_max, eps)
    getLogger().debug(f"derivatives at {xi}: {n} contour nodes")
    if log:
        return log_abs
    with np.errstate(over='ignore'):
        return np.exp(log_abs) * phase


def reciprocal_derivatives(f, xi, j_max, eps=None, log=False):
    ''' (1/G_a)^{(j)}(xi), j = 0..j_max '''
    eps = default_eps(f) if eps is None else eps
    log_abs, phase, _ = _contour_log_derivatives(lambda r, th: -f.log_values(r, th), xi, j_max, eps)
    if log:
        return log_abs
    with np.errstate(over='ignore'):
        return np.exp(log_abs) * phase


def cauchy_riemann_residual(fn, w, h=1e-4):
    ''' |df/dx - (1/i) df/dy| relative to max(1, |df/dx|) by central differences '''
    w = complex(w)
    dx = (fn(w + h) - fn(w - h)) / (2 * h)
    dy = (fn(w + 1j * h) - fn(w - 1j * h)) / (2j * h)
    return float(abs(dx - dy) / max(1.0, abs(dx)))


def sector_grid(f, radii, thetas):
    ''' rows (r, theta, |G|, arg G) for plotting '''
    R, TH = np.meshgrid(np.asarray(radii, dtype=float), np.asarray(thetas, dtype=float), indexing='ij')
    L = f.log_values(R.ravel(), TH.ravel())
    return [(float(r), float(t), float(np.exp(l.real)), float(np.angle(np.exp(1j * l.imag))))
            for r, t, l in zip(R.ravel(), TH.ravel(), L)]


def write_sector_grid(f, radii, thetas, path, overwrite=False):
    write_csv(path, ('r', 'theta', 'absG', 'argG'), sector_grid(f, radii, thetas), overwrite=overwrite)


# ------------------------------------------------------------------------------
# Bound checks
# ------------------------------------------------------------------------------

def _smallest(candidates, ok):
    for c in candidates:
        if ok(c):
            return float(c)
    return None


def _points_range(r):
    return f"|xi| in [{float(np.min(r)):g}, {float(np.max(r)):g}], {r.size} points"


def check_outer_bounds(f, points):
    ''' B^{-a} exp(-2a k(Re w / B)) <= |F_a(w)| <= exp(-(a/2) k(A |w|)) with fitted A, B '''
    w = np.asarray(points, dtype=complex).ravel()
    log_abs = f.log_outer(w)[0].real
    a = f.a
    upper = lambda A: np.all(log_abs <= -(a / 2) * f.kernel(A * np.abs(w)) + slack(log_abs))
    lower = lambda B: np.all(-a * math.log(B) - 2 * a * f.kernel(w.real / B) <= log_abs + slack(log_abs))
    A = _smallest(H_GRID, upper)
    B = _smallest(H_GRID, lower)
    kw = {'anchor': 'flat/outer-bounds', 'subject': f.weight.name}
    rng = _points_range(np.abs(w))
    if A is None or B is None:
        return fails('outer_bounds', 'A' if A is None else 'B', rng, **kw)
    return holds('outer_bounds', {'A': A, 'B': B}, rng, **kw)


def _h_log(seq, t):
    return np.log(h_function(seq, t))


def check_flat_bounds(f, points, matrix=None):
    ''' K1^{-a} exp(-2a w*(K2|xi|)) <= |G_a(xi)| <= exp(-(a/2) w*(K3|xi|)), and |G_a| <= h_{w^y}(a e A1 |xi|/2), y = 2/a

    K2 is taken as the largest power of 1/2 that works with K1 = 1; failing that
    K1 is fitted at the smallest K2 of the grid.
    '''
    r, theta = _as_polar(points)
    log_abs = f.log_values(r, theta).real
    a = f.a
    kw = {'anchor': 'flat/sector-bounds', 'subject': f.weight.name}
    rng = _points_range(r)
    if np.any(log_abs > slack(log_abs)):
        return fails('flat_bounds', float(r[int(np.argmax(log_abs))]), rng, notes={'reason': '|G| > 1'}, **kw)
    K3 = _smallest(H_GRID, lambda K: np.all(log_abs <= -(a / 2) * f.upper_star(K * r) + slack(log_abs)))
    halves = [1.0 / h for h in H_GRID]
    K2 = _smallest(halves, lambda K: np.all(-2 * a * f.upper_star(K * r) <= log_abs + slack(log_abs)))
    K1 = 1.0
    if K2 is None:
        K2 = halves[-1]
        K1 = math.exp(max(0.0, float(np.max(-2 * a * f.upper_star(K2 * r) - log_abs)) / a))
    witnesses = {'K1': K1, 'K2': K2}
    if K3 is None:
        return fails('flat_bounds', 'K3', rng, witnesses=witnesses, **kw)
    witnesses['K3'] = K3
    if matrix is not None:
        y = 2.0 / a
        small = matrix.divided_row(y)
        A1 = _smallest(H_GRID, lambda A: np.all(log_abs <= _h_log(small, a * math.e * A * r / 2) + slack(log_abs)))
        if A1 is None:
            return fails('flat_bounds', 'A1', rng, witnesses=witnesses, **kw)
        witnesses['A1'] = A1
    return holds('flat_bounds', witnesses, rng, **kw)


def check_flat_derivative_bounds(f, points, matrix, j_max=8, eps=None):
    ''' |G^{(j)}| <= (A2 (1 + sin eps)/sin eps)^j W^y_j with y = 2/a, and
    |G^{(j)}| <= E^{j+1} W^{4/a}_j h_{w^{4/a}}(E|xi|) with fitted A2 and E
    '''
    eps = default_eps(f) if eps is None else eps
    q = (1 + math.sin(eps)) / math.sin(eps)
    logs = np.array([flat_derivatives(f, xi, j_max, eps, log=True) for xi in points])
    r = np.array([xi.r for xi in points])
    j = np.arange(j_max + 1)
    big_y = matrix.row(2.0 / f.a).log_values[:j_max + 1]
    big_4 = matrix.row(4.0 / f.a).log_values[:j_max + 1]
    small_4 = matrix.divided_row(4.0 / f.a)
    kw = {'anchor': 'flat/derivative-bounds', 'subject': f.weight.name}
    rng = f"{_points_range(r)}, j <= {j_max}"
    A2 = _smallest(H_GRID, lambda A: np.all(logs <= j * math.log(A * q) + big_y + slack(logs)))

    def h_form(E):
        rhs = (j[None, :] + 1) * math.log(E) + big_4[None, :] + _h_log(small_4, E * r)[:, None]
        return np.all(logs <= rhs + slack(logs))

    E = _smallest(H_GRID, h_form)
    if A2 is None or E is None:
        return fails('flat_derivative_bounds', 'A2' if A2 is None else 'E', rng, **kw)
    return holds('flat_derivative_bounds', {'A2': A2, 'E1': E, 'E2': E, 'eps': eps}, rng, **kw)


def check_reciprocal_bounds(f, points, matrix, j_max=8, eps=None):
    ''' |(1/G_a)^{(j)}| <= E^{j+1} W^x_j / h_{w^y}(|xi|/E) with y = 1/(8a), x = 4y '''
    eps = default_eps(f) if eps is None else eps
    y = 1.0 / (8 * f.a)
    x = 4 * y
    logs = np.array([reciprocal_derivatives(f, xi, j_max, eps, log=True) for xi in points])
    r = np.array([xi.r for xi in points])
    j = np.arange(j_max + 1)
    big_x = matrix.row(x).log_values[:j_max + 1]
    small_y = matrix.divided_row(y)

    def ok(E):
        rhs = (j[None, :] + 1) * math.log(E) + big_x[None, :] - _h_log(small_y, r / E)[:, None]
        return np.all(logs <= rhs + slack(logs))

    E = _smallest(H_GRID, ok)
    kw = {'anchor': 'flat/reciprocal-bounds', 'subject': f.weight.name}
    rng = f"{_points_range(r)}, j <= {j_max}, x={x:g}, y={y:g}"
    if E is None:
        return fails('reciprocal_bounds', 'E', rng, **kw)
    return holds('reciprocal_bounds', {'E3': E, 'E4': E, 'E5': 1.0 / E}, rng, **kw)


def check_flatness_estimate(fn, matrix, l=1.0, ray=None, j_max=8, margin=STABILITY_MARGIN):
    ''' |f^{(j)}(x)| <= H^{j+1} W^{2l}_j h_{w^{2l}}(Ht x) on a ray approaching 0

    :param fn: x -> array of f^{(j)}(x), j = 0..j_max
    :param ray: positive abscissae; the fit is judged towards x -> 0
    '''
    ray = np.sort(np.asarray(ray if ray is not None else np.geomspace(1e-3, 1.0, 25), dtype=float))[::-1]
    with np.errstate(divide='ignore'):
        logs = np.array([np.log(np.abs(np.asarray(fn(x), dtype=complex)[:j_max + 1])) for x in ray])
    j = np.arange(j_max + 1)
    big = matrix.row(2 * l).log_values[:j_max + 1]
    small = matrix.divided_row(2 * l)
    kw = {'anchor': 'flat/flatness-estimate', 'subject': getattr(fn, '__name__', 'function')}
    rng = f"x in [{ray[-1]:g}, {ray[0]:g}], j <= {j_max}, l={l:g}"
    if np.all(np.isneginf(logs)):
        return holds('flatness', {'H1': 1.0, 'H2': 1.0, 'Htilde': 1.0}, rng, **kw)
    for Ht in H_GRID[:21]:
        # the ray must reach the region where h_{w^{2l}}(Ht x) is already small
        if _h_log(small, np.array([Ht * ray[-1]]))[0] > -1.0:
            break
        need =(logs - big[None, :] - _h_log(small, Ht * ray)[:, None]) / (j[None, :] + 1)
        need = np.where(np.isneginf(need), 0.0, need)
        per_point = np.max(np.maximum(need, 0.0), axis=1)
        ws = window_sup(per_point, margin, log=True)
        if ws.stable:
            H = math.exp(ws.value)
            return holds('flatness', {'H1': H, 'H2': H, 'Htilde': float(Ht)}, rng, **kw)
    worst = int(np.argmax(np.max(logs - big[None, :] - _h_log(small, ray)[:, None], axis=1)))
    return fails('flatness', float(ray[worst]), rng, **kw)


def check_kernel_integrability(w, s=1.0, quad=None):
    ''' int_0^inf w*(t^{1/s}) / (1 + t^2) dt is finite, judged by graded partial sums near 0 '''
    f = FlatFunction(w, 1.0, s, gamma=0.5 / s, delta=1.0 / s, quad=quad)
    kw = {'anchor': 'flat/kernel-integrability', 'subject': w.name}
    try:
        value, err = kernel_integral(f.kernel, np.array([1.0]), f.quad)
    except IntegrabilityError as e:
        return fails('kernel_integrability', 'divergent', f"s={s:g}", notes={'reason': str(e)}, **kw)
    return holds('kernel_integrability', {'integral': float(value[0].real), 'error': float(err[0])}, f"s={s:g}", **kw)


def _local_integral(func, upper, config):
    ''' int_0^upper func(u) du on halving cells with geometric extrapolation '''
    total, err = 0.0, 0.0
    cells = []
    x_hi = upper
    while x_hi > upper * config.eps_min and len(cells) < config.max_segments:
        edge = np.array([x_hi * GRADING_RATIO, x_hi])
        t, wt = _cells_rule(edge, config.nodes)
        c = float(np.sum(wt * func(t.ravel()).reshape(t.shape)))
        tc, wc = _cells_rule(edge, max(2, config.nodes // 2))
        err += abs(c - float(np.sum(wc * func(tc.ravel()).reshape(tc.shape))))
        cells.append(c)
        total += c
        x_hi *= GRADING_RATIO
        if len(cells) >= MIN_GRADED_CELLS and abs(c) < config.tol * max(1.0, abs(total)) / len(cells):
            break
    factor, factor_err = _graded_tail(np.array(cells), len(cells))
    return total + cells[-1] * factor, err + abs(cells[-1]) * factor_err


def check_conjugate_integral(w, ys=None, quad=None, margin=STABILITY_MARGIN):
    ''' int_0^1 -w*(t y) dt >= -C (w*(y) + 1) with C fitted over y, judged towards y -> 0 '''
    quad = quad or QuadratureConfig()
    ys = np.sort(np.asarray(ys if ys is not None else np.geomspace(1e-6, 1e2, 33), dtype=float))[::-1]
    f = FlatFunction(w, 1.0, 1.0, quad=quad)
    kw = {'anchor': 'flat/conjugate-integral', 'subject': w.name}
    rng = f"y in [{ys[-1]:g}, {ys[0]:g}], {ys.size} points"
    ratios = []
    try:
        for y in ys:
            integral, _ = _local_integral(f.upper_star, float(y), quad)
            # max(w*, 1) <= w* + 1, so a bound against it is sufficient
            ratios.append(integral / float(y) / max(float(f.upper_star(np.array([y]))[0]), 1.0))
    except IntegrabilityError as e:
        return fails('conjugate_integral', 'divergent', rng, notes={'reason': str(e)}, **kw)
    ws = window_sup(ratios, margin)
    if ws.stable:
        return holds('conjugate_integral', {'C': max(ws.value, 1.0)}, rng, **kw)
    return fails('conjugate_integral', float(ys[ws.index]), rng, witnesses={'C_first_half': ws.first_half}, **kw)


def check_quadrature_convergence(f, points):
    ''' refined meshes move log F_a by less than the reported error '''
    w = np.asarray(points, dtype=complex).ravel()
    base, err = f.log_outer(w)
    fine, _ = f.with_quad(f.quad.refined()).log_outer(w)
    gap = np.abs(fine - base)
    kw = {'anchor': 'flat/quadrature-convergence', 'subject': f.weight.name}
    rng = f"{w.size} half-plane points"
    if np.any(gap > err):
        return fails('quadrature_convergence', complex(w[int(np.argmax(gap - err))]), rng,
                     witnesses={'max_gap': float(np.max(gap))}, **kw)
    return holds('quadrature_convergence', {'max_gap': float(np.max(gap)), 'max_error': float(np.max(err))}, rng, **kw)
