# -*- coding: utf-8 -*-

'''
Jets (formal Taylor data), their complexification and ramification, and the
coefficients of the operator Y = q^{-1} xi^{1-q} d/dxi.
'''

import math
import logging
from fractions import Fraction

import numpy as np
from scipy.special import gammaln

from .defaults import JET_LENGTH, Y_EXACT_MAX, H_GRID, STABILITY_MARGIN, slack
from .errors import ConfigError, DomainError
from .reports import holds, fails, window_sup
from .sequences import WeightSequence
from .render import write_csv, read_csv


def getLogger():
    return logging.getLogger(__name__)


# exact powers of i
I_POWERS = (1 + 0j, 1j, -1 + 0j, -1j)


class Jet(object):
    ''' Taylor data lambda_p, p = 0..P

    One-dimensional jets are arrays of length P+1. Two-dimensional jets are
    dense (P+1) x (P+1) arrays indexed (j, k) with entries beyond j + k > P zero.
    '''

    def __init__(self, coeffs, dimension=1):
        c = np.array(coeffs, dtype=complex)
        if dimension not in (1, 2) or c.ndim != dimension:
            raise ConfigError(f"A {dimension}-D jet needs a {dimension}-D coefficient array")
        if c.size == 0 or not np.all(np.isfinite(c)):
            raise ConfigError("Jet coefficients must be finite")
        if dimension == 2:
            if c.shape[0] != c.shape[1]:
                raise ConfigError("2-D jets are stored as square triangular arrays")
            j, k = np.indices(c.shape)
            c[j + k >= c.shape[0]] = 0
        c.setflags(write=False)
        self.__coeffs = c
        self.__dim = dimension

    @property
    def coeffs(self):
        return self.__coeffs

    @property
    def dimension(self):
        return self.__dim

    @property
    def order(self):
        ''' P, the largest |p| carried '''
        return self.__coeffs.shape[0] - 1

    def total_degree(self):
        ''' |p| for every stored entry '''
        if self.__dim == 1:
            return np.arange(self.order + 1)
        j, k = np.indices(self.__coeffs.shape)
        return j + k

    def __add__(self, other):
        if self.__dim != other.dimension or self.__coeffs.shape != other.coeffs.shape:
            raise ConfigError("Only jets of equal shape can be added")
        return Jet(self.__coeffs + other.coeffs, self.__dim)

    def __mul__(self, alpha):
        return Jet(complex(alpha) * self.__coeffs, self.__dim)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Jet) and self.__dim == other.dimension and np.array_equal(self.__coeffs, other.coeffs)

    def __len__(self):
        return self.__coeffs.shape[0]

    def __repr__(self):
        return f"Jet(order={self.order}, dimension={self.__dim})"

    def rows(self):
        if self.__dim != 1:
            raise ConfigError("Only 1-D jets have a CSV form")
        return [(p, v.real, v.imag) for p, v in enumerate(self.__coeffs)]

    def to_csv(self, path, overwrite=False):
        ''' Write ``p,re,im`` rows '''
        return write_csv(path, ('p', 're', 'im'), self.rows(), overwrite=overwrite)

    @staticmethod
    def from_csv(path):
        data = read_csv(path, ('p', 're', 'im'))
        if not np.array_equal(data[:, 0], np.arange(data.shape[0])):
            raise ConfigError(f"{path}: indices must run 0..P without gaps")
        return Jet(data[:, 1] + 1j * data[:, 2])

    @staticmethod
    def from_sequence(seq):
        ''' lambda_p = M_p '''
        return Jet(seq.values)


def random_jet(length=JET_LENGTH, seed=0, bound=None):
    ''' A reproducible jet with entries in the unit disc, scaled by ``bound`` (a weight sequence) if given '''
    rng = np.random.default_rng(seed)
    radius = np.sqrt(rng.uniform(0, 1, length))
    angle = rng.uniform(0, 2 * math.pi, length)
    c = radius * np.exp(1j * angle)
    if bound is not None:
        if bound.p_max + 1 < length:
            raise ConfigError(f"{bound.name} is shorter than the requested jet ({length})")
        c = c * bound.values[:length]
    return Jet(c)


# ------------------------------------------------------------------------------
# Norms
# ------------------------------------------------------------------------------

def _row_for(against, l):
    if isinstance(against, WeightSequence):
        return against
    if isinstance(against, tuple):
        against, l = against
    if l is None:
        raise ConfigError("A jet norm against a weight or a matrix needs an index l")
    if hasattr(against, 'row'):
        return against.row(l)
    from .matrices import build_matrix
    return build_matrix(against, (float(l),)).row(float(l))


def jet_norm(jet, against, l=None):
    ''' sup_p |lambda_p| / W^l_{|p|}

    :param against: a :class:`WeightSequence`, a weight matrix, a weight function
        or a ``(weight, l)`` pair
    '''
    row = _row_for(against, l)
    if row.p_max < jet.order:
        raise ConfigError(f"{row.name} is tabulated to p={row.p_max}, the jet needs {jet.order}")
    deg = jet.total_degree()
    mag = np.abs(jet.coeffs)
    nz = mag > 0
    if not np.any(nz):
        return 0.0
    ratios = np.log(mag[nz]) - row.log_values[deg[nz]]
    return float(np.exp(np.max(ratios)))


# ------------------------------------------------------------------------------
# Complexification and ramification
# ------------------------------------------------------------------------------

def complexify(jet):
    ''' lambda^C_{j,k} = i^k lambda_{j+k} '''
    if jet.dimension != 1:
        raise ConfigError("Only 1-D jets can be complexified")
    P = jet.order
    j, k = np.indices((P + 1, P + 1))
    n = j + k
    inside = n <= P
    out = np.zeros((P + 1, P + 1), dtype=complex)
    powers = np.array(I_POWERS)[k % 4]
    out[inside] = powers[inside] * jet.coeffs[n[inside]]
    return Jet(out, dimension=2)


def dbar_residual(jet2):
    ''' max |(lambda_{j+1,k} + i lambda_{j,k+1}) / 2| over j + k < P '''
    c = jet2.coeffs
    P = jet2.order
    j, k = np.indices((P, P))
    inside = j + k < P
    res = 0.5 * (c[1:, :-1] + 1j * c[:-1, 1:])
    return float(np.max(np.abs(res[inside]))) if np.any(inside) else 0.0


def ramify_jet(jet, q):
    ''' lambda*_{qj} = lambda_j (qj)!/j!, zero off multiples of q

    :raises DomainError: when (qj)!/j! overflows a float
    '''
    q = int(q)
    if q < 1:
        raise ConfigError(f"Ramification order must be a positive integer (q={q})")
    if jet.dimension != 1:
        raise ConfigError("Only 1-D jets can be ramified")
    P = jet.order
    out = np.zeros(q * P + 1, dtype=complex)
    for j in range(P + 1):
        try:
            factor = float(math.perm(q * j, q * j - j))
        except OverflowError:
            raise DomainError(f"(qj)!/j! overflows at q={q}, j={j}; use a shorter jet")
        with np.errstate(over='ignore', invalid='ignore'):
            out[q * j] = jet.coeffs[j] * factor
        if not np.isfinite(out[q * j]):
            raise DomainError(f"lambda_j (qj)!/j! overflows at q={q}, j={j}; use a shorter jet")
    return Jet(out)


def ramified_taylor_coefficients(jet, q, j):
    ''' Coefficients of P_{lambda,j}(xi) = sum_{i<j} lambda_i xi^{qi}/i! in two ways

    :returns: (from lambda directly, from lambda* as sum_{p<qj} lambda*_p xi^p/p!)
    '''
    q = int(q)
    if not 1 <= j <= jet.order + 1:
        raise ConfigError(f"The jet carries {jet.order + 1} terms, asked for {j}")
    direct = np.zeros(q * j, dtype=complex)
    for i in range(j):
        direct[q * i] = jet.coeffs[i] / math.factorial(i)
    # only lambda_0 .. lambda_{j-1} reach P_(lambda,j)
    star = np.zeros(q * j, dtype=complex)
    head = ramify_jet(Jet(jet.coeffs[:j]), q).coeffs
    star[:head.size] = head
    via_star = star / np.array([float(math.factorial(p)) for p in range(q * j)])
    return direct, via_star


def check_ramified_taylor(jet, q, j):
    direct, via_star = ramified_taylor_coefficients(jet, q, j)
    gap = np.abs(direct - via_star)
    ok = gap <= 1e-12 * np.maximum(1.0, np.abs(direct))
    kw = {'anchor': 'jets/ramified-taylor', 'subject': f"q={q}"}
    rng = f"P_(lambda,{j}), {direct.size} coefficients"
    if np.all(ok):
        return holds('ramified_taylor', {'max_gap': float(np.max(gap, initial=0.0))}, rng, **kw)
    return fails('ramified_taylor', int(np.argmin(ok)), rng, **kw)


def check_ramified_membership(jet, q, rm, l1, margin=STABILITY_MARGIN):
    ''' |lambda*_{qj}| <= C h^j (qj)! (S^{l1}_{qj})^{1/q} with fitted C and h

    :param rm: ramified matrix supplying S^{l1}
    '''
    q = int(q)
    star = ramify_jet(jet, q).coeffs
    S = rm.S(l1).log_values
    js = np.arange(jet.order + 1)
    js = js[q * js <= S.size - 1]
    p = q * js
    with np.errstate(divide='ignore'):
        lhs = np.log(np.abs(star[p]))
    base = lhs - gammaln(p + 1) - S[p] / q
    kw = {'anchor': 'jets/ramified-membership', 'subject': f"q={q}, l1={l1:g}"}
    rng = f"j <= {int(js[-1])}"
    if np.all(np.isneginf(base)):
        return holds('ramified_membership', {'C': 1.0, 'h': 1.0}, rng, **kw)
    for h in H_GRID:
        ws = window_sup(base - js * math.log(h), margin, log=True)
        if ws.stable:
            return holds('ramified_membership', {'C': math.exp(ws.value), 'h': float(h)}, rng, **kw)
    return fails('ramified_membership', int(js[int(np.argmax(base))]), rng, **kw)


# ------------------------------------------------------------------------------
# The operator Y
# ------------------------------------------------------------------------------

class YCoefficients(object):
    ''' Y^j = sum_k c_{j,k} xi^{k-qj} d^k/dxi^k

    c_{1,1} = 1/q and c_{j+1,k} = (c_{j,k-1} + (k - qj) c_{j,k}) / q. Entries are
    exact rationals; :meth:`value` gives floats up to j = ``Y_EXACT_MAX`` and
    :meth:`log_abs` gives log-magnitudes at every j.
    '''

    def __init__(self, q, j_max):
        q = int(q)
        if q < 1 or j_max < 1:
            raise ConfigError(f"Y coefficients need q >= 1 and j_max >= 1 (q={q}, j_max={j_max})")
        self.__q = q
        self.__j_max = int(j_max)
        rows = {1: {1: Fraction(1, q)}}
        for j in range(1, self.__j_max):
            prev = rows[j]
            nxt = {}
            for k in range(1, j + 2):
                c = prev.get(k - 1, Fraction(0)) + (k - q * j) * prev.get(k, Fraction(0))
                nxt[k] = c / q
            rows[j + 1] = nxt
        self.__rows = rows

    @property
    def q(self):
        return self.__q

    @property
    def j_max(self):
        return self.__j_max

    def exact(self, j, k):
        if not 1 <= j <= self.__j_max:
            raise ConfigError(f"j={j} outside 1..{self.__j_max}")
        return self.__rows[j].get(k, Fraction(0))

    def value(self, j, k):
        if j > Y_EXACT_MAX:
            raise DomainError(f"Floating values are kept up to j={Y_EXACT_MAX}; use log_abs")
        return float(self.exact(j, k))

    def log_abs(self, j, k):
        c = self.exact(j, k)
        if c == 0:
            return -math.inf
        return math.log(abs(c.numerator)) - math.log(c.denominator)

    def apply_to_monomial(self, m, j):
        ''' the coefficient of xi^{m-qj} in Y^j xi^m, from the c_{j,k} '''
        total = Fraction(0)
        for k, c in self.__rows[j].items():
            if k <= m:
                total += c * math.perm(m, k)
        return total

    def bound_log(self, j, k):
        ''' log of (4/q)^j 2^{j-k} (j-k)! '''
        return j * math.log(4 / self.__q) + (j - k) * math.log(2) + math.lgamma(j - k + 1)

    def items(self):
        for j in range(1, self.__j_max + 1):
            for k in sorted(self.__rows[j]):
                yield j, k, self.__rows[j][k]


def y_operator_coefficients(q, j_max):
    return YCoefficients(q, j_max)


def monomial_image(m, j, q):
    ''' Y^j xi^m = prod_{i<j} (m - iq)/q xi^{m-qj}, the exact coefficient '''
    out = Fraction(1)
    for i in range(j):
        out *= Fraction(m - i * q, q)
    return out


def check_y_bound(coeffs):
    ''' |c_{j,k}| <= (4/q)^j 2^{j-k} (j-k)! for all stored entries '''
    worst, where = -math.inf, None
    for j, k, c in coeffs.items():
        if c == 0:
            continue
        gap = coeffs.log_abs(j, k) - coeffs.bound_log(j, k)
        if gap > worst:
            worst, where = gap, (j, k)
    kw = {'anchor': 'jets/y-operator-bound', 'subject': f"q={coeffs.q}"}
    rng = f"j <= {coeffs.j_max}"
    if worst <= slack(worst):
        return holds('y_bound', {'max_log_ratio': worst}, rng, **kw)
    return fails('y_bound', where, rng, witnesses={'max_log_ratio': worst}, **kw)


def check_complexification(jet, against, l=None):
    ''' the complexified jet is dbar-flat and keeps the norm '''
    cj = complexify(jet)
    residual = dbar_residual(cj)
    before = jet_norm(jet, against, l)
    after = jet_norm(cj, against, l)
    kw = {'anchor': 'jets/complexification', 'subject': f"jet(P={jet.order})"}
    rng = f"|p| <= {jet.order}"
    if residual == 0 and after == before:
        return holds('complexification', {'dbar_residual': residual, 'norm': before}, rng, **kw)
    return fails('complexification', 'dbar' if residual != 0 else 'norm', rng,
                 witnesses={'dbar_residual': residual, 'norm_before': before, 'norm_after': after}, **kw)
