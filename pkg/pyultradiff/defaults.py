# -*- coding: utf-8 -*-

'''
Default numerical settings shared by every pyultradiff module
'''

import os
from dataclasses import dataclass

import numpy as np


# ------------------------------------------------------------------------------
# Sequences
# ------------------------------------------------------------------------------

P_MAX = 256
# block ratios at or above this mark a non-decaying series
DIVERGENCE_RATIO = 0.99
STABILITY_MARGIN = 0.05
# successive rises of a running sup shrinking at least this fast are summed as a geometric tail
DECAY_RATE = 0.8
SLACK_REL = 1e-8

# ------------------------------------------------------------------------------
# Weight functions
# ------------------------------------------------------------------------------

TAIL_LOW = 1e2
TAIL_HIGH = 1e8
TAIL_POINTS = 400
SMALL_T = 1e-2
CONVEXITY_TOL = 1e-9
DN_C_GRID = (2.0, 4.0, 8.0, 16.0)
H_GRID = tuple(2.0 ** k for k in range(0, 41))

# ------------------------------------------------------------------------------
# Conjugates
# ------------------------------------------------------------------------------

GOLDEN_MAX_ITER = 200
GOLDEN_XTOL = 1e-10
SCAN_POINTS = 600
SCAN_RANGE = (-30.0, 30.0)
SCAN_EXPANSIONS = 10
BRACKET_DOUBLINGS = 80

# ------------------------------------------------------------------------------
# Matrices
# ------------------------------------------------------------------------------

MATRIX_INDICES = (0.25, 0.5, 1.0, 2.0, 4.0, 8.0)
MATRIX_P_MAX = 128
OMEGA7_GRID = (1.0, 2.0, 4.0, 8.0)

# ------------------------------------------------------------------------------
# Growth index
# ------------------------------------------------------------------------------

GAMMA_MARGIN = 0.02
GAMMA_TOL = 0.05
GAMMA_MAX = 10.0
K_GRID_SIZE = 40
K_MAX = 64.0

# ------------------------------------------------------------------------------
# Flat functions and jets
# ------------------------------------------------------------------------------

QUAD_TOL = 1e-10
QUAD_EPS_MIN = 1e-12
QUAD_T_MAX = 1e12
QUAD_MESH_RATIO = 2.0 ** 0.5
QUAD_NODES = 20
CONTOUR_NODES_MIN = 64
CONTOUR_NODES_MAX = 4096
CONTOUR_TOL = 1e-13
JET_LENGTH = 64
Y_EXACT_MAX = 20

# ------------------------------------------------------------------------------
# Surgery
# ------------------------------------------------------------------------------

SURGERY_POINTS_PER_DECADE = 64
SURGERY_X_MAX = 1e12
SURGERY_MIN_BREAKPOINTS = 5

# ------------------------------------------------------------------------------
# CLI
# ------------------------------------------------------------------------------

THREADS_ENV = 'PYULTRADIFF_THREADS'
VERIFY_CORPUS = ('gevrey:s=1.5', 'gevrey:s=2', 'gevrey:s=4', 'logpow:s=2', 'fromseq:gevrey-seq:s=2')


def thread_count(default=1):
    ''' Worker count for the verification runner, read from the environment '''
    try:
        return max(1, int(os.environ.get(THREADS_ENV, default)))
    except ValueError:
        return default


def slack(lhs, rhs=0.0):
    ''' Numerical slack for exact inequalities: 1e-8 * max(1, |lhs|, |rhs|) '''
    return SLACK_REL * np.maximum(1.0, np.maximum(np.abs(lhs), np.abs(rhs)))


@dataclass(frozen=True)
class TailGrid:
    ''' Log-spaced abscissae on which asymptotic statements are judged '''
    low: float = TAIL_LOW
    high: float = TAIL_HIGH
    points: int = TAIL_POINTS

    def values(self):
        return np.geomspace(self.low, self.high, self.points)

    def tail(self):
        ''' the last half of the grid, where limsups are estimated '''
        t = self.values()
        return t[len(t) // 2:]

    def full(self, small=SMALL_T):
        ''' grid reaching down to small abscissae, for fitting global constants '''
        n = max(self.points, 100)
        return np.geomspace(small, self.high, n)

    def scaled(self, factor):
        return TailGrid(self.low, self.high * factor, self.points)

    def describe(self):
        return f"t in [{self.low:g}, {self.high:g}], {self.points} log-spaced points"


def k_grid(size=K_GRID_SIZE, k_max=K_MAX):
    ''' log-spaced K values in (1, k_max], the first one strictly above 1 '''
    return k_max ** (np.arange(1, size + 1) / size)


@dataclass(frozen=True)
class QuadratureConfig:
    ''' Settings for the half-line integrals (kappa, non-quasianalyticity, outer functions) '''
    tol: float = QUAD_TOL
    eps_min: float = QUAD_EPS_MIN
    t_max: float = QUAD_T_MAX
    mesh_ratio: float = QUAD_MESH_RATIO
    nodes: int = QUAD_NODES
    max_segments: int = 400

    def refined(self):
        ''' every mesh parameter halved: cells split in two, twice the nodes '''
        return QuadratureConfig(self.tol, self.eps_min / 2, self.t_max * 2, self.mesh_ratio ** 0.5,
                                self.nodes * 2, self.max_segments * 2)
