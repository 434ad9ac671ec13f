#!/usr/bin/env python3
# -*- coding: utf-8 -*-

'''
Test script for outer functions and sectorially flat functions
Latest version can be found at https://github.com/letuananh/pyultradiff

:copyright: (c) 2021 Le Tuan Anh <tuananh.ke@gmail.com>
:license: MIT, see LICENSE for more details.
'''

import os
import math
import cmath
import tempfile
import unittest
import logging
from pathlib import Path

import numpy as np

from pyultradiff import GevreyPower, FlatFunction, SectorPoint, outer_function, flat_function, flat_derivatives
from pyultradiff import build_matrix
from pyultradiff.errors import ConfigError, DomainError, PreconditionError, IntegrabilityError
from pyultradiff.flat import (reciprocal_derivatives, cauchy_riemann_residual, sector_grid, write_sector_grid,
                              check_outer_bounds, check_flat_bounds, check_flatness_estimate,
                              check_kernel_integrability, check_conjugate_integral, _graded_tail)


# -------------------------------------------------------------------------------
# Configuration
# -------------------------------------------------------------------------------

TEST_DIR = Path(os.path.dirname(os.path.realpath(__file__)))

# omega(t) = t^{1/4} has omega^star(sigma) = C_STAR sigma^{-1/3}
C_STAR = 0.75 * 4 ** (-1 / 3)


def getLogger():
    return logging.getLogger(__name__)


def outer_closed_form(w, a=1.0):
    ''' log F_a for the kernel C_STAR t^{-1/3} '''
    return -a * C_STAR * complex(w) ** (-1 / 3) / math.sin(math.pi / 3)


def flat_closed_form(r, theta, a=1.0):
    ''' log G_a for the kernel C_STAR t^{-2/3} evaluated at xi^{1/2} '''
    return -2 * a * C_STAR * r ** (-1 / 3) * cmath.exp(-1j * theta / 3)

# ------------------------------------------------------------------------------
# Test cases
# ------------------------------------------------------------------------------

class TestSectorPoints(unittest.TestCase):

    def test_polar_points(self):
        p = SectorPoint(4.0, 0.5)
        q = p.power(0.5)
        self.assertAlmostEqual(q.r, 2.0)
        self.assertAlmostEqual(q.theta, 0.25)
        self.assertTrue(p.in_sector(1.0))
        self.assertFalse(SectorPoint(1.0, 2.0).in_sector(1.0))
        z = SectorPoint.from_complex(1j)
        self.assertAlmostEqual(z.theta, math.pi / 2)
        self.assertAlmostEqual(abs(z.to_complex() - 1j), 0.0)
        with self.assertRaises(DomainError):
            SectorPoint(0.0, 0.0)


class TestOuterFunction(unittest.TestCase):

    def setUp(self):
        self.f = FlatFunction(GevreyPower(4))

    def test_construction(self):
        self.assertEqual(self.f.s, 1.0)
        self.assertEqual(self.f.delta, 1.0)
        self.assertEqual(self.f.gamma, 0.5)
        with self.assertRaises(ConfigError):
            FlatFunction(GevreyPower(4), a=0.0)
        with self.assertRaises(PreconditionError):
            FlatFunction(GevreyPower(4), s=2.0, delta=1.0)
        with self.assertRaises(PreconditionError):
            FlatFunction(GevreyPower(4), gamma=0.8, delta=0.5)

    def test_kernel(self):
        self.assertAlmostEqual(float(self.f.upper_star(np.array([8.0]))[0]), C_STAR / 2)
        self.assertAlmostEqual(float(self.f.kernel(np.array([1.0]))[0]), C_STAR)

    def test_closed_form(self):
        for w in (1.0, 2.0, 1 + 1j, 0.5 - 0.3j, 10 + 3j):
            value = outer_function(self.f, w)
            expected = cmath.exp(outer_closed_form(w))
            self.assertLess(abs(value - expected), 1e-7 * abs(expected), msg=f"w={w}")

    def test_real_and_bounded(self):
        w = np.array([0.1, 1.0, 5.0, 50.0])
        values = outer_function(self.f, w)
        np.testing.assert_allclose(values.imag, 0.0, atol=1e-12)
        self.assertTrue(np.all(np.abs(values) <= 1.0))

    def test_doubling_the_exponent_squares(self):
        w = np.array([1 + 1j, 2 - 0.5j])
        single = outer_function(self.f, w)
        double = outer_function(self.f.with_a(2.0), w)
        np.testing.assert_allclose(double, single ** 2, rtol=1e-9)

    def test_half_plane_only(self):
        with self.assertRaises(DomainError):
            outer_function(self.f, -1.0)
        with self.assertRaises(DomainError):
            outer_function(self.f, 1j)

    def test_holomorphic(self):
        residual = cauchy_riemann_residual(lambda w: outer_function(self.f, w), 1 + 1j)
        self.assertLess(residual, 1e-4)

    def test_outer_bounds(self):
        points = [0.5, 1 + 1j, 3 - 2j, 10.0, 0.2 + 1j]
        report = check_outer_bounds(self.f, points)
        self.assertTrue(report.holds)
        self.assertEqual(report.witness('A'), 1.0)
        self.assertEqual(report.witness('B'), 1.0)


class TestFlatFunction(unittest.TestCase):

    def setUp(self):
        self.f = FlatFunction(GevreyPower(4), 1.0, 0.5)

    def test_values_on_the_riemann_surface(self):
        # arguments beyond pi stay distinct points of the surface
        for r, theta in ((1.0, 0.0), (2.0, 0.9 * math.pi), (0.5, -0.9 * math.pi), (3.0, 0.3)):
            value = flat_function(self.f, SectorPoint(r, theta))
            expected = cmath.exp(flat_closed_form(r, theta))
            self.assertLess(abs(value - expected), 1e-7 * abs(expected), msg=f"r={r}, theta={theta}")

    def test_outside_the_sector(self):
        with self.assertRaises(DomainError):
            self.f(SectorPoint(1.0, 1.2 * math.pi))

    def test_derivatives(self):
        b = 2 * C_STAR
        d = flat_derivatives(self.f, SectorPoint(1.0, 0.0), 2, eps=0.3)
        g0 = math.exp(-b)
        self.assertLess(abs(d[0] - g0), 1e-7 * g0)
        self.assertLess(abs(d[1] - g0 * b / 3), 1e-6 * g0)
        second = g0 * ((b / 3) ** 2 - 4 * b / 9)
        self.assertLess(abs(d[2] - second), 1e-5 * g0)
        logs = flat_derivatives(self.f, SectorPoint(1.0, 0.0), 2, eps=0.3, log=True)
        self.assertAlmostEqual(logs[0], -b, places=6)

    def test_reciprocal_derivatives(self):
        b = 2 * C_STAR
        d = reciprocal_derivatives(self.f, SectorPoint(1.0, 0.0), 1, eps=0.3)
        self.assertLess(abs(d[0] - math.exp(b)), 1e-7 * math.exp(b))
        self.assertLess(abs(d[1] + b / 3 * math.exp(b)), 1e-6 * math.exp(b))

    def test_flat_bounds(self):
        points = [SectorPoint(r, t) for r in (0.01, 0.1, 1.0, 10.0) for t in (-0.9 * math.pi, 0.0, 0.5 * math.pi)]
        report = check_flat_bounds(self.f, points)
        self.assertTrue(report.holds)
        self.assertEqual(report.witness('K1'), 1.0)
        self.assertEqual(report.witness('K3'), 1.0)

    def test_sector_grid(self):
        rows = sector_grid(self.f, [0.5, 1.0], [0.0, 0.5])
        self.assertEqual(len(rows), 4)
        r, theta, absG, argG = rows[0]
        self.assertEqual((r, theta), (0.5, 0.0))
        self.assertAlmostEqual(absG, math.exp(flat_closed_form(0.5, 0.0).real), places=8)
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'grid.csv'
            write_sector_grid(self.f, [0.5, 1.0], [0.0, 0.5], path)
            self.assertEqual(path.read_text().splitlines()[0], 'r,theta,absG,argG')
            self.assertEqual(len(path.read_text().splitlines()), 5)


class TestFlatnessChecks(unittest.TestCase):

    def test_kernel_integrability(self):
        report = check_kernel_integrability(GevreyPower(4))
        self.assertTrue(report.holds)
        expected = C_STAR * (math.pi / 2) / math.sin(math.pi / 3)
        self.assertAlmostEqual(report.witness('integral'), expected, places=6)
        self.assertTrue(check_kernel_integrability(GevreyPower(2)).fails)

    def test_graded_tail(self):
        # halving cells leave a geometric tail equal to the last cell
        self.assertEqual(_graded_tail(np.array([1.0, 0.5, 0.25]), 3), (1.0, 0.0))
        self.assertEqual(_graded_tail(np.array([1.0, 0.5]), 2), (0.0, 0.0))
        with self.assertRaises(IntegrabilityError):
            _graded_tail(np.array([1.0, 1.0, 1.0]), 3)

    def test_conjugate_integral(self):
        report = check_conjugate_integral(GevreyPower(4))
        self.assertTrue(report.holds)
        self.assertAlmostEqual(report.witness('C'), 1.5, places=4)
        self.assertTrue(check_conjugate_integral(GevreyPower(2)).fails)

    def test_flatness_estimate(self):
        matrix = build_matrix(GevreyPower(2))
        self.assertTrue(check_flatness_estimate(lambda x: np.zeros(9), matrix).holds)
        constant = check_flatness_estimate(lambda x: np.array([1.0] + [0.0] * 8), matrix)
        self.assertTrue(constant.fails)


# -------------------------------------------------------------------------------
# Main
# -------------------------------------------------------------------------------

if __name__ == "__main__":
    unittest.main()
