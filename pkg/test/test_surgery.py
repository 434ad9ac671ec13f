#!/usr/bin/env python3
# -*- coding: utf-8 -*-

'''
Test script for weight surgery
Latest version can be found at https://github.com/letuananh/pyultradiff

:copyright: (c) 2021 Le Tuan Anh <tuananh.ke@gmail.com>
:license: MIT, see LICENSE for more details.
'''

import os
import math
import tempfile
import unittest
import logging
from pathlib import Path

import numpy as np

from pyultradiff import GevreyPower, GammaEstimate, SurgeryConfig, SurgeryWeight, build_surgery_weight
from pyultradiff.errors import BreakpointExhaustedError, ConfigError, PreconditionError
from pyultradiff.surgery import (Majorant, parse_majorant, build_breakpoints, check_breakpoints,
                                 check_initial_segment, check_lower_comparison, check_gamma_target, check_surgery)


# -------------------------------------------------------------------------------
# Configuration
# -------------------------------------------------------------------------------

TEST_DIR = Path(os.path.dirname(os.path.realpath(__file__)))
BASE = GevreyPower(2)
H = parse_majorant('power:a=0.75')


def getLogger():
    return logging.getLogger(__name__)


def make_surgery(config=None):
    config = config or SurgeryConfig()
    x = build_breakpoints(BASE, H, 1.5, 2.0, config)
    return SurgeryWeight(BASE, H, 1.5, 2.0, x, config)

# ------------------------------------------------------------------------------
# Test cases
# ------------------------------------------------------------------------------

class TestMajorants(unittest.TestCase):

    def test_parse(self):
        self.assertAlmostEqual(float(H(10000.0)), 1000.0)
        self.assertEqual(H.name, 't^0.75')
        w = parse_majorant('weight:gevrey:s=2')
        self.assertAlmostEqual(float(w(16.0)), 4.0)
        for bad in ('power:a=-1', 'power:', 'spline:a=1'):
            with self.assertRaises(ConfigError):
                parse_majorant(bad)


class TestBreakpoints(unittest.TestCase):

    def test_greedy_breakpoints(self):
        x = build_breakpoints(BASE, H, 1.5, 2.0)
        self.assertEqual(x[0], 0.0)
        self.assertTrue(np.all(np.diff(x) > 0))
        self.assertGreaterEqual(x.size, 5)
        # h(y) >= 4 omega(y) first holds from y = 256 on
        self.assertGreaterEqual(x[1], 256.0)
        self.assertLess(x[1], 256.0 * 1.05)
        self.assertGreaterEqual(x[2], 6561.0)

    def test_exhausted(self):
        with self.assertRaises(BreakpointExhaustedError):
            build_breakpoints(BASE, H, 1.5, 2.0, SurgeryConfig(x_max=1e3))

    def test_invalid_breakpoints(self):
        with self.assertRaises(ConfigError):
            SurgeryWeight(BASE, H, 1.5, 2.0, [1.0, 2.0])
        with self.assertRaises(ConfigError):
            SurgeryWeight(BASE, H, 1.5, 2.0, [0.0, 5.0, 5.0])


class TestSurgeryWeight(unittest.TestCase):

    def setUp(self):
        self.sw = make_surgery()

    def test_initial_segment(self):
        t = np.linspace(0.0, self.sw.breakpoints[1], 50, endpoint=False)
        np.testing.assert_allclose(self.sw(t), BASE(t), rtol=1e-12)
        self.assertTrue(check_initial_segment(self.sw).holds)

    def test_continuity(self):
        for x in self.sw.breakpoints[1:6]:
            left, right = self.sw(x * (1 - 1e-12)), self.sw(x)
            self.assertLess(abs(left - right), 1e-6 * max(1.0, right))

    def test_segments(self):
        x = self.sw.breakpoints
        self.assertEqual(int(self.sw.segment(0.0)), 1)
        self.assertEqual(int(self.sw.segment(x[2])), 3)
        self.assertEqual(int(self.sw.segment((x[2] + x[3]) / 2)), 3)

    def test_checks(self):
        self.assertTrue(check_breakpoints(self.sw).holds)
        self.assertTrue(check_lower_comparison(self.sw).holds)
        # K = 2 is not the built witness; the index of this sigma is covered in TestBuildingSurgery
        above = GammaEstimate(self.sw.name, lower=1.6, upper=1.7, witness_K={}, exceeds_max=False)
        report = check_surgery(self.sw, estimate=above)
        self.assertTrue(report.holds, msg=str(report))
        below = GammaEstimate(self.sw.name, lower=1.0, upper=1.2, witness_K={}, exceeds_max=False)
        self.assertTrue(check_surgery(self.sw, estimate=below).fails)
        for row in self.sw.margins():
            self.assertGreaterEqual(min(row['growth'], row['doubling'], row['majorant']), 1 - 1e-12)

    def test_csv(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'sigma.csv'
            self.sw.write_csv(path)
            lines = path.read_text().splitlines()
            self.assertEqual(lines[0], 'n,x,partial_sum')
            self.assertEqual(len(lines), self.sw.breakpoints.size + 1)

    def test_recheck_beyond_scanned_range(self):
        root = Majorant(np.sqrt, 'root')
        sw = SurgeryWeight(BASE, root, 1.5, 2.0, [0.0, 256.0, 6561.0], SurgeryConfig(x_max=1e4))
        self.assertTrue(sw.valid)
        sw(1e3)
        self.assertTrue(sw.valid)
        sw(1e5)
        self.assertFalse(sw.valid)
        self.assertIn('beyond the scanned range', sw.diagnostic)


class TestBuildingSurgery(unittest.TestCase):

    def test_build(self):
        sw = build_surgery_weight(BASE, 'power:a=0.75', 1.5)
        self.assertEqual(sw.gamma_target, 1.5)
        self.assertGreater(sw.K, 1.0)
        self.assertTrue(check_breakpoints(sw).holds)
        self.assertTrue(sw.descriptor.startswith('surgery:gevrey:s=2'))

    def test_index_above_target(self):
        sw = build_surgery_weight(BASE, 'power:a=0.75', 1.5)
        report = check_gamma_target(sw)
        self.assertEqual(report.anchor, 'surgery/weight-surgery')
        self.assertTrue(report.holds, msg=str(report))
        self.assertGreater(report.witness('gamma_lower'), 1.5)
        self.assertEqual(report.witness('target'), 1.5)
        self.assertTrue(check_surgery(sw).holds)

    def test_index_below_target(self):
        sw = make_surgery()
        low = GammaEstimate(sw.name, lower=1.0, upper=1.2, witness_K={}, exceeds_max=False)
        report = check_gamma_target(sw, low)
        self.assertTrue(report.fails)
        self.assertEqual(report.counterexample, 1.2)
        unsettled = GammaEstimate(sw.name, lower=1.4, upper=None, witness_K={}, exceeds_max=False, inconclusive=True)
        report = check_gamma_target(sw, unsettled)
        self.assertTrue(report.inconclusive)
        self.assertTrue(report.notes['bracket_inconclusive'])

    def test_preconditions(self):
        with self.assertRaises(PreconditionError):
            build_surgery_weight(BASE, 'power:a=0.75', 2.5)
        with self.assertRaises(PreconditionError):
            build_surgery_weight(BASE, 'power:a=0.4', 1.5)


# -------------------------------------------------------------------------------
# Main
# -------------------------------------------------------------------------------

if __name__ == "__main__":
    unittest.main()
