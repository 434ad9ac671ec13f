#!/usr/bin/env python3
# -*- coding: utf-8 -*-

'''
Test script for weight functions
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
from hypothesis import given, settings
from hypothesis import strategies as st

from pyultradiff import (GevreyPower, LogPower, FromSequence, Tabulated, Ramified, CustomWeight, WeightSequence,
                         TailGrid, parse_weight, evaluate, check_weight_condition, compare_weights)
from pyultradiff.errors import ConfigError, ExtrapolationError
from pyultradiff.reports import settled_sup
from pyultradiff.weights import Kappa, check_weight_axioms, kappa


# -------------------------------------------------------------------------------
# Configuration
# -------------------------------------------------------------------------------

TEST_DIR = Path(os.path.dirname(os.path.realpath(__file__)))


def getLogger():
    return logging.getLogger(__name__)

# ------------------------------------------------------------------------------
# Test cases
# ------------------------------------------------------------------------------

class TestWeightFamilies(unittest.TestCase):

    def test_gevrey(self):
        w = GevreyPower(2)
        self.assertEqual(w(4.0), 2.0)
        self.assertEqual(w(0.0), 0.0)
        np.testing.assert_allclose(evaluate(w, [1.0, 9.0, 16.0]), [1.0, 3.0, 4.0])
        self.assertFalse(w.normalized)
        self.assertEqual(w.descriptor, 'gevrey:s=2')
        # sup_y (x y - e^{y/2}) at x = 1 is reached at y = 2 log 2
        self.assertAlmostEqual(float(w.phi_star(1.0)), 2 * (math.log(2) - 1))
        self.assertAlmostEqual(float(w.upper_star(0.5)), 0.5)
        with self.assertRaises(ConfigError):
            GevreyPower(0)
        with self.assertRaises(ConfigError):
            w(-1.0)

    def test_log_power(self):
        w = LogPower(2)
        self.assertTrue(w.normalized)
        self.assertEqual(w(0.5), 0.0)
        self.assertAlmostEqual(w(math.e ** 3), 9.0)
        with self.assertRaises(ConfigError):
            LogPower(1)

    def test_from_sequence(self):
        w = FromSequence(WeightSequence.gevrey(1.0))
        self.assertEqual(w.valid_limit, math.inf)
        self.assertAlmostEqual(w(2.5), math.log(3.125))
        self.assertTrue(w.normalized)
        tabulated = FromSequence(WeightSequence.from_values([1, 1, 2, 6, 24]))
        self.assertAlmostEqual(tabulated.valid_limit, 4.0)

    def test_tabulated(self):
        w = Tabulated([1.0, 10.0, 100.0], [0.0, 1.0, 2.0])
        self.assertAlmostEqual(w(math.sqrt(10.0)), 0.5)
        self.assertAlmostEqual(w(100.0), 2.0)
        self.assertEqual(w.valid_limit, 100.0)
        with self.assertRaises(ExtrapolationError):
            w(1000.0)
        with self.assertRaises(ConfigError):
            Tabulated([1.0, 1.0], [0.0, 1.0])
        with self.assertRaises(ConfigError):
            Tabulated([1.0, 2.0], [1.0, 0.0])

    def test_tabulated_csv(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'weight.csv'
            path.write_text('t,omega\n1,0\n10,1\n100,2\n')
            w = parse_weight(f'table:{path}')
            self.assertIsInstance(w, Tabulated)
            self.assertAlmostEqual(w(10.0), 1.0)

    def test_ramified(self):
        w = Ramified(GevreyPower(2), 2)
        self.assertAlmostEqual(w(3.0), 3.0)
        self.assertEqual(w.descriptor, 'ramified:gevrey:s=2^2')
        parsed = parse_weight('ramified:gevrey:s=2^2')
        self.assertIsInstance(parsed, Ramified)
        self.assertAlmostEqual(parsed(5.0), 5.0)

    def test_custom(self):
        w = CustomWeight(lambda t: np.sqrt(t), name='root')
        self.assertEqual(w.descriptor, 'custom:root')
        self.assertAlmostEqual(w(9.0), 3.0)

    def test_descriptors(self):
        self.assertIsInstance(parse_weight('gevrey:s=3'), GevreyPower)
        self.assertIsInstance(parse_weight('logpow:s=2'), LogPower)
        self.assertIsInstance(parse_weight('fromseq:gevrey-seq:s=2'), FromSequence)
        self.assertIsInstance(parse_weight('fromseq:factorial'), FromSequence)
        for bad in ('bogus:s=1', 'gevrey:', 'gevrey:s=abc', 'ramified:gevrey:s=2'):
            with self.assertRaises(ConfigError):
                parse_weight(bad)

    @settings(max_examples=40, deadline=None)
    @given(st.floats(min_value=0.0, max_value=1e6), st.floats(min_value=1.0, max_value=1e3))
    def test_gevrey_is_nondecreasing(self, t, factor):
        w = GevreyPower(3)
        self.assertLessEqual(w(t), w(t * factor) + 1e-9)


class TestWeightConditions(unittest.TestCase):

    def test_axioms(self):
        self.assertTrue(check_weight_axioms(GevreyPower(2)).holds)
        flat = CustomWeight(lambda t: np.minimum(t, 1.0), name='capped')
        self.assertTrue(check_weight_axioms(flat).fails)

    def test_doubling(self):
        report = check_weight_condition(GevreyPower(2), 'om1')
        self.assertTrue(report.holds)
        self.assertLessEqual(report.witness('L'), math.sqrt(2) + 1e-9)
        self.assertEqual(report.anchor, 'weight/doubling')

    def test_doubling_creeping_ratio(self):
        # omega(2t)/(omega(t)+1) climbs slowly towards 2^(1/s) for larger s
        for s in (1.5, 3, 4, 6):
            report = check_weight_condition(GevreyPower(s), 'om1')
            self.assertTrue(report.holds, f"om1 for gevrey:s={s}")
            L = report.witness('L')
            self.assertTrue(math.isfinite(L))
            self.assertGreater(L, 0.95 * 2 ** (1 / s))
            self.assertLess(L, 1.1 * 2 ** (1 / s))

    def test_settled_sup(self):
        creeping = 1 - 0.5 ** (np.arange(400) / 50)
        ws = settled_sup(creeping)
        self.assertTrue(ws.stable)
        self.assertAlmostEqual(ws.value, 1.0, places=6)
        linear = settled_sup(np.linspace(1.0, 10.0, 400))
        self.assertFalse(linear.stable)
        self.assertEqual(linear.value, 10.0)

    def test_linear_bound(self):
        report = check_weight_condition(GevreyPower(2), 'om2')
        self.assertTrue(report.holds)
        self.assertEqual(report.anchor, 'weight/linear-bound')
        superlinear = CustomWeight(lambda t: t * np.log1p(t), name='tlogt')
        self.assertTrue(check_weight_condition(superlinear, 'om2').fails)

    def test_doubling_absorption(self):
        report = check_weight_condition(GevreyPower(2), 'om6')
        self.assertTrue(report.holds)
        # sqrt(4 t) = 2 sqrt(t)
        self.assertEqual(report.notes['H_multiplicative'], 4.0)
        self.assertTrue(check_weight_condition(LogPower(2), 'om6').fails)

    def test_implications(self):
        for w in (GevreyPower(2), LogPower(2)):
            self.assertTrue(check_weight_condition(w, 'om_nq').holds)
            self.assertTrue(check_weight_condition(w, 'om5').holds, f"om_nq without om5 for {w.name}")
        sigma = LogPower(2)
        self.assertTrue(check_weight_condition(sigma, 'om7').holds)
        self.assertTrue(check_weight_condition(sigma, 'om1').holds)

    def test_dn(self):
        gev = check_weight_condition(GevreyPower(2), 'dn')
        self.assertTrue(gev.holds)
        self.assertEqual(gev.anchor, 'weight/dn')
        for C in (2, 4, 8, 16):
            # sqrt(C delta) >= 1, so delta is the first grid value at or above 1/C
            delta = gev.witness(f"delta[C={C}]")
            self.assertGreaterEqual(C * delta, 1.0)
            self.assertLess(C * delta, 1.13)
        # the displayed (DN) formula only asks C delta > 1 of log powers on a far tail
        sigma = check_weight_condition(LogPower(2), 'dn')
        self.assertTrue(sigma.holds)
        for C in (2, 4, 8, 16):
            delta = sigma.witness(f"delta[C={C}]")
            self.assertGreater(C * delta, 1.0)
            self.assertLess(delta, 1.0)

    def test_little_o_conditions(self):
        w = GevreyPower(2)
        self.assertTrue(check_weight_condition(w, 'om3').holds)
        self.assertTrue(check_weight_condition(w, 'om4').holds)
        self.assertTrue(check_weight_condition(w, 'om5').holds)
        self.assertTrue(check_weight_condition(GevreyPower(1), 'om5').fails)

    def test_non_quasianalyticity(self):
        report = check_weight_condition(GevreyPower(2), 'om_nq')
        self.assertTrue(report.holds)
        # int_1^inf v^{-3/2} dv = 2
        self.assertAlmostEqual(report.witness('integral'), 2.0, places=4)
        self.assertTrue(check_weight_condition(GevreyPower(1), 'om_nq').fails)

    def test_strong_non_quasianalyticity(self):
        self.assertTrue(check_weight_condition(GevreyPower(2), 'om_snq').holds)
        self.assertTrue(check_weight_condition(GevreyPower(1), 'om_snq').fails)

    def test_snq_iterates_to_K_squared(self):
        report = check_weight_condition(GevreyPower(2), 'om_snq')
        K = report.witness('K')
        # omega(K^2 t)/omega(t) = K for the square root
        self.assertAlmostEqual(report.witness('limsup_ratio_K2'), K, places=6)
        self.assertLess(report.witness('limsup_ratio_K2'), K * K)

    def test_squaring(self):
        self.assertTrue(check_weight_condition(LogPower(2), 'om7').holds)
        self.assertTrue(check_weight_condition(GevreyPower(2), 'om7').fails)

    def test_unknown_condition(self):
        with self.assertRaises(ConfigError):
            check_weight_condition(GevreyPower(2), 'om9')

    def test_kappa(self):
        # t int_t^inf v^{-3/2} dv = 2 sqrt(t)
        res = kappa(GevreyPower(2), 4.0)
        self.assertAlmostEqual(res.value, 4.0, places=4)
        self.assertEqual(kappa(GevreyPower(2), 0.0).value, 0.0)


class TestComparingWeights(unittest.TestCase):

    def test_preceq(self):
        self.assertTrue(compare_weights(GevreyPower(1), GevreyPower(2), 'preceq').holds)
        self.assertTrue(compare_weights(GevreyPower(2), GevreyPower(1), 'preceq').fails)

    def test_sim(self):
        doubled = CustomWeight(lambda t: 2 * np.sqrt(t), name='twice')
        report = compare_weights(GevreyPower(2), doubled, 'sim')
        self.assertTrue(report.holds)
        self.assertTrue(compare_weights(GevreyPower(2), GevreyPower(3), 'sim').fails)

    def test_gevrey_against_log_power(self):
        # log^2 t = O(sqrt t) but not conversely
        self.assertTrue(compare_weights(GevreyPower(2), LogPower(2), 'preceq').holds)
        self.assertTrue(compare_weights(LogPower(2), GevreyPower(2), 'preceq').fails)

    def test_kappa_equivalent_under_snq(self):
        w = GevreyPower(2)
        self.assertTrue(check_weight_condition(w, 'om_snq').holds)
        report = compare_weights(w, Kappa(w), 'sim', grid=TailGrid(1e2, 1e6, 40))
        self.assertTrue(report.holds)
        # kappa of sqrt(t) is 2 sqrt(t)
        self.assertAlmostEqual(report.witness('C'), 2.0, places=2)


# -------------------------------------------------------------------------------
# Main
# -------------------------------------------------------------------------------

if __name__ == "__main__":
    unittest.main()
