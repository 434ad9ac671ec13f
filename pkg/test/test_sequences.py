#!/usr/bin/env python3
# -*- coding: utf-8 -*-

'''
Test script for weight sequences
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

from pyultradiff import WeightSequence, parse_sequence, derive, check_sequence_condition, compare_sequences
from pyultradiff.errors import ConfigError, InvalidSequenceError
from pyultradiff.sequences import associated_function, h_function


# -------------------------------------------------------------------------------
# Configuration
# -------------------------------------------------------------------------------

TEST_DIR = Path(os.path.dirname(os.path.realpath(__file__)))


def getLogger():
    return logging.getLogger(__name__)

# ------------------------------------------------------------------------------
# Test cases
# ------------------------------------------------------------------------------

class TestBuildingSequences(unittest.TestCase):

    def test_gevrey_values(self):
        seq = WeightSequence.gevrey(1.0, p_max=10)
        self.assertEqual(seq.p_max, 10)
        self.assertAlmostEqual(seq.log_values[3], math.log(6))
        self.assertTrue(seq.normalized)
        self.assertTrue(seq.is_log_convex)
        seq2 = WeightSequence.gevrey(2.0, p_max=10)
        self.assertAlmostEqual(seq2.log_values[4], 2 * math.log(24))

    def test_descriptors(self):
        self.assertEqual(parse_sequence('factorial', 20).p_max, 20)
        seq = parse_sequence('gevrey-seq:s=1.5', 30)
        self.assertAlmostEqual(seq.log_values[5], 1.5 * math.log(120))
        with self.assertRaises(ConfigError):
            parse_sequence('gevrey-seq:t=1')
        with self.assertRaises(ConfigError):
            parse_sequence('nothing')

    def test_invalid_values(self):
        with self.assertRaises(InvalidSequenceError):
            WeightSequence.from_values([1, 1, 4, 0])
        with self.assertRaises(InvalidSequenceError):
            WeightSequence.from_values([1])
        # InvalidSequenceError is a configuration error
        with self.assertRaises(ConfigError):
            WeightSequence([0.0, float('nan'), 1.0])

    def test_read_csv(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'seq.csv'
            path.write_text('p,logM\n0,0\n1,0\n2,0.6931471805599453\n3,1.791759469228055\n')
            seq = WeightSequence.from_csv(path)
            self.assertEqual(seq.p_max, 3)
            self.assertAlmostEqual(seq.log_values[2], math.log(2))
            bad = Path(tmp) / 'bad.csv'
            bad.write_text('index,value\n0,0\n1,1\n')
            with self.assertRaises(ConfigError):
                WeightSequence.from_csv(bad)

    def test_extend_and_truncate(self):
        seq = WeightSequence.gevrey(2.0, p_max=8)
        self.assertEqual(seq.extended(32).p_max, 32)
        self.assertEqual(seq.truncated(4).p_max, 4)
        tabulated = WeightSequence.from_values([1, 1, 2, 6])
        with self.assertRaises(InvalidSequenceError):
            tabulated.extended(10)

    def test_derived(self):
        seq = WeightSequence.gevrey(2.0, p_max=16)
        divided = derive(seq, 'divided_m')
        np.testing.assert_allclose(divided.log_values, WeightSequence.gevrey(1.0, p_max=16).log_values, atol=1e-12)
        shifted = derive(WeightSequence.gevrey(1.0, p_max=16), 'factorial_shifted')
        np.testing.assert_allclose(shifted.log_values, seq.log_values, atol=1e-12)
        root = derive(seq, 'power', s=2.0)
        np.testing.assert_allclose(root.log_values, WeightSequence.gevrey(1.0, p_max=16).log_values, atol=1e-12)
        mu = derive(WeightSequence.gevrey(1.0, p_max=5), 'quotients_mu')
        np.testing.assert_allclose(np.exp(mu), [1, 1, 2, 3, 4, 5])
        with self.assertRaises(ConfigError):
            derive(seq, 'power')
        with self.assertRaises(ConfigError):
            derive(seq, 'unknown')


class TestAssociatedFunction(unittest.TestCase):

    def test_known_value(self):
        seq = WeightSequence.gevrey(1.0)
        # sup over p of 2.5^p / p! is reached at p = 2
        self.assertAlmostEqual(associated_function(seq, 2.5), math.log(3.125))
        self.assertEqual(associated_function(seq, 0.0), 0.0)
        self.assertEqual(associated_function(seq, 0.5), 0.0)

    def test_modes_agree(self):
        seq = WeightSequence.gevrey(1.0)
        t = np.geomspace(0.1, 50.0, 40)
        by_generator = associated_function(seq, t, mode='generator')
        by_sup = associated_function(seq, t, mode='sup')
        by_quotient = associated_function(seq, t, mode='quotient')
        np.testing.assert_allclose(by_generator, by_sup, rtol=1e-10, atol=1e-10)
        np.testing.assert_allclose(by_quotient, by_sup, rtol=1e-10, atol=1e-10)

    def test_negative_argument(self):
        with self.assertRaises(ConfigError):
            associated_function(WeightSequence.gevrey(1.0, 10), -1.0)
        with self.assertRaises(ConfigError):
            h_function(WeightSequence.gevrey(1.0, 10), 0.0)

    def test_h_function(self):
        seq = WeightSequence.gevrey(1.0)
        t = np.linspace(0.05, 1.0, 20)
        np.testing.assert_allclose(h_function(seq, t), h_function(seq, t, mode='inf'), rtol=1e-10)
        self.assertAlmostEqual(h_function(seq, 1.0), 1.0)

    @settings(max_examples=50, deadline=None)
    @given(st.floats(min_value=0.1, max_value=40.0), st.integers(min_value=0, max_value=60))
    def test_sup_dominates_every_term(self, t, p):
        seq = WeightSequence.gevrey(1.5)
        self.assertGreaterEqual(associated_function(seq, t) + 1e-9, p * math.log(t) - seq.log_values[p])


class TestSequenceConditions(unittest.TestCase):

    def test_log_convexity(self):
        self.assertTrue(check_sequence_condition(WeightSequence.gevrey(1.0, 64), 'lc').holds)
        report = check_sequence_condition(WeightSequence.from_values([1, 3, 4, 30]), 'lc')
        self.assertTrue(report.fails)
        self.assertEqual(report.counterexample, 1)
        self.assertTrue(check_sequence_condition(WeightSequence.gevrey(2.0, 64), 'slc').holds)

    def test_moderate_growth(self):
        report = check_sequence_condition(WeightSequence.gevrey(2.0), 'mg')
        self.assertTrue(report.holds)
        # the constant approaches 2^s from below
        self.assertLessEqual(report.witness('C'), 4.0 + 1e-9)
        self.assertGreater(report.witness('C'), 3.0)
        with self.assertRaises(ConfigError):
            check_sequence_condition(WeightSequence.gevrey(2.0), 'mixed_mg')
        mixed = check_sequence_condition(WeightSequence.gevrey(2.0), 'mixed_mg', other=WeightSequence.gevrey(2.0))
        self.assertTrue(mixed.holds)

    def test_non_quasianalyticity(self):
        self.assertTrue(check_sequence_condition(WeightSequence.gevrey(2.0), 'nq').holds)
        self.assertTrue(check_sequence_condition(WeightSequence.gevrey(1.0), 'nq').fails)

    def test_beta1_gamma1(self):
        seq = WeightSequence.gevrey(2.0)
        beta = check_sequence_condition(seq, 'beta1')
        self.assertTrue(beta.holds)
        self.assertEqual(beta.witness('Q'), 2.0)
        self.assertTrue(check_sequence_condition(seq, 'gamma1').holds)

    def test_unknown_condition(self):
        with self.assertRaises(ConfigError):
            check_sequence_condition(WeightSequence.gevrey(2.0), 'xx')


class TestComparingSequences(unittest.TestCase):

    def test_pointwise_order(self):
        small, big = WeightSequence.gevrey(1.0, 64), WeightSequence.gevrey(2.0, 64)
        self.assertTrue(compare_sequences(small, big, 'le').holds)
        report = compare_sequences(big, small, 'le')
        self.assertTrue(report.fails)
        self.assertEqual(report.counterexample, 2)

    def test_equivalence(self):
        a = WeightSequence.gevrey(1.0, 64)
        b = WeightSequence(a.log_values + np.arange(65) * math.log(3.0))
        report = compare_sequences(a, b, 'approx')
        self.assertTrue(report.holds)
        self.assertAlmostEqual(report.witness('C_reverse'), 3.0)
        self.assertTrue(compare_sequences(a, WeightSequence.gevrey(2.0, 64), 'precsim').holds)
        self.assertTrue(compare_sequences(WeightSequence.gevrey(2.0, 64), a, 'precsim').fails)


# -------------------------------------------------------------------------------
# Main
# -------------------------------------------------------------------------------

if __name__ == "__main__":
    unittest.main()
