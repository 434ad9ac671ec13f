#!/usr/bin/env python3
# -*- coding: utf-8 -*-

'''
Test script for the growth index gamma
Latest version can be found at https://github.com/letuananh/pyultradiff

:copyright: (c) 2021 Le Tuan Anh <tuananh.ke@gmail.com>
:license: MIT, see LICENSE for more details.
'''

import os
import math
import unittest
import logging
from pathlib import Path

from pyultradiff import GevreyPower, LogPower, WeightSequence, GammaConfig, estimate_gamma, verify_index_identity
from pyultradiff.errors import ConfigError
from pyultradiff.gamma import gamma_of_sequence


# -------------------------------------------------------------------------------
# Configuration
# -------------------------------------------------------------------------------

TEST_DIR = Path(os.path.dirname(os.path.realpath(__file__)))


def getLogger():
    return logging.getLogger(__name__)

# ------------------------------------------------------------------------------
# Test cases
# ------------------------------------------------------------------------------

class TestEstimates(unittest.TestCase):

    def test_gevrey(self):
        est = estimate_gamma(GevreyPower(2))
        self.assertTrue(est.contains(2.0, tol=0.05), msg=str(est))
        self.assertFalse(est.inconclusive)
        self.assertFalse(est.exceeds_max)
        self.assertTrue(est.witness_K)
        self.assertTrue(estimate_gamma(GevreyPower(1)).contains(1.0, tol=0.05))

    def test_gevrey_brackets(self):
        for s in (1.5, 4.0):
            est = estimate_gamma(GevreyPower(s))
            self.assertTrue(est.contains(s, tol=0.05), msg=str(est))
            self.assertIsNotNone(est.upper)
            self.assertLessEqual(est.upper - est.lower, 0.1)

    def test_log_power_exceeds_every_bound(self):
        est = estimate_gamma(LogPower(2))
        self.assertTrue(est.exceeds_max)
        self.assertGreaterEqual(est.lower, GammaConfig().gamma_max - GammaConfig().tol)

    def test_serialization(self):
        est = estimate_gamma(GevreyPower(2))
        self.assertEqual(set(est.to_dict()), {'subject', 'lower', 'upper', 'exceeds_max', 'inconclusive',
                                              'witness_K'})
        self.assertTrue(str(est).startswith('gamma('))

    def test_sequences(self):
        with self.assertRaises(ConfigError):
            gamma_of_sequence([1, 2, 3])
        est = gamma_of_sequence(WeightSequence.gevrey(2.0))
        self.assertLessEqual(est.lower, 2.0 + est.config.tol)
        self.assertGreater(est.upper_value, 1.5)


class TestIdentities(unittest.TestCase):

    def test_identities_for_gevrey(self):
        w = GevreyPower(2)
        for kind in ('om1_iff_positive', 'strong_iff_above_one', 'scaling'):
            report = verify_index_identity(kind, w)
            self.assertTrue(report.holds, msg=f"{kind}: {report}")

    def test_shifted_indices(self):
        # gamma((omega^star)^iota) = 1, gamma(omega_w) = 1, gamma of p! W and of the lower envelope = 3
        for w in (GevreyPower(2), GevreyPower(4)):
            for kind in ('upper_conjugate_shift', 'matrix_chain', 'lower_envelope_shift', 'factorial_shift'):
                report = verify_index_identity(kind, w)
                self.assertTrue(report.holds, msg=f"{kind} for {w.name}: {report}")

    def test_ramified_shift(self):
        report = verify_index_identity('ramified_shift', GevreyPower(2))
        self.assertEqual(report.anchor, 'gamma/ramified-shift')
        self.assertTrue(report.holds, msg=str(report))
        # q gamma - q + 1 = 3 for q = 2
        self.assertTrue(math.isfinite(report.witness('left_upper')))
        self.assertLessEqual(report.witness('left_lower'), 3.15)
        self.assertGreaterEqual(report.witness('left_upper'), 2.85)
        self.assertTrue(verify_index_identity('ramified_shift', LogPower(2)).inconclusive)

    def test_unknown_identity(self):
        with self.assertRaises(ConfigError):
            verify_index_identity('bogus', GevreyPower(2))
        with self.assertRaises(ConfigError):
            verify_index_identity('equivalence_invariance', GevreyPower(2))


# -------------------------------------------------------------------------------
# Main
# -------------------------------------------------------------------------------

if __name__ == "__main__":
    unittest.main()
