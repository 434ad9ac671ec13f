#!/usr/bin/env python3
# -*- coding: utf-8 -*-

'''
Test script for jets, complexification, ramification and the operator Y
Latest version can be found at https://github.com/letuananh/pyultradiff

:copyright: (c) 2021 Le Tuan Anh <tuananh.ke@gmail.com>
:license: MIT, see LICENSE for more details.
'''

import os
import tempfile
import unittest
import logging
from fractions import Fraction
from pathlib import Path

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from pyultradiff import Jet, WeightSequence, GevreyPower, jet_norm, complexify, ramify_jet, y_operator_coefficients
from pyultradiff import build_ramified, build_matrix
from pyultradiff.errors import ConfigError, DomainError
from pyultradiff.jets import (random_jet, dbar_residual, check_complexification, ramified_taylor_coefficients,
                              check_ramified_taylor, check_ramified_membership, monomial_image, check_y_bound)


# -------------------------------------------------------------------------------
# Configuration
# -------------------------------------------------------------------------------

TEST_DIR = Path(os.path.dirname(os.path.realpath(__file__)))


def getLogger():
    return logging.getLogger(__name__)

# ------------------------------------------------------------------------------
# Test cases
# ------------------------------------------------------------------------------

class TestJets(unittest.TestCase):

    def test_one_dimensional(self):
        jet = Jet([1, 2j, 3])
        self.assertEqual(jet.order, 2)
        self.assertEqual(len(jet), 3)
        self.assertEqual(jet + jet, 2 * jet)
        np.testing.assert_array_equal(jet.total_degree(), [0, 1, 2])
        with self.assertRaises(ConfigError):
            Jet([1, float('inf')])
        with self.assertRaises(ConfigError):
            Jet([1, 2], dimension=2)

    def test_two_dimensional_is_triangular(self):
        jet = Jet(np.ones((3, 3)), dimension=2)
        self.assertEqual(jet.coeffs[2, 2], 0)
        self.assertEqual(jet.coeffs[1, 2], 0)
        self.assertEqual(jet.coeffs[1, 1], 1)
        with self.assertRaises(ConfigError):
            Jet(np.ones((2, 3)), dimension=2)

    def test_random_jets(self):
        a = random_jet(16, seed=3)
        self.assertEqual(a, random_jet(16, seed=3))
        self.assertNotEqual(a, random_jet(16, seed=4))
        self.assertTrue(np.all(np.abs(a.coeffs) <= 1.0))
        bounded = random_jet(16, seed=3, bound=WeightSequence.gevrey(1.0, 20))
        self.assertLessEqual(jet_norm(bounded, WeightSequence.gevrey(1.0, 20)), 1.0 + 1e-12)

    def test_csv(self):
        jet = Jet([1, 0.5 - 2j, 3j])
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'jet.csv'
            jet.to_csv(path)
            self.assertEqual(path.read_text().splitlines()[0], 'p,re,im')
            self.assertEqual(Jet.from_csv(path), jet)


class TestNorms(unittest.TestCase):

    def test_norm_against_sequence(self):
        seq = WeightSequence.gevrey(1.0, 10)
        self.assertAlmostEqual(jet_norm(Jet.from_sequence(seq), seq), 1.0)
        self.assertAlmostEqual(jet_norm(Jet([0, 0, 6]), seq), 3.0)
        self.assertEqual(jet_norm(Jet([0, 0]), seq), 0.0)
        with self.assertRaises(ConfigError):
            jet_norm(Jet(np.ones(12)), seq)

    def test_norm_against_weight(self):
        jet = Jet(np.ones(8))
        self.assertAlmostEqual(jet_norm(jet, GevreyPower(2), l=1.0), jet_norm(jet, (GevreyPower(2), 1.0)))
        with self.assertRaises(ConfigError):
            jet_norm(jet, GevreyPower(2))


class TestComplexification(unittest.TestCase):

    def test_examples(self):
        cj = complexify(Jet([1, 2, 3]))
        self.assertEqual(cj.coeffs[0, 1], 2j)
        self.assertEqual(cj.coeffs[1, 1], 3j)
        self.assertEqual(cj.coeffs[0, 2], -3)
        self.assertEqual(cj.coeffs[2, 0], 3)
        with self.assertRaises(ConfigError):
            complexify(cj)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(min_value=0, max_value=1000), st.integers(min_value=2, max_value=40))
    def test_dbar_flat_and_norm_preserving(self, seed, length):
        jet = random_jet(length, seed=seed)
        self.assertEqual(dbar_residual(complexify(jet)), 0.0)
        report = check_complexification(jet, WeightSequence.gevrey(1.0, 64))
        self.assertTrue(report.holds)


class TestRamification(unittest.TestCase):

    def test_ramify(self):
        star = ramify_jet(Jet(np.ones(3)), 2)
        np.testing.assert_array_equal(star.coeffs.real, [1, 0, 2, 0, 12])
        self.assertEqual(ramify_jet(Jet([1, 2]), 1), Jet([1, 2]))
        with self.assertRaises(ConfigError):
            ramify_jet(Jet([1, 2]), 0)

    def test_overflow(self):
        with self.assertRaises(DomainError):
            ramify_jet(Jet(np.ones(201)), 2)

    def test_long_bounded_jet(self):
        row = build_matrix(GevreyPower(2), (1.0,)).row(1.0)
        jet = random_jet(64, 0, bound=row)
        # (2j)!/j! W^1_j passes 1e308 well before j = 63
        with self.assertRaises(DomainError):
            ramify_jet(jet, 2)
        report = check_ramified_taylor(jet, 2, 8)
        self.assertTrue(report.holds)
        self.assertEqual(report.anchor, 'jets/ramified-taylor')
        with self.assertRaises(ConfigError):
            check_ramified_taylor(jet, 2, 65)
        with self.assertRaises(ConfigError):
            ramified_taylor_coefficients(jet, 2, 0)

    def test_taylor_polynomials(self):
        jet = random_jet(6, seed=1)
        direct, via_star = ramified_taylor_coefficients(jet, 3, 5)
        np.testing.assert_allclose(direct, via_star, rtol=1e-12, atol=0)
        self.assertTrue(check_ramified_taylor(jet, 3, 5).holds)

    def test_membership_of_the_zero_jet(self):
        rm = build_ramified(GevreyPower(2), 2, require_gamma=False)
        report = check_ramified_membership(Jet(np.zeros(8)), 2, rm, 1.0)
        self.assertTrue(report.holds)


class TestYOperator(unittest.TestCase):

    def test_first_rows(self):
        y = y_operator_coefficients(2, 4)
        self.assertEqual(y.exact(1, 1), Fraction(1, 2))
        self.assertEqual(y.exact(2, 1), Fraction(-1, 4))
        self.assertEqual(y.exact(2, 2), Fraction(1, 4))
        self.assertEqual(y.exact(2, 3), 0)
        self.assertAlmostEqual(y.value(2, 1), -0.25)
        with self.assertRaises(ConfigError):
            y.exact(5, 1)

    def test_derivative_for_q_one(self):
        y = y_operator_coefficients(1, 6)
        for j, k, c in y.items():
            self.assertEqual(c, 1 if j == k else 0)

    def test_monomials(self):
        y = y_operator_coefficients(3, 8)
        for m in (0, 2, 5, 11, 30):
            for j in range(1, 9):
                self.assertEqual(y.apply_to_monomial(m, j), monomial_image(m, j, 3), msg=f"m={m}, j={j}")

    def test_bound(self):
        for q in (1, 2, 3):
            self.assertTrue(check_y_bound(y_operator_coefficients(q, 30)).holds)

    def test_large_indices(self):
        y = y_operator_coefficients(2, 25)
        with self.assertRaises(DomainError):
            y.value(21, 1)
        self.assertTrue(np.isfinite(y.log_abs(25, 25)))
        with self.assertRaises(ConfigError):
            y_operator_coefficients(0, 3)


# -------------------------------------------------------------------------------
# Main
# -------------------------------------------------------------------------------

if __name__ == "__main__":
    unittest.main()
