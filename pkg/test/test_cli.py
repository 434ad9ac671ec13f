#!/usr/bin/env python3
# -*- coding: utf-8 -*-

'''
Test script for the pyultradiff command line
Latest version can be found at https://github.com/letuananh/pyultradiff

:copyright: (c) 2021 Le Tuan Anh <tuananh.ke@gmail.com>
:license: MIT, see LICENSE for more details.
'''

import io
import os
import json
import tempfile
import unittest
import logging
from contextlib import redirect_stdout
from pathlib import Path

from pyultradiff.cli import main, run, RunConfig, EXIT_OK, EXIT_FAILED, EXIT_CONFIG
from pyultradiff.render import Report, write_report, read_csv


# -------------------------------------------------------------------------------
# Configuration
# -------------------------------------------------------------------------------

TEST_DIR = Path(os.path.dirname(os.path.realpath(__file__)))


def getLogger():
    return logging.getLogger(__name__)

# ------------------------------------------------------------------------------
# Test cases
# ------------------------------------------------------------------------------

class TestCommandLine(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.out = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def test_analyze_weight(self):
        path = self.out / 'report.json'
        status = main(['analyze', 'weight', '--spec', 'gevrey:s=2', '--conditions', 'om1,om5,om_snq', '-o', str(path)])
        self.assertEqual(status, EXIT_OK)
        data = json.loads(path.read_text())
        self.assertEqual(data['tool'], 'pyultradiff')
        self.assertEqual(data['exit_status'], 0)
        self.assertEqual(sorted(r['condition'] for r in data['records']), ['om1', 'om5', 'om_snq'])
        self.assertTrue(all(r['verdict'] == 'holds_with_witness' for r in data['records']))

    def test_failing_condition(self):
        status = main(['analyze', 'weight', '--spec', 'gevrey:s=1', '--conditions', 'om5', '-o',
                       str(self.out / 'fail.json')])
        self.assertEqual(status, EXIT_FAILED)

    def test_bad_descriptor(self):
        path = self.out / 'bad.json'
        status = main(['analyze', 'weight', '--spec', 'bogus:s=1', '-o', str(path)])
        self.assertEqual(status, EXIT_CONFIG)
        data = json.loads(path.read_text())
        self.assertEqual(data['exit_status'], EXIT_CONFIG)
        self.assertEqual(data['tables']['error'][0][0], 'ConfigError')

    def test_analyze_sequence_to_stdout(self):
        buf = io.StringIO()
        with redirect_stdout(buf):
            status = main(['analyze', 'sequence', '--spec', 'gevrey-seq:s=2'])
        self.assertEqual(status, EXIT_OK)
        data = json.loads(buf.getvalue())
        self.assertEqual(sorted(r['condition'] for r in data['records']), ['lc', 'mg', 'nq'])

    def test_dump(self):
        csv = self.out / 'factorial.csv'
        status = main(['dump', 'sequence', '--spec', 'factorial', '--csv', str(csv), '-o', str(self.out / 'd.json')])
        self.assertEqual(status, EXIT_OK)
        data = read_csv(csv, ('p', 'logM'))
        self.assertEqual(data.shape, (257, 2))
        self.assertEqual(main(['dump', 'sequence', '--spec', 'factorial', '-o', str(self.out / 'e.json')]),
                         EXIT_CONFIG)

    def test_timing(self):
        path = self.out / 'timed.json'
        main(['analyze', 'weight', '--spec', 'gevrey:s=2', '--conditions', 'om1', '--timing', '-o', str(path)])
        self.assertIn('timing', json.loads(path.read_text()))


class TestReports(unittest.TestCase):

    def test_run_is_deterministic(self):
        config = RunConfig('analyze', {'target': 'weight', 'spec': 'gevrey:s=3', 'conditions': 'om1,om3'})
        first, status = run(config)
        second, _ = run(config)
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(first.to_json(), second.to_json())
        self.assertNotIn('timing', first.to_dict())

    def test_gamma_command(self):
        report, status = run(RunConfig('gamma', {'spec': 'gevrey:s=2'}))
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(len(report.gamma), 1)
        self.assertTrue(report.gamma[0].contains(2.0, tol=0.05))

    def test_jets_defaults(self):
        report, status = run(RunConfig('jets', {}))
        self.assertEqual(status, EXIT_OK, msg=report.to_json())
        self.assertNotIn('error', report.tables)
        self.assertEqual(len(report.records), 3)

    def test_existing_file_is_kept(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / 'report.json'
            path.write_text('keep')
            self.assertFalse(write_report(Report('noop'), path))
            self.assertEqual(path.read_text(), 'keep')
            self.assertTrue(write_report(Report('noop'), path, overwrite=True))
            self.assertEqual(json.loads(path.read_text())['command'], 'noop')


def _without_config(report):
    data = report.to_dict()
    del data['config']
    return json.dumps(data, sort_keys=True, indent=2)


class TestVerify(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls.serial = run(RunConfig('verify', {'suite': 'all', 'threads': 1}))
        cls.pooled = run(RunConfig('verify', {'suite': 'all', 'threads': 4}))

    def test_all_suites_pass(self):
        report, status = self.serial
        failed = [r.to_dict() for r in report.records if r.fails]
        self.assertEqual(status, EXIT_OK, msg=json.dumps(failed or report.tables, indent=2))
        self.assertNotIn('error', report.tables)
        anchors = {r.anchor.split('/')[0] for r in report.records}
        for family in ('sequence', 'weight', 'gamma', 'sandwich', 'matrix', 'flat', 'jets', 'surgery'):
            self.assertIn(family, anchors)
        self.assertEqual(len(report.gamma), 5)

    def test_thread_count_does_not_change_the_report(self):
        (serial, a), (pooled, b) = self.serial, self.pooled
        self.assertEqual(a, b)
        self.assertEqual(_without_config(serial), _without_config(pooled))

    def test_repeated_runs_are_identical(self):
        config = RunConfig('verify', {'suite': 'weights', 'threads': 2})
        first, status = run(config)
        second, _ = run(config)
        self.assertEqual(status, EXIT_OK)
        self.assertEqual(first.to_json(), second.to_json())

    def test_unknown_suite(self):
        _, status = run(RunConfig('verify', {'suite': 'bogus'}))
        self.assertEqual(status, EXIT_CONFIG)


# -------------------------------------------------------------------------------
# Main
# -------------------------------------------------------------------------------

if __name__ == "__main__":
    unittest.main()
