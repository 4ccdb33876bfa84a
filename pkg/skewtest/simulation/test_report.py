#
# Copyright (C) 2026 The skewtest Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
"""Tests for skewtest.simulation.report and printers."""
import io
import unittest

import skewtest.simulation.printers
import skewtest.simulation.report
from skewtest.simulation.result import ReplicateFailure
from skewtest.simulation.result import ReplicateKey
from skewtest.simulation.result import ReplicateSuccess


def success(cell, replicate, prior='dimom'):
    key = ReplicateKey(cell, 20, float(cell), replicate)
    return ReplicateSuccess(key, prior, 0.5, 0.0)


def failure(cell, replicate, prior='dimom'):
    key = ReplicateKey(cell, 20, float(cell), replicate)
    return ReplicateFailure(key, prior, 'every MLE seed failed')


class ReportTest(unittest.TestCase):
    def test_counts(self):
        """Passes, failures and failed replicates are counted."""
        report = skewtest.simulation.report.Report()
        report.add_result(success(0, 0))
        report.add_result(failure(0, 1))
        report.add_result(failure(0, 1, 'jeffreys'))
        report.add_result(success(1, 0))
        self.assertEqual(4, report.num_results)
        self.assertEqual(2, report.num_failed)
        self.assertEqual(2, report.num_passed)
        self.assertEqual(1, len(report.failed_replicates))
        self.assertAlmostEqual(1.0 / 3.0, report.failure_rate)
        self.assertFalse(report.successful)

    def test_by_cell(self):
        """Cells are keyed by (cell, n, lambda) and degrade separately."""
        report = skewtest.simulation.report.Report()
        for replicate in range(100):
            report.add_result(success(0, replicate))
            if replicate < 2:
                report.add_result(failure(1, replicate))
            else:
                report.add_result(success(1, replicate))
        cells = report.by_cell()
        self.assertEqual(set([(0, 20, 0.0), (1, 20, 1.0)]), set(cells))
        self.assertFalse(cells[(0, 20, 0.0)].degraded)
        self.assertTrue(cells[(1, 20, 1.0)].degraded)
        self.assertAlmostEqual(0.02, cells[(1, 20, 1.0)].failure_rate)

    def test_sorted_results(self):
        """Results sort by cell, replicate and the given prior order."""
        report = skewtest.simulation.report.Report()
        report.add_result(success(1, 0, 'jeffreys'))
        report.add_result(success(0, 1, 'dimom'))
        report.add_result(success(0, 1, 'jeffreys'))
        report.add_result(success(0, 0, 'dimom'))
        ordered = report.sorted_results(['jeffreys', 'dimom'])
        self.assertEqual(
            [(0, 0, 'dimom'), (0, 1, 'jeffreys'), (0, 1, 'dimom'),
             (1, 0, 'jeffreys')],
            [(r.key.cell, r.key.replicate, r.prior) for r in ordered])


class PrinterTest(unittest.TestCase):
    def test_failures_only(self):
        """By default only failures are printed."""
        out = io.StringIO()
        printer = skewtest.simulation.printers.FilePrinter(out,
                                                           use_color=False)
        printer.print_result(success(0, 0))
        printer.print_result(failure(0, 1))
        self.assertEqual(
            'FAIL n=20 lambda=0 replicate=1 [dimom]: every MLE seed failed\n',
            out.getvalue())

    def test_summary(self):
        """The summary has a total line and one line per cell."""
        out = io.StringIO()
        printer = skewtest.simulation.printers.FilePrinter(
            out, use_color=False, show_all=True)
        report = skewtest.simulation.report.Report()
        report.add_result(success(0, 0))
        report.add_result(failure(1, 0))
        printer.print_result(report.results[0])
        printer.print_summary(report)
        lines = out.getvalue().splitlines()
        self.assertTrue(lines[0].startswith('OK n=20 lambda=0'))
        self.assertIn('OK 1/2 FAIL 1/2', lines)
        self.assertIn('n=20 lambda=1: OK 0/1 FAIL 1/1', lines)
        self.assertIn('  DEGRADED: failure rate 100.0%', lines)
