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
"""Console rendering of replicate outcomes and experiment summaries."""
from __future__ import print_function

import os
import sys


_COLORS = {
    'green': '\033[92m',
    'red': '\033[91m',
    'yellow': '\033[93m',
}


def maybe_color(text, color, do_color):
    """Wraps text in an ANSI color when do_color is set.

    >>> maybe_color('OK', 'green', False)
    'OK'
    """
    if not do_color:
        return text
    return _COLORS[color] + text + '\033[0m'


def format_stats_str(report, use_color):
    pass_label = maybe_color('OK', 'green', use_color)
    fail_label = maybe_color('FAIL', 'red', use_color)
    return '{pl} {p}/{t} {fl} {f}/{t}'.format(
        pl=pass_label, p=report.num_passed,
        fl=fail_label, f=report.num_failed,
        t=report.num_results)


class Printer(object):
    def print_result(self, result):
        raise NotImplementedError

    def print_summary(self, report):
        raise NotImplementedError


class FilePrinter(Printer):
    def __init__(self, to_file, use_color=None, show_all=False):
        self.file = to_file
        self.use_color = use_color
        self.show_all = show_all

        if self.use_color is None:
            self.use_color = to_file.isatty() and os.name != 'nt'

    def print_result(self, result):
        if not self.show_all and not result.failed():
            return
        print(result.to_string(colored=self.use_color), file=self.file)

    def print_summary(self, report):
        print(file=self.file)
        print(format_stats_str(report, self.use_color), file=self.file)
        for cell, cell_report in sorted(report.by_cell().items()):
            _, n, lam = cell
            print('n={} lambda={:g}: {}'.format(
                n, lam, format_stats_str(cell_report, self.use_color)),
                  file=self.file)
            if cell_report.degraded:
                print('  ' + maybe_color(
                    'DEGRADED: failure rate {:.1%}'.format(
                        cell_report.failure_rate), 'yellow', self.use_color),
                      file=self.file)


class StdoutPrinter(FilePrinter):
    def __init__(self, use_color=None, show_all=False):
        super(StdoutPrinter, self).__init__(sys.stdout, use_color, show_all)
