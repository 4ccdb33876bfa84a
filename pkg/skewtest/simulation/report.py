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
"""Collects replicate outcomes of an experiment."""

# A cell whose replicate failure rate exceeds this is degraded.
DEGRADED_FAILURE_RATE = 0.01


class Report(object):
    """Replicate results of an experiment, or of one cell of it."""
    def __init__(self):
        self.results = []

    def add_result(self, result):
        self.results.append(result)

    def by_cell(self):
        """Maps (cell, n, lambda) to the Report of that cell."""
        cell_reports = {}
        for result in self.results:
            cell = (result.key.cell, result.key.n, result.key.lam)
            if cell not in cell_reports:
                cell_reports[cell] = Report()
            cell_reports[cell].add_result(result)
        return cell_reports

    def sorted_results(self, prior_order):
        """Results ordered by cell, replicate and prior_order."""
        rank = dict((name, i) for i, name in enumerate(prior_order))
        return sorted(self.results,
                      key=lambda r: r.sort_key + (rank.get(r.prior, 0),))

    @property
    def successful(self):
        return self.num_failed == 0

    @property
    def num_results(self):
        return len(self.results)

    @property
    def num_failed(self):
        return len(self.all_failed)

    @property
    def num_passed(self):
        return len(self.all_passed)

    @property
    def all_failed(self):
        return [result for result in self.results if result.failed()]

    @property
    def all_passed(self):
        return [result for result in self.results if result.passed()]

    @property
    def failed_replicates(self):
        return set(result.key for result in self.all_failed)

    @property
    def failure_rate(self):
        replicates = set(result.key for result in self.results)
        if not replicates:
            return 0.0
        return len(self.failed_replicates) / float(len(replicates))

    @property
    def degraded(self):
        return self.failure_rate > DEGRADED_FAILURE_RATE
