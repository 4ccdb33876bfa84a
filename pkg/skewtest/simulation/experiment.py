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
"""Simulation study of posterior model probabilities.

For every cell (sample size n, true shape lam) and replicate r, a sample is
drawn from the skew-symmetric model at (0, 1, lam) with a seed derived from
(master_seed, cell, r) alone, and every configured prior is tested on it.
Results do not depend on execution order or on the number of workers.
"""
from __future__ import absolute_import
from __future__ import division

import collections
import csv
import json
import logging
import os

import matplotlib.cbook
import numpy as np

from skewtest import dataio
from skewtest import evidence
from skewtest import kernels
from skewtest import workqueue
from skewtest.errors import DataError
from skewtest.errors import InvalidArgumentError
from skewtest.errors import NumericalError
from skewtest.simulation.report import Report
from skewtest.simulation.result import ReplicateFailure
from skewtest.simulation.result import ReplicateKey
from skewtest.simulation.result import ReplicateSuccess


def logger():
    return logging.getLogger(__name__)


# Spawn-key prefix of the rate-study bootstrap stream; replicate streams
# use (cell, replicate) keys.
BOOTSTRAP_KEY = 2 ** 31
BOOTSTRAP_SAMPLES = 200


def derive_seed(master_seed, cell, replicate):
    """The seed of replicate r of cell c.

    >>> derive_seed(7, 2, 5).spawn_key
    (2, 5)
    """
    return np.random.SeedSequence(master_seed, spawn_key=(cell, replicate))


def run_replicate(worker, baseline, engine, ila, master_seed, key):
    """Tests every prior of worker.data on one simulated sample."""
    priors = worker.data
    seed = derive_seed(master_seed, key.cell, key.replicate)
    model = kernels.SkewSymmetricModel(baseline, 0.0, 1.0, key.lam)
    values = kernels.sample_skew(model, key.n, seed)
    label = 'n={} lambda={:g} r={}'.format(key.n, key.lam, key.replicate)
    try:
        results = evidence.bayes_tests(
            evidence.Dataset(values, label), baseline, priors, engine, ila)
    except (NumericalError, DataError) as ex:
        logger().warning('%s failed: %s', label, ex)
        return [ReplicateFailure(key, prior.name, str(ex))
                for prior in priors]
    return [ReplicateSuccess(key, result.prior, result.post_prob_alt,
                             result.log_bf_10) for result in results]


def run_experiment(cfg, threads=1, printer=None, cells=None):
    """Runs every replicate of every cell.

    Args:
        cfg: SimConfig.
        threads: Worker processes; 1 runs in the calling process.
        printer: Optional Printer for per-replicate outcomes.
        cells: Subset of cfg.cells() to run; all of them by default.

    Returns:
        A SimResult.
    """
    priors = cfg.make_priors()
    ila = cfg.ila_config()
    queue = workqueue.make_work_queue(threads, priors)
    report = Report()
    if cells is None:
        cells = cfg.cells()
    try:
        for cell, n, lam in cells:
            for replicate in range(cfg.replications):
                queue.add_task(run_replicate, cfg.baseline, cfg.engine, ila,
                               cfg.master_seed,
                               ReplicateKey(cell, n, lam, replicate))
        logger().info('queued %d replicates', queue.num_tasks)
        while not queue.finished():
            for result in queue.get_result():
                report.add_result(result)
                if printer is not None:
                    printer.print_result(result)
    finally:
        queue.terminate()
        queue.join()
    return SimResult(cfg, [prior.name for prior in priors], report, cells)


class SimResult(object):
    """Replicate rows and per-cell summaries of an experiment."""
    COLUMNS = ('n', 'true_lambda', 'prior', 'replicate', 'post_prob_alt',
               'log_bf_10', 'failed')

    def __init__(self, cfg, prior_names, report, cells=None):
        self.cfg = cfg
        self.cells = cfg.cells() if cells is None else list(cells)
        self.prior_names = prior_names
        self.report = report
        self.results = report.sorted_results(prior_names)

    def rows(self):
        for result in self.results:
            yield (result.key.n, result.key.lam, result.prior,
                   result.key.replicate, result.post_prob_alt,
                   result.log_bf_10, result.failed())

    @property
    def degraded(self):
        return any(cell_report.degraded
                   for cell_report in self.report.by_cell().values())

    @property
    def warnings(self):
        messages = []
        for cell, cell_report in sorted(self.report.by_cell().items()):
            if cell_report.degraded:
                messages.append(
                    'n={} lambda={:g}: {} of replicates failed'.format(
                        cell[1], cell[2], '{:.1%}'.format(
                            cell_report.failure_rate)))
        return messages

    def values(self, n, lam, prior, field='post_prob_alt'):
        """Finite values of a field for one cell and prior."""
        return np.array([
            getattr(result, field) for result in self.results
            if result.key.n == n and result.key.lam == lam and
            result.prior == prior and result.passed()])

    def summary(self):
        cells = []
        for _, n, lam in self.cells:
            for prior in self.prior_names:
                probs = self.values(n, lam, prior)
                entry = collections.OrderedDict([
                    ('n', n), ('lambda', lam), ('prior', prior),
                    ('count', int(probs.size)),
                    ('failures', self.cfg.replications - int(probs.size)),
                ])
                if probs.size:
                    stats = matplotlib.cbook.boxplot_stats(probs, whis=1.5)[0]
                    for name in ('whislo', 'q1', 'med', 'q3', 'whishi'):
                        entry[name] = float(stats[name])
                    entry['mean_log_bf_10'] = float(np.mean(
                        self.values(n, lam, prior, 'log_bf_10')))
                cells.append(entry)
        return collections.OrderedDict([
            ('cells', cells),
            ('failed_replicates', len(self.report.failed_replicates)),
            ('degraded', self.degraded),
            ('warnings', self.warnings),
        ])

    def write_csv(self, path):
        with open(path, 'w', newline='') as csv_file:
            writer = csv.writer(csv_file, lineterminator='\n')
            writer.writerow(self.COLUMNS)
            for n, lam, prior, replicate, prob, log_bf, failed in self.rows():
                writer.writerow([n, '%.17g' % lam, prior, replicate,
                                 '%.17g' % prob, '%.17g' % log_bf,
                                 int(failed)])

    def write_summary(self, path):
        with open(path, 'w') as summary_file:
            json.dump(self.summary(), summary_file, indent=2)
            summary_file.write('\n')

    def write_boxplots(self, out_dir):
        """One SVG per cell with a box per prior; returns the paths."""
        paths = []
        for _, n, lam in self.cells:
            groups = collections.OrderedDict()
            for prior in self.prior_names:
                probs = self.values(n, lam, prior)
                if probs.size:
                    groups[prior] = probs
            if not groups:
                logger().warning('n=%d lambda=%g: no results to plot', n, lam)
                continue
            path = os.path.join(out_dir, 'boxplot_n{}_lambda{:g}.svg'.format(
                n, lam))
            dataio.emit_plot('boxplot', {
                'groups': groups,
                'title': 'n = {}, lambda = {:g}'.format(n, lam),
                'ylabel': 'posterior probability of the alternative',
            }, path)
            paths.append(path)
        return paths


class RateStudy(object):
    """Slopes of the mean log Bayes factor against log n under the null."""
    def __init__(self, sample_sizes, means, slopes, standard_errors):
        self.sample_sizes = sample_sizes
        self.means = means
        self.slopes = slopes
        self.standard_errors = standard_errors

    def to_dict(self):
        return collections.OrderedDict([
            ('sample_sizes', self.sample_sizes),
            ('priors', collections.OrderedDict(
                (prior, collections.OrderedDict([
                    ('slope', self.slopes[prior]),
                    ('standard_error', self.standard_errors[prior]),
                    ('mean_log_bf_10', self.means[prior]),
                ])) for prior in self.slopes)),
        ])

    def to_string(self):
        lines = ['{:<14} {:>9} {:>9}'.format('prior', 'slope', 'se')]
        for prior, slope in self.slopes.items():
            lines.append('{:<14} {:>9.4f} {:>9.4f}'.format(
                prior, slope, self.standard_errors[prior]))
        return '\n'.join(lines)


def rate_study(cfg, threads=1, printer=None, bootstrap=BOOTSTRAP_SAMPLES):
    """Runs the null cells and fits log BF rates per prior.

    The slope is the least-squares slope of the cell-mean log Bayes factor
    on log n; its standard error comes from resampling replicates within
    each sample size. The null cells keep their index in cfg.cells(), so
    their replicates reuse the seeds of a full experiment.

    Raises:
        InvalidArgumentError: fewer than 3 sample sizes.
    """
    if len(cfg.sample_sizes) < 3:
        raise InvalidArgumentError('rate study needs at least 3 sample sizes')
    if 0.0 not in cfg.lambdas:
        cfg = cfg.replace(lambdas=list(cfg.lambdas) + [0.0])
    null_cells = [cell for cell in cfg.cells() if cell[2] == 0.0]
    result = run_experiment(cfg, threads, printer, null_cells)
    log_n = np.log(cfg.sample_sizes)
    rng = np.random.default_rng(np.random.SeedSequence(
        cfg.master_seed, spawn_key=(BOOTSTRAP_KEY,)))

    means = collections.OrderedDict()
    slopes = collections.OrderedDict()
    errors = collections.OrderedDict()
    for prior in result.prior_names:
        samples = [result.values(n, 0.0, prior, 'log_bf_10')
                   for n in cfg.sample_sizes]
        if any(sample.size == 0 for sample in samples):
            raise NumericalError(
                'rate study: every replicate of a cell failed for {}'.format(
                    prior))
        cell_means = np.array([np.mean(sample) for sample in samples])
        means[prior] = cell_means.tolist()
        slopes[prior] = float(np.polyfit(log_n, cell_means, 1)[0])
        replicas = np.empty(bootstrap)
        for b in range(bootstrap):
            resampled = [np.mean(rng.choice(sample, sample.size))
                         for sample in samples]
            replicas[b] = np.polyfit(log_n, resampled, 1)[0]
        errors[prior] = float(np.std(replicas, ddof=1))
        logger().info('%s: slope %.4f (se %.4f)', prior, slopes[prior],
                      errors[prior])
    return RateStudy(list(cfg.sample_sizes), means, slopes, errors), result
