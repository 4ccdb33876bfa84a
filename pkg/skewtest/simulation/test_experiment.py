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
"""Tests for skewtest.simulation.experiment."""
import collections
import csv
import json
import multiprocessing
import os
import shutil
import tempfile
import unittest

import mock
import numpy as np
import numpy.testing

import skewtest.simulation.experiment
from skewtest.errors import InvalidArgumentError
from skewtest.errors import NumericalError
from skewtest.simulation.config import SimConfig


SLOW = bool(os.environ.get('SKEWTEST_SLOW'))

FakeResult = collections.namedtuple(
    'FakeResult', ['prior', 'post_prob_alt', 'log_bf_10'])


def fake_tests(rates):
    """Returns a bayes_tests stand-in with log BF = rate * log n."""
    def bayes_tests(data, _baseline, priors, _engine, _ila):
        results = []
        for prior in priors:
            log_bf = rates[prior.name] * np.log(data.n)
            prob = 1.0 / (1.0 + np.exp(-log_bf))
            results.append(FakeResult(prior.name, prob, log_bf))
        return results
    return bayes_tests


def small_config(**overrides):
    document = {
        'sample_sizes': [20],
        'lambdas': [0.0, 3.0],
        'replications': 2,
        'priors': ['jeffreys', 'dimom'],
        'master_seed': 11,
        'engine': 'laplace',
    }
    document.update(overrides)
    return SimConfig.from_dict(document)


class DeriveSeedTest(unittest.TestCase):
    def test_independent_streams(self):
        """Seeds depend on (master, cell, replicate) only."""
        def first_draw(seed):
            return np.random.default_rng(seed).random()

        derive = skewtest.simulation.experiment.derive_seed
        self.assertEqual(first_draw(derive(3, 1, 4)),
                         first_draw(derive(3, 1, 4)))
        self.assertNotEqual(first_draw(derive(3, 1, 4)),
                            first_draw(derive(3, 4, 1)))
        self.assertNotEqual(first_draw(derive(3, 1, 4)),
                            first_draw(derive(4, 1, 4)))


class RunExperimentTest(unittest.TestCase):
    def setUp(self):
        self.out_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.out_dir)

    def test_rows(self):
        """Every (cell, replicate, prior) has one row, in order."""
        rates = {'jeffreys': -0.5, 'dimom': -1.5}
        with mock.patch('skewtest.evidence.bayes_tests',
                        side_effect=fake_tests(rates)):
            result = skewtest.simulation.experiment.run_experiment(
                small_config())
        rows = list(result.rows())
        self.assertEqual(8, len(rows))
        self.assertEqual(
            [(0.0, 0, 'jeffreys'), (0.0, 0, 'dimom'),
             (0.0, 1, 'jeffreys'), (0.0, 1, 'dimom'),
             (3.0, 0, 'jeffreys'), (3.0, 0, 'dimom'),
             (3.0, 1, 'jeffreys'), (3.0, 1, 'dimom')],
            [(lam, replicate, prior)
             for _, lam, prior, replicate, _, _, _ in rows])
        self.assertFalse(result.degraded)
        self.assertEqual([], result.warnings)
        self.assertAlmostEqual(-1.5 * np.log(20), rows[1][5])

    def test_outputs(self):
        """The CSV, summary and boxplots are written per cell."""
        rates = {'jeffreys': -0.5, 'dimom': -1.5}
        with mock.patch('skewtest.evidence.bayes_tests',
                        side_effect=fake_tests(rates)):
            result = skewtest.simulation.experiment.run_experiment(
                small_config())

        csv_path = os.path.join(self.out_dir, 'simulation.csv')
        result.write_csv(csv_path)
        with open(csv_path) as csv_file:
            table = list(csv.reader(csv_file))
        self.assertEqual(list(result.COLUMNS), table[0])
        self.assertEqual(9, len(table))
        self.assertEqual('0', table[1][-1])

        summary_path = os.path.join(self.out_dir, 'summary.json')
        result.write_summary(summary_path)
        with open(summary_path) as summary_file:
            summary = json.load(summary_file)
        self.assertEqual(4, len(summary['cells']))
        cell = summary['cells'][1]
        self.assertEqual('dimom', cell['prior'])
        self.assertEqual(2, cell['count'])
        self.assertAlmostEqual(-1.5 * np.log(20), cell['mean_log_bf_10'])
        self.assertLessEqual(cell['whislo'], cell['med'])
        self.assertFalse(summary['degraded'])

        paths = result.write_boxplots(self.out_dir)
        self.assertEqual(
            ['boxplot_n20_lambda0.svg', 'boxplot_n20_lambda3.svg'],
            [os.path.basename(path) for path in paths])
        for path in paths:
            self.assertTrue(os.path.exists(path))

    def test_failed_replicate(self):
        """A failed replicate is recorded for every prior and degrades."""
        passing = fake_tests({'jeffreys': -0.5, 'dimom': -1.5})

        def flaky(data, baseline, priors, engine, ila):
            if data.label == 'n=20 lambda=3 r=1':
                raise NumericalError('every MLE seed failed')
            return passing(data, baseline, priors, engine, ila)

        with mock.patch('skewtest.evidence.bayes_tests', side_effect=flaky):
            result = skewtest.simulation.experiment.run_experiment(
                small_config())
        failed = [row for row in result.rows() if row[-1]]
        self.assertEqual(2, len(failed))
        self.assertTrue(all(np.isnan(row[4]) for row in failed))
        self.assertTrue(result.degraded)
        self.assertEqual(['n=20 lambda=3: 50.0% of replicates failed'],
                         result.warnings)
        summary = result.summary()
        self.assertEqual(1, summary['failed_replicates'])
        self.assertEqual(1, summary['cells'][2]['failures'])

    def test_worker_count_invariance(self):
        """A pool of workers reproduces the in-process run."""
        cfg = small_config()
        serial = skewtest.simulation.experiment.run_experiment(cfg, 1)
        pooled = skewtest.simulation.experiment.run_experiment(cfg, 2)
        self.assertEqual([row[:4] for row in serial.rows()],
                         [row[:4] for row in pooled.rows()])
        numpy.testing.assert_array_equal(
            [row[4] for row in serial.rows()],
            [row[4] for row in pooled.rows()])


class RateStudyTest(unittest.TestCase):
    def test_needs_three_sizes(self):
        """Two sample sizes cannot give a slope with an error."""
        with self.assertRaises(InvalidArgumentError):
            skewtest.simulation.experiment.rate_study(
                small_config(sample_sizes=[20, 40]))

    def test_slopes(self):
        """Slopes recover the rate of the mean log Bayes factor."""
        rates = {'jeffreys': -0.5, 'dimom': -1.5}
        cfg = small_config(sample_sizes=[20, 40, 80])
        with mock.patch('skewtest.evidence.bayes_tests',
                        side_effect=fake_tests(rates)):
            study, result = skewtest.simulation.experiment.rate_study(
                cfg, bootstrap=20)
        self.assertEqual([(0, 20, 0.0), (2, 40, 0.0), (4, 80, 0.0)],
                         result.cells)
        self.assertEqual(6, len(result.summary()['cells']))
        self.assertAlmostEqual(-0.5, study.slopes['jeffreys'])
        self.assertAlmostEqual(-1.5, study.slopes['dimom'])
        self.assertAlmostEqual(0.0, study.standard_errors['dimom'])
        document = study.to_dict()
        self.assertEqual([20, 40, 80], document['sample_sizes'])
        self.assertEqual(['jeffreys', 'dimom'], list(document['priors']))
        self.assertTrue(study.to_string().startswith('prior'))

    def test_reuses_experiment_seeds(self):
        """Null replicates match the same cells of a full experiment."""
        def sample_mean(data, _baseline, priors, _engine, _ila):
            mean = float(np.mean(data.values))
            return [FakeResult(prior.name, 0.5, mean) for prior in priors]

        cfg = small_config(sample_sizes=[20, 40, 80], lambdas=[1.0, 0.0])
        with mock.patch('skewtest.evidence.bayes_tests',
                        side_effect=sample_mean):
            _, null_only = skewtest.simulation.experiment.rate_study(
                cfg, bootstrap=2)
            full = skewtest.simulation.experiment.run_experiment(cfg)
        self.assertEqual([(1, 20, 0.0), (3, 40, 0.0), (5, 80, 0.0)],
                         null_only.cells)
        self.assertEqual(list(null_only.rows()),
                         [row for row in full.rows() if row[1] == 0.0])

    def test_adds_null_cells(self):
        """A configuration without lambda = 0 gets null cells appended."""
        cfg = small_config(sample_sizes=[20, 40, 80], lambdas=[3.0])
        rates = {'jeffreys': -0.5, 'dimom': -1.5}
        with mock.patch('skewtest.evidence.bayes_tests',
                        side_effect=fake_tests(rates)):
            _, result = skewtest.simulation.experiment.rate_study(
                cfg, bootstrap=2)
        self.assertEqual([3.0, 0.0], result.cfg.lambdas)
        self.assertEqual([(1, 20, 0.0), (3, 40, 0.0), (5, 80, 0.0)],
                         result.cells)

    @unittest.skipUnless(SLOW, 'set SKEWTEST_SLOW=1 to run')
    def test_rate_ordering(self):
        """Under the null, faster-vanishing priors gather evidence faster."""
        cfg = SimConfig(sample_sizes=[50, 100, 200, 500], lambdas=[0.0],
                        replications=500,
                        priors=['jeffreys', 'dimom', 'moomin'],
                        master_seed=3, engine='laplace')
        study, _ = skewtest.simulation.experiment.rate_study(
            cfg, threads=multiprocessing.cpu_count())
        slopes = study.slopes
        self.assertLess(slopes['moomin'], slopes['dimom'])
        self.assertLess(slopes['dimom'], slopes['jeffreys'])
        self.assertLess(slopes['jeffreys'], 0.0)


@unittest.skipUnless(SLOW, 'set SKEWTEST_SLOW=1 to run')
class PriorOrderingTest(unittest.TestCase):
    def test_median_ordering(self):
        """Non-local priors favour symmetry more when it holds.

        Under skewness every prior favours the alternative.
        """
        cfg = SimConfig(sample_sizes=[100], lambdas=[0.0, 2.5],
                        replications=200,
                        priors=['jeffreys', 'dimom', 'moomin'],
                        master_seed=8, engine='ila')
        result = skewtest.simulation.experiment.run_experiment(
            cfg, multiprocessing.cpu_count())

        def median(lam, prior):
            return np.median(result.values(100, lam, prior))

        self.assertLessEqual(median(0.0, 'moomin'), median(0.0, 'dimom'))
        self.assertLessEqual(median(0.0, 'dimom'), median(0.0, 'jeffreys'))
        for prior in ('jeffreys', 'dimom', 'moomin'):
            self.assertGreater(median(2.5, prior), 0.5, prior)
