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
"""Reproduction of the symmetry tests on the AIS female BMI data.

See data/README.md for how to obtain data/ais_female_bmi.csv. Set
SKEWTEST_AIS_DATA to read the file from elsewhere.
"""
import os
import unittest

import skewtest.dataio
import skewtest.evidence
import skewtest.priors


AIS_PATH = os.environ.get('SKEWTEST_AIS_DATA', os.path.join(
    os.path.dirname(os.path.dirname(__file__)), 'data', 'ais_female_bmi.csv'))
HAVE_AIS = os.path.exists(AIS_PATH)

PRIORS = ('jeffreys', 'dimom', 'moomin')


def run_tests(dataset):
    specs = [skewtest.priors.make_prior(name) for name in PRIORS]
    return skewtest.evidence.bayes_tests(dataset, 'normal', specs, 'ila')


@unittest.skipUnless(HAVE_AIS, '{} is not present'.format(AIS_PATH))
class AisTest(unittest.TestCase):
    def setUp(self):
        self.data = skewtest.dataio.load_column(AIS_PATH, 'bmi')

    def check(self, results, bic_alt, bic_null, probs):
        self.assertEqual(list(PRIORS), [result.prior for result in results])
        self.assertAlmostEqual(bic_alt, results[0].bic_alt, delta=0.1)
        self.assertAlmostEqual(bic_null, results[0].bic_null, delta=0.1)
        for result, prob in zip(results, probs):
            self.assertAlmostEqual(prob, result.post_prob_alt, delta=0.03,
                                   msg=result.prior)

    def test_full_data(self):
        """All 100 athletes: the data barely favour skewness."""
        self.assertEqual(100, self.data.n)
        self.check(run_tests(self.data), 484.82, 486.15, (0.52, 0.73, 0.52))

    def test_outlier(self):
        """The MAD screen flags exactly one athlete, with BMI over 30."""
        report = skewtest.dataio.mad_outliers(self.data)
        self.assertEqual(1, report.count)
        self.assertGreater(report.flagged_values[0], 30.0)

    def test_without_outlier(self):
        """Without the outlier the non-local priors favour symmetry."""
        kept = skewtest.dataio.mad_outliers(self.data).remove(self.data)
        self.assertEqual(99, kept.n)
        self.check(run_tests(kept), 469.62, 466.89, (0.23, 0.25, 0.11))
