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
"""Tests for skewtest.discrepancy."""
from __future__ import absolute_import

import os
import shutil
import tempfile
import unittest

import numpy as np
import numpy.testing
import scipy.stats

import skewtest.discrepancy
from skewtest.errors import InvalidArgumentError
from skewtest.errors import OutOfDomainError
from skewtest.errors import SchemaError


SLOW = os.environ.get('SKEWTEST_SLOW')


class DiscrepancyTest(unittest.TestCase):
    def test_identical_densities(self):
        """A density against itself gives one half."""
        pdf = scipy.stats.norm(0.3, 1.4).pdf
        self.assertAlmostEqual(
            0.5, skewtest.discrepancy.discrepancy(pdf, pdf), places=9)

    def test_disjoint_densities(self):
        """Near-disjoint supports give almost one."""
        value = skewtest.discrepancy.discrepancy(
            scipy.stats.norm(0.0, 1.0).pdf, scipy.stats.norm(10.0, 1.0).pdf)
        self.assertAlmostEqual(1.0, value, delta=1e-4)

    def test_range(self):
        """Values lie in [1/2, 1] for different densities."""
        value = skewtest.discrepancy.discrepancy(
            scipy.stats.norm(0.0, 1.0).pdf, scipy.stats.logistic(0.5).pdf)
        self.assertGreater(value, 0.5)
        self.assertLess(value, 1.0)


class ObjectiveTest(unittest.TestCase):
    def setUp(self):
        self.family = skewtest.discrepancy.get_family('skew', 'normal')

    def test_gradient(self):
        """The analytic gradient matches central differences."""
        objective = skewtest.discrepancy.DiscrepancyObjective(self.family,
                                                              1.5)
        mu, sigma, h = 0.4, 0.9, 1e-4
        numeric = [
            (objective.value(mu + h, sigma) -
             objective.value(mu - h, sigma)) / (2.0 * h),
            (objective.value(mu, sigma + h) -
             objective.value(mu, sigma - h)) / (2.0 * h),
        ]
        numpy.testing.assert_allclose(objective.gradient(mu, sigma), numeric,
                                      atol=1e-5)

    def test_shape_derivative(self):
        """dD/dshape matches a difference in the shape."""
        mu, sigma, shape, h = 0.5, 0.8, 2.0, 1e-4
        objective = skewtest.discrepancy.DiscrepancyObjective(self.family,
                                                              shape)
        plus = skewtest.discrepancy.DiscrepancyObjective(self.family,
                                                         shape + h)
        minus = skewtest.discrepancy.DiscrepancyObjective(self.family,
                                                          shape - h)
        numeric = (plus.value(mu, sigma) - minus.value(mu, sigma)) / (2.0 * h)
        self.assertAlmostEqual(numeric, objective.shape_derivative(mu, sigma),
                               delta=1e-5)

    def test_two_piece_shape_derivative(self):
        """The two-piece shape derivative matches a difference too."""
        family = skewtest.discrepancy.get_family('two-piece', 'logistic')
        mu, sigma, shape, h = -0.2, 1.1, 0.4, 1e-4
        objective = skewtest.discrepancy.DiscrepancyObjective(family, shape)
        plus = skewtest.discrepancy.DiscrepancyObjective(family, shape + h)
        minus = skewtest.discrepancy.DiscrepancyObjective(family, shape - h)
        numeric = (plus.value(mu, sigma) - minus.value(mu, sigma)) / (2.0 * h)
        self.assertAlmostEqual(numeric, objective.shape_derivative(mu, sigma),
                               delta=1e-5)

    def test_moments(self):
        """Moments of the skew-normal shape match scipy."""
        objective = skewtest.discrepancy.DiscrepancyObjective(self.family,
                                                              3.0)
        mean, sd = objective.moments()
        self.assertAlmostEqual(scipy.stats.skewnorm.mean(3.0), mean, places=7)
        self.assertAlmostEqual(scipy.stats.skewnorm.std(3.0), sd, places=7)


class DminTest(unittest.TestCase):
    def test_zero(self):
        """At shape 0 the minimum is 1/2 at (0, 1) for every baseline."""
        for baseline in ('normal', 'logistic', 'sech'):
            result = skewtest.discrepancy.d_min('skew', baseline, 0.0)
            self.assertAlmostEqual(0.5, result.value, places=9)
            self.assertEqual((0.0, 1.0), (result.mu_star, result.sigma_star))

    def test_stationary(self):
        """The pseudo-true point is a stationary point of D."""
        result = skewtest.discrepancy.d_min('skew', 'normal', 2.0)
        self.assertGreater(result.value, 0.5)
        self.assertLess(result.value, 1.0)
        objective = skewtest.discrepancy.DiscrepancyObjective(
            skewtest.discrepancy.get_family('skew', 'normal'), 2.0)
        numpy.testing.assert_allclose(
            objective.gradient(result.mu_star, result.sigma_star), [0.0, 0.0],
            atol=1e-6)

    def test_mirror(self):
        """Negating the shape mirrors mu* and keeps D_min."""
        plus = skewtest.discrepancy.d_min('skew', 'logistic', 1.5)
        minus = skewtest.discrepancy.d_min('skew', 'logistic', -1.5)
        self.assertAlmostEqual(plus.value, minus.value, places=8)
        self.assertAlmostEqual(plus.mu_star, -minus.mu_star, places=5)
        self.assertAlmostEqual(plus.sigma_star, minus.sigma_star, places=5)

    def test_bad_warm_start(self):
        """A non-positive warm-start scale is rejected."""
        with self.assertRaises(InvalidArgumentError):
            skewtest.discrepancy.d_min('skew', 'normal', 1.0, (0.0, -1.0))

    def test_unknown_family(self):
        """Unknown families are rejected."""
        with self.assertRaises(InvalidArgumentError):
            skewtest.discrepancy.d_min('sinh-arcsinh', 'normal', 1.0)

    @unittest.skipUnless(SLOW, 'set SKEWTEST_SLOW=1 to run')
    def test_large_shape_limit(self):
        """The skew-normal D_min approaches 0.5417 for large shapes."""
        result = skewtest.discrepancy.d_min('skew', 'normal', 50.0)
        self.assertAlmostEqual(0.5417, result.value, delta=1e-3)


class CurveTest(unittest.TestCase):
    GRID = [-2.0, -1.0, 0.0, 1.0, 2.0]

    def setUp(self):
        self.out_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.out_dir)

    def test_build(self):
        """The curve is symmetric, bounded and minimal at 0."""
        curve = skewtest.discrepancy.build_curve('skew', 'normal', self.GRID)
        self.assertEqual('skew-normal', curve.label)
        self.assertEqual((-2.0, 2.0), curve.span)
        self.assertAlmostEqual(0.5, curve.d_min[2], places=9)
        self.assertTrue(np.all(curve.d_min >= 0.5 - 1e-10))
        self.assertTrue(np.all(curve.d_min <= 1.0))
        numpy.testing.assert_allclose(curve.d_min, curve.d_min[::-1],
                                      atol=1e-8)
        numpy.testing.assert_allclose(curve.mu_star, -curve.mu_star[::-1],
                                      atol=1e-5)
        self.assertLess(curve.d_min[3], curve.d_min[4])
        self.assertGreater(curve.signed[4], 0.0)
        self.assertLess(curve.signed[0], 0.0)
        self.assertEqual((0.0, 1.0), curve.pseudo_true(0.0))

    def test_warm_start_independent(self):
        """Continuation gives the same values as cold starts."""
        curve = skewtest.discrepancy.build_curve('skew', 'logistic',
                                                 self.GRID)
        for lam, value in zip(curve.lambdas, curve.d_min):
            cold = skewtest.discrepancy.d_min('skew', 'logistic', lam)
            self.assertAlmostEqual(value, cold.value, delta=1e-5)

    def test_grid_checks(self):
        """Grids must be increasing and contain 0."""
        with self.assertRaises(InvalidArgumentError):
            skewtest.discrepancy.build_curve('skew', 'normal', [-1.0, 1.0])
        with self.assertRaises(InvalidArgumentError):
            skewtest.discrepancy.build_curve('skew', 'normal',
                                             [1.0, 0.0, -1.0])

    def test_default_grid(self):
        """Default grids always contain 0."""
        grid = skewtest.discrepancy.default_grid('skew', -3.0, 4.0, 8)
        self.assertIn(0.0, grid)
        self.assertEqual(-3.0, grid[0])
        self.assertEqual(4.0, grid[-1])
        self.assertEqual(241, len(skewtest.discrepancy.default_grid('skew')))
        with self.assertRaises(InvalidArgumentError):
            skewtest.discrepancy.default_grid('skew', 1.0, 2.0, 5)

    def test_pseudo_true_out_of_domain(self):
        """Interpolation outside the span is refused."""
        curve = skewtest.discrepancy.DiscrepancyCurve(
            'skew', 'normal', [-1.0, 0.0, 1.0], [0.51, 0.5, 0.51],
            [-0.5, 0.0, 0.5], [0.9, 1.0, 0.9])
        mu, sigma = curve.pseudo_true(0.5)
        self.assertAlmostEqual(0.25, mu)
        self.assertAlmostEqual(0.95, sigma)
        with self.assertRaises(OutOfDomainError):
            curve.pseudo_true(1.5)

    def test_csv(self):
        """A written curve reads back exactly."""
        curve = skewtest.discrepancy.DiscrepancyCurve(
            'skew', 'sech', [-1.0, 0.0, 1.0], [0.51, 0.5, 0.51],
            [-0.5, 0.0, 0.5], [0.9, 1.0, 0.9])
        path = os.path.join(self.out_dir, 'curve.csv')
        curve.write_csv(path)
        with open(path) as csv_file:
            self.assertEqual('lambda,d_min,signed,mu_star,sigma_star',
                             csv_file.readline().strip())
        again = skewtest.discrepancy.DiscrepancyCurve.read_csv(
            path, 'skew', 'sech')
        numpy.testing.assert_array_equal(curve.d_min, again.d_min)
        numpy.testing.assert_array_equal(curve.signed, again.signed)
        self.assertAlmostEqual(0.01, again.c_value, places=12)

    def test_csv_schema(self):
        """A file with other columns is a schema error."""
        path = os.path.join(self.out_dir, 'bad.csv')
        with open(path, 'w') as csv_file:
            csv_file.write('x,y\n1,2\n')
        with self.assertRaises(SchemaError):
            skewtest.discrepancy.DiscrepancyCurve.read_csv(path, 'skew',
                                                           'normal')

    @unittest.skipUnless(SLOW, 'set SKEWTEST_SLOW=1 to run')
    def test_skew_normal_sup(self):
        """The skew-normal signed measure tops out near 0.0417."""
        grid = skewtest.discrepancy.default_grid('skew', nodes=61)
        curve = skewtest.discrepancy.build_curve('skew', 'normal', grid)
        self.assertAlmostEqual(0.0417, np.max(curve.signed), delta=1e-3)
        self.assertAlmostEqual(0.0417, curve.c_value, delta=1e-3)
