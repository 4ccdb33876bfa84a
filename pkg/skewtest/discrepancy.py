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
"""Discrepancy between densities and the minimum-discrepancy curve.

The discrepancy of f1 from f2 is d(f1, f2) = int f1^2 / (f1 + f2), the
expected probability a single observation from f1 assigns to f1 when the
two models are equally likely a priori. It is 1/2 exactly when the
densities coincide.

For a shape value lam, D_min(lam) is the smallest discrepancy between the
shaped density at (0, 1, lam) and any symmetric location-scale member
(1/sigma) f((x - mu)/sigma). The minimizer is the pseudo-true (mu*, sigma*).
The signed measure M(lam) = sign(lam) (D_min(lam) - 1/2) is increasing.
"""
from __future__ import absolute_import
from __future__ import division

import collections
import csv
import logging

import numpy as np
import scipy.optimize

from skewtest import numerics
from skewtest.errors import InvalidArgumentError
from skewtest.errors import NumericalError
from skewtest.errors import OptimizationError
from skewtest.errors import OutOfDomainError
from skewtest.errors import SchemaError
from skewtest.kernels import get_baseline


def logger():
    return logging.getLogger(__name__)


FAMILIES = ('skew', 'two-piece')

# Default shape grids: (low, high, nodes).
DEFAULT_GRIDS = {
    'skew': (-30.0, 30.0, 241),
    'two-piece': (-3.0, 3.0, 121),
}


def _ratio(numerator, denominator):
    """numerator / denominator with 0/0 read as 0."""
    positive = denominator > 0
    return np.where(positive,
                    numerator / np.where(positive, denominator, 1.0), 0.0)


class SkewSymmetricFamily(object):
    """Shaped densities 2 f(x) G(lam omega(x)) at location 0, scale 1."""
    name = 'skew'
    breakpoints = (0.0,)

    def __init__(self, baseline):
        self.baseline = get_baseline(baseline)

    @property
    def label(self):
        return 'skew-{}'.format(self.baseline.name)

    def shape_pdf(self, x, shape):
        base = self.baseline
        return 2.0 * base.pdf(x) * base.skew_cdf(shape * base.omega(x))

    def shape_pdf_derivative(self, x, shape):
        base = self.baseline
        w = base.omega(x)
        return 2.0 * base.pdf(x) * base.skew_pdf(shape * w) * w

    def support(self, shape, mass):
        # Reflection keeps |X| distributed as under f.
        q = float(self.baseline.ppf(1.0 - mass / 2.0))
        return -q, q


class TwoPieceFamily(object):
    """Two-piece densities s(x | 0, 1, eps) joined at the origin."""
    name = 'two-piece'
    breakpoints = (0.0,)

    def __init__(self, baseline):
        self.baseline = get_baseline(baseline)

    @property
    def label(self):
        return 'two-piece-{}'.format(self.baseline.name)

    def scales(self, shape):
        t = np.tanh(shape)
        sigma1, sigma2 = 1.0 + t, 1.0 - t
        if not sigma1 > 0 or not sigma2 > 0:
            raise InvalidArgumentError(
                'two-piece shape {!r} saturates tanh'.format(shape))
        return sigma1, sigma2

    def shape_pdf(self, x, shape):
        sigma1, sigma2 = self.scales(shape)
        x = np.asarray(x, dtype=float)
        # 2 / (sigma1 + sigma2) is 1 at unit scale.
        return self.baseline.pdf(x / np.where(x < 0, sigma1, sigma2))

    def shape_pdf_derivative(self, x, shape):
        sigma1, sigma2 = self.scales(shape)
        x = np.asarray(x, dtype=float)
        sech2 = 1.0 - np.tanh(shape) ** 2
        scale = np.where(x < 0, sigma1, sigma2)
        rate = np.where(x < 0, sech2, -sech2)
        return self.baseline.dpdf(x / scale) * (-x / scale ** 2) * rate

    def support(self, shape, mass):
        sigma1, sigma2 = self.scales(shape)
        q = float(self.baseline.ppf(1.0 - mass / 2.0))
        return -sigma1 * q, sigma2 * q


def get_family(family, baseline):
    """Returns the family object for a family name and baseline."""
    if family == 'skew':
        return SkewSymmetricFamily(baseline)
    if family == 'two-piece':
        return TwoPieceFamily(baseline)
    raise InvalidArgumentError(
        'unknown family {!r}; expected one of {}'.format(
            family, ', '.join(FAMILIES)))


def discrepancy(f1, f2, cfg=None, support=None, points=()):
    """Returns int f1^2 / (f1 + f2) over support (default the real line).

    Args:
        f1, f2: Vectorized densities.
        cfg: QuadratureConfig. Defaults to DISCREPANCY_QUADRATURE.
        support: Optional finite (low, high) truncation.
        points: Breakpoints passed to the quadrature.
    """
    if cfg is None:
        cfg = numerics.DISCREPANCY_QUADRATURE
    low, high = support if support is not None else (-np.inf, np.inf)

    def integrand(x):
        p = f1(x)
        return _ratio(p * p, p + f2(x))

    value, _ = numerics.integrate_line(integrand, cfg, low, high, points)
    return float(value)


class DiscrepancyObjective(object):
    """D(mu, sigma) = d(f1(. | mu, sigma), shaped density) at a fixed shape.

    Also provides the analytic gradient in (mu, sigma) and the partial
    derivative in the shape, both as single integrals.
    """
    def __init__(self, family, shape, cfg=None):
        self.family = family
        self.shape = float(shape)
        self.cfg = cfg if cfg is not None else numerics.DISCREPANCY_QUADRATURE
        mass = self.cfg.truncation_mass
        self._shape_support = family.support(self.shape, mass)
        self._q = float(family.baseline.ppf(1.0 - mass / 2.0))

    def _limits(self, mu, sigma):
        low, high = self._shape_support
        return (min(low, mu - sigma * self._q),
                max(high, mu + sigma * self._q))

    def _parts(self, x, mu, sigma):
        z = (x - mu) / sigma
        p = self.family.baseline.pdf(z) / sigma
        q = self.family.shape_pdf(x, self.shape)
        return z, p, q

    def _integrate(self, integrand, mu, sigma):
        low, high = self._limits(mu, sigma)
        value, _ = numerics.integrate_line(
            integrand, self.cfg, low, high, self.family.breakpoints)
        return value

    def value(self, mu, sigma):
        def integrand(x):
            _, p, q = self._parts(x, mu, sigma)
            return _ratio(p * p, p + q)
        return float(self._integrate(integrand, mu, sigma))

    def gradient(self, mu, sigma):
        """Returns (dD/dmu, dD/dsigma)."""
        base = self.family.baseline

        def integrand(x):
            z, p, q = self._parts(x, mu, sigma)
            total = p + q
            weight = _ratio(p * (p + 2.0 * q), total * total)
            fz = base.pdf(z)
            dfz = base.dpdf(z)
            return np.array([weight * -dfz / sigma ** 2,
                             weight * -(fz + z * dfz) / sigma ** 2])
        return np.asarray(self._integrate(integrand, mu, sigma))

    def shape_derivative(self, mu, sigma):
        """Returns dD/dshape at fixed (mu, sigma)."""
        def integrand(x):
            _, p, q = self._parts(x, mu, sigma)
            total = p + q
            return -_ratio(p * p, total * total) * \
                self.family.shape_pdf_derivative(x, self.shape)
        return float(self._integrate(integrand, mu, sigma))

    def moments(self):
        """Mean and standard deviation of the shaped density."""
        def integrand(x):
            q = self.family.shape_pdf(x, self.shape)
            return np.array([x * q, x * x * q])
        low, high = self._shape_support
        first, second = numerics.integrate_line(
            integrand, self.cfg, low, high, self.family.breakpoints)[0]
        return first, np.sqrt(max(second - first * first, 1e-12))


DminResult = collections.namedtuple(
    'DminResult', ['value', 'mu_star', 'sigma_star'])


def refine_pseudo_true(objective, mu, sigma, value=None):
    """Polishes a minimizer by solving grad D = 0.

    Returns:
        (mu, sigma, value, polished). The input point comes back unchanged
        when the root solve fails or wanders away.
    """
    if value is None:
        value = objective.value(mu, sigma)

    def conditions(params):
        scale = np.exp(params[1])
        grad = objective.gradient(params[0], scale)
        return np.array([grad[0], grad[1] * scale])

    try:
        solution = scipy.optimize.root(
            conditions, [mu, np.log(sigma)], method='hybr', tol=1e-14)
    except NumericalError as ex:
        logger().debug('pseudo-true polish failed at shape %g: %s',
                       objective.shape, ex)
        return mu, sigma, value, False
    if not solution.success:
        logger().debug('pseudo-true polish did not converge at shape %g: %s',
                       objective.shape, solution.message)
        return mu, sigma, value, False
    new_mu, new_sigma = solution.x[0], np.exp(solution.x[1])
    if abs(new_mu - mu) > 1e-3 or abs(np.log(new_sigma / sigma)) > 1e-3:
        logger().debug('pseudo-true polish jumped at shape %g',
                       objective.shape)
        return mu, sigma, value, False
    new_value = objective.value(new_mu, new_sigma)
    if new_value > value + 1e-13:
        return mu, sigma, value, False
    return float(new_mu), float(new_sigma), new_value, True


def minimize_discrepancy(family, shape, warm_start=None, cfg=None,
                         polish=True):
    """d_min on a family object. See d_min."""
    objective = DiscrepancyObjective(family, shape, cfg)
    if shape == 0:
        return DminResult(objective.value(0.0, 1.0), 0.0, 1.0)
    if warm_start is None:
        warm_start = objective.moments()
    mu0, sigma0 = warm_start
    if not sigma0 > 0:
        raise InvalidArgumentError(
            'warm start sigma must be positive: {!r}'.format(sigma0))

    try:
        result = numerics.minimize(
            lambda p: objective.value(p[0], np.exp(p[1])),
            [mu0, np.log(sigma0)], tol=1e-9, fatol=1e-15, step=[0.05, 0.05])
    except (InvalidArgumentError, NumericalError) as ex:
        raise OptimizationError('minimum discrepancy search failed: {}'.format(
            ex), lam=shape)
    mu, sigma, value = (result.argmin[0], np.exp(result.argmin[1]),
                        result.value)
    polished = False
    if polish:
        mu, sigma, value, polished = refine_pseudo_true(
            objective, mu, sigma, value)
    if not result.converged and not polished:
        raise OptimizationError(
            'minimum discrepancy search did not converge', lam=shape)
    return DminResult(float(value), float(mu), float(sigma))


def d_min(family, baseline, lam, warm_start=None, cfg=None):
    """Minimum discrepancy at a shape value and its pseudo-true parameters.

    Args:
        family: 'skew' or 'two-piece'.
        baseline: Baseline name or object.
        lam: Shape value (lambda, or epsilon for two-piece).
        warm_start: Optional (mu, sigma) to start the search from. Defaults
            to the shaped density's mean and standard deviation.
        cfg: QuadratureConfig.

    Returns:
        DminResult(value, mu_star, sigma_star).

    Raises:
        OptimizationError: the search failed; carries lam.
    """
    return minimize_discrepancy(get_family(family, baseline), lam,
                                warm_start, cfg)


def signed_measure(lambdas, d_values):
    """sign(lam) (D_min - 1/2)."""
    return np.sign(lambdas) * (np.asarray(d_values) - 0.5)


class DiscrepancyCurve(object):
    """D_min, the signed measure and pseudo-true values on a shape grid."""
    COLUMNS = ('lambda', 'd_min', 'signed', 'mu_star', 'sigma_star')

    def __init__(self, family, baseline, lambdas, d_min_values, mu_star,
                 sigma_star, signed=None):
        self.family = family
        self.baseline = get_baseline(baseline).name
        self.lambdas = np.asarray(lambdas, dtype=float)
        self.d_min = np.asarray(d_min_values, dtype=float)
        self.mu_star = np.asarray(mu_star, dtype=float)
        self.sigma_star = np.asarray(sigma_star, dtype=float)
        if signed is None:
            signed = signed_measure(self.lambdas, self.d_min)
        self.signed = np.asarray(signed, dtype=float)

    @property
    def label(self):
        return '{}-{}'.format(self.family, self.baseline)

    @property
    def span(self):
        return float(self.lambdas[0]), float(self.lambdas[-1])

    @property
    def c_value(self):
        """Endpoint estimate of sup D_min - 1/2."""
        return float(max(self.d_min[0], self.d_min[-1]) - 0.5)

    def make_family(self):
        return get_family(self.family, self.baseline)

    def pseudo_true(self, lam):
        """Linearly interpolated (mu*, sigma*) at lam."""
        low, high = self.span
        if not low <= lam <= high:
            raise OutOfDomainError(
                'shape {!r} outside the curve span [{}, {}]'.format(
                    lam, low, high))
        return (float(np.interp(lam, self.lambdas, self.mu_star)),
                float(np.interp(lam, self.lambdas, self.sigma_star)))

    def rows(self):
        return zip(self.lambdas, self.d_min, self.signed, self.mu_star,
                   self.sigma_star)

    def write_csv(self, path):
        with open(path, 'w', newline='') as csv_file:
            writer = csv.writer(csv_file, lineterminator='\n')
            writer.writerow(self.COLUMNS)
            for row in self.rows():
                writer.writerow(['%.17g' % value for value in row])

    @classmethod
    def read_csv(cls, path, family, baseline):
        with open(path, newline='') as csv_file:
            reader = csv.reader(csv_file)
            header = next(reader, None)
            if header is None or tuple(header) != cls.COLUMNS:
                raise SchemaError('{}: expected columns {}'.format(
                    path, ','.join(cls.COLUMNS)))
            rows = [[float(cell) for cell in row] for row in reader if row]
        if not rows:
            raise SchemaError('{}: no curve rows'.format(path))
        columns = list(zip(*rows))
        return cls(family, baseline, columns[0], columns[1], columns[3],
                   columns[4], signed=columns[2])


def default_grid(family, low=None, high=None, nodes=None):
    """The default shape grid for a family, with 0 always included."""
    if family not in DEFAULT_GRIDS:
        raise InvalidArgumentError('unknown family {!r}'.format(family))
    default_low, default_high, default_nodes = DEFAULT_GRIDS[family]
    low = default_low if low is None else float(low)
    high = default_high if high is None else float(high)
    nodes = default_nodes if nodes is None else int(nodes)
    if not low < 0 < high:
        raise InvalidArgumentError(
            'grid [{}, {}] must contain 0 in its interior'.format(low, high))
    if nodes < 3:
        raise InvalidArgumentError('grid needs at least 3 nodes')
    return np.union1d(np.linspace(low, high, nodes), [0.0])


def build_curve(family, baseline, grid, cfg=None):
    """Tabulates D_min over a sorted grid containing 0.

    Each node is warm-started from its neighbour nearer to 0, walking
    outward in both directions from the exact solution (0, 1) at 0.

    Raises:
        InvalidArgumentError: grid unsorted or missing 0.
        OptimizationError: a node failed; carries its shape value.
    """
    fam = get_family(family, baseline)
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or len(grid) == 0 or np.any(np.diff(grid) <= 0):
        raise InvalidArgumentError('grid must be strictly increasing')
    zeros = np.flatnonzero(grid == 0.0)
    if len(zeros) == 0:
        raise InvalidArgumentError('grid must contain 0')
    origin = int(zeros[0])

    results = [None] * len(grid)
    results[origin] = minimize_discrepancy(fam, 0.0, cfg=cfg)
    for direction in (range(origin + 1, len(grid)),
                      range(origin - 1, -1, -1)):
        warm = (0.0, 1.0)
        for i in direction:
            results[i] = minimize_discrepancy(fam, grid[i], warm, cfg)
            warm = (results[i].mu_star, results[i].sigma_star)
            logger().debug('%s: shape %g D_min %.15f at (%g, %g)', fam.label,
                           grid[i], results[i].value, warm[0], warm[1])
    logger().info('%s: built %d curve nodes', fam.label, len(grid))
    return DiscrepancyCurve(
        family, fam.baseline, grid, [r.value for r in results],
        [r.mu_star for r in results], [r.sigma_star for r in results])
