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
"""Prior densities on the shape parameter.

Four kinds are supported:

    jeffreys_t     Student-t with 1/2 degrees of freedom (local).
    dimom          lam^2 N(lam; 0, sigma_m^2) / sigma_m^2 (non-local).
    moomin_approx  |lam|^k / (M (1 + a lam^2)^m) (non-local).
    moomin_exact   proportional to the derivative of the signed minimum
                   discrepancy (non-local), tabulated from a curve.

A LocalNormal kind is kept for validating the integrated Laplace engine
against point-mass-like priors.

    >>> spec = Dimom().normalize()
    >>> round(spec.norm_const, 3)
    12.099
    >>> float(spec.density(0.0))
    0.0
"""
from __future__ import absolute_import
from __future__ import division

import collections
import copy
import csv
import logging

import numpy as np
import scipy.interpolate
import scipy.special
import scipy.stats

from skewtest import discrepancy
from skewtest import numerics
from skewtest.errors import InvalidArgumentError
from skewtest.errors import OutOfDomainError


def logger():
    return logging.getLogger(__name__)


JEFFREYS_DF = 0.5
JEFFREYS_SCALE = np.pi / 2.0
DIMOM_SIGMA = 1.69


def _abs(lam):
    return np.abs(np.asarray(lam, dtype=float))


def _log(values):
    with np.errstate(divide='ignore'):
        return np.log(values)


class PriorSpec(object):
    """A prior density on the shape parameter.

    Attributes:
        kind: Kind name used in serialized documents.
        name: Short name used on the command line and in result files.
        local: True if the density is positive at 0.
        norm_const: Integral of the unnormalized density; None until
            normalize() has been called.
    """
    kind = None
    name = None
    local = False

    def __init__(self):
        self.norm_const = None

    def params(self):
        raise NotImplementedError

    def unnormalized(self, lam):
        return np.exp(self.log_unnormalized(lam))

    def log_unnormalized(self, lam):
        raise NotImplementedError

    def _norm_const(self):
        raise NotImplementedError

    def _upper_tail(self, edge):
        """Normalized mass above a non-negative edge."""
        raise NotImplementedError

    def grid_hint(self):
        """Shape values the integrated Laplace grid must include."""
        return np.array([])

    @property
    def normalized(self):
        return self.norm_const is not None

    def normalize(self):
        """Returns a copy with norm_const set."""
        spec = copy.copy(self)
        spec.norm_const = float(self._norm_const())
        return spec

    def _check_normalized(self):
        if self.norm_const is None:
            raise InvalidArgumentError(
                '{} prior used before normalize()'.format(self.kind))

    def density(self, lam):
        self._check_normalized()
        return self.unnormalized(lam) / self.norm_const

    def logpdf(self, lam):
        """log density; -inf at exact zeros of non-local kinds."""
        self._check_normalized()
        return self.log_unnormalized(lam) - np.log(self.norm_const)

    def tail_mass(self, edge):
        """P(lam > edge) under the normalized density."""
        if edge >= 0:
            return float(self._upper_tail(edge))
        return 1.0 - float(self._upper_tail(-edge))

    def identifier(self):
        params = ', '.join('{}={:g}'.format(key, value)
                           for key, value in self.params().items()
                           if isinstance(value, float))
        return '{}({})'.format(self.kind, params)

    def to_dict(self):
        return collections.OrderedDict(
            [('kind', self.kind), ('params', self.params())])

    @staticmethod
    def from_dict(document):
        try:
            kind = document['kind']
            params = dict(document.get('params', {}))
        except (KeyError, TypeError, AttributeError):
            raise InvalidArgumentError(
                'prior document needs "kind" and "params": {!r}'.format(
                    document))
        if kind not in PRIOR_KINDS:
            raise InvalidArgumentError('unknown prior kind {!r}'.format(kind))
        try:
            return PRIOR_KINDS[kind](**params)
        except TypeError as ex:
            raise InvalidArgumentError('bad {} parameters: {}'.format(
                kind, ex))

    def __repr__(self):
        return self.identifier()


class JeffreysT(PriorSpec):
    """Student-t approximation to the Jeffreys prior of the shape."""
    kind = 'jeffreys_t'
    name = 'jeffreys'
    local = True

    def __init__(self, df=JEFFREYS_DF, scale=JEFFREYS_SCALE):
        super(JeffreysT, self).__init__()
        if not df > 0 or not scale > 0:
            raise InvalidArgumentError(
                'jeffreys_t needs positive df and scale')
        self.df = float(df)
        self.scale = float(scale)
        self._dist = scipy.stats.t(self.df, scale=self.scale)

    def params(self):
        return collections.OrderedDict(
            [('df', self.df), ('scale', self.scale)])

    def log_unnormalized(self, lam):
        return self._dist.logpdf(lam)

    def _norm_const(self):
        return 1.0

    def _upper_tail(self, edge):
        return self._dist.sf(edge)

    def grid_hint(self):
        tail = np.geomspace(1e-2 * self.scale, 1e3 * self.scale, 40)
        return np.concatenate([-tail, [0.0], tail])


class LocalNormal(PriorSpec):
    kind = 'local_normal'
    name = 'local_normal'
    local = True

    def __init__(self, sd=1.0):
        super(LocalNormal, self).__init__()
        if not sd > 0:
            raise InvalidArgumentError('local_normal needs a positive sd')
        self.sd = float(sd)

    def params(self):
        return collections.OrderedDict([('sd', self.sd)])

    def log_unnormalized(self, lam):
        return scipy.stats.norm.logpdf(lam, scale=self.sd)

    def _norm_const(self):
        return 1.0

    def _upper_tail(self, edge):
        return scipy.stats.norm.sf(edge, scale=self.sd)

    def grid_hint(self):
        return np.linspace(-8.0 * self.sd, 8.0 * self.sd, 81)


class Dimom(PriorSpec):
    """Discrepancy-informed moment prior.

    The printed form lam^2 N(lam; 0, sigma_m^2) integrates to sigma_m^2, so
    the normalizing constant of lam^2 exp(-lam^2 / (2 sigma_m^2)) is
    sqrt(2 pi) sigma_m^3.
    """
    kind = 'dimom'
    name = 'dimom'

    def __init__(self, sigma_m=DIMOM_SIGMA):
        super(Dimom, self).__init__()
        if not sigma_m > 0:
            raise InvalidArgumentError('dimom needs a positive sigma_m')
        self.sigma_m = float(sigma_m)

    def params(self):
        return collections.OrderedDict([('sigma_m', self.sigma_m)])

    def log_unnormalized(self, lam):
        lam = _abs(lam)
        return 2.0 * _log(lam) - lam * lam / (2.0 * self.sigma_m ** 2)

    def _norm_const(self):
        return np.sqrt(2.0 * np.pi) * self.sigma_m ** 3

    def _upper_tail(self, edge):
        c = edge / self.sigma_m
        return c * scipy.stats.norm.pdf(c) + scipy.stats.norm.sf(c)

    def grid_hint(self):
        return np.linspace(-8.0 * self.sigma_m, 8.0 * self.sigma_m, 81)


class MoominApprox(PriorSpec):
    """Non-local moment Student-t approximation of the MOOMIN prior."""
    kind = 'moomin_approx'
    name = 'moomin'

    def __init__(self, k=4.0, m=3.0, a=0.28):
        super(MoominApprox, self).__init__()
        if not (k > 0 and m > 0 and a > 0):
            raise InvalidArgumentError(
                'moomin_approx needs positive k, m and a')
        if not m > (k + 1.0) / 2.0:
            raise InvalidArgumentError(
                'moomin_approx is not integrable unless m > (k + 1) / 2 '
                '(k={}, m={})'.format(k, m))
        self.k = float(k)
        self.m = float(m)
        self.a = float(a)

    @property
    def _alpha(self):
        return (self.k + 1.0) / 2.0

    def params(self):
        return collections.OrderedDict(
            [('k', self.k), ('m', self.m), ('a', self.a)])

    def log_unnormalized(self, lam):
        lam = _abs(lam)
        return self.k * _log(lam) - self.m * np.log1p(self.a * lam * lam)

    def _norm_const(self):
        alpha = self._alpha
        return np.exp(-alpha * np.log(self.a) +
                      scipy.special.betaln(alpha, self.m - alpha))

    def _upper_tail(self, edge):
        alpha = self._alpha
        return 0.5 * scipy.special.betainc(
            self.m - alpha, alpha, 1.0 / (1.0 + self.a * edge * edge))

    def grid_hint(self):
        tail = np.geomspace(0.05, 200.0, 50)
        return np.concatenate([-tail, np.linspace(-5.0, 5.0, 41), tail])


class MoominExact(PriorSpec):
    """Exact MOOMIN prior tabulated on non-negative shape nodes.

    Values between nodes come from a monotone cubic interpolant; beyond the
    last node L the density continues as c / lam^2 with c = value(L) L^2.
    """
    kind = 'moomin_exact'
    name = 'moomin-exact'

    def __init__(self, lambdas, values, label='skew-normal'):
        super(MoominExact, self).__init__()
        lambdas = np.asarray(lambdas, dtype=float)
        values = np.asarray(values, dtype=float)
        if lambdas.ndim != 1 or lambdas.shape != values.shape or \
                len(lambdas) < 3:
            raise InvalidArgumentError(
                'moomin_exact needs at least 3 matching nodes and values')
        if lambdas[0] != 0 or np.any(np.diff(lambdas) <= 0):
            raise InvalidArgumentError(
                'moomin_exact nodes must increase from 0')
        if np.any(values < 0) or not np.all(np.isfinite(values)) or \
                not values[-1] > 0:
            raise InvalidArgumentError(
                'moomin_exact values must be finite and non-negative with '
                'a positive last value')
        self.lambdas = lambdas
        self.values = values
        self.label = label
        self._interp = scipy.interpolate.PchipInterpolator(lambdas, values)
        self.edge = float(lambdas[-1])
        self.tail_const = float(values[-1] * self.edge ** 2)

    @classmethod
    def from_context(cls, context):
        """Tabulates the envelope values on the curve's non-negative nodes."""
        lambdas = context.curve.lambdas
        nodes = lambdas[lambdas >= 0]
        values = [context.unnormalized(lam) for lam in nodes]
        logger().info('%s: tabulated exact MOOMIN on %d nodes',
                      context.curve.label, len(nodes))
        return cls(nodes, values, context.curve.label)

    def params(self):
        return collections.OrderedDict([
            ('lambdas', [float(v) for v in self.lambdas]),
            ('values', [float(v) for v in self.values]),
            ('label', self.label),
        ])

    def unnormalized(self, lam):
        lam = _abs(lam)
        inside = lam <= self.edge
        body = self._interp(np.minimum(lam, self.edge))
        with np.errstate(divide='ignore'):
            tail = self.tail_const / np.where(inside, 1.0, lam * lam)
        return np.maximum(np.where(inside, body, tail), 0.0)

    def log_unnormalized(self, lam):
        return _log(self.unnormalized(lam))

    def _half_mass(self, edge):
        if edge >= self.edge:
            return self.tail_const / edge
        return float(self._interp.integrate(edge, self.edge)) + \
            self.tail_const / self.edge

    def _norm_const(self):
        return 2.0 * self._half_mass(0.0)

    def _upper_tail(self, edge):
        self._check_normalized()
        return self._half_mass(edge) / self.norm_const

    def grid_hint(self):
        return np.concatenate([-self.lambdas, self.lambdas])


PRIOR_KINDS = collections.OrderedDict([
    ('jeffreys_t', JeffreysT),
    ('dimom', Dimom),
    ('moomin_approx', MoominApprox),
    ('moomin_exact', MoominExact),
    ('local_normal', LocalNormal),
])


class MoominContext(object):
    """Everything the exact MOOMIN evaluation needs: curve, family, cfg."""

    def __init__(self, curve, cfg=None):
        self.curve = curve
        self.family = curve.make_family()
        self.cfg = cfg if cfg is not None else numerics.DISCREPANCY_QUADRATURE

    def _pseudo_true(self, lam):
        hits = np.flatnonzero(np.abs(self.curve.lambdas - lam) < 1e-12)
        if len(hits):
            i = hits[0]
            return self.curve.mu_star[i], self.curve.sigma_star[i], True
        mu, sigma = self.curve.pseudo_true(lam)
        return mu, sigma, False

    def _envelope(self, lam):
        objective = discrepancy.DiscrepancyObjective(self.family, lam,
                                                     self.cfg)
        mu, sigma, on_node = self._pseudo_true(lam)
        mu, sigma, _, polished = discrepancy.refine_pseudo_true(
            objective, mu, sigma)
        if not polished and not on_node:
            # The derivative is first-order sensitive to the minimizer.
            result = discrepancy.minimize_discrepancy(
                self.family, lam, (mu, sigma), self.cfg)
            mu, sigma = result.mu_star, result.sigma_star
        return abs(objective.shape_derivative(mu, sigma))

    def _signed(self, lam, warm):
        result = discrepancy.minimize_discrepancy(self.family, lam, warm,
                                                  self.cfg)
        return np.sign(lam) * (result.value - 0.5)

    def _curve_derivative(self, lam):
        h = 1e-3 * max(1.0, abs(lam))
        warm = self.curve.pseudo_true(lam)
        upper = self._signed(lam + h, warm)
        lower = self._signed(lam - h, warm)
        return abs(upper - lower) / (2.0 * h)

    def unnormalized(self, lam, method='envelope'):
        lam = float(lam)
        low, high = self.curve.span
        if not low <= lam <= high:
            raise OutOfDomainError(
                'shape {!r} outside the curve span [{}, {}]'.format(
                    lam, low, high))
        if lam == 0:
            return 0.0
        if method == 'envelope':
            return self._envelope(lam)
        if method == 'curve_derivative':
            return self._curve_derivative(lam)
        raise InvalidArgumentError('unknown MOOMIN method {!r}'.format(method))


def moomin_exact_unnorm(context, lam, method='envelope'):
    """Unnormalized exact MOOMIN density at lam.

    Args:
        context: MoominContext.
        lam: Shape value within the curve span.
        method: 'envelope' integrates the shape derivative of the
            discrepancy at the pseudo-true parameters; 'curve_derivative'
            central-differences freshly minimized signed discrepancies.

    Raises:
        OutOfDomainError: lam outside the curve span.
    """
    return context.unnormalized(lam, method)


def normalize(spec):
    return spec.normalize()


def prior_density(spec, lam):
    return spec.density(lam)


def log_prior_density(spec, lam):
    return spec.logpdf(lam)


def prior_table(spec, grid):
    """Returns (grid, density) arrays for plotting or export."""
    if not spec.normalized:
        spec = spec.normalize()
    grid = np.asarray(grid, dtype=float)
    return grid, np.asarray(spec.density(grid), dtype=float)


def write_prior_csv(spec, grid, path):
    lambdas, densities = prior_table(spec, grid)
    with open(path, 'w', newline='') as csv_file:
        writer = csv.writer(csv_file, lineterminator='\n')
        writer.writerow(['lambda', 'density'])
        for lam, value in zip(lambdas, densities):
            writer.writerow(['%.17g' % lam, '%.17g' % value])


class VanishingRate(object):
    """Local power-law fit of a density near 0.

    Attributes:
        slope: Least-squares slope of log density against log |lam|.
        intercept: Intercept of the same fit.
        even_power: The even power p in {2, 4, 6, 8} whose multiple c |lam|^p
            fits the values best in the least-squares sense.
        lambdas, values: The nodes and values used.
    """
    EVEN_POWERS = (2, 4, 6, 8)

    def __init__(self, slope, intercept, even_power, lambdas, values):
        self.slope = slope
        self.intercept = intercept
        self.even_power = even_power
        self.lambdas = lambdas
        self.values = values

    def to_dict(self):
        return collections.OrderedDict([
            ('slope', self.slope),
            ('intercept', self.intercept),
            ('even_power', self.even_power),
            ('nodes', len(self.lambdas)),
        ])


def _best_even_power(lambdas, values):
    best = None
    for power in VanishingRate.EVEN_POWERS:
        basis = np.abs(lambdas) ** power
        coef = np.dot(basis, values) / np.dot(basis, basis)
        residual = float(np.sum((values - coef * basis) ** 2))
        if best is None or residual < best[1]:
            best = (power, residual)
    return best[0]


def vanishing_grid(halfwidth=0.5, nodes=25, exclude=0.02):
    """Nodes of the vanishing-rate neighbourhood, without the origin.

    Raises:
        InvalidArgumentError: fewer than 5 usable nodes.
    """
    if not halfwidth > 0:
        raise InvalidArgumentError('halfwidth must be positive')
    grid = np.linspace(-halfwidth, halfwidth, int(nodes))
    grid = grid[np.abs(grid) >= exclude]
    if len(grid) < 5:
        raise InvalidArgumentError(
            'neighbourhood of half-width {} has {} usable nodes; need at '
            'least 5'.format(halfwidth, len(grid)))
    return grid


def fit_vanishing_rate(source, halfwidth=0.5, nodes=25, exclude=0.02):
    """Fits the vanishing rate of a density near 0.

    Args:
        source: A MoominContext, a PriorSpec or a callable of lam.
        halfwidth: The neighbourhood is [-halfwidth, halfwidth].
        nodes: Grid nodes across the neighbourhood.
        exclude: Nodes with |lam| below this are dropped.

    Returns:
        A VanishingRate.

    Raises:
        InvalidArgumentError: fewer than 5 usable nodes.

    >>> rate = fit_vanishing_rate(lambda lam: lam ** 2)
    >>> round(rate.slope, 6), rate.even_power
    (2.0, 2)
    """
    grid = vanishing_grid(halfwidth, nodes, exclude)

    if isinstance(source, MoominContext):
        evaluate = source.unnormalized
    elif isinstance(source, PriorSpec):
        evaluate = source.unnormalized
    else:
        evaluate = source
    values = np.array([float(evaluate(lam)) for lam in grid])
    usable = values > 0
    if np.count_nonzero(usable) < 5:
        raise InvalidArgumentError(
            'only {} positive values in the neighbourhood'.format(
                np.count_nonzero(usable)))
    lambdas, values = grid[usable], values[usable]
    slope, intercept = np.polyfit(np.log(np.abs(lambdas)), np.log(values), 1)
    rate = VanishingRate(float(slope), float(intercept),
                         _best_even_power(lambdas, values), lambdas, values)
    logger().info('vanishing rate: slope %.4f, best even power %d',
                  rate.slope, rate.even_power)
    return rate


PRIOR_NAMES = ('jeffreys', 'dimom', 'moomin', 'moomin-exact')

_ALIASES = {
    'jeffreys': 'jeffreys_t',
    'jeffreys_t': 'jeffreys_t',
    'dimom': 'dimom',
    'moomin': 'moomin_approx',
    'moomin_approx': 'moomin_approx',
    'moomin-exact': 'moomin_exact',
    'moomin_exact': 'moomin_exact',
    'local_normal': 'local_normal',
}


def canonical_name(name):
    """The result-file name of a prior given any accepted alias.

    >>> canonical_name('moomin_approx')
    'moomin'
    """
    kind = _ALIASES.get(name)
    if kind is None:
        raise InvalidArgumentError('unknown prior {!r}; expected one of {}'.
                                   format(name, ', '.join(PRIOR_NAMES)))
    return PRIOR_KINDS[kind].name


def make_prior(name, baseline='normal', jeffreys_scale=JEFFREYS_SCALE,
               context=None):
    """Returns a normalized prior by name.

    The exact MOOMIN prior needs a MoominContext; without one the default
    skew curve for the baseline is built.
    """
    kind = _ALIASES.get(name)
    if kind is None:
        raise InvalidArgumentError('unknown prior {!r}; expected one of {}'.
                                   format(name, ', '.join(PRIOR_NAMES)))
    if kind == 'jeffreys_t':
        spec = JeffreysT(scale=jeffreys_scale)
    elif kind == 'dimom':
        spec = Dimom()
    elif kind == 'moomin_approx':
        spec = MoominApprox()
    elif kind == 'local_normal':
        spec = LocalNormal()
    else:
        if context is None:
            curve = discrepancy.build_curve(
                'skew', baseline, discrepancy.default_grid('skew'))
            context = MoominContext(curve)
        spec = MoominExact.from_context(context)
    return spec.normalize()
