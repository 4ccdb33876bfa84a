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
"""Marginal likelihoods and Bayes factors for symmetry tests.

The null model is the symmetric location-scale family, the alternative its
skew-symmetric extension. Both carry the prior 1/sigma on (mu, sigma), which
is flat in (mu, eta = log sigma); every fit, Hessian and Laplace
approximation here works in those coordinates. The shape gets one of the
priors from skewtest.priors.

Fits run on standardized data. Results are mapped back to the data scale:
log-likelihoods shift by -n log s and marginal likelihoods by -(n-1) log s.
"""
from __future__ import absolute_import
from __future__ import division

import collections
import logging

import numpy as np
import scipy.integrate
import scipy.special

from skewtest import discrepancy
from skewtest import numerics
from skewtest.errors import CurvatureError
from skewtest.errors import DegenerateDataError
from skewtest.errors import EvaluationError
from skewtest.errors import FittingError
from skewtest.errors import InsufficientDataError
from skewtest.errors import InvalidArgumentError
from skewtest.errors import NumericalError
from skewtest.kernels import LOG2
from skewtest.kernels import get_baseline


def logger():
    return logging.getLogger(__name__)


LOG_2PI = np.log(2.0 * np.pi)

# Box constraint on the shape while fitting.
SHAPE_BOUND = 60.0

ENGINES = ('laplace', 'ila')


class Dataset(object):
    """A univariate sample.

    >>> Dataset([1.0, 2.0, 4.0], 'toy').n
    3
    """
    MIN_SIZE = 3

    def __init__(self, values, label=''):
        values = np.asarray(values, dtype=float).ravel()
        if len(values) < self.MIN_SIZE:
            raise InsufficientDataError(
                'need at least {} observations, got {}'.format(
                    self.MIN_SIZE, len(values)))
        if not np.all(np.isfinite(values)):
            raise InvalidArgumentError('data contain non-finite values')
        self.values = values
        self.label = label

    @property
    def n(self):
        return len(self.values)

    def standardized(self):
        """Returns (standardized dataset, location, scale)."""
        location = float(np.mean(self.values))
        scale = float(np.std(self.values, ddof=1))
        if not scale > 0:
            raise DegenerateDataError(
                '{}: data have zero spread'.format(self.label or 'dataset'))
        return (Dataset((self.values - location) / scale, self.label),
                location, scale)

    def __repr__(self):
        return 'Dataset(n={}, label={!r})'.format(self.n, self.label)


def _values(data):
    if isinstance(data, Dataset):
        return data.values
    return Dataset(data).values


def _skew_terms(values, base, mu, eta, lam):
    # Broadcasts parameter arrays against a trailing data axis.
    mu = np.asarray(mu, dtype=float)[..., np.newaxis]
    eta = np.asarray(eta, dtype=float)[..., np.newaxis]
    lam = np.asarray(lam, dtype=float)[..., np.newaxis]
    z = (values - mu) * np.exp(-eta)
    terms = LOG2 + base.logpdf(z) + base.log_skew_cdf(lam * base.omega(z))
    return np.sum(terms, axis=-1) - len(values) * eta[..., 0]


def _symmetric_terms(values, base, mu, eta):
    mu = np.asarray(mu, dtype=float)[..., np.newaxis]
    eta = np.asarray(eta, dtype=float)[..., np.newaxis]
    z = (values - mu) * np.exp(-eta)
    return np.sum(base.logpdf(z), axis=-1) - len(values) * eta[..., 0]


def _check_sigma(sigma):
    if not np.isfinite(sigma) or not sigma > 0:
        raise InvalidArgumentError(
            'sigma must be positive and finite: {!r}'.format(sigma))


def loglik_skew(data, baseline, mu, sigma, lam):
    """Skew-symmetric log-likelihood at (mu, sigma, lam).

    >>> round(loglik_skew([0.0, 0.0, 0.0], 'normal', 0.0, 1.0, 3.0), 6)
    -2.756816
    """
    _check_sigma(sigma)
    return float(_skew_terms(_values(data), get_baseline(baseline), mu,
                             np.log(sigma), lam))


def loglik_symmetric(data, baseline, mu, sigma):
    _check_sigma(sigma)
    return float(_symmetric_terms(_values(data), get_baseline(baseline), mu,
                                  np.log(sigma)))


class ModelFit(object):
    """A mode of a log target and the curvature there.

    Attributes:
        params: OrderedDict with mu, sigma and, for the alternative, lambda.
        log_target: log-likelihood plus log shape prior at the mode.
        mode_kind: 'MLE' or 'MAP'.
        hessian: Hessian of the negative log target in (mu, log sigma[,
            lambda]).
        loglik: Log-likelihood at the mode.
        boundary_hit: True if the shape reached the fitting bound.
    """
    def __init__(self, params, log_target, mode_kind, hessian, loglik,
                 boundary_hit=False):
        self.params = params
        self.log_target = float(log_target)
        self.mode_kind = mode_kind
        self.hessian = np.asarray(hessian, dtype=float)
        self.loglik = float(loglik)
        self.boundary_hit = boundary_hit

    @property
    def dimension(self):
        return self.hessian.shape[0]

    @property
    def lam(self):
        return self.params.get('lambda', 0.0)

    def log_det(self):
        """log det of the Hessian via Cholesky.

        Raises:
            CurvatureError: the Hessian is not positive-definite.
        """
        if self.dimension == 0:
            return 0.0
        try:
            factor = np.linalg.cholesky(self.hessian)
        except np.linalg.LinAlgError:
            raise CurvatureError(
                'Hessian at the {} is not positive-definite: {}'.format(
                    self.mode_kind, self.hessian.tolist()))
        return 2.0 * float(np.sum(np.log(np.diag(factor))))

    def rescaled(self, location, scale, n):
        """Maps a fit on standardized data back to the data scale."""
        params = collections.OrderedDict(self.params)
        params['mu'] = location + scale * params['mu']
        params['sigma'] = scale * params['sigma']
        jacobian = np.ones(self.dimension)
        if self.dimension:
            jacobian[0] = 1.0 / scale
        hessian = self.hessian * np.outer(jacobian, jacobian)
        shift = n * np.log(scale)
        return ModelFit(params, self.log_target - shift, self.mode_kind,
                        hessian, self.loglik - shift, self.boundary_hit)

    def to_dict(self):
        document = collections.OrderedDict(
            (key, float(value)) for key, value in self.params.items())
        document['loglik'] = self.loglik
        document['mode'] = self.mode_kind
        if self.boundary_hit:
            document['boundary_hit'] = True
        return document


def _bounds(dimension):
    if dimension < 3:
        return None
    return [(None, None), (None, None), (-SHAPE_BOUND, SHAPE_BOUND)]


def _fit(objective, seeds, mode_kind, build_params, loglik_at):
    best = None
    failures = []
    for seed in seeds:
        try:
            result = numerics.minimize(
                objective, seed, tol=1e-9, fatol=1e-11,
                bounds=_bounds(len(seed)), step=0.1)
        except (InvalidArgumentError, NumericalError) as ex:
            failures.append(str(ex))
            continue
        logger().debug('%s seed %s -> %s (converged=%s)', mode_kind,
                       list(seed), list(result.argmin), result.converged)
        if best is None or result.value < best.value:
            best = result
    if best is None:
        raise FittingError('every {} seed failed: {}'.format(
            mode_kind, '; '.join(failures)))
    point = best.argmin
    try:
        hessian = numerics.hessian_fd(objective, point)
    except InvalidArgumentError as ex:
        raise CurvatureError('{} Hessian is not finite: {}'.format(
            mode_kind, ex))
    boundary = len(point) == 3 and abs(point[2]) >= SHAPE_BOUND - 1e-6
    return ModelFit(build_params(point), -best.value, mode_kind, hessian,
                    loglik_at(point), boundary)


def _symmetric_params(point):
    return collections.OrderedDict(
        [('mu', float(point[0])), ('sigma', float(np.exp(point[1])))])


def _skew_params(point):
    return collections.OrderedDict([
        ('mu', float(point[0])),
        ('sigma', float(np.exp(point[1]))),
        ('lambda', float(point[2])),
    ])


def fit_mle_symmetric(data, baseline):
    """Maximum-likelihood fit of the symmetric model.

    The normal baseline has the closed form mu = mean, sigma^2 = A / n.
    """
    values = _values(data)
    base = get_baseline(baseline)

    def objective(point):
        return -float(_symmetric_terms(values, base, point[0], point[1]))

    if base.name == 'normal':
        spread = np.sum((values - np.mean(values)) ** 2)
        if not spread > 0:
            raise DegenerateDataError('data have zero spread')
        point = np.array([np.mean(values),
                          0.5 * np.log(spread / len(values))])
        return ModelFit(_symmetric_params(point), -objective(point), 'MLE',
                        numerics.hessian_fd(objective, point),
                        -objective(point))
    spread = np.std(values)
    if not spread > 0:
        raise DegenerateDataError('data have zero spread')
    seeds = [np.array([np.median(values), np.log(spread)])]
    return _fit(objective, seeds, 'MLE', _symmetric_params,
                lambda point: -objective(point))


def _moment_seed(values, base, lam):
    family = discrepancy.SkewSymmetricFamily(base)
    objective = discrepancy.DiscrepancyObjective(
        family, lam, numerics.DEFAULT_QUADRATURE)
    mean, sd = objective.moments()
    sigma = np.std(values) / sd
    return np.array([np.mean(values) - sigma * mean, np.log(sigma), lam])


def fit_mle_skew(data, baseline):
    """Maximum-likelihood fit of the skew-symmetric model.

    Seeds are moment-matched at shapes -2, -0.5, 0.5, 2 plus the symmetric
    fit; the shape is boxed to [-SHAPE_BOUND, SHAPE_BOUND].
    """
    values = _values(data)
    base = get_baseline(baseline)

    def objective(point):
        return -float(_skew_terms(values, base, point[0], point[1], point[2]))

    symmetric = fit_mle_symmetric(values, base)
    seeds = [np.array([symmetric.params['mu'],
                       np.log(symmetric.params['sigma']), 0.0])]
    for lam in (-2.0, -0.5, 0.5, 2.0):
        seeds.append(_moment_seed(values, base, lam))
    return _fit(objective, seeds, 'MLE', _skew_params,
                lambda point: -objective(point))


def map_estimate(data, baseline, prior=None, mle=None):
    """Posterior mode of the null (prior None) or alternative model.

    The null posterior in (mu, log sigma) is the likelihood itself, so its
    mode is the MLE. Under a shape prior the search starts from the
    alternative MLE and from shapes +1 and -1; a non-local prior splits the
    posterior at 0 into two basins.

    Raises:
        FittingError: no seed produced a mode.
    """
    values = _values(data)
    base = get_baseline(baseline)
    if prior is None:
        fit = fit_mle_symmetric(values, base)
        return ModelFit(fit.params, fit.log_target, 'MAP', fit.hessian,
                        fit.loglik)
    if not prior.normalized:
        prior = prior.normalize()
    if mle is None:
        mle = fit_mle_skew(values, base)

    def loglik(point):
        return float(_skew_terms(values, base, point[0], point[1], point[2]))

    def objective(point):
        return -(loglik(point) + float(prior.logpdf(point[2])))

    mu, eta, lam = (mle.params['mu'], np.log(mle.params['sigma']),
                    mle.params['lambda'])
    if lam == 0.0:
        lam = 1e-3
    seeds = [np.array([mu, eta, lam]), np.array([mu, eta, 1.0]),
             np.array([mu, eta, -1.0])]
    return _fit(objective, seeds, 'MAP', _skew_params, loglik)


def laplace_log_marginal(fit):
    """log target + (d/2) log 2 pi - log det(H) / 2 at a mode.

    Raises:
        CurvatureError: the Hessian is not positive-definite.
    """
    return fit.log_target + 0.5 * fit.dimension * LOG_2PI - 0.5 * fit.log_det()


def log_marginal_null_closed(data):
    """Normal-model log marginal likelihood under the prior 1/sigma.

    >>> round(log_marginal_null_closed([-1.0, -0.5, 0.0, 0.5, 1.0]), 6)
    -5.619907
    """
    values = np.asarray(data.values if isinstance(data, Dataset) else data,
                        dtype=float)
    n = len(values)
    if n < 2:
        raise InsufficientDataError('closed form needs n >= 2')
    spread = float(np.sum((values - np.mean(values)) ** 2))
    if not spread > 0:
        raise DegenerateDataError('data have zero spread')
    half = (n - 1) / 2.0
    return float(-half * np.log(np.pi) - 0.5 * np.log(n) - LOG2 +
                 scipy.special.gammaln(half) - half * np.log(spread))


class IlaConfig(object):
    """Shape grid of the integrated Laplace approximation.

    Attributes:
        core_nodes, core_halfwidth: Uniform nodes on [-h, h] around 0.
        window_nodes, window_sds: Uniform nodes on mode +/- sds * sd.
        medium_nodes: Uniform nodes on [-clip, clip].
        clip: Window and medium nodes stay within [-clip, clip].
        tail_nodes, tail_ratio: Geometric nodes on [clip, clip * ratio] per
            side.
    """
    FIELDS = ('core_nodes', 'core_halfwidth', 'window_nodes', 'window_sds',
              'medium_nodes', 'clip', 'tail_nodes', 'tail_ratio')

    def __init__(self, core_nodes=121, core_halfwidth=6.0, window_nodes=161,
                 window_sds=12.0, medium_nodes=121, clip=60.0, tail_nodes=20,
                 tail_ratio=100.0):
        self.core_nodes = int(core_nodes)
        self.core_halfwidth = float(core_halfwidth)
        self.window_nodes = int(window_nodes)
        self.window_sds = float(window_sds)
        self.medium_nodes = int(medium_nodes)
        self.clip = float(clip)
        self.tail_nodes = int(tail_nodes)
        self.tail_ratio = float(tail_ratio)
        if min(self.core_nodes, self.window_nodes, self.medium_nodes) < 3:
            raise InvalidArgumentError('ILA node counts must be at least 3')
        if not (self.core_halfwidth > 0 and self.window_sds > 0 and
                self.clip > 0 and self.tail_ratio > 1):
            raise InvalidArgumentError('ILA extents must be positive')
        if self.tail_nodes < 0:
            raise InvalidArgumentError('tail_nodes must be non-negative')

    @classmethod
    def from_dict(cls, document):
        unknown = set(document) - set(cls.FIELDS)
        if unknown:
            raise InvalidArgumentError('unknown ILA keys: {}'.format(
                ', '.join(sorted(unknown))))
        return cls(**document)

    def to_dict(self):
        return collections.OrderedDict(
            (field, getattr(self, field)) for field in self.FIELDS)

    def nodes(self, mode, sd, hints=()):
        clip = self.clip
        window = np.clip(
            np.linspace(mode - self.window_sds * sd,
                        mode + self.window_sds * sd, self.window_nodes),
            -clip, clip)
        parts = [
            np.linspace(-self.core_halfwidth, self.core_halfwidth,
                        self.core_nodes),
            window,
            np.linspace(-clip, clip, self.medium_nodes),
        ]
        if self.tail_nodes:
            tail = np.geomspace(clip, clip * self.tail_ratio, self.tail_nodes)
            parts.extend([tail, -tail])
        reach = clip * self.tail_ratio if self.tail_nodes else clip
        hints = np.asarray(hints, dtype=float)
        parts.append(hints[np.abs(hints) <= reach])
        return np.unique(np.round(np.concatenate(parts), 12))


IlaProfile = collections.namedtuple(
    'IlaProfile', ['lambdas', 'log_values', 'mode', 'sd'])


def _conditional_fit(values, base, lam, warm):
    """Laplace-integrates (mu, log sigma) out at a fixed shape.

    Returns:
        (log value, mu, eta).
    """
    def objective(point):
        return -float(_skew_terms(values, base, point[0], point[1], lam))

    result = numerics.minimize(objective, warm, tol=1e-10, fatol=1e-12,
                               step=0.1)
    try:
        hessian = numerics.hessian_fd(objective, result.argmin)
    except InvalidArgumentError as ex:
        raise CurvatureError('conditional Hessian is not finite: {}'.format(
            ex))
    fit = ModelFit(_symmetric_params(result.argmin), -result.value, 'MLE',
                   hessian, -result.value)
    log_value = fit.log_target + LOG_2PI - 0.5 * fit.log_det()
    return log_value, result.argmin[0], result.argmin[1]


def _profile_sd(values, base, mle):
    lam = mle.params['lambda']
    warm = np.array([mle.params['mu'], np.log(mle.params['sigma'])])
    h = 0.05 * max(1.0, abs(lam))
    try:
        centre = _conditional_fit(values, base, lam, warm)[0]
        upper = _conditional_fit(values, base, lam + h, warm)[0]
        lower = _conditional_fit(values, base, lam - h, warm)[0]
    except (InvalidArgumentError, NumericalError) as ex:
        logger().debug('profile curvature failed: %s', ex)
        return 1.0
    curvature = -(upper - 2.0 * centre + lower) / (h * h)
    if not curvature > 0:
        return 1.0
    return float(1.0 / np.sqrt(curvature))


def ila_profile(data, baseline, priors=(), cfg=None, mle=None):
    """Evaluates the Laplace-integrated profile L(lam) on the ILA grid.

    Nodes are visited outward from the mode, each warm-started from its
    neighbour. Failed nodes are recorded as NaN.

    Raises:
        EvaluationError: every node failed.
    """
    values = _values(data)
    base = get_baseline(baseline)
    cfg = cfg if cfg is not None else IlaConfig()
    if mle is None:
        mle = fit_mle_skew(values, base)
    mode = mle.params['lambda']
    sd = _profile_sd(values, base, mle)
    hints = [prior.grid_hint() for prior in priors]
    lambdas = cfg.nodes(mode, sd, np.concatenate(hints) if hints else ())

    log_values = np.full(len(lambdas), np.nan)
    start = int(np.argmin(np.abs(lambdas - mode)))
    origin = np.array([mle.params['mu'], np.log(mle.params['sigma'])])
    for order in (range(start, len(lambdas)), range(start - 1, -1, -1)):
        warm = origin
        for i in order:
            try:
                log_values[i], mu, eta = _conditional_fit(
                    values, base, lambdas[i], warm)
            except (InvalidArgumentError, NumericalError) as ex:
                logger().debug('ILA node %g failed: %s', lambdas[i], ex)
                continue
            warm = np.array([mu, eta])
    failed = np.count_nonzero(np.isnan(log_values))
    if failed == len(lambdas):
        raise EvaluationError('every ILA node failed')
    if failed:
        logger().warning('%d of %d ILA nodes failed', failed, len(lambdas))
    return IlaProfile(lambdas, log_values, mode, sd)


def ila_integrate(profile, prior):
    """log of int exp(L(lam)) prior(lam) dlam over a profile.

    Mass beyond the outermost nodes is accounted with L held at its edge
    value. Shape priors are symmetric, so the lower tail is read as an
    upper one.
    """
    if not prior.normalized:
        prior = prior.normalize()
    usable = np.isfinite(profile.log_values)
    lambdas = profile.lambdas[usable]
    log_values = profile.log_values[usable]
    with np.errstate(divide='ignore'):
        body = numerics.log_trapezoid(
            log_values + prior.logpdf(lambdas), lambdas)
        upper = log_values[-1] + np.log(prior.tail_mass(lambdas[-1]))
        lower = log_values[0] + np.log(prior.tail_mass(-lambdas[0]))
    return float(scipy.special.logsumexp([body, upper, lower]))


def ila_log_marginal(data, baseline, prior, cfg=None, mle=None):
    """Integrated Laplace log marginal likelihood of the alternative."""
    profile = ila_profile(data, baseline, (prior,), cfg, mle)
    return ila_integrate(profile, prior)


def brute_force_log_marginal_null(data, baseline='normal'):
    """Null log marginal likelihood by adaptive 2D quadrature."""
    dataset = data if isinstance(data, Dataset) else Dataset(data)
    standard, _, scale = dataset.standardized()
    values, base, n = standard.values, get_baseline(baseline), dataset.n
    fit = fit_mle_symmetric(values, base)
    peak = fit.loglik
    eta_hat = np.log(fit.params['sigma'])
    eta_sd = 1.0 / np.sqrt(fit.hessian[1, 1])

    def integrand(mu, eta):
        return np.exp(_symmetric_terms(values, base, mu, eta) - peak)

    def mu_low(eta):
        return fit.params['mu'] - 20.0 * np.exp(eta) / np.sqrt(n)

    def mu_high(eta):
        return fit.params['mu'] + 20.0 * np.exp(eta) / np.sqrt(n)

    value, _ = scipy.integrate.dblquad(
        integrand, eta_hat - 12.0 * eta_sd, eta_hat + 20.0 * eta_sd,
        mu_low, mu_high, epsabs=1e-13, epsrel=1e-10)
    return float(np.log(value) + peak - (n - 1) * np.log(scale))


def _inner_log_integral(values, base, lam, warm, nodes):
    """log int int exp(loglik) dmu deta on a tensor grid at a fixed shape."""
    def objective(point):
        return -float(_skew_terms(values, base, point[0], point[1], lam))

    result = numerics.minimize(objective, warm, tol=1e-9, step=0.1)
    centre = result.argmin
    covariance = np.linalg.inv(numerics.hessian_fd(objective, centre))
    sds = np.sqrt(np.abs(np.diag(covariance)))
    mu = np.linspace(centre[0] - 12.0 * sds[0], centre[0] + 12.0 * sds[0],
                     nodes)
    eta = np.linspace(centre[1] - 12.0 * sds[1], centre[1] + 20.0 * sds[1],
                      nodes)
    grid_mu, grid_eta = np.meshgrid(mu, eta, indexing='ij')
    logs = _skew_terms(values, base, grid_mu, grid_eta, lam)
    weights = np.outer(numerics.trapezoid_weights(mu),
                       numerics.trapezoid_weights(eta))
    return float(scipy.special.logsumexp(logs, b=weights))


def brute_force_log_marginal_alt(data, baseline, prior, nodes=241):
    """Alternative log marginal likelihood by direct 3D integration.

    The (mu, log sigma) integral is a tensor trapezoid around the
    conditional mode at each shape; the shape integral is adaptive.
    """
    if not prior.normalized:
        prior = prior.normalize()
    dataset = data if isinstance(data, Dataset) else Dataset(data)
    standard, _, scale = dataset.standardized()
    values, base, n = standard.values, get_baseline(baseline), dataset.n
    mle = fit_mle_skew(values, base)
    peak = mle.loglik
    warm = np.array([mle.params['mu'], np.log(mle.params['sigma'])])

    def integrand(lam):
        log_prior = float(prior.logpdf(lam))
        if log_prior == -np.inf:
            return 0.0
        inner = _inner_log_integral(values, base, lam, warm, nodes)
        return np.exp(inner + log_prior - peak)

    lam_hat = float(np.clip(mle.params['lambda'], -SHAPE_BOUND, SHAPE_BOUND))
    points = sorted(set([0.0, lam_hat]) - set([-SHAPE_BOUND, SHAPE_BOUND]))
    pieces = [
        scipy.integrate.quad(integrand, -np.inf, -SHAPE_BOUND, limit=200),
        scipy.integrate.quad(integrand, -SHAPE_BOUND, SHAPE_BOUND,
                             points=points, limit=200),
        scipy.integrate.quad(integrand, SHAPE_BOUND, np.inf, limit=200),
    ]
    total = sum(piece[0] for piece in pieces)
    return float(np.log(total) + peak - (n - 1) * np.log(scale))


def posterior_probability(log_bf_10, prior_odds=1.0):
    """Posterior probability of the alternative, strictly inside (0, 1).

    >>> posterior_probability(0.0)
    0.5
    """
    if not prior_odds > 0:
        raise InvalidArgumentError('prior odds must be positive')
    value = scipy.special.expit(log_bf_10 + np.log(prior_odds))
    return float(np.clip(value, np.finfo(float).tiny, np.nextafter(1.0, 0.0)))


class TestResult(object):
    """Outcome of one Bayesian symmetry test."""
    KEYS = ('log_marg_null', 'log_marg_alt', 'log_bf_10', 'post_prob_alt',
            'bic_null', 'bic_alt', 'prior', 'engine', 'params_null',
            'params_alt')

    def __init__(self, log_marg_null, log_marg_alt, bic_null, bic_alt, prior,
                 engine, fit_null, fit_alt, prior_odds=1.0):
        self.log_marg_null = float(log_marg_null)
        self.log_marg_alt = float(log_marg_alt)
        self.log_bf_10 = self.log_marg_alt - self.log_marg_null
        self.post_prob_alt = posterior_probability(self.log_bf_10, prior_odds)
        self.bic_null = float(bic_null)
        self.bic_alt = float(bic_alt)
        self.prior = prior
        self.engine = engine
        self.fit_null = fit_null
        self.fit_alt = fit_alt
        self.prior_odds = prior_odds

    def to_dict(self):
        return collections.OrderedDict([
            ('log_marg_null', self.log_marg_null),
            ('log_marg_alt', self.log_marg_alt),
            ('log_bf_10', self.log_bf_10),
            ('post_prob_alt', self.post_prob_alt),
            ('bic_null', self.bic_null),
            ('bic_alt', self.bic_alt),
            ('prior', self.prior),
            ('engine', self.engine),
            ('params_null', self.fit_null.to_dict()),
            ('params_alt', self.fit_alt.to_dict()),
        ])

    def __repr__(self):
        return 'TestResult(prior={}, log_bf_10={:.4f}, post_prob_alt={:.4f})'.\
            format(self.prior, self.log_bf_10, self.post_prob_alt)


def bic(loglik, parameters, n):
    return parameters * np.log(n) - 2.0 * loglik


def bayes_tests(data, baseline, priors, engine='ila', ila_config=None,
                prior_odds=1.0):
    """Tests symmetry on one dataset under several shape priors.

    The MLEs, the null marginal and the ILA profile are shared across
    priors.

    Args:
        data: Dataset or sequence of values.
        baseline: Baseline name or object.
        priors: Sequence of PriorSpec.
        engine: 'ila' or 'laplace'. The Laplace engine falls back to ILA
            for a prior whose posterior mode has no positive curvature.
        ila_config: IlaConfig.
        prior_odds: Prior odds of the alternative against the null.

    Returns:
        A list of TestResult, one per prior.
    """
    if engine not in ENGINES:
        raise InvalidArgumentError('unknown engine {!r}; expected {}'.format(
            engine, ' or '.join(ENGINES)))
    dataset = data if isinstance(data, Dataset) else Dataset(data)
    base = get_baseline(baseline)
    standard, location, scale = dataset.standardized()
    n = dataset.n
    shift = (n - 1) * np.log(scale)
    priors = [prior if prior.normalized else prior.normalize()
              for prior in priors]

    fit_null = map_estimate(standard, base)
    if base.name == 'normal':
        log_null = log_marginal_null_closed(standard)
    else:
        log_null = laplace_log_marginal(fit_null)
    mle_alt = fit_mle_skew(standard, base)
    if mle_alt.boundary_hit:
        logger().warning('%s: shape MLE reached the bound %g',
                         dataset.label or 'dataset', SHAPE_BOUND)
    null_fit = fit_null.rescaled(location, scale, n)
    bic_null = bic(null_fit.loglik, 2, n)
    bic_alt = bic(mle_alt.rescaled(location, scale, n).loglik, 3, n)

    profile = []

    def shared_profile():
        if not profile:
            profile.append(ila_profile(standard, base, priors, ila_config,
                                       mle_alt))
        return profile[0]

    results = []
    for prior in priors:
        fit_alt = map_estimate(standard, base, prior, mle_alt)
        used = engine
        if engine == 'laplace':
            try:
                log_alt = laplace_log_marginal(fit_alt)
            except CurvatureError as ex:
                logger().warning('%s: %s; using ILA', prior.name, ex)
                used = 'ila'
                log_alt = ila_integrate(shared_profile(), prior)
        else:
            log_alt = ila_integrate(shared_profile(), prior)
        result = TestResult(
            log_null - shift, log_alt - shift, bic_null, bic_alt,
            prior.name, used, null_fit,
            fit_alt.rescaled(location, scale, n), prior_odds)
        logger().info('%s: %s log BF %.4f, P(alt) %.4f',
                      dataset.label or 'dataset', prior.name,
                      result.log_bf_10, result.post_prob_alt)
        results.append(result)
    return results


def bayes_test(data, baseline, prior, engine='ila', ila_config=None,
               prior_odds=1.0):
    """Single-prior bayes_tests."""
    return bayes_tests(data, baseline, [prior], engine, ila_config,
                       prior_odds)[0]
