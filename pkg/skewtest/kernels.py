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
"""Symmetric baselines and the densities built from them.

A baseline bundles a symmetric pdf f with its cdf F, the skewing pair
(G, g) and an odd transform omega. The shipped baselines skew with their
own cdf (G = F, g = f) and use omega(x) = x.

Skew-symmetric density:

    s(x; mu, sigma, lam) = 2/sigma f(z) G(lam omega(z)),  z = (x - mu)/sigma

Two-piece density, with sigma1 = sigma(1 + tanh eps) and
sigma2 = sigma(1 - tanh eps):

    2/(sigma1 + sigma2) f((x - mu)/sigma1)   for x < mu
    2/(sigma1 + sigma2) f((x - mu)/sigma2)   for x >= mu
"""
from __future__ import absolute_import
from __future__ import division

import numpy as np
import scipy.integrate
import scipy.special

from skewtest.errors import InvalidArgumentError


LOG2 = np.log(2.0)
_LOG_SQRT_2PI = 0.5 * np.log(2.0 * np.pi)
_TINY = np.finfo(float).tiny


class SymmetricBaseline(object):
    """A symmetric kernel with its skewing cdf/pdf pair.

    Subclasses implement logpdf, cdf, logcdf, ppf and dpdf; the skewing
    pair defaults to the kernel's own cdf and pdf.
    """
    name = None

    def pdf(self, x):
        return np.exp(self.logpdf(x))

    def logpdf(self, x):
        raise NotImplementedError

    def cdf(self, x):
        raise NotImplementedError

    def logcdf(self, x):
        raise NotImplementedError

    def ppf(self, p):
        raise NotImplementedError

    def dpdf(self, x):
        """Derivative f'(x)."""
        raise NotImplementedError

    def skew_cdf(self, y):
        """The skewing cdf G."""
        return self.cdf(y)

    def log_skew_cdf(self, y):
        return self.logcdf(y)

    def skew_pdf(self, y):
        """The skewing pdf g = G'."""
        return self.pdf(y)

    def omega(self, x):
        return np.asarray(x, dtype=float)

    def sample(self, rng, n):
        """Draws n values from f by inversion."""
        u = rng.random(n)
        return self.ppf(np.clip(u, _TINY, 1.0 - np.finfo(float).epsneg))

    def __eq__(self, other):
        return isinstance(other, SymmetricBaseline) and self.name == other.name

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return '{}()'.format(type(self).__name__)


class NormalBaseline(SymmetricBaseline):
    name = 'normal'

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.exp(-0.5 * x * x - _LOG_SQRT_2PI)

    def logpdf(self, x):
        x = np.asarray(x, dtype=float)
        return -0.5 * x * x - _LOG_SQRT_2PI

    def cdf(self, x):
        return scipy.special.ndtr(x)

    def logcdf(self, x):
        return scipy.special.log_ndtr(x)

    def ppf(self, p):
        return scipy.special.ndtri(p)

    def dpdf(self, x):
        x = np.asarray(x, dtype=float)
        return -x * self.pdf(x)

    def sample(self, rng, n):
        return rng.standard_normal(n)


class LogisticBaseline(SymmetricBaseline):
    """f(x) = exp(-x) / (1 + exp(-x))**2, G = expit."""
    name = 'logistic'

    def logpdf(self, x):
        a = np.abs(np.asarray(x, dtype=float))
        return -a - 2.0 * np.log1p(np.exp(-a))

    def cdf(self, x):
        return scipy.special.expit(x)

    def logcdf(self, x):
        return -np.logaddexp(0.0, -np.asarray(x, dtype=float))

    def ppf(self, p):
        return scipy.special.logit(p)

    def dpdf(self, x):
        x = np.asarray(x, dtype=float)
        return -np.tanh(x / 2.0) * self.pdf(x)


class SechBaseline(SymmetricBaseline):
    """f(x) = sech(pi x / 2) / 2, G(x) = (2/pi) arctan(exp(pi x / 2))."""
    name = 'sech'

    def logpdf(self, x):
        a = np.abs(np.asarray(x, dtype=float))
        return -0.5 * np.pi * a - np.log1p(np.exp(-np.pi * a))

    def _lower_tail(self, x):
        # (2/pi) arctan(exp(-pi |x| / 2)), the cdf at -|x|.
        t = np.exp(-0.5 * np.pi * np.abs(np.asarray(x, dtype=float)))
        return 2.0 / np.pi * np.arctan(t), t

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        tail, _ = self._lower_tail(x)
        return np.where(x < 0, tail, 1.0 - tail)

    def logcdf(self, x):
        x = np.asarray(x, dtype=float)
        tail, t = self._lower_tail(x)
        with np.errstate(divide='ignore', invalid='ignore'):
            ratio = np.where(t > 1e-8, np.arctan(t) / np.where(t > 0, t, 1.0),
                             1.0 - t * t / 3.0)
        # log(arctan(t)) = log(t) + log(arctan(t)/t) stays finite when t
        # underflows.
        lower = (np.log(2.0 / np.pi) - 0.5 * np.pi * np.abs(x) +
                 np.log(ratio))
        return np.where(x < 0, lower, np.log1p(-tail))

    def ppf(self, p):
        p = np.asarray(p, dtype=float)
        return 2.0 / np.pi * np.log(np.tan(0.5 * np.pi * p))

    def dpdf(self, x):
        x = np.asarray(x, dtype=float)
        return -0.5 * np.pi * np.tanh(0.5 * np.pi * x) * self.pdf(x)


BASELINES = {
    'normal': NormalBaseline(),
    'logistic': LogisticBaseline(),
    'sech': SechBaseline(),
}


def get_baseline(baseline):
    """Returns the baseline registered under a name.

    >>> get_baseline('sech').name
    'sech'
    """
    if isinstance(baseline, SymmetricBaseline):
        return baseline
    try:
        return BASELINES[baseline]
    except KeyError:
        raise InvalidArgumentError(
            'unknown baseline {!r}; expected one of {}'.format(
                baseline, ', '.join(sorted(BASELINES))))


def _check_finite(name, value):
    if not np.isfinite(value):
        raise InvalidArgumentError('{} must be finite: {!r}'.format(
            name, value))


def _check_scale(sigma):
    if not np.isfinite(sigma) or not sigma > 0:
        raise InvalidArgumentError(
            'sigma must be positive and finite: {!r}'.format(sigma))


class SkewSymmetricModel(object):
    """(baseline, mu, sigma, lam) for the skew-symmetric family."""
    def __init__(self, baseline, mu=0.0, sigma=1.0, lam=0.0):
        _check_finite('mu', mu)
        _check_scale(sigma)
        _check_finite('lambda', lam)
        self.baseline = get_baseline(baseline)
        self.mu = float(mu)
        self.sigma = float(sigma)
        self.lam = float(lam)

    def pdf(self, x):
        return skew_pdf(self, x)

    def __repr__(self):
        return 'SkewSymmetricModel({}, mu={}, sigma={}, lam={})'.format(
            self.baseline.name, self.mu, self.sigma, self.lam)


class TwoPieceModel(object):
    """(baseline, mu, sigma, epsilon) for the two-piece family."""
    def __init__(self, baseline, mu=0.0, sigma=1.0, epsilon=0.0):
        _check_finite('mu', mu)
        _check_scale(sigma)
        _check_finite('epsilon', epsilon)
        self.baseline = get_baseline(baseline)
        self.mu = float(mu)
        self.sigma = float(sigma)
        self.epsilon = float(epsilon)
        if not self.sigma1 > 0 or not self.sigma2 > 0:
            raise InvalidArgumentError(
                'epsilon {!r} saturates tanh; both half scales must stay '
                'positive'.format(epsilon))

    @property
    def sigma1(self):
        return self.sigma * (1.0 + np.tanh(self.epsilon))

    @property
    def sigma2(self):
        return self.sigma * (1.0 - np.tanh(self.epsilon))

    def pdf(self, x):
        return two_piece_pdf(self, x)

    def __repr__(self):
        return 'TwoPieceModel({}, mu={}, sigma={}, epsilon={})'.format(
            self.baseline.name, self.mu, self.sigma, self.epsilon)


def _as_points(x):
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise InvalidArgumentError('x must be finite')
    return x


def _like(values, x):
    return float(values) if np.ndim(x) == 0 else values


def skew_pdf(model, x):
    """Evaluates (2/sigma) f(z) G(lam omega(z)) at x.

    >>> model = SkewSymmetricModel('normal', lam=1.0)
    >>> round(skew_pdf(model, 0.0), 5)
    0.39894
    """
    x = _as_points(x)
    base = model.baseline
    z = (x - model.mu) / model.sigma
    values = (2.0 / model.sigma * base.pdf(z) *
              base.skew_cdf(model.lam * base.omega(z)))
    return _like(values, x)


def skew_logpdf(model, x):
    """Log of skew_pdf, stable far into the suppressed tail."""
    x = _as_points(x)
    base = model.baseline
    z = (x - model.mu) / model.sigma
    values = (LOG2 - np.log(model.sigma) + base.logpdf(z) +
              base.log_skew_cdf(model.lam * base.omega(z)))
    return _like(values, x)


def two_piece_pdf(model, x):
    """Evaluates the two-piece density at x."""
    x = _as_points(x)
    sigma1, sigma2 = model.sigma1, model.sigma2
    d = x - model.mu
    scale = np.where(d < 0, sigma1, sigma2)
    values = 2.0 / (sigma1 + sigma2) * model.baseline.pdf(d / scale)
    return _like(values, x)


def skew_cdf(model, x, nodes=20001, mass=1e-12):
    """Numeric cdf of the skew-symmetric density.

    Integrates the pdf cumulatively on a fine grid spanning the baseline
    quantiles that leave mass outside, then interpolates.
    """
    x = np.asarray(x, dtype=float)
    q = float(model.baseline.ppf(1.0 - mass / 2.0))
    grid = np.linspace(model.mu - model.sigma * q, model.mu + model.sigma * q,
                       nodes)
    cumulative = scipy.integrate.cumulative_trapezoid(
        skew_pdf(model, grid), grid, initial=0.0)
    cumulative /= cumulative[-1]
    return _like(np.interp(x, grid, cumulative, left=0.0, right=1.0), x)


def _child_streams(seed, count):
    if isinstance(seed, np.random.SeedSequence):
        entropy, key = seed.entropy, tuple(seed.spawn_key)
    else:
        entropy, key = int(seed), ()
    return [np.random.SeedSequence(entropy, spawn_key=key + (i,))
            for i in range(count)]


def sample_skew(model, n, seed):
    """Draws n values from the skew-symmetric model.

    Z comes from f and U from an independent uniform stream; the draw is
    mu + sigma Z when U <= G(lam omega(Z)) and mu - sigma Z otherwise.
    Both streams derive from seed alone, so a longer request extends a
    shorter one.

    Args:
        model: SkewSymmetricModel.
        n: Number of draws; 0 yields an empty array.
        seed: Integer or numpy SeedSequence.

    Returns:
        A float array of length n.
    """
    n = int(n)
    if n < 0:
        raise InvalidArgumentError('n must be non-negative: {}'.format(n))
    if n == 0:
        return np.empty(0)
    base = model.baseline
    draw_seed, flip_seed = _child_streams(seed, 2)
    z = base.sample(np.random.default_rng(draw_seed), n)
    u = np.random.default_rng(flip_seed).random(n)
    keep = u <= base.skew_cdf(model.lam * base.omega(z))
    return model.mu + model.sigma * np.where(keep, z, -z)


def normal_pdf_cdf(x):
    """Returns (phi(x), Phi(x)) for the standard normal.

    >>> pdf, cdf = normal_pdf_cdf(0.0)
    >>> round(pdf, 10), cdf
    (0.3989422804, 0.5)
    """
    x = float(x)
    return float(BASELINES['normal'].pdf(x)), float(scipy.special.ndtr(x))
