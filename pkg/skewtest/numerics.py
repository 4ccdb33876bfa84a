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
"""Quadrature, simplex minimization and finite differences.

Everything downstream routes its integrals through integrate_line and its
searches through minimize, so tolerances are controlled in one place.
"""
from __future__ import absolute_import
from __future__ import division

import logging

import numpy as np
import scipy.optimize
import scipy.special

from skewtest.errors import InvalidArgumentError
from skewtest.errors import InvalidIntegrandError
from skewtest.errors import OptimizationError
from skewtest.errors import QuadratureBudgetError


EPS = np.finfo(float).eps


def logger():
    """Returns the module logger."""
    return logging.getLogger(__name__)


class QuadratureConfig(object):
    """Tolerances for integrate_line.

    Attributes:
        rel_tol: Relative error target.
        abs_tol: Absolute error target. The stricter of the two governs
            only until the other is met.
        max_subdivisions: Total panel budget.
        truncation_mass: Tail mass below which callers may truncate an
            infinite domain to baseline quantiles.
    """
    def __init__(self, rel_tol=1e-8, abs_tol=1e-12, max_subdivisions=4000,
                 truncation_mass=1e-12):
        if not rel_tol > 0 or not abs_tol > 0:
            raise InvalidArgumentError(
                'quadrature tolerances must be positive: rel_tol={}, '
                'abs_tol={}'.format(rel_tol, abs_tol))
        if int(max_subdivisions) < 1:
            raise InvalidArgumentError(
                'max_subdivisions must be at least 1: {}'.format(
                    max_subdivisions))
        if not 0 < truncation_mass < 1e-8:
            raise InvalidArgumentError(
                'truncation_mass must lie in (0, 1e-8): {}'.format(
                    truncation_mass))
        self.rel_tol = float(rel_tol)
        self.abs_tol = float(abs_tol)
        self.max_subdivisions = int(max_subdivisions)
        self.truncation_mass = float(truncation_mass)

    def __repr__(self):
        return ('QuadratureConfig(rel_tol={}, abs_tol={}, '
                'max_subdivisions={}, truncation_mass={})'.format(
                    self.rel_tol, self.abs_tol, self.max_subdivisions,
                    self.truncation_mass))


DEFAULT_QUADRATURE = QuadratureConfig()
DISCREPANCY_QUADRATURE = QuadratureConfig(rel_tol=1e-10, abs_tol=1e-14)
MARGINAL_QUADRATURE = QuadratureConfig(rel_tol=1e-6, abs_tol=1e-10)


# 15-point Kronrod extension of the 7-point Gauss rule. Abscissae are the
# non-negative half in decreasing order; the Gauss rule uses every other one.
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])


def _kronrod_rule():
    nodes = np.concatenate((-_XGK[:7], _XGK[7:], _XGK[6::-1]))
    kronrod = np.concatenate((_WGK[:7], _WGK[7:], _WGK[6::-1]))
    gauss = np.zeros(15)
    for position, weight in zip((1, 3, 5), _WG[:3]):
        gauss[position] = weight
        gauss[14 - position] = weight
    gauss[7] = _WG[3]
    return nodes, kronrod, gauss


_NODES, _KRONROD, _GAUSS = _kronrod_rule()


class _Mapping(object):
    """Maps a finite t-interval onto [a, b], possibly infinite."""
    def __init__(self, a, b):
        self.a = a
        self.b = b
        if np.isfinite(a) and np.isfinite(b):
            self.kind = 'finite'
            self.lo, self.hi = a, b
        elif np.isfinite(a):
            self.kind = 'upper'
            self.lo, self.hi = 0.0, 1.0
        elif np.isfinite(b):
            self.kind = 'lower'
            self.lo, self.hi = -1.0, 0.0
        else:
            self.kind = 'both'
            self.lo, self.hi = -1.0, 1.0

    def to_x(self, t):
        if self.kind == 'finite':
            return t
        if self.kind == 'upper':
            return self.a + t / (1.0 - t)
        if self.kind == 'lower':
            return self.b + t / (1.0 + t)
        return t / (1.0 - t * t)

    def jacobian(self, t):
        if self.kind == 'finite':
            return np.ones_like(t)
        if self.kind == 'upper':
            return 1.0 / (1.0 - t) ** 2
        if self.kind == 'lower':
            return 1.0 / (1.0 + t) ** 2
        return (1.0 + t * t) / (1.0 - t * t) ** 2

    def to_t(self, x):
        if self.kind == 'finite':
            return x
        if self.kind == 'upper':
            d = x - self.a
            return d / (1.0 + d)
        if self.kind == 'lower':
            d = x - self.b
            return d / (1.0 - d)
        return 2.0 * x / (1.0 + np.sqrt(1.0 + 4.0 * x * x))


def integrate_line(fn, cfg=None, a=-np.inf, b=np.inf, points=()):
    """Integrates fn over [a, b] by adaptive Gauss-Kronrod (G7K15).

    fn is called with a 1-D array of abscissae and must return values of
    the same length along its last axis; extra leading axes integrate
    several functions at once. Infinite limits are mapped onto a finite
    interval first, and breakpoints in points start as panel edges.

    Returns:
        (value, error_estimate), with value a float (or an array for
        vector-valued fn).

    Raises:
        InvalidIntegrandError: fn produced a NaN or infinite value.
        QuadratureBudgetError: more than cfg.max_subdivisions panels were
            needed. The exception carries the best estimate.

    >>> value, _ = integrate_line(lambda x: 3.0 * x * x, a=0.0, b=1.0)
    >>> round(value, 12)
    1.0
    """
    if cfg is None:
        cfg = DEFAULT_QUADRATURE
    if a == b:
        return 0.0, 0.0
    sign = 1.0
    if a > b:
        a, b = b, a
        sign = -1.0

    mapping = _Mapping(a, b)
    cuts = {mapping.lo, mapping.hi}
    for point in points:
        if a < point < b:
            cuts.add(float(mapping.to_t(point)))
    cuts = np.array(sorted(cuts))
    mids = (cuts[:-1] + cuts[1:]) / 2.0
    left = np.concatenate((cuts[:-1], mids))
    right = np.concatenate((mids, cuts[1:]))
    total_width = mapping.hi - mapping.lo
    num_panels = len(left)

    done_value = 0.0
    done_error = 0.0
    while True:
        centers = (left + right) / 2.0
        halves = (right - left) / 2.0
        t = centers[:, np.newaxis] + halves[:, np.newaxis] * _NODES
        with np.errstate(over='ignore', under='ignore'):
            fx = np.asarray(fn(mapping.to_x(t).ravel()), dtype=float)
            if fx.ndim == 0:
                fx = np.full(t.size, float(fx))
            fx = fx.reshape(fx.shape[:-1] + t.shape) * mapping.jacobian(t)
        if not np.all(np.isfinite(fx)):
            raise InvalidIntegrandError(
                'integrand is not finite on [{}, {}]'.format(a, b))

        kronrod = halves * np.dot(fx, _KRONROD)
        gauss = halves * np.dot(fx, _GAUSS)
        mean = np.dot(fx, _KRONROD) / 2.0
        resabs = halves * np.dot(np.abs(fx), _KRONROD)
        resasc = halves * np.dot(np.abs(fx - mean[..., np.newaxis]), _KRONROD)
        raw = np.abs(kronrod - gauss)
        error = raw.copy()
        scalable = (resasc > 0) & (raw > 0)
        error[scalable] = resasc[scalable] * np.minimum(
            1.0, (200.0 * raw[scalable] / resasc[scalable]) ** 1.5)
        floor = 50.0 * EPS * resabs
        error = np.maximum(error, floor)

        panels = len(left)
        panel_error = error.reshape(-1, panels).max(axis=0)
        roundoff = np.all((raw <= floor).reshape(-1, panels), axis=0)

        total = done_value + kronrod.sum(axis=-1)
        total_error = done_error + panel_error.sum()
        tol = max(cfg.abs_tol, cfg.rel_tol * float(np.max(np.abs(total))))
        if total_error <= tol:
            return sign * total, total_error

        share = tol * (right - left) / total_width
        accept = (panel_error <= share) | roundoff
        if np.all(accept):
            logger().debug(
                'quadrature limited by round-off: error %g > tol %g',
                total_error, tol)
            return sign * total, total_error

        done_value = done_value + kronrod[..., accept].sum(axis=-1)
        done_error += panel_error[accept].sum()
        refine = ~accept
        num_panels += int(refine.sum())
        if num_panels > cfg.max_subdivisions:
            raise QuadratureBudgetError(
                'quadrature needed more than {} panels on [{}, {}]'.format(
                    cfg.max_subdivisions, a, b),
                estimate=sign * total, error=total_error)
        split = centers[refine]
        left, right = (np.concatenate((left[refine], split)),
                       np.concatenate((split, right[refine])))


def trapezoid_weights(nodes):
    """Returns trapezoid weights for sorted, possibly uneven, nodes."""
    nodes = np.asarray(nodes, dtype=float)
    weights = np.zeros_like(nodes)
    if len(nodes) < 2:
        return weights
    gaps = np.diff(nodes)
    weights[:-1] += gaps / 2.0
    weights[1:] += gaps / 2.0
    return weights


def log_trapezoid(log_values, nodes):
    """Returns log of the trapezoid integral of exp(log_values)."""
    weights = trapezoid_weights(nodes)
    return float(scipy.special.logsumexp(log_values, b=weights))


class OptimResult(object):
    """Outcome of a simplex search.

    Attributes:
        argmin: Best point found.
        value: Objective at argmin.
        converged: True if the simplex met both tolerances.
        iterations: Simplex iterations used.
        evaluations: Objective evaluations used.
    """
    def __init__(self, argmin, value, converged, iterations, evaluations=0):
        self.argmin = argmin
        self.value = value
        self.converged = converged
        self.iterations = iterations
        self.evaluations = evaluations

    def __repr__(self):
        return 'OptimResult(argmin={}, value={!r}, converged={})'.format(
            list(self.argmin), self.value, self.converged)


class _NonFiniteValue(Exception):
    pass


def _nelder_mead(objective, x0, tol, fatol, bounds, step, maxiter):
    def checked(x):
        value = float(objective(x))
        if np.isnan(value) or value == -np.inf:
            raise _NonFiniteValue()
        return value

    options = {
        'xatol': tol,
        'fatol': fatol,
        'maxiter': maxiter,
        'maxfev': 2 * maxiter,
    }
    if step is not None:
        steps = np.broadcast_to(np.asarray(step, dtype=float), x0.shape)
        simplex = np.tile(x0, (len(x0) + 1, 1))
        for i in range(len(x0)):
            simplex[i + 1, i] += steps[i]
        options['initial_simplex'] = simplex
    result = scipy.optimize.minimize(
        checked, x0, method='Nelder-Mead', bounds=bounds, options=options)
    return OptimResult(np.asarray(result.x, dtype=float), float(result.fun),
                       bool(result.success), int(result.nit),
                       int(result.nfev))


def minimize(objective, init, tol=1e-8, fatol=None, bounds=None, step=None,
             maxiter=None):
    """Minimizes objective by Nelder-Mead from init.

    +inf is accepted as a barrier value. A NaN or -inf value aborts the
    search, which restarts once from a perturbed start.

    Args:
        objective: Callable taking a 1-D array and returning a float.
        init: Starting point.
        tol: Simplex diameter tolerance.
        fatol: Value spread tolerance. Defaults to tol.
        bounds: Optional sequence of (low, high) per coordinate.
        step: Optional edge lengths of the initial simplex.
        maxiter: Iteration cap. Defaults to 1000 per coordinate.

    Returns:
        An OptimResult.

    Raises:
        InvalidArgumentError: objective is not finite at init.
        OptimizationError: the restart failed too.
    """
    x0 = np.atleast_1d(np.asarray(init, dtype=float))
    if not np.isfinite(float(objective(x0))):
        raise InvalidArgumentError(
            'objective is not finite at the initial point {}'.format(
                list(x0)))
    if fatol is None:
        fatol = tol
    if maxiter is None:
        maxiter = 1000 * len(x0)
    try:
        return _nelder_mead(objective, x0, tol, fatol, bounds, step, maxiter)
    except _NonFiniteValue:
        logger().warning(
            'objective became non-finite near %s; restarting', list(x0))

    signs = np.where(np.arange(len(x0)) % 2 == 0, 1.0, -1.0)
    x1 = x0 + 0.05 * signs * np.maximum(1.0, np.abs(x0))
    if bounds is not None:
        lows = np.array([lo if lo is not None else -np.inf
                         for lo, _ in bounds])
        highs = np.array([hi if hi is not None else np.inf
                          for _, hi in bounds])
        x1 = np.clip(x1, lows, highs)
    try:
        if not np.isfinite(float(objective(x1))):
            raise _NonFiniteValue()
        return _nelder_mead(objective, x1, tol, fatol, bounds, step, maxiter)
    except _NonFiniteValue:
        raise OptimizationError(
            'objective became non-finite after restart from {}'.format(
                list(x1)))


def derivative_central(fn, x, h=None):
    """Central difference (fn(x + h) - fn(x - h)) / 2h.

    The default step is eps**(1/3) * max(1, |x|).

    >>> round(derivative_central(lambda v: v ** 3, 2.0, 1e-4), 6)
    12.0
    """
    if h is None:
        h = EPS ** (1.0 / 3.0) * max(1.0, abs(x))
    return (fn(x + h) - fn(x - h)) / (2.0 * h)


def hessian_fd(fn, x, h=None):
    """Central-difference Hessian of a scalar function.

    Diagonal entries use the three-point stencil, off-diagonal entries the
    four-corner stencil. The default step is eps**(1/4) * max(1, |x_i|),
    the second-difference balance of truncation and round-off.

    Returns:
        A symmetric (d, d) array.

    Raises:
        InvalidArgumentError: fn is not finite somewhere on the stencil.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    d = len(x)
    if h is None:
        h = EPS ** 0.25 * np.maximum(1.0, np.abs(x))
    h = np.broadcast_to(np.asarray(h, dtype=float), x.shape)
    # Representable steps, so that x + h - x == h exactly.
    h = (x + h) - x

    def at(offset):
        value = float(fn(x + offset))
        if not np.isfinite(value):
            raise InvalidArgumentError(
                'function is not finite on the Hessian stencil at {}'.format(
                    list(x + offset)))
        return value

    center = at(np.zeros(d))
    hessian = np.empty((d, d))
    unit = np.eye(d) * h
    for i in range(d):
        plus = at(unit[i])
        minus = at(-unit[i])
        hessian[i, i] = (plus - 2.0 * center + minus) / (h[i] * h[i])
        for j in range(i):
            corners = (at(unit[i] + unit[j]) - at(unit[i] - unit[j]) -
                       at(-unit[i] + unit[j]) + at(-unit[i] - unit[j]))
            hessian[i, j] = hessian[j, i] = corners / (4.0 * h[i] * h[j])
    return (hessian + hessian.T) / 2.0
