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
"""Exception hierarchy shared by the library and the CLI.

Every error family carries the process exit code the CLI reports for it:

    >>> InvalidArgumentError('bad').exit_code
    2
    >>> QuadratureBudgetError('budget', estimate=0.5).exit_code
    3
    >>> ParseError('not a number', row=4).row
    4
"""


class SkewtestError(Exception):
    """Base class for all errors raised by skewtest."""
    exit_code = 1


class InvalidArgumentError(SkewtestError, ValueError):
    """A caller passed a value outside an operation's preconditions."""
    exit_code = 2


class OutOfDomainError(InvalidArgumentError):
    """A value lies outside the span a tabulated object covers."""


class NumericalError(SkewtestError):
    """Base class for failures of quadrature, optimization or fitting."""
    exit_code = 3


class QuadratureBudgetError(NumericalError):
    """The subdivision budget ran out before the tolerance was met."""
    def __init__(self, message, estimate=None, error=None):
        super(QuadratureBudgetError, self).__init__(message)
        self.estimate = estimate
        self.error = error


class InvalidIntegrandError(NumericalError):
    """The integrand produced a NaN or infinite value."""


class OptimizationError(NumericalError):
    """The simplex search failed after its restart."""
    def __init__(self, message, lam=None):
        if lam is not None:
            message = '{} (shape {!r})'.format(message, lam)
        super(OptimizationError, self).__init__(message)
        self.lam = lam


class CurvatureError(NumericalError):
    """A Hessian that must be positive-definite is not."""


class FittingError(NumericalError):
    """No seed of a multi-start fit produced a usable mode."""


class EvaluationError(NumericalError):
    """Every node of an evaluation grid failed."""


class DataError(SkewtestError):
    """Base class for problems with input data."""
    exit_code = 4


class SchemaError(DataError):
    """A table lacks a required column or has the wrong layout."""


class ParseError(DataError):
    """A cell could not be parsed as a finite number."""
    def __init__(self, message, row=None):
        if row is not None:
            message = 'row {}: {}'.format(row, message)
        super(ParseError, self).__init__(message)
        self.row = row


class InsufficientDataError(DataError):
    """Too few observations for the requested analysis."""


class DegenerateDataError(DataError):
    """The data have zero spread or are otherwise unusable."""


class DegenerateSpreadError(DegenerateDataError):
    """The median absolute deviation is zero."""
