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
"""Outcome of one prior on one simulated replicate."""
import collections

from skewtest.simulation.printers import maybe_color


ReplicateKey = collections.namedtuple(
    'ReplicateKey', ['cell', 'n', 'lam', 'replicate'])


class ReplicateResult(object):
    def __init__(self, key, prior):
        self.key = key
        self.prior = prior

    @property
    def sort_key(self):
        return (self.key.cell, self.key.replicate)

    def __repr__(self):
        return self.to_string(colored=False)

    def passed(self):
        raise NotImplementedError

    def failed(self):
        raise NotImplementedError

    def to_string(self, colored=False):
        raise NotImplementedError

    def _describe(self):
        return 'n={} lambda={:g} replicate={} [{}]'.format(
            self.key.n, self.key.lam, self.key.replicate, self.prior)


class ReplicateFailure(ReplicateResult):
    def __init__(self, key, prior, message):
        super(ReplicateFailure, self).__init__(key, prior)
        self.message = message

    post_prob_alt = float('nan')
    log_bf_10 = float('nan')

    def passed(self):
        return False

    def failed(self):
        return True

    def to_string(self, colored=False):
        label = maybe_color('FAIL', 'red', colored)
        return '{} {}: {}'.format(label, self._describe(), self.message)


class ReplicateSuccess(ReplicateResult):
    def __init__(self, key, prior, post_prob_alt, log_bf_10):
        super(ReplicateSuccess, self).__init__(key, prior)
        self.post_prob_alt = post_prob_alt
        self.log_bf_10 = log_bf_10

    def passed(self):
        return True

    def failed(self):
        return False

    def to_string(self, colored=False):
        label = maybe_color('OK', 'green', colored)
        return '{} {}: P(alt)={:.4f} log BF={:.4f}'.format(
            label, self._describe(), self.post_prob_alt, self.log_bf_10)
