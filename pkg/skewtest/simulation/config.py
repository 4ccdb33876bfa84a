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
"""Configuration of a simulation experiment.

A SimConfig is read from a JSON document like sim_config.json:

    {
        "sample_sizes": [50, 100, 200, 500],
        "lambdas": [0, 1, 2.5],
        "replications": 1000,
        "priors": ["jeffreys", "moomin", "dimom"],
        "master_seed": 1,
        "engine": "ila"
    }

Entries of "priors" are prior names or serialized prior documents
({"kind": ..., "params": {...}}).
"""
import collections
import itertools
import json

from skewtest import evidence
from skewtest import kernels
from skewtest import priors as priors_lib
from skewtest.errors import InvalidArgumentError


DEFAULT_SEED = 1
MIN_SAMPLE_SIZE = 10


def get_config_dict(path):
    """Loads a simulation config document; None yields an empty one."""
    if path is None:
        return {}
    try:
        with open(path) as config_file:
            document = json.load(config_file)
    except IOError as ex:
        raise InvalidArgumentError('{}: {}'.format(path, ex))
    except ValueError as ex:
        raise InvalidArgumentError('{}: invalid JSON: {}'.format(path, ex))
    if not isinstance(document, dict):
        raise InvalidArgumentError('{}: expected a JSON object'.format(path))
    return document


class SimConfig(object):
    FIELDS = ('sample_sizes', 'lambdas', 'replications', 'priors',
              'master_seed', 'engine', 'baseline', 'ila')

    def __init__(self, sample_sizes=(50, 100, 200, 500),
                 lambdas=(0.0, 1.0, 2.5), replications=1000,
                 priors=('jeffreys', 'moomin', 'dimom'),
                 master_seed=DEFAULT_SEED, engine='ila', baseline='normal',
                 ila=None):
        self.sample_sizes = [int(n) for n in sample_sizes]
        self.lambdas = [float(lam) for lam in lambdas]
        self.replications = int(replications)
        self.priors = list(priors)
        self.master_seed = int(master_seed)
        self.engine = engine
        self.baseline = baseline
        self.ila = dict(ila) if ila else None
        self.validate()

    def validate(self):
        if not self.sample_sizes or not self.lambdas or not self.priors:
            raise InvalidArgumentError(
                'sample_sizes, lambdas and priors must be non-empty')
        if self.replications < 1:
            raise InvalidArgumentError('replications must be at least 1')
        if min(self.sample_sizes) < MIN_SAMPLE_SIZE:
            raise InvalidArgumentError(
                'sample sizes must be at least {}'.format(MIN_SAMPLE_SIZE))
        if self.master_seed < 0:
            raise InvalidArgumentError('master_seed must be non-negative')
        if self.engine not in evidence.ENGINES:
            raise InvalidArgumentError('unknown engine {!r}'.format(
                self.engine))
        kernels.get_baseline(self.baseline)
        names = [self._prior_name(entry) for entry in self.priors]
        if len(set(names)) != len(names):
            raise InvalidArgumentError('duplicate priors: {}'.format(names))
        if self.ila is not None:
            evidence.IlaConfig.from_dict(self.ila)

    @staticmethod
    def _prior_name(entry):
        if isinstance(entry, dict):
            return priors_lib.PriorSpec.from_dict(entry).name
        return priors_lib.canonical_name(entry)

    @classmethod
    def from_dict(cls, document):
        unknown = set(document) - set(cls.FIELDS)
        if unknown:
            raise InvalidArgumentError('unknown config keys: {}'.format(
                ', '.join(sorted(unknown))))
        return cls(**document)

    @classmethod
    def from_json(cls, path):
        return cls.from_dict(get_config_dict(path))

    def to_dict(self):
        return collections.OrderedDict(
            (field, getattr(self, field)) for field in self.FIELDS)

    def replace(self, **overrides):
        """Returns a copy with the non-None overrides applied."""
        document = self.to_dict()
        document.update((key, value) for key, value in overrides.items()
                        if value is not None)
        return SimConfig.from_dict(document)

    def ila_config(self):
        return evidence.IlaConfig.from_dict(self.ila) if self.ila else None

    def make_priors(self):
        """Normalized PriorSpecs in configuration order."""
        specs = []
        for entry in self.priors:
            if isinstance(entry, dict):
                specs.append(priors_lib.PriorSpec.from_dict(entry).normalize())
            else:
                specs.append(priors_lib.make_prior(entry, self.baseline))
        return specs

    def cells(self):
        """(cell index, n, lambda) in sample-size-major order."""
        return [(i, n, lam) for i, (n, lam) in
                enumerate(itertools.product(self.sample_sizes, self.lambdas))]
