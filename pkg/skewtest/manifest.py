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
"""Run manifests: what was run, with which settings and versions."""
from __future__ import absolute_import

import collections
import datetime
import json
import os

import matplotlib
import numpy
import scipy

import skewtest.config


MANIFEST_NAME = 'manifest.json'


def versions():
    return collections.OrderedDict([
        ('skewtest', skewtest.config.version),
        ('format', skewtest.config.format_version),
        ('numpy', numpy.__version__),
        ('scipy', scipy.__version__),
        ('matplotlib', matplotlib.__version__),
    ])


class RunManifest(object):
    """One per output directory.

    Attributes:
        command: Subcommand name.
        config: JSON-serializable snapshot of the effective settings.
        seed: Master seed, or None for commands without randomness.
        versions: Tool, document and library versions.
        timestamp: UTC time of the run in ISO 8601.
    """
    def __init__(self, command, config, seed=None, timestamp=None):
        self.command = command
        self.config = config
        self.seed = seed
        self.versions = versions()
        if timestamp is None:
            timestamp = datetime.datetime.now(datetime.timezone.utc).strftime(
                '%Y-%m-%dT%H:%M:%SZ')
        self.timestamp = timestamp

    def to_dict(self):
        return collections.OrderedDict([
            ('command', self.command),
            ('config', self.config),
            ('seed', self.seed),
            ('versions', self.versions),
            ('timestamp', self.timestamp),
        ])

    def write(self, out_dir):
        path = os.path.join(out_dir, MANIFEST_NAME)
        with open(path, 'w') as manifest_file:
            json.dump(self.to_dict(), manifest_file, indent=2)
            manifest_file.write('\n')
        return path

    @classmethod
    def read(cls, path):
        with open(path) as manifest_file:
            document = json.load(manifest_file)
        manifest = cls(document['command'], document['config'],
                       document.get('seed'), document.get('timestamp'))
        manifest.versions = document.get('versions', manifest.versions)
        return manifest
