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
"""Wall-clock timing of command stages."""
import collections
import datetime
import logging
import timeit


def logger():
    return logging.getLogger(__name__)


class Timer(object):
    def __init__(self):
        self.start_time = None
        self.end_time = None
        self.duration = None

    def start(self):
        self.start_time = timeit.default_timer()

    def finish(self):
        self.end_time = timeit.default_timer()
        # Millisecond resolution is plenty for stage reports.
        seconds = round(self.end_time - self.start_time, 3)
        self.duration = datetime.timedelta(seconds=seconds)

    def __enter__(self):
        self.start()
        return self

    def __exit__(self, _exc_type, _exc_value, _traceback):
        self.finish()


class TimingReport(object):
    """Named stage durations in the order they were recorded."""
    def __init__(self):
        self.stages = collections.OrderedDict()

    def time(self, stage):
        """Returns a Timer that records into this report when it finishes."""
        report = self

        class _StageTimer(Timer):
            def finish(self):
                super(_StageTimer, self).finish()
                report.stages[stage] = self.duration
                logger().info('%s took %s', stage, self.duration)
        return _StageTimer()

    def to_dict(self):
        return collections.OrderedDict(
            (stage, duration.total_seconds())
            for stage, duration in self.stages.items())

    def to_string(self):
        return '\n'.join('{}: {}'.format(stage, duration)
                         for stage, duration in self.stages.items())
