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
"""Process pool for independent simulation replicates.

Tasks are module-level callables taking the worker as their first argument,
so they pickle across process boundaries. Worker data (for example the
normalized priors of an experiment) is shipped once per worker rather than
once per task. A failing task is reported to the caller as a TaskError and
does not take its worker down.
"""
from __future__ import absolute_import

import collections
import logging
import multiprocessing
import os
import signal
import sys
import traceback


def logger():
    return logging.getLogger(__name__)


def _exit_on_sigterm(_signum, _frame):
    sys.exit()


class TaskError(Exception):
    """A task raised; the message is the formatted traceback."""


class Task(collections.namedtuple('Task', ['func', 'args', 'kwargs'])):
    def __call__(self, worker):
        return self.func(worker, *self.args, **self.kwargs)


def run_guarded(task, worker):
    """Runs a task, returning (True, result) or (False, traceback text)."""
    try:
        return True, task(worker)
    except Exception:  # pylint: disable=broad-except
        return False, ''.join(traceback.format_exception(*sys.exc_info()))


def _unwrap(outcome):
    succeeded, value = outcome
    if not succeeded:
        raise TaskError(value)
    return value


class Worker(object):
    """A worker process serving tasks until it reads the None sentinel."""
    def __init__(self, data, task_queue, result_queue):
        self.data = data
        self.task_queue = task_queue
        self.result_queue = result_queue
        self.process = multiprocessing.Process(target=self.main)
        self.process.daemon = True

    @property
    def pid(self):
        return self.process.pid

    def main(self):
        signal.signal(signal.SIGTERM, _exit_on_sigterm)
        served = 0
        for task in iter(self.task_queue.get, None):
            self.result_queue.put(run_guarded(task, self))
            served += 1
        logger().debug('worker %d served %d tasks', os.getpid(), served)


class ProcessPoolWorkQueue(object):
    """Runs tasks on a fixed set of worker processes.

    Workers start immediately and stay alive until terminate() and join().
    Results come back in completion order.
    """
    join_timeout = 8  # Seconds before a stuck worker gets SIGKILL.

    def __init__(self, num_workers=None, worker_data=None):
        if num_workers is None:
            num_workers = multiprocessing.cpu_count()
        self.manager = multiprocessing.Manager()
        self.task_queue = self.manager.Queue()
        self.result_queue = self.manager.Queue()
        self.num_tasks = 0
        self.workers = [
            Worker(worker_data, self.task_queue, self.result_queue)
            for _ in range(num_workers)
        ]
        for worker in self.workers:
            worker.process.start()
        logger().info('started %d worker processes', num_workers)

    def add_task(self, func, *args, **kwargs):
        self.task_queue.put(Task(func, args, kwargs))
        self.num_tasks += 1

    def get_result(self):
        """Blocks for the next result.

        Raises:
            TaskError: the task raised in its worker.
        """
        outcome = self.result_queue.get()
        self.num_tasks -= 1
        return _unwrap(outcome)

    def finished(self):
        return self.num_tasks == 0

    def terminate(self):
        for worker in self.workers:
            if worker.process.is_alive():
                worker.process.terminate()

    def join(self):
        for worker in self.workers:
            worker.process.join(self.join_timeout)
            if worker.process.is_alive():
                logger().error('worker %d will not exit; sending SIGKILL',
                               worker.pid)
                os.kill(worker.pid, signal.SIGKILL)
                worker.process.join()
        self.workers = []
        self.manager.shutdown()


WorkQueue = ProcessPoolWorkQueue


class DummyWorker(object):
    def __init__(self, data):
        self.data = data


class DummyWorkQueue(object):
    """Runs each task in the calling process when its result is requested.

    Behaves like ProcessPoolWorkQueue, TaskError included, so single-threaded
    runs and mocks in tests take the same code path.
    """
    def __init__(self, num_workers=None, worker_data=None):
        del num_workers  # Unused.
        self.worker = DummyWorker(worker_data)
        self.pending = collections.deque()

    def add_task(self, func, *args, **kwargs):
        self.pending.append(Task(func, args, kwargs))

    def get_result(self):
        return _unwrap(run_guarded(self.pending.popleft(), self.worker))

    @property
    def num_tasks(self):
        return len(self.pending)

    @property
    def workers(self):
        return []

    def finished(self):
        return not self.pending

    def terminate(self):
        pass

    def join(self):
        pass


def make_work_queue(threads, worker_data=None):
    """A process pool for threads > 1, otherwise an in-process queue."""
    if threads > 1:
        return ProcessPoolWorkQueue(threads, worker_data)
    return DummyWorkQueue(worker_data=worker_data)
