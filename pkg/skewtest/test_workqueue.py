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
"""Tests for skewtest.workqueue."""
import multiprocessing
import unittest

import numpy as np

import skewtest.workqueue


def put(_worker, i):
    """Returns the passed argument."""
    return i


def scaled(worker, i):
    """Multiplies the argument by the worker data."""
    return worker.data * i


def draw(_worker, seed):
    """Draws from a stream that depends on the seed only."""
    return float(np.random.default_rng(seed).random())


def block_on_event(_worker, event):
    """Blocks until the event is signalled."""
    event.wait()


def raise_error(_worker):
    """Raises a RuntimeError to be re-raised in the caller."""
    raise RuntimeError('Error in child')


def drain(workqueue):
    results = []
    while not workqueue.finished():
        results.append(workqueue.get_result())
    return results


class ProcessPoolWorkQueueTest(unittest.TestCase):
    def test_put_func(self):
        """Results of every task come back."""
        workqueue = skewtest.workqueue.ProcessPoolWorkQueue(2)
        try:
            for i in range(6):
                workqueue.add_task(put, i)
            self.assertEqual(list(range(6)), sorted(drain(workqueue)))
        finally:
            workqueue.terminate()
            workqueue.join()

    def test_worker_data(self):
        """Worker data reaches every task."""
        workqueue = skewtest.workqueue.ProcessPoolWorkQueue(2, 10)
        try:
            for i in range(4):
                workqueue.add_task(scaled, i)
            self.assertEqual([0, 10, 20, 30], sorted(drain(workqueue)))
        finally:
            workqueue.terminate()
            workqueue.join()

    def test_finished(self):
        """finished() tracks outstanding tasks."""
        workqueue = skewtest.workqueue.ProcessPoolWorkQueue(2)
        try:
            self.assertTrue(workqueue.finished())
            manager = multiprocessing.Manager()
            event = manager.Event()
            workqueue.add_task(block_on_event, event)
            self.assertFalse(workqueue.finished())
            event.set()
            workqueue.get_result()
            self.assertTrue(workqueue.finished())
        finally:
            workqueue.terminate()
            workqueue.join()

    def test_subprocess_exception(self):
        """Exceptions raised in the task are re-raised."""
        workqueue = skewtest.workqueue.ProcessPoolWorkQueue(1)
        try:
            workqueue.add_task(raise_error)
            with self.assertRaises(skewtest.workqueue.TaskError):
                workqueue.get_result()
        finally:
            workqueue.terminate()
            workqueue.join()

    def test_worker_survives_exception(self):
        """A failing task does not stop its worker."""
        workqueue = skewtest.workqueue.ProcessPoolWorkQueue(1)
        try:
            workqueue.add_task(raise_error)
            workqueue.add_task(put, 5)
            with self.assertRaises(skewtest.workqueue.TaskError):
                workqueue.get_result()
            self.assertEqual(5, workqueue.get_result())
            self.assertTrue(workqueue.finished())
        finally:
            workqueue.terminate()
            workqueue.join()

    def test_matches_in_process(self):
        """Seeded tasks give the same values in a pool and in process."""
        pool = skewtest.workqueue.make_work_queue(3)
        dummy = skewtest.workqueue.make_work_queue(1)
        self.assertIsInstance(pool,
                              skewtest.workqueue.ProcessPoolWorkQueue)
        self.assertIsInstance(dummy, skewtest.workqueue.DummyWorkQueue)
        try:
            for workqueue in (pool, dummy):
                for seed in range(8):
                    workqueue.add_task(draw, seed)
            self.assertEqual(sorted(drain(pool)), sorted(drain(dummy)))
        finally:
            pool.terminate()
            pool.join()


class DummyWorkQueueTest(unittest.TestCase):
    def test_in_order(self):
        """Tasks run in insertion order with the worker data."""
        workqueue = skewtest.workqueue.DummyWorkQueue(worker_data=3)
        workqueue.add_task(scaled, 1)
        workqueue.add_task(scaled, 2)
        self.assertEqual(2, workqueue.num_tasks)
        self.assertEqual([3, 6], drain(workqueue))
        self.assertEqual([], workqueue.workers)

    def test_subprocess_exception(self):
        """Exceptions raised in the task are wrapped in TaskError."""
        workqueue = skewtest.workqueue.DummyWorkQueue()
        workqueue.add_task(raise_error)
        with self.assertRaises(skewtest.workqueue.TaskError) as ctx:
            workqueue.get_result()
        self.assertIn('Error in child', str(ctx.exception))
