# -*- coding: utf-8 -*-
# Copyright 2026 The otcsim Authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import threading
import time
import unittest

from otcsim.concurrent import TrialJob, run_trials, trial_seed


class ConcurrentTest(unittest.TestCase):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)

    def test_trial_seed(self):
        assert trial_seed(100, 0) == 100
        assert trial_seed(100, 7) == 107

    def test_results_are_ordered_by_index(self):
        def trial(index, seed):
            # later trials finish first
            time.sleep(0.01 * (5 - index))
            return index, seed

        assert run_trials(trial, 5, 40, max_workers=5) == [(i, 40 + i) for i in range(5)]

    def test_trials_run_concurrently(self):
        threads = set()
        barrier = threading.Barrier(3, timeout=5)

        def trial(index, seed):
            threads.add(threading.current_thread().name)
            barrier.wait()
            return seed

        assert TrialJob(trial, 0, max_workers=3).execute(3) == [0, 1, 2]
        assert len(threads) == 3

    def test_single_worker(self):
        assert run_trials(lambda index, seed: seed * 2, 4, 1, max_workers=1) == [2, 4, 6, 8]

    def test_default_workers(self):
        assert TrialJob(lambda index, seed: seed, 0).max_workers >= 1

    def test_errors_propagate(self):
        def trial(index, seed):
            if index == 2:
                raise RuntimeError('trial {} failed'.format(index))
            return index

        with self.assertRaises(RuntimeError):
            run_trials(trial, 4, 0, max_workers=2)


if __name__ == '__main__':
    unittest.main()
