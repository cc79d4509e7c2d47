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

import concurrent.futures
import logging
import multiprocessing


def trial_seed(seed, index):
    return int(seed) + int(index)


class TrialJob:
    """
    Runs independent seeded trials of one experiment concurrently. Trial `index` gets the seed
    master seed + index, and results come back ordered by trial index whatever order the threads finish in.
    The trial function must not touch shared mutable state.
    """
    def __init__(self, func, seed, max_workers=None):
        self.func = func
        self.seed = int(seed)
        if max_workers is None:
            self.max_workers = int(multiprocessing.cpu_count())
        else:
            self.max_workers = int(max_workers)

    def execute(self, trials):
        logging.debug('Running {} trials on {} workers'.format(trials, self.max_workers))
        with concurrent.futures.ThreadPoolExecutor(self.max_workers) as executor:
            return list(executor.map(self.with_seed, range(int(trials))))

    def with_seed(self, index):
        return self.func(index, trial_seed(self.seed, index))


def run_trials(func, trials, seed, max_workers=None):
    """
    :param func: called as func(index, seed) for every trial
    :return: the trial results, ordered by index
    """
    return TrialJob(func, seed, max_workers).execute(trials)
