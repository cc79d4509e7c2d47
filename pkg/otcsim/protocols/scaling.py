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

"""
Closed-form budgets and failure probabilities behind the protocols.
"""

import math


DEFAULT_REPETITIONS = 20


def _check_accuracy(delta, eps):
    if not delta > 0:
        raise ValueError('Accuracy delta must be positive, got {}'.format(delta))
    if not 0 < eps < 1:
        raise ValueError('Failure probability eps must lie in (0, 1), got {}'.format(eps))


def required_samples(spread, delta, eps):
    """
    Smallest integer N with N > spread^2 / (2 delta^2) ln(2 / eps).
    """
    _check_accuracy(delta, eps)
    if spread < 0:
        raise ValueError('Eigenvalue spread cannot be negative, got {}'.format(spread))
    bound = spread ** 2 / (2 * delta ** 2) * math.log(2 / eps)
    # rounding absorbs float noise on bounds that are integers in exact arithmetic
    return int(math.floor(round(bound, 9))) + 1


def required_ancillas(obs, delta, eps):
    """Ancilla count N for an OTC-enhanced measurement of `obs` to accuracy delta with failure at most eps."""
    return required_samples(obs.spread, delta, eps)


def hoeffding_failure_bound(ancillas, spread, delta):
    """Hoeffding bound on P(|estimate - <O>| >= delta) for the mean of ancillas + 1 samples."""
    if spread == 0:
        return 0.0
    return min(1.0, 2 * math.exp(-2 * (ancillas + 1) * delta ** 2 / spread ** 2))


def sat_failure_probability(n, s, p, q):
    """
    Probability that q sigma_z shots on the p-times squared target all read +1 although s > 0.
    Zero for s = 0, where no failure is possible, and for s = 2^n, which is checked directly.
    """
    total = 1 << n
    if not 0 <= s <= total:
        raise ValueError('Satisfying count {} is impossible with {} variables'.format(s, n))
    if p < 0 or q < 1:
        raise ValueError('Invalid rounds p={} or repetitions q={}'.format(p, q))
    if s == 0 or s == total:
        return 0.0
    n_z = 1 - s / 2 ** (n - 1)
    return ((1 + n_z ** (2 ** p)) / 2) ** q


def default_rounds(n):
    return int(math.ceil(math.log2(n + 1))) + 2


def cloning_otc_budget(spreads, s, delta, eps):
    """
    OTCs spent by the cloning protocol: one measurement per observable, each on a clone shrunk by s and
    therefore budgeted at accuracy s * delta, plus one OTC per clone.
    """
    if not 0 < s <= 1:
        raise ValueError('Shrinking factor must lie in (0, 1], got {}'.format(s))
    return sum(required_samples(spread, s * delta, eps) for spread in spreads) + len(spreads)


def cloning_order(d, delta, eps):
    """d^4 ln(2 / eps) / (2 delta^2), the growth law of the cloning budget."""
    _check_accuracy(delta, eps)
    return d ** 4 * math.log(2 / eps) / (2 * delta ** 2)
