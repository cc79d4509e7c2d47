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

import collections
import functools
import itertools
import logging
import math

import numpy as np

import otcsim.qmath as qmath

from otcsim.errors import LayoutError
from otcsim.qstate import DensityMatrix
from otcsim.timelike import otc_apply_each


CLONE_BACKENDS = ('exact_symmetric', 'marginal_model')

# beyond this many copies the M! permutation sum is replaced by the symmetric basis
PERMUTATION_SUM_MAX_COPIES = 6


def shrinking_factor(d, copies):
    """Shrinking factor s = (M + d) / (M (1 + d)) of the optimal universal 1 -> M cloner."""
    d, copies = int(d), int(copies)
    if d < 2:
        raise ValueError('Cloning needs a local dimension of at least 2, got {}'.format(d))
    if copies < 1:
        raise ValueError('At least one copy is required, got {}'.format(copies))
    return (copies + d) / (copies * (1 + d))


def _permutation_sum_projector(d, copies):
    layout = qmath.SubsystemLayout.uniform(d, copies)
    total = sum(qmath.permutation_operator(layout, perm) for perm in itertools.permutations(range(copies)))
    return total / math.factorial(copies)


def _symmetric_basis_projector(d, copies):
    layout = qmath.SubsystemLayout.uniform(d, copies)
    digits = np.array(np.unravel_index(np.arange(layout.size), layout.dims)).T
    _, labels, counts = np.unique(np.sort(digits, axis=1), axis=0, return_inverse=True, return_counts=True)
    labels = labels.ravel()
    return (labels[:, None] == labels[None, :]) / counts[labels][:, None].astype(complex)


@functools.lru_cache(maxsize=32)
def symmetric_projector(d, copies):
    """
    Projector onto the symmetric subspace of `copies` qudits of dimension d. The result is shared
    between callers and is read-only.
    """
    qmath.check_dimension(d ** copies)
    if copies <= PERMUTATION_SUM_MAX_COPIES:
        projector = _permutation_sum_projector(d, copies)
    else:
        projector = _symmetric_basis_projector(d, copies)
    projector.setflags(write=False)
    return projector


class CloneJob(collections.namedtuple('CloneJob', ['input', 'copies', 'backend'])):
    __slots__ = ()

    def __new__(cls, input, copies, backend='marginal_model'):
        if input.layout.num_factors != 1:
            raise LayoutError('Cloning takes a single qudit, got layout {}'.format(list(input.dims)))
        copies = int(copies)
        if copies < 1:
            raise ValueError('At least one copy is required, got {}'.format(copies))
        if backend not in CLONE_BACKENDS:
            raise ValueError('Unknown cloner backend {}, expected one of {}'.format(
                backend, ', '.join(CLONE_BACKENDS)))
        if backend == 'exact_symmetric':
            qmath.check_dimension(input.dim ** copies)
        return super().__new__(cls, input, copies, backend)


def clone_exact(job):
    """P_sym (rho (x) I^(M-1)) P_sym, normalized: the joint state of all M clones."""
    d, copies = job.input.dim, job.copies
    layout = qmath.SubsystemLayout.uniform(d, copies)
    qmath.check_dimension(layout.size)
    projector = symmetric_projector(d, copies)
    out = projector @ np.kron(job.input.matrix, np.eye(d ** (copies - 1), dtype=complex)) @ projector
    return DensityMatrix(out / np.trace(out).real, layout)


def clone_marginals(job):
    s = shrinking_factor(job.input.dim, job.copies)
    d = job.input.dim
    noisy = DensityMatrix(s * job.input.matrix + (1 - s) * np.eye(d, dtype=complex) / d, job.input.layout)
    return [noisy] * job.copies


def clone_exact_marginals(job):
    """Exact clones, each then sent through its own OTC; returns the per-clone states."""
    decorrelated = otc_apply_each(clone_exact(job), [[k] for k in range(job.copies)])
    return [decorrelated.marginal([k]) for k in range(job.copies)]


def clone(job):
    logging.debug('Cloning a d={} state into {} copies with the {} backend'.format(
        job.input.dim, job.copies, job.backend))
    if job.backend == 'exact_symmetric':
        return clone_exact_marginals(job)
    return clone_marginals(job)
