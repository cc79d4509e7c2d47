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
Cloning with OTCs: make d^2 - 1 noisy clones, decorrelate them, measure one generalized Gell-Mann
observable on each with an OTC-enhanced measurement, undo the clone noise and invert linearly.
"""

import collections
import logging

import numpy as np

from otcsim.cloner import CloneJob, clone, clone_marginals, shrinking_factor
from otcsim.errors import ConsistencyError, LayoutError
from otcsim.protocols.measurement import EXPLICIT_MAX_ANCILLAS, otc_measure, plan_measurement
from otcsim.protocols.scaling import cloning_otc_budget
from otcsim.qstate import DensityMatrix, Observable, fidelity


CLONE_TOLERANCE = 1e-9

CloneReport = collections.namedtuple('CloneReport', [
    'reconstructed', 'fidelity_to_input', 'per_observable_estimates', 'total_otc_uses', 'shrinking_factor',
    'clones', 'backend',
])

_QUBIT_NAMES = {'sym-0-1': 'sigmax', 'asym-0-1': 'sigmay', 'diag-1': 'sigmaz'}


def informationally_complete_set(d):
    """
    The d^2 - 1 generalized Gell-Mann matrices, normalized to Tr(l_a l_b) = 2 delta_ab. Together with the
    identity they determine any state; for d = 2 they are the Pauli matrices.
    """
    if d < 2:
        raise ValueError('Local dimension must be at least 2, got {}'.format(d))
    observables = []
    for j in range(d):
        for k in range(j + 1, d):
            sym = np.zeros((d, d), dtype=complex)
            sym[j, k] = sym[k, j] = 1
            asym = np.zeros((d, d), dtype=complex)
            asym[j, k], asym[k, j] = -1j, 1j
            observables.append(Observable(sym, name='sym-{}-{}'.format(j, k)))
            observables.append(Observable(asym, name='asym-{}-{}'.format(j, k)))
    for level in range(1, d):
        diagonal = np.zeros(d)
        diagonal[:level] = 1
        diagonal[level] = -level
        observables.append(Observable(np.diag(np.sqrt(2 / (level * (level + 1))) * diagonal).astype(complex),
                                      name='diag-{}'.format(level)))
    if d == 2:
        for obs in observables:
            obs.name = _QUBIT_NAMES[obs.name]
        observables.sort(key=lambda obs: obs.name)
    return observables


def unbias_estimate(raw, obs, s, d):
    """Estimate of Tr(O rho) from a measurement on the clone s rho + (1 - s) I / d."""
    if not 0 < s <= 1:
        raise ValueError('Shrinking factor must lie in (0, 1], got {}'.format(s))
    return (raw - (1 - s) * np.trace(obs.matrix).real / d) / s


def reconstruct_state(estimates, observables):
    """
    Linear inversion rho = I/d + 1/2 sum_a <l_a> l_a, projected back onto the states by clipping negative
    eigenvalues and renormalizing.
    """
    d = observables[0].dim
    matrix = np.eye(d, dtype=complex) / d
    for value, obs in zip(estimates, observables):
        matrix = matrix + value * obs.matrix / 2
    eigenvalues, vectors = np.linalg.eigh((matrix + matrix.conj().T) / 2)
    eigenvalues = np.clip(eigenvalues, 0, None)
    return DensityMatrix((vectors * (eigenvalues / eigenvalues.sum())) @ vectors.conj().T, (d,))


def observable_seed(seed, index):
    return int(np.random.SeedSequence([seed, index]).generate_state(1)[0])


def planned_otc_uses(d, delta, eps):
    observables = informationally_complete_set(d)
    s = shrinking_factor(d, len(observables))
    return cloning_otc_budget([obs.spread for obs in observables], s, delta, eps)


def otc_clone(rho, delta, eps, seed, backend='marginal_model', explicit_max_ancillas=EXPLICIT_MAX_ANCILLAS):
    if rho.layout.num_factors != 1:
        raise LayoutError('Cloning takes a single qudit, got layout {}'.format(list(rho.dims)))
    d = rho.dim
    observables = informationally_complete_set(d)
    job = CloneJob(rho, len(observables), backend)
    clones = clone(job)
    s = shrinking_factor(d, job.copies)
    if backend == 'exact_symmetric':
        modelled = clone_marginals(job)
        deviation = max(float(np.max(np.abs(a.matrix - b.matrix))) for a, b in zip(clones, modelled))
        if deviation > CLONE_TOLERANCE:
            raise ConsistencyError('Exact clones deviate from the shrinking-factor model by {:.3e}'.format(deviation))

    estimates = []
    total_otc_uses = job.copies
    for index, (obs, noisy) in enumerate(zip(observables, clones)):
        plan = plan_measurement(obs, s * delta, eps, observable_seed(seed, index))
        result = otc_measure(noisy, plan, explicit_max_ancillas=explicit_max_ancillas)
        estimates.append((obs.name, result.estimate, unbias_estimate(result.estimate, obs, s, d)))
        total_otc_uses += result.otc_uses

    reconstructed = reconstruct_state([unbiased for _, _, unbiased in estimates], observables)
    logging.debug('Reconstructed a d={} state from {} clones with {} OTCs'.format(d, job.copies, total_otc_uses))
    return CloneReport(
        reconstructed=reconstructed,
        fidelity_to_input=fidelity(rho, reconstructed),
        per_observable_estimates=estimates,
        total_otc_uses=total_otc_uses,
        shrinking_factor=s,
        clones=job.copies,
        backend=backend,
    )
