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
OTC-enhanced measurement: C+ gates copy the input onto N ancillas in the eigenbasis of the observable,
one OTC per ancilla leaves N + 1 uncorrelated qudits in the dephased input state, and the mean of their
readouts estimates <O>.
"""

import collections
import logging

import numpy as np

import otcsim.qmath as qmath

from otcsim.errors import ConsistencyError, LayoutError
from otcsim.gates import c_plus
from otcsim.protocols.scaling import required_ancillas
from otcsim.qstate import DensityMatrix, born_probabilities, sample_outcomes
from otcsim.timelike import otc_apply_each


EXPLICIT_MAX_ANCILLAS = 6
PRODUCT_TOLERANCE = 1e-10


MeasurementPlan = collections.namedtuple('MeasurementPlan', ['observable', 'delta', 'eps', 'ancillas', 'seed'])

MeasurementResult = collections.namedtuple('MeasurementResult', ['estimate', 'samples', 'otc_uses', 'outcomes'])


def plan_measurement(obs, delta, eps, seed, ancillas=None):
    """Plans a measurement, budgeting the ancillas from the Hoeffding bound unless given explicitly."""
    if ancillas is None:
        ancillas = required_ancillas(obs, delta, eps)
        logging.debug('Hoeffding budget for {} at delta={} eps={}: {} ancillas'.format(obs.name, delta, eps, ancillas))
    elif int(ancillas) < 0:
        raise ValueError('The number of ancillas cannot be negative, got {}'.format(ancillas))
    return MeasurementPlan(obs, delta, eps, int(ancillas), seed)


def _check_single_qudit(rho, obs):
    if rho.layout.num_factors != 1:
        raise LayoutError('OTC-enhanced measurement takes a single qudit, got layout {}'.format(list(rho.dims)))
    if rho.dim != obs.dim:
        raise LayoutError('Observable of dimension {} cannot be measured on a qudit of dimension {}'.format(
            obs.dim, rho.dim))


def ghz_like_state(rho, obs, ancillas):
    """
    sum_ij rho_ij |i...i><j...j| over 1 + `ancillas` qudits, with rho written in the eigenbasis of `obs`.
    """
    _check_single_qudit(rho, obs)
    d = rho.dim
    layout = qmath.SubsystemLayout.uniform(d, ancillas + 1)
    qmath.check_dimension(layout.size)
    in_eigenbasis = qmath.conjugate_by(obs.eigenbasis.conj().T, rho.matrix)
    ground = np.zeros((d, d), dtype=complex)
    ground[0, 0] = 1
    joint = qmath.tensor_all([in_eigenbasis] + [ground] * ancillas)
    gate = c_plus(d)
    for k in range(1, ancillas + 1):
        joint = qmath.apply_local(joint, layout, gate, [0, k])
    return DensityMatrix(joint, layout)


def decorrelated_ghz_state(ghz):
    """Sends every ancilla of a GHZ-like state through its own OTC."""
    return otc_apply_each(ghz, [[k] for k in range(1, ghz.layout.num_factors)])


def _verify_explicit_path(rho, obs, ancillas):
    decorrelated = decorrelated_ghz_state(ghz_like_state(rho, obs, ancillas))
    diagonal = np.diag(born_probabilities(rho, obs)).astype(complex)
    expected = qmath.tensor_all([diagonal] * (ancillas + 1))
    deviation = float(np.max(np.abs(decorrelated.matrix - expected)))
    if deviation > PRODUCT_TOLERANCE:
        raise ConsistencyError('Decorrelated GHZ-like state deviates from the dephased product by {:.3e}'.format(
            deviation))
    logging.debug('Explicit GHZ path with {} ancillas matches the dephased product ({:.1e})'.format(
        ancillas, deviation))


def otc_measure(rho, plan, explicit_max_ancillas=EXPLICIT_MAX_ANCILLAS, keep_outcomes=False):
    """
    Estimates Tr(O rho) from N + 1 readouts spending N OTCs.

    For small N the joint GHZ-like state is simulated and checked against the dephased product; beyond
    that the product structure licenses i.i.d. sampling, so no joint state is built.
    """
    obs = plan.observable
    _check_single_qudit(rho, obs)
    ancillas = plan.ancillas
    if 0 < ancillas <= explicit_max_ancillas and rho.dim ** (ancillas + 1) <= qmath.dimension_limit():
        _verify_explicit_path(rho, obs, ancillas)
    outcomes = sample_outcomes(born_probabilities(rho, obs), obs.eigenvalues, ancillas + 1, plan.seed)
    return MeasurementResult(
        estimate=float(np.mean(outcomes)),
        samples=ancillas + 1,
        otc_uses=ancillas,
        outcomes=tuple(float(o) for o in outcomes) if keep_outcomes else None,
    )
