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
NP-complete decision with OTCs. The oracle leaves the target qubit in rho(n_z) with
n_z = 1 - s / 2^(n-1), s the number of satisfying assignments; p S-gates square n_z p times, and q
sigma_z shots tell s = 0 (target stays |0>) from s > 0.
"""

import collections
import logging

import numpy as np

from otcsim import cnf
from otcsim import qmath
from otcsim.gates import oracle_uf, uniform_prep, ORACLE_MAX_VARIABLES
from otcsim.protocols.scaling import DEFAULT_REPETITIONS, default_rounds, sat_failure_probability
from otcsim.protocols.sgate import s_gate_power
from otcsim.qstate import DensityMatrix, IDENTITY_2, SIGMA_Z, basis_state, bloch_of, measure_sample, \
    named_observable


SAT_MODES = ('circuit', 'analytic')
CIRCUIT_MAX_VARIABLES = ORACLE_MAX_VARIABLES
ANALYTIC_MAX_VARIABLES = cnf.EXHAUSTIVE_MAX_VARIABLES

SATISFIABLE = 'satisfiable'
UNSATISFIABLE = 'unsatisfiable'


SatPreparation = collections.namedtuple(
    'SatPreparation', ['num_vars', 'satisfying_count', 'p', 'mode', 'state', 'tautology'])

SatDecision = collections.namedtuple(
    'SatDecision', ['answer', 'p', 'q', 'predicted_p_fail', 'mode', 'satisfying_count', 'outcomes', 'otc_uses'])


def _check_size(formula, mode, circuit_max_variables, analytic_max_variables):
    if mode not in SAT_MODES:
        raise ValueError('Unknown SAT mode {}, expected one of {}'.format(mode, ', '.join(SAT_MODES)))
    n = formula.num_vars
    if n < 1:
        raise ValueError('The SAT protocol needs at least one variable')
    limit = circuit_max_variables if mode == 'circuit' else analytic_max_variables
    if n > limit:
        raise ValueError('{} mode handles at most {} variables, the formula has {}'.format(mode, limit, n))


def sat_target_state(formula, mode='analytic', circuit_max_variables=CIRCUIT_MAX_VARIABLES,
                     analytic_max_variables=ANALYTIC_MAX_VARIABLES):
    """
    Target qubit after U_f acted on the uniform superposition and |0>.

    :return: (target state, satisfying count s)
    """
    _check_size(formula, mode, circuit_max_variables, analytic_max_variables)
    n = formula.num_vars
    if mode == 'circuit':
        qmath.check_dimension(1 << (n + 1))
        register = uniform_prep(n).tensor(basis_state((2,), 0))
        # U_f is a permutation matrix by construction
        target = register.evolve(oracle_uf(formula, n), check=False).reduced([n])
        s = int(round(2 ** (n - 1) * (1 - bloch_of(target).n_z)))
    else:
        s = cnf.count_satisfying(formula)
        n_z = 1 - s / 2 ** (n - 1)
        target = DensityMatrix((IDENTITY_2 + n_z * SIGMA_Z) / 2, (2,))
    return target, s


def prepare_sat(formula, p=None, mode='analytic', circuit_max_variables=CIRCUIT_MAX_VARIABLES,
                analytic_max_variables=ANALYTIC_MAX_VARIABLES):
    """
    Everything before the final measurement: the tautology pre-check, then the target state after p S-gates.
    """
    n = formula.num_vars
    p = default_rounds(n) if p is None else int(p)
    if p < 0:
        raise ValueError('The number of S-gate rounds cannot be negative, got {}'.format(p))
    _check_size(formula, mode, circuit_max_variables, analytic_max_variables)
    if cnf.is_tautology(formula):
        logging.debug('Every clause carries a complementary pair, all {} assignments satisfy'.format(2 ** n))
        return SatPreparation(n, 2 ** n, p, mode, None, True)
    target, s = sat_target_state(formula, mode, circuit_max_variables, analytic_max_variables)
    logging.debug('SAT target over {} variables in {} mode: s={}'.format(n, mode, s))
    return SatPreparation(n, s, p, mode, s_gate_power(target, p), False)


def sat_prepared_state(formula, p, mode='analytic'):
    preparation = prepare_sat(formula, p, mode)
    return preparation.state, preparation.satisfying_count


def decide_from_state(rho_p, q, seed):
    """
    Reads sigma_z q times. Satisfiable iff some shot gives -1.

    :return: (answer, outcomes)
    """
    outcomes = measure_sample(rho_p, named_observable('sigmaz'), q, seed)
    answer = SATISFIABLE if np.any(outcomes < 0) else UNSATISFIABLE
    return answer, tuple(int(o) for o in outcomes)


def decide(preparation, q=DEFAULT_REPETITIONS, seed=0):
    q = int(q)
    if q < 1:
        raise ValueError('At least one repetition is required, got {}'.format(q))
    if preparation.tautology:
        return SatDecision(SATISFIABLE, preparation.p, q, 0.0, preparation.mode, preparation.satisfying_count,
                           (), 0)
    answer, outcomes = decide_from_state(preparation.state, q, seed)
    predicted = sat_failure_probability(preparation.num_vars, preparation.satisfying_count, preparation.p, q)
    return SatDecision(answer, preparation.p, q, predicted, preparation.mode, preparation.satisfying_count,
                       outcomes, preparation.p * q)


def sat_decide(formula, p=None, q=DEFAULT_REPETITIONS, mode='analytic', seed=0):
    return decide(prepare_sat(formula, p, mode), q, seed)
