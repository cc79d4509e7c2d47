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
import logging

import numpy as np

from otcsim import cnf
from otcsim import qmath
from otcsim.errors import LayoutError
from otcsim.qstate import PureState, SIGMA_Y


GATE_KINDS = ('c_plus', 'pauli_x', 'pauli_y', 'pauli_z', 'oracle_uf', 'embed')

# largest formula an explicit oracle is built for; the dimension limit still applies
ORACLE_MAX_VARIABLES = 12


def _check_local_dimension(d):
    d = int(d)
    if d < 2:
        raise ValueError('Local dimension must be at least 2, got {}'.format(d))
    return d


def c_plus(d):
    """
    Controlled addition on two qudits: |i>|j> -> |i>|j + i mod d>. The control is the first factor.
    For d = 2 this is CNOT.
    """
    d = _check_local_dimension(d)
    u = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            u[i * d + (i + j) % d, i * d + j] = 1
    return u


def pauli_x(d=2):
    """Generalized shift |j> -> |j + 1 mod d>."""
    d = _check_local_dimension(d)
    return np.roll(np.eye(d, dtype=complex), 1, axis=0)


def pauli_z(d=2):
    """Generalized clock |j> -> w^j |j>, w = exp(2 pi i / d)."""
    d = _check_local_dimension(d)
    return np.diag(np.exp(2j * np.pi * np.arange(d) / d))


def pauli_y(d=2):
    if d != 2:
        raise ValueError('pauli_y is only defined for qubits, got d={}'.format(d))
    return SIGMA_Y.copy()


def swap(d):
    d = _check_local_dimension(d)
    u = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            u[j * d + i, i * d + j] = 1
    return u


def embed(gate, layout, factors):
    """
    Lifts `gate` to the whole layout, acting as the identity on the factors not listed.
    The order of `factors` follows the factor order of `gate`, so it decides control and target roles.
    """
    gate = qmath.as_matrix(gate)
    factors = [int(f) for f in factors]
    if len(set(factors)) != len(factors):
        raise LayoutError('Repeated factor indices {}'.format(factors))
    qmath.factor_indices(layout, factors)
    sub_dims = [layout.dims[f] for f in factors]
    sub = int(np.prod(sub_dims))
    if gate.shape != (sub, sub):
        raise LayoutError('Gate of shape {} does not match factors {} of dims {}'.format(
            gate.shape, factors, sub_dims))
    qmath.check_unitary(gate)
    qmath.check_dimension(layout.size)

    order = factors + [f for f in range(layout.num_factors) if f not in factors]
    rest = layout.size // sub
    lifted = np.kron(gate, np.eye(rest, dtype=complex))
    return qmath.permute_subsystems(lifted, layout.permuted(order), qmath.inverse_permutation(order))


def uniform_prep(n):
    """Equal superposition of all 2^n computational basis states of n qubits."""
    n = int(n)
    if n < 1:
        raise ValueError('uniform_prep needs at least one qubit, got {}'.format(n))
    side = qmath.check_dimension(1 << n)
    return PureState(np.full(side, 1 / np.sqrt(side), dtype=complex), qmath.SubsystemLayout.uniform(2, n))


def oracle_uf(formula, n):
    """
    U_f = sum_i |i><i| (x) X^f(i) over n variable qubits followed by one target qubit.
    Assignment i puts x_1 on factor 0, the most significant digit.
    """
    if formula.num_vars != n:
        raise ValueError('Formula has {} variables but the oracle was asked for {}'.format(formula.num_vars, n))
    if n > ORACLE_MAX_VARIABLES:
        raise ValueError('Dense oracles are limited to {} variables, got {}'.format(ORACLE_MAX_VARIABLES, n))
    side = qmath.check_dimension(1 << (n + 1))
    mask = cnf.satisfying_mask(formula).astype(np.int64)
    blocks = 2 * np.arange(1 << n)[:, None]
    targets = np.arange(2)[None, :]
    u = np.zeros((side, side), dtype=complex)
    u[(blocks + (targets ^ mask[:, None])).ravel(), (blocks + targets).ravel()] = 1
    logging.debug('Built U_f over {} variables, {} satisfying blocks'.format(n, int(mask.sum())))
    return u


class GateSpec(collections.namedtuple('GateSpec', ['kind', 'dimension', 'factors', 'payload'])):
    """
    A gate placed on a layout. `payload` is the CnfFormula for oracle_uf and the raw matrix for embed.
    """
    __slots__ = ()

    def __new__(cls, kind, dimension, factors, payload=None):
        if kind not in GATE_KINDS:
            raise ValueError('Unknown gate kind {}, expected one of {}'.format(kind, ', '.join(GATE_KINDS)))
        return super().__new__(cls, kind, int(dimension), tuple(int(f) for f in factors), payload)


_ARITY = {'c_plus': 2, 'pauli_x': 1, 'pauli_y': 1, 'pauli_z': 1}


def _local_gate(spec):
    if spec.kind == 'c_plus':
        return c_plus(spec.dimension)
    if spec.kind == 'pauli_x':
        return pauli_x(spec.dimension)
    if spec.kind == 'pauli_y':
        return pauli_y(spec.dimension)
    if spec.kind == 'pauli_z':
        return pauli_z(spec.dimension)
    if spec.kind == 'oracle_uf':
        if spec.payload is None:
            raise ValueError('An oracle_uf gate needs a formula payload')
        return oracle_uf(spec.payload, spec.payload.num_vars)
    if spec.payload is None:
        raise ValueError('An embed gate needs a matrix payload')
    return qmath.as_matrix(spec.payload)


def build(spec, layout):
    """Full-layout unitary of a GateSpec."""
    if spec.kind in _ARITY and len(spec.factors) != _ARITY[spec.kind]:
        raise LayoutError('{} acts on {} factor(s), got {}'.format(spec.kind, _ARITY[spec.kind], list(spec.factors)))
    if spec.kind == 'oracle_uf' and spec.payload is not None and len(spec.factors) != spec.payload.num_vars + 1:
        raise LayoutError('oracle_uf over {} variables acts on {} factors, got {}'.format(
            spec.payload.num_vars, spec.payload.num_vars + 1, list(spec.factors)))
    qmath.factor_indices(layout, spec.factors)
    if spec.kind != 'embed' and any(layout.dims[f] != spec.dimension for f in spec.factors):
        raise LayoutError('{} on d={} does not match factor dims {}'.format(
            spec.kind, spec.dimension, [layout.dims[f] for f in spec.factors]))
    return embed(_local_gate(spec), layout, spec.factors)
