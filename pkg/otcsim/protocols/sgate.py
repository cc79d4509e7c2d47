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

import numpy as np

import otcsim.qmath as qmath

from otcsim.errors import LayoutError
from otcsim.gates import c_plus
from otcsim.qstate import DensityMatrix, IDENTITY_2, SIGMA_Z
from otcsim.timelike import otc_apply


_CNOT = c_plus(2)
_ANCILLA = np.array([[1, 0], [0, 0]], dtype=complex)
_PAIR = qmath.SubsystemLayout((2, 2))


def s_gate(rho):
    """
    The non-linear map rho(n_z) -> rho(n_z^2) built from CNOT, one OTC on the ancilla, and CNOT back
    with the ancilla in control.
    """
    if rho.dims != (2,):
        raise LayoutError('The S-gate acts on a single qubit, got layout {}'.format(list(rho.dims)))
    joint = np.kron(rho.matrix, _ANCILLA)
    joint = qmath.apply_local(joint, _PAIR, _CNOT, [0, 1])
    joint = otc_apply(DensityMatrix(joint, _PAIR), [1]).matrix
    joint = qmath.apply_local(joint, _PAIR, _CNOT, [1, 0])
    return DensityMatrix(joint, _PAIR).marginal([0])


def s_gate_power(rho, p):
    for _ in range(int(p)):
        rho = s_gate(rho)
    return rho


def s_gate_closed_form(n_z, p=1):
    """rho(n_z^(2^p)), the state p S-gates make of any qubit with Bloch z-component n_z."""
    return DensityMatrix((IDENTITY_2 + n_z ** (2 ** int(p)) * SIGMA_Z) / 2, (2,))
