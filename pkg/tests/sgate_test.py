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

import unittest

import numpy as np

from otcsim.errors import LayoutError
from otcsim.protocols.sgate import s_gate, s_gate_closed_form, s_gate_power
from otcsim.qstate import bloch_of, load_state, random_density_matrix


def max_deviation(a, b):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


class SGateTest(unittest.TestCase):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)

    def test_zero_is_a_fixed_point(self):
        zero = load_state('tests/resources/zero.json')
        assert s_gate(zero).is_close(zero, atol=1e-12)

    def test_squares_the_z_component(self):
        out = s_gate(load_state('tests/resources/half_polarized.json'))
        assert max_deviation(out.matrix, np.diag([0.625, 0.375])) <= 1e-12
        assert abs(bloch_of(out).n_z - 0.25) <= 1e-12

    def test_plus_goes_to_maximally_mixed(self):
        out = s_gate(load_state('tests/resources/plus.json'))
        assert max_deviation(out.matrix, np.eye(2) / 2) <= 1e-12

    def test_matches_closed_form(self):
        for seed in range(100):
            rho = random_density_matrix((2,), seed)
            expected = s_gate_closed_form(bloch_of(rho).n_z)
            assert max_deviation(s_gate(rho).matrix, expected.matrix) <= 1e-10

    def test_powers(self):
        for seed in range(10):
            rho = random_density_matrix((2,), 100 + seed)
            n_z = bloch_of(rho).n_z
            for p in range(6):
                out = s_gate_power(rho, p)
                assert abs(bloch_of(out).n_z - n_z ** (2 ** p)) <= 1e-8
        rho = random_density_matrix((2,), 1)
        assert s_gate_power(rho, 0) is rho

    def test_closed_form(self):
        assert max_deviation(s_gate_closed_form(-1, 0).matrix, np.diag([0, 1])) == 0
        assert max_deviation(s_gate_closed_form(-1, 1).matrix, np.diag([1, 0])) == 0
        assert max_deviation(s_gate_closed_form(0.5, 2).matrix, np.diag([1 + 1 / 16, 1 - 1 / 16]) / 2) <= 1e-15

    def test_qubits_only(self):
        with self.assertRaises(LayoutError):
            s_gate(random_density_matrix((3,), 1))
        with self.assertRaises(LayoutError):
            s_gate(random_density_matrix((2, 2), 1))


if __name__ == '__main__':
    unittest.main()
