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

import otcsim.qmath as qmath

from otcsim.errors import DimensionLimitError, LayoutError, NotHermitianError, NotUnitaryError
from otcsim.qmath import SubsystemLayout
from otcsim.qstate import SIGMA_X, SIGMA_Z, random_density_matrix


KET_0 = np.array([[1, 0], [0, 0]], dtype=complex)
KET_1 = np.array([[0, 0], [0, 1]], dtype=complex)
BELL = np.array([[1, 0, 0, 1], [0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 1]], dtype=complex) / 2


class QmathTest(unittest.TestCase):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)

    def tearDown(self):
        qmath.set_dimension_limit(qmath.DEFAULT_DIMENSION_LIMIT)

    def test_layout_validation(self):
        assert SubsystemLayout([2, 3]).size == 6
        assert SubsystemLayout.uniform(3, 2).dims == (3, 3)
        assert SubsystemLayout([2, 3, 4]).permuted([2, 0, 1]).dims == (4, 2, 3)
        assert SubsystemLayout([2, 3, 4]).subset([2, 0]).dims == (2, 4)
        with self.assertRaises(LayoutError):
            SubsystemLayout([])
        with self.assertRaises(LayoutError):
            SubsystemLayout([2, 1])

    def test_tensor_product(self):
        np.testing.assert_array_equal(qmath.tensor_product(np.eye(2), np.eye(2)), np.eye(4))
        np.testing.assert_array_equal(qmath.tensor_product(KET_0, KET_1), np.diag([0, 1, 0, 0]))
        np.testing.assert_array_equal(qmath.tensor_product(SIGMA_Z, SIGMA_Z), np.diag([1, -1, -1, 1]))

    def test_tensor_product_is_associative(self):
        a, b, c = (random_density_matrix((d,), seed).matrix for d, seed in [(2, 1), (3, 2), (2, 3)])
        left = qmath.tensor_product(qmath.tensor_product(a, b), c)
        right = qmath.tensor_product(a, qmath.tensor_product(b, c))
        assert np.max(np.abs(left - right)) <= 1e-14

    def test_tensor_product_respects_dimension_limit(self):
        qmath.set_dimension_limit(16)
        qmath.tensor_product(np.eye(4), np.eye(4))
        with self.assertRaises(DimensionLimitError):
            qmath.tensor_product(np.eye(4), np.eye(8))

    def test_partial_trace_of_product(self):
        rho_a = random_density_matrix((2,), 5).matrix
        rho_b = random_density_matrix((3,), 6).matrix
        layout = SubsystemLayout([2, 3])
        joint = np.kron(rho_a, rho_b)
        np.testing.assert_allclose(qmath.partial_trace(joint, layout, [0]), rho_a, atol=1e-14)
        np.testing.assert_allclose(qmath.partial_trace(joint, layout, [1]), rho_b, atol=1e-14)

    def test_partial_trace_of_bell_state(self):
        np.testing.assert_allclose(qmath.partial_trace(BELL, SubsystemLayout([2, 2]), [0]), np.eye(2) / 2)

    def test_partial_trace_matches_explicit_summation(self):
        layout = SubsystemLayout([3, 3, 3])
        m = random_density_matrix(layout, 11).matrix
        reduced = qmath.partial_trace(m, layout, [1])
        tensor = m.reshape(3, 3, 3, 3, 3, 3)
        expected = np.zeros((3, 3), dtype=complex)
        for b in range(3):
            for b2 in range(3):
                expected[b, b2] = sum(tensor[a, b, c, a, b2, c] for a in range(3) for c in range(3))
        assert np.max(np.abs(reduced - expected)) <= 1e-12
        assert abs(np.trace(reduced) - np.trace(m)) <= 1e-12

    def test_partial_trace_over_everything_is_the_trace(self):
        layout = SubsystemLayout([2, 3])
        m = random_density_matrix(layout, 3).matrix * 2.5
        traced = qmath.partial_trace(m, layout, [])
        assert traced.shape == (1, 1)
        assert abs(traced[0, 0] - 2.5) <= 1e-12

    def test_partial_trace_rejects_bad_indices(self):
        with self.assertRaises(LayoutError):
            qmath.partial_trace(BELL, SubsystemLayout([2, 2]), [2])
        with self.assertRaises(LayoutError):
            qmath.partial_trace(BELL, SubsystemLayout([2, 3]), [0])

    def test_permute_subsystems(self):
        layout = SubsystemLayout([2, 3])
        rho_a = random_density_matrix((2,), 1).matrix
        rho_b = random_density_matrix((3,), 2).matrix
        joint = np.kron(rho_a, rho_b)
        np.testing.assert_array_equal(qmath.permute_subsystems(joint, layout, [0, 1]), joint)
        np.testing.assert_allclose(qmath.permute_subsystems(joint, layout, [1, 0]), np.kron(rho_b, rho_a),
                                   atol=1e-15)

    def test_permute_round_trip(self):
        layout = SubsystemLayout([2, 3, 2])
        m = random_density_matrix(layout, 9).matrix
        perm = [2, 0, 1]
        permuted = qmath.permute_subsystems(m, layout, perm)
        restored = qmath.permute_subsystems(permuted, layout.permuted(perm), qmath.inverse_permutation(perm))
        assert np.max(np.abs(restored - m)) <= 1e-14

    def test_permute_rejects_non_permutation(self):
        with self.assertRaises(LayoutError):
            qmath.permute_subsystems(BELL, SubsystemLayout([2, 2]), [0, 0])

    def test_permutation_operator(self):
        layout = SubsystemLayout([2, 3, 2])
        m = random_density_matrix(layout, 4).matrix
        p = qmath.permutation_operator(layout, [1, 2, 0])
        np.testing.assert_allclose(p @ m @ p.conj().T, qmath.permute_subsystems(m, layout, [1, 2, 0]), atol=1e-14)

    def test_eig_hermitian(self):
        values, _ = qmath.eig_hermitian(SIGMA_Z)
        np.testing.assert_allclose(values, [-1, 1])
        values, vectors = qmath.eig_hermitian(SIGMA_X)
        np.testing.assert_allclose(values, [-1, 1])
        minus = np.array([1, -1]) / np.sqrt(2)
        plus = np.array([1, 1]) / np.sqrt(2)
        assert abs(abs(np.vdot(minus, vectors[:, 0])) - 1) <= 1e-12
        assert abs(abs(np.vdot(plus, vectors[:, 1])) - 1) <= 1e-12

    def test_eig_hermitian_reconstructs(self):
        m = qmath.random_hermitian(6, 17)
        values, vectors = qmath.eig_hermitian(m)
        assert list(values) == sorted(values)
        assert np.max(np.abs(vectors @ np.diag(values) @ vectors.conj().T - m)) <= 1e-10

    def test_eig_hermitian_rejects_non_hermitian(self):
        with self.assertRaises(NotHermitianError):
            qmath.eig_hermitian(np.array([[0, 1], [0, 0]]))

    def test_conjugate_by(self):
        rho = random_density_matrix((3,), 8).matrix
        np.testing.assert_allclose(qmath.conjugate_by(np.eye(3), rho), rho)
        np.testing.assert_allclose(qmath.conjugate_by(SIGMA_X, KET_0), KET_1)

    def test_conjugate_by_preserves_state_properties(self):
        rho = random_density_matrix((4,), 21).matrix
        out = qmath.conjugate_by(qmath.random_unitary(4, 22), rho)
        assert abs(np.trace(out) - 1) <= 1e-12
        assert qmath.is_hermitian(out, 1e-12)
        np.testing.assert_allclose(np.linalg.eigvalsh(out), np.linalg.eigvalsh(rho), atol=1e-10)

    def test_conjugate_by_rejects_non_unitary(self):
        with self.assertRaises(NotUnitaryError):
            qmath.conjugate_by(2 * np.eye(2), KET_0)

    def test_apply_local_matches_full_conjugation(self):
        layout = SubsystemLayout([2, 3, 2])
        m = random_density_matrix(layout, 30).matrix
        gate = qmath.random_unitary(4, 31)
        full = qmath.permutation_operator(layout, [0, 2, 1])
        lifted = full.conj().T @ np.kron(gate, np.eye(3)) @ full
        np.testing.assert_allclose(qmath.apply_local(m, layout, gate, [0, 2]), lifted @ m @ lifted.conj().T,
                                   atol=1e-12)


if __name__ == '__main__':
    unittest.main()
