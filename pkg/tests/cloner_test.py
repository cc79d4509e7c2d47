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

from otcsim import cloner
from otcsim.cloner import CloneJob
from otcsim.errors import DimensionLimitError, LayoutError
from otcsim.qstate import DensityMatrix, basis_state, density_from_pure, random_density_matrix, random_pure_state


def max_deviation(a, b):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


class ClonerTest(unittest.TestCase):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)

    def test_shrinking_factor(self):
        assert abs(cloner.shrinking_factor(2, 3) - 5 / 9) <= 1e-15
        assert cloner.shrinking_factor(2, 1) == 1
        assert abs(cloner.shrinking_factor(3, 9) - 1 / 3) <= 1e-15
        with self.assertRaises(ValueError):
            cloner.shrinking_factor(1, 3)
        with self.assertRaises(ValueError):
            cloner.shrinking_factor(2, 0)

    def test_single_copy_is_the_input(self):
        rho = random_density_matrix((3,), 1)
        out = cloner.clone_exact(CloneJob(rho, 1, 'exact_symmetric'))
        assert out.is_close(rho, atol=1e-12)

    def test_three_qubit_clones_of_zero(self):
        zero = density_from_pure(basis_state((2,), 0))
        expected = np.diag([7 / 9, 2 / 9])
        joint = cloner.clone_exact(CloneJob(zero, 3, 'exact_symmetric'))
        for k in range(3):
            assert max_deviation(joint.marginal([k]).matrix, expected) <= 1e-9
        for marginal in cloner.clone_marginals(CloneJob(zero, 3)):
            assert max_deviation(marginal.matrix, expected) <= 1e-12

    def test_two_copies_shrink_by_two_thirds(self):
        for seed in range(5):
            rho = density_from_pure(random_pure_state((2,), seed))
            joint = cloner.clone_exact(CloneJob(rho, 2, 'exact_symmetric'))
            expected = 2 / 3 * rho.matrix + 1 / 3 * np.eye(2) / 2
            assert max_deviation(joint.marginal([0]).matrix, expected) <= 1e-9

    def test_maximally_mixed_input_is_invariant(self):
        mixed = DensityMatrix.maximally_mixed((2,))
        for marginal in cloner.clone_marginals(CloneJob(mixed, 3)):
            assert marginal.is_close(mixed, atol=1e-15)

    def test_exact_backend_matches_the_marginal_model(self):
        for d, max_copies in ((2, 5), (3, 3), (4, 2)):
            rho = random_density_matrix((d,), d)
            for copies in range(1, max_copies + 1):
                joint = cloner.clone_exact(CloneJob(rho, copies, 'exact_symmetric'))
                model = cloner.clone_marginals(CloneJob(rho, copies))
                assert len(model) == copies
                for k in range(copies):
                    assert max_deviation(joint.marginal([k]).matrix, model[k].matrix) <= 1e-9

    def test_decorrelated_exact_clones(self):
        rho = random_density_matrix((2,), 4)
        exact = cloner.clone(CloneJob(rho, 4, 'exact_symmetric'))
        model = cloner.clone(CloneJob(rho, 4, 'marginal_model'))
        assert len(exact) == 4
        for a, b in zip(exact, model):
            assert max_deviation(a.matrix, b.matrix) <= 1e-9

    def test_output_lives_in_the_symmetric_subspace(self):
        for d, copies in ((2, 3), (3, 2), (2, 4)):
            joint = cloner.clone_exact(CloneJob(random_density_matrix((d,), 7), copies, 'exact_symmetric'))
            projector = cloner.symmetric_projector(d, copies)
            assert max_deviation(projector @ joint.matrix @ projector, joint.matrix) <= 1e-10

    def test_projector_constructions_agree(self):
        for d, copies in ((2, 2), (2, 3), (3, 3), (2, 5)):
            permutation_sum = cloner._permutation_sum_projector(d, copies)
            symmetric_basis = cloner._symmetric_basis_projector(d, copies)
            assert max_deviation(permutation_sum, symmetric_basis) <= 1e-12

    def test_large_projector(self):
        projector = cloner.symmetric_projector(2, 8)
        assert max_deviation(projector @ projector, projector) <= 1e-12
        # dimension of the symmetric subspace of 8 qubits
        assert abs(np.trace(projector).real - 9) <= 1e-9
        assert not projector.flags.writeable

    def test_clone_job_validation(self):
        with self.assertRaises(LayoutError):
            CloneJob(random_density_matrix((2, 2), 1), 2)
        with self.assertRaises(ValueError):
            CloneJob(random_density_matrix((2,), 1), 0)
        with self.assertRaises(ValueError):
            CloneJob(random_density_matrix((2,), 1), 2, 'asymmetric')
        with self.assertRaises(DimensionLimitError):
            CloneJob(random_density_matrix((2,), 1), 13, 'exact_symmetric')


if __name__ == '__main__':
    unittest.main()
