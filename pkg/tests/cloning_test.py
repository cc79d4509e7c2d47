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
from otcsim.protocols import cloning
from otcsim.protocols.scaling import cloning_order, required_samples
from otcsim.qstate import DensityMatrix, Observable, bloch_of, density_from_pure, expectation, load_state, \
    random_density_matrix, random_pure_state


class GellMannTest(unittest.TestCase):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)

    def test_orthonormal_traceless_generators(self):
        for d in (2, 3, 4):
            observables = cloning.informationally_complete_set(d)
            assert len(observables) == d * d - 1
            for a in observables:
                assert abs(np.trace(a.matrix)) <= 1e-12
                for b in observables:
                    expected = 2 if a is b else 0
                    assert abs(np.trace(a.matrix @ b.matrix) - expected) <= 1e-12

    def test_qubit_set_is_the_paulis(self):
        observables = cloning.informationally_complete_set(2)
        assert [obs.name for obs in observables] == ['sigmax', 'sigmay', 'sigmaz']
        np.testing.assert_allclose(observables[1].matrix, [[0, -1j], [1j, 0]])
        np.testing.assert_allclose(observables[2].matrix, np.diag([1, -1]))

    def test_reconstruction_from_exact_expectations(self):
        for d in (2, 3):
            observables = cloning.informationally_complete_set(d)
            rho = random_density_matrix((d,), 40 + d)
            estimates = [expectation(rho, obs) for obs in observables]
            assert cloning.reconstruct_state(estimates, observables).is_close(rho, atol=1e-12)

    def test_reconstruction_projects_onto_states(self):
        observables = cloning.informationally_complete_set(2)
        out = cloning.reconstruct_state([0, 0, 1.2], observables)
        assert np.min(np.linalg.eigvalsh(out.matrix)) >= 0
        np.testing.assert_allclose(out.matrix, np.diag([1, 0]), atol=1e-12)


class UnbiasTest(unittest.TestCase):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)

    def test_unbias_estimate(self):
        sigma_z = Observable(np.diag([1, -1]))
        assert cloning.unbias_estimate(0.3, sigma_z, 1, 2) == 0.3
        assert abs(cloning.unbias_estimate(5 / 18, sigma_z, 5 / 9, 2) - 0.5) <= 1e-15
        assert abs(cloning.unbias_estimate(1, Observable(np.eye(2)), 5 / 9, 2) - 1) <= 1e-15
        with self.assertRaises(ValueError):
            cloning.unbias_estimate(0.3, sigma_z, 0, 2)


class OtcCloneTest(unittest.TestCase):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)

    def test_clone_of_zero(self):
        zero = load_state('tests/resources/zero.json')
        seeds = range(100)
        hits = np.zeros(3)
        for seed in seeds:
            bloch = bloch_of(cloning.otc_clone(zero, 0.1, 0.05, seed).reconstructed)
            hits += [abs(bloch.n_x) < 0.1, abs(bloch.n_y) < 0.1, abs(bloch.n_z - 1) < 0.1]
        assert np.all(hits >= 0.95 * len(seeds))

    def test_random_qubits_are_recovered_per_component(self):
        for k in range(20):
            rho = density_from_pure(random_pure_state((2,), k)) if k % 2 else random_density_matrix((2,), k)
            truth = np.array(bloch_of(rho))
            hits = np.zeros(3)
            for seed in range(100):
                bloch = np.array(bloch_of(cloning.otc_clone(rho, 0.1, 0.05, seed).reconstructed))
                hits += np.abs(bloch - truth) < 0.1
            assert np.all(hits >= 95)

    def test_report_fields(self):
        zero = load_state('tests/resources/zero.json')
        report = cloning.otc_clone(zero, 0.1, 0.05, 3)
        assert report.clones == 3
        assert report.backend == 'marginal_model'
        assert abs(report.shrinking_factor - 5 / 9) <= 1e-15
        per_observable = required_samples(2, 5 / 9 * 0.1, 0.05)
        assert report.total_otc_uses == 3 * per_observable + 3
        assert report.total_otc_uses == cloning.planned_otc_uses(2, 0.1, 0.05)
        assert [name for name, _, _ in report.per_observable_estimates] == ['sigmax', 'sigmay', 'sigmaz']
        assert 0 <= report.fidelity_to_input <= 1

    def test_raw_estimates_carry_the_shrinking_factor(self):
        zero = load_state('tests/resources/zero.json')
        raw_z = [cloning.otc_clone(zero, 0.1, 0.05, seed).per_observable_estimates[2][1] for seed in range(20)]
        # each raw estimate has standard deviation below 0.02
        assert abs(np.mean(raw_z) - 5 / 9) <= 0.02

    def test_maximally_mixed_state_is_a_fixed_point(self):
        mixed = DensityMatrix.maximally_mixed((2,))
        hits = 0
        for seed in range(100):
            bloch = bloch_of(cloning.otc_clone(mixed, 0.1, 0.05, seed).reconstructed)
            if max(abs(bloch.n_x), abs(bloch.n_y), abs(bloch.n_z)) < 0.1:
                hits += 1
        assert hits >= 90

    def test_infidelity_shrinks_with_delta(self):
        mean_infidelity = []
        for delta in (0.2, 0.1, 0.05):
            infidelities = []
            for seed in range(100):
                rho = density_from_pure(random_pure_state((2,), seed))
                infidelities.append(1 - cloning.otc_clone(rho, delta, 0.05, 1000 + seed).fidelity_to_input)
            mean_infidelity.append(np.mean(infidelities))
            if delta == 0.05:
                assert sum(infidelity <= delta for infidelity in infidelities) >= 95
        assert mean_infidelity[0] > mean_infidelity[1] > mean_infidelity[2]

    def test_exact_backend_matches_the_model(self):
        rho = random_density_matrix((2,), 8)
        exact = cloning.otc_clone(rho, 0.2, 0.1, 5, backend='exact_symmetric')
        model = cloning.otc_clone(rho, 0.2, 0.1, 5)
        assert exact.backend == 'exact_symmetric'
        assert exact.total_otc_uses == model.total_otc_uses
        for (name, raw, _), (other_name, other_raw, _) in zip(exact.per_observable_estimates,
                                                               model.per_observable_estimates):
            assert name == other_name
            assert abs(raw - other_raw) <= 1e-12

    def test_qutrit(self):
        rho = random_density_matrix((3,), 9)
        report = cloning.otc_clone(rho, 0.2, 0.1, 2)
        assert report.clones == 8
        assert report.reconstructed.dims == (3,)
        assert len(report.per_observable_estimates) == 8

    def test_measured_otc_uses_follow_the_d4_law(self):
        qubit = cloning.otc_clone(random_density_matrix((2,), 1), 0.1, 0.05, 0).total_otc_uses
        qutrit = cloning.otc_clone(random_density_matrix((3,), 1), 0.1, 0.05, 0).total_otc_uses
        ratio = (qutrit / qubit) / (3 / 2) ** 4
        assert 1 / 4 <= ratio <= 4

    def test_budget_follows_the_d4_law(self):
        for d in range(2, 7):
            ratio = cloning.planned_otc_uses(d, 0.1, 0.05) / cloning_order(d, 0.1, 0.05)
            assert 1 <= ratio <= 8

    def test_single_qudit_only(self):
        with self.assertRaises(LayoutError):
            cloning.otc_clone(random_density_matrix((2, 2), 1), 0.1, 0.05, 0)

    def test_observable_seeds_differ(self):
        seeds = {cloning.observable_seed(7, index) for index in range(8)}
        assert len(seeds) == 8
        assert cloning.observable_seed(7, 0) == cloning.observable_seed(7, 0)


if __name__ == '__main__':
    unittest.main()
