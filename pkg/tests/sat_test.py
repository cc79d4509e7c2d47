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

import math
import unittest

import numpy as np

from otcsim import cnf
from otcsim.cnf import CnfFormula
from otcsim.protocols import sat
from otcsim.protocols.scaling import default_rounds


def max_deviation(a, b):
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


class SatTest(unittest.TestCase):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)

    def test_unsatisfiable_formula_is_never_misclassified(self):
        formula = cnf.load_dimacs('tests/resources/unsat.cnf')
        for mode in sat.SAT_MODES:
            preparation = sat.prepare_sat(formula, p=3, mode=mode)
            assert preparation.satisfying_count == 0
            assert max_deviation(preparation.state.matrix, np.diag([1, 0])) <= 1e-12
            for seed in range(50):
                decision = sat.decide(preparation, q=20, seed=seed)
                assert decision.answer == sat.UNSATISFIABLE
                assert decision.predicted_p_fail == 0

    def test_decision_fields(self):
        decision = sat.sat_decide(cnf.load_dimacs('tests/resources/or2.cnf'), q=20, seed=0)
        assert decision.p == default_rounds(2)
        assert decision.q == 20
        assert decision.mode == 'analytic'
        assert decision.satisfying_count == 3
        assert decision.otc_uses == decision.p * decision.q
        assert len(decision.outcomes) == 20
        assert set(decision.outcomes) <= {-1, 1}
        assert 0 <= decision.predicted_p_fail <= 1
        assert decision.answer == (sat.SATISFIABLE if -1 in decision.outcomes else sat.UNSATISFIABLE)

    def test_tautology_is_checked_directly(self):
        decision = sat.sat_decide(cnf.load_dimacs('tests/resources/tautology.cnf'), q=5, seed=0)
        assert decision.answer == sat.SATISFIABLE
        assert decision.satisfying_count == 8
        assert decision.predicted_p_fail == 0
        assert decision.otc_uses == 0

    def test_target_state(self):
        target, s = sat.sat_target_state(cnf.load_dimacs('tests/resources/single.cnf'))
        assert s == 1
        assert max_deviation(target.matrix, np.diag([0.75, 0.25])) <= 1e-15

    def test_circuit_and_analytic_modes_agree(self):
        for seed in range(12):
            n = 3 + seed % 6
            formula = cnf.random_cnf(n, 2 * n, 3, seed)
            circuit, s_circuit = sat.sat_target_state(formula, 'circuit')
            analytic, s_analytic = sat.sat_target_state(formula, 'analytic')
            assert s_circuit == s_analytic == cnf.count_satisfying(formula)
            assert max_deviation(circuit.matrix, analytic.matrix) <= 1e-10
            first = sat.sat_decide(formula, p=2, q=10, mode='circuit', seed=seed)
            second = sat.sat_decide(formula, p=2, q=10, mode='analytic', seed=seed)
            assert first.answer == second.answer
            assert first.outcomes == second.outcomes

    def test_decisions_match_brute_force_counting(self):
        unsatisfiable = 0
        for seed in range(100):
            n = 3 + seed % 8
            formula = cnf.random_cnf(n, round(4.3 * n), 3, 100 + seed)
            count = cnf.count_satisfying(formula)
            decision = sat.sat_decide(formula, q=20, seed=seed)
            assert decision.satisfying_count == count
            if count == 0:
                unsatisfiable += 1
                assert decision.answer == sat.UNSATISFIABLE
            elif decision.answer == sat.UNSATISFIABLE:
                # only a satisfiable formula can be misread, and only as unsatisfiable
                assert set(decision.outcomes) == {1}
            else:
                assert -1 in decision.outcomes
        assert 0 < unsatisfiable < 100

    def test_failure_frequency_matches_prediction(self):
        preparation = sat.prepare_sat(cnf.load_dimacs('tests/resources/single.cnf'), p=2)
        trials = 10000
        failures = sum(sat.decide(preparation, q=2, seed=seed).answer == sat.UNSATISFIABLE for seed in range(trials))
        predicted = sat.decide(preparation, q=2, seed=0).predicted_p_fail
        assert abs(predicted - 289 / 1024) <= 1e-12
        sigma = math.sqrt(trials * predicted * (1 - predicted))
        assert abs(failures - trials * predicted) <= 3 * sigma

    def test_prepared_state(self):
        state, s = sat.sat_prepared_state(cnf.load_dimacs('tests/resources/single.cnf'), 1)
        assert s == 1
        # n_z = 1/2 squared once
        assert max_deviation(state.matrix, np.diag([0.625, 0.375])) <= 1e-12

    def test_validation(self):
        formula = cnf.load_dimacs('tests/resources/or2.cnf')
        with self.assertRaises(ValueError):
            sat.sat_decide(formula, mode='quantum')
        with self.assertRaises(ValueError):
            sat.sat_decide(CnfFormula(13, [[1]]), mode='circuit')
        with self.assertRaises(ValueError):
            sat.sat_decide(CnfFormula(0, []))
        with self.assertRaises(ValueError):
            sat.sat_decide(formula, p=-1)
        with self.assertRaises(ValueError):
            sat.sat_decide(formula, q=0)


if __name__ == '__main__':
    unittest.main()
