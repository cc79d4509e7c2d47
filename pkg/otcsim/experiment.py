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
Seeded batch runs of the protocols. Every subcommand loads its inputs once, runs `trials` independent
trials with seeds master seed + trial index, and summarizes them next to the closed-form predictions.
"""

import collections
import datetime
import logging
import math
import sys
import traceback

import numpy as np

import otcsim
import otcsim.report

from otcsim import qmath
from otcsim.cloner import CLONE_BACKENDS, shrinking_factor
from otcsim.cnf import load_dimacs
from otcsim.concurrent import run_trials
from otcsim.errors import CnfParseError, ConsistencyError, ConvergenceError, DimensionLimitError, FixtureError, \
    InvalidStateError, LayoutError, NotHermitianError, NotUnitaryError, RunConfigError
from otcsim.gates import c_plus, embed, pauli_x, swap
from otcsim.monitoring import Monitoring
from otcsim.protocols.cloning import informationally_complete_set, otc_clone, planned_otc_uses
from otcsim.protocols.measurement import otc_measure, plan_measurement
from otcsim.protocols.sat import SAT_MODES, SATISFIABLE, decide, prepare_sat
from otcsim.protocols.scaling import cloning_order, hoeffding_failure_bound, sat_failure_probability
from otcsim.protocols.sgate import s_gate_closed_form, s_gate_power
from otcsim.qstate import IDENTITY_2, NAMED_OBSERVABLES, bloch_of, expectation, load_matrix, load_observable, \
    load_state, measure_sample, named_observable, random_density_matrix, state_from_json, state_to_json
from otcsim.timelike import SOLVER_METHODS, CtcSpec, ctc_evolve, ctc_layout, ctc_map, deutsch_fixed_point, \
    otc_apply, traveler_spec


SUBCOMMANDS = ('measure', 'sgate', 'sat', 'clone', 'fixpoint')
INTERACTIONS = ('identity', 'swap', 'cnot', 'grandfather', 'otc')

EXIT_BAD_ARGUMENTS = 1
EXIT_PARSE_FAILURE = 2
EXIT_PROTOCOL_ERROR = 3

RunConfig = collections.namedtuple('RunConfig', [
    'subcommand', 'state', 'obs', 'cnf', 'delta', 'eps', 'ancillas', 'p', 'q', 'mode', 'backend', 'interaction',
    'method', 'trials', 'seed', 'format', 'out',
])

Experiment = collections.namedtuple('Experiment', ['trial', 'summarize'])


def make_run_config(subcommand, **options):
    """RunConfig with every option not given set to its default."""
    defaults = {field: None for field in RunConfig._fields}
    defaults.update(trials=1, seed=0, format='json')
    defaults.update({key: value for key, value in options.items() if value is not None})
    defaults['subcommand'] = subcommand
    return RunConfig(**defaults)


def _require(run_config, *fields):
    for field in fields:
        if getattr(run_config, field) is None:
            raise RunConfigError(field, 'required by the {} subcommand'.format(run_config.subcommand))


def validate_run_config(run_config):
    if run_config.subcommand not in SUBCOMMANDS:
        raise RunConfigError('subcommand', 'expected one of {}'.format(', '.join(SUBCOMMANDS)))
    if run_config.trials < 1:
        raise RunConfigError('trials', 'at least one trial is required, got {}'.format(run_config.trials))
    if run_config.seed < 0:
        raise RunConfigError('seed', 'must be non-negative, got {}'.format(run_config.seed))
    if run_config.delta is not None and not run_config.delta > 0:
        raise RunConfigError('delta', 'must be positive, got {}'.format(run_config.delta))
    if run_config.eps is not None and not 0 < run_config.eps < 1:
        raise RunConfigError('eps', 'must lie in (0, 1), got {}'.format(run_config.eps))
    if run_config.ancillas is not None and run_config.ancillas < 0:
        raise RunConfigError('ancillas', 'cannot be negative, got {}'.format(run_config.ancillas))
    if run_config.p is not None and run_config.p < 0:
        raise RunConfigError('p', 'cannot be negative, got {}'.format(run_config.p))
    if run_config.q is not None and run_config.q < 1:
        raise RunConfigError('q', 'at least one repetition is required, got {}'.format(run_config.q))
    if run_config.format not in otcsim.report.REPORT_FORMATS:
        raise RunConfigError('format', 'expected one of {}'.format(', '.join(otcsim.report.REPORT_FORMATS)))
    if run_config.mode is not None and run_config.mode not in SAT_MODES:
        raise RunConfigError('mode', 'expected one of {}'.format(', '.join(SAT_MODES)))
    if run_config.backend is not None and run_config.backend not in CLONE_BACKENDS:
        raise RunConfigError('backend', 'expected one of {}'.format(', '.join(CLONE_BACKENDS)))
    if run_config.method is not None and run_config.method not in SOLVER_METHODS:
        raise RunConfigError('method', 'expected one of {}'.format(', '.join(SOLVER_METHODS)))

    if run_config.subcommand == 'measure':
        _require(run_config, 'state')
        if run_config.ancillas is None:
            _require(run_config, 'delta', 'eps')
    elif run_config.subcommand == 'sat':
        _require(run_config, 'cnf')
    elif run_config.subcommand == 'clone':
        _require(run_config, 'state', 'delta', 'eps')
    else:
        _require(run_config, 'state')


def _failure_rate_limit(eps, trials):
    return eps + 3 * math.sqrt(eps * (1 - eps) / trials)


def _load_observable(name):
    if name in NAMED_OBSERVABLES:
        return named_observable(name)
    return load_observable(name)


def _measure_experiment(run_config, config):
    rho = load_state(run_config.state)
    obs = _load_observable(run_config.obs or 'sigmaz')
    plan = plan_measurement(obs, run_config.delta, run_config.eps, run_config.seed, run_config.ancillas)
    truth = expectation(rho, obs)
    delta = run_config.delta
    explicit_max_ancillas = config.protocols.explicit_max_ancillas

    def trial(index, seed):
        result = otc_measure(rho, plan._replace(seed=seed), explicit_max_ancillas=explicit_max_ancillas)
        error = abs(result.estimate - truth)
        return {
            'index': index,
            'seed': seed,
            'estimate': result.estimate,
            'abs_error': error,
            'failed': None if delta is None else bool(error >= delta),
            'samples': result.samples,
            'otc_uses': result.otc_uses,
        }

    def summarize(results):
        estimates = np.array([r['estimate'] for r in results])
        aggregate = {
            'mean_estimate': float(np.mean(estimates)),
            'std_estimate': float(np.std(estimates)),
            'empirical_failure_rate': None if delta is None else sum(r['failed'] for r in results) / len(results),
            'otc_uses_total': sum(r['otc_uses'] for r in results),
        }
        theory = {
            'expectation': truth,
            'ancillas': plan.ancillas,
            'samples_per_trial': plan.ancillas + 1,
            'observable_spread': obs.spread,
            'hoeffding_failure_bound': None if delta is None else hoeffding_failure_bound(plan.ancillas, obs.spread,
                                                                                          delta),
            'eps': run_config.eps,
            'failure_rate_limit': None if run_config.eps is None else _failure_rate_limit(run_config.eps,
                                                                                           len(results)),
        }
        return aggregate, theory

    return Experiment(trial, summarize)


def _sgate_experiment(run_config, config):
    rho = load_state(run_config.state)
    p = 1 if run_config.p is None else run_config.p
    q = run_config.q or config.protocols.repetitions
    n_z = bloch_of(rho).n_z
    out = s_gate_power(rho, p)
    sigma_z = named_observable('sigmaz')

    def trial(index, seed):
        outcomes = measure_sample(out, sigma_z, q, seed)
        return {
            'index': index,
            'seed': seed,
            'estimate': float(np.mean(outcomes)),
            'minus_one_count': int(np.sum(outcomes < 0)),
            'otc_uses': p * q,
        }

    def summarize(results):
        aggregate = {
            'mean_estimate': float(np.mean([r['estimate'] for r in results])),
            'otc_uses_total': sum(r['otc_uses'] for r in results),
        }
        theory = {
            'p': p,
            'q': q,
            'n_z_in': n_z,
            'n_z_out_predicted': n_z ** (2 ** p),
            'n_z_out_circuit': bloch_of(out).n_z,
            'circuit_deviation': float(np.max(np.abs(out.matrix - s_gate_closed_form(n_z, p).matrix))),
        }
        return aggregate, theory

    return Experiment(trial, summarize)


def _sat_experiment(run_config, config):
    formula = load_dimacs(run_config.cnf)
    mode = run_config.mode or 'analytic'
    q = run_config.q or config.protocols.repetitions
    preparation = prepare_sat(formula, run_config.p, mode, config.protocols.circuit_max_variables,
                              config.protocols.analytic_max_variables)
    satisfiable = preparation.satisfying_count > 0
    n = formula.num_vars

    def trial(index, seed):
        decision = decide(preparation, q, seed)
        return {
            'index': index,
            'seed': seed,
            'answer': decision.answer,
            'failed': (decision.answer == SATISFIABLE) != satisfiable,
            'outcomes': list(decision.outcomes),
            'otc_uses': decision.otc_uses,
        }

    def summarize(results):
        verdicts = collections.Counter(r['answer'] for r in results)
        aggregate = {
            'satisfiable_verdicts': verdicts[SATISFIABLE],
            'unsatisfiable_verdicts': len(results) - verdicts[SATISFIABLE],
            'empirical_failure_rate': sum(r['failed'] for r in results) / len(results),
            'otc_uses_total': sum(r['otc_uses'] for r in results),
        }
        theory = {
            'num_vars': n,
            'num_clauses': len(formula.clauses),
            'satisfying_count': preparation.satisfying_count,
            'tautology': preparation.tautology,
            'mode': mode,
            'p': preparation.p,
            'q': q,
            'predicted_p_fail': sat_failure_probability(n, preparation.satisfying_count, preparation.p, q),
            'n_z_target': 1 - preparation.satisfying_count / 2 ** (n - 1),
            'n_z_prepared': None if preparation.tautology else bloch_of(preparation.state).n_z,
        }
        return aggregate, theory

    return Experiment(trial, summarize)


def _clone_experiment(run_config, config):
    rho = load_state(run_config.state)
    if rho.layout.num_factors != 1:
        raise LayoutError('Cloning takes a single qudit, got layout {}'.format(list(rho.dims)))
    backend = run_config.backend or 'marginal_model'
    delta, eps = run_config.delta, run_config.eps
    observables = informationally_complete_set(rho.dim)
    truths = {obs.name: expectation(rho, obs) for obs in observables}
    explicit_max_ancillas = config.protocols.explicit_max_ancillas

    def trial(index, seed):
        report = otc_clone(rho, delta, eps, seed, backend, explicit_max_ancillas)
        estimates = [
            {'observable': name, 'raw': raw, 'unbiased': unbiased, 'truth': truths[name]}
            for name, raw, unbiased in report.per_observable_estimates
        ]
        max_error = max(abs(e['unbiased'] - e['truth']) for e in estimates)
        return {
            'index': index,
            'seed': seed,
            'fidelity': report.fidelity_to_input,
            'estimates': estimates,
            'max_abs_error': max_error,
            'within_delta': bool(max_error <= delta),
            'otc_uses': report.total_otc_uses,
            'reconstructed': state_to_json(report.reconstructed),
        }

    def summarize(results):
        fidelities = [r['fidelity'] for r in results]
        successes = sum(r['within_delta'] for r in results)
        aggregate = {
            'mean_fidelity': float(np.mean(fidelities)),
            'min_fidelity': float(np.min(fidelities)),
            'success_rate': successes / len(results),
            'empirical_failure_rate': 1 - successes / len(results),
            'otc_uses_total': sum(r['otc_uses'] for r in results),
        }
        theory = {
            'dimension': rho.dim,
            'clones': len(observables),
            'backend': backend,
            'shrinking_factor': shrinking_factor(rho.dim, len(observables)),
            'planned_otc_uses_per_trial': planned_otc_uses(rho.dim, delta, eps),
            'cloning_order': cloning_order(rho.dim, delta, eps),
            'eps': eps,
            'failure_rate_limit': _failure_rate_limit(eps, len(results)),
        }
        return aggregate, theory

    return Experiment(trial, summarize)


def interaction_spec(name, rho):
    """
    CtcSpec for a named interaction or a matrix fixture. Named interactions other than 'otc' and 'identity'
    couple a single input qubit to one CTC qubit; a fixture's leading factors must match the input and its
    trailing factors are the CTC.
    """
    n = rho.layout.num_factors
    if name == 'otc':
        return traveler_spec(rho.layout, [0])
    if name == 'identity':
        return CtcSpec(np.eye(rho.dim * 2, dtype=complex), [n], (2,))
    if name in INTERACTIONS:
        if rho.dims != (2,):
            raise LayoutError('Interaction {} needs a single input qubit, got layout {}'.format(name, list(rho.dims)))
        if name == 'swap':
            return CtcSpec(swap(2), [1], (2,))
        if name == 'cnot':
            return CtcSpec(c_plus(2), [1], (2,))
        # CTC bit copied onto the input, then flipped on its way back
        copy = embed(c_plus(2), qmath.SubsystemLayout((2, 2)), [1, 0])
        return CtcSpec(np.kron(IDENTITY_2, pauli_x(2)) @ copy, [1], (2,))

    layout, matrix = load_matrix(name)
    if layout.dims[:n] != rho.dims or layout.num_factors == n:
        raise LayoutError('Interaction fixture layout {} must extend the input layout {} by CTC factors'.format(
            list(layout.dims), list(rho.dims)))
    return CtcSpec(matrix, range(n, layout.num_factors), layout.dims[n:])


def _fixpoint_experiment(run_config, config):
    rho = load_state(run_config.state)
    interaction = run_config.interaction or 'otc'
    spec = interaction_spec(interaction, rho)
    method = run_config.method or 'auto'
    layout = ctc_layout(rho, spec)
    settings = config.fixpoint

    def trial(index, seed):
        # trial 0 starts from the maximally mixed state, the others from seeded random states
        initial = None if index == 0 else random_density_matrix(layout, seed)
        fp = deutsch_fixed_point(rho, spec, settings.tolerance, settings.max_iterations, method, initial,
                                 settings.stall_window, settings.spectral_max_dimension)
        output = ctc_evolve(rho, spec, fp)
        recheck = qmath.trace_norm(ctc_map(rho, spec, fp.solution).matrix - fp.solution.matrix)
        return {
            'index': index,
            'seed': seed,
            'method': fp.method,
            'iterations': fp.iterations,
            'residual': fp.residual,
            'recheck_residual': recheck,
            'fixed_space_dimension': fp.fixed_space_dimension,
            'solution': state_to_json(fp.solution),
            'output': state_to_json(output),
        }

    def summarize(results):
        outputs = [state_from_json(r['output']).matrix for r in results]
        aggregate = {
            'max_residual': max(r['residual'] for r in results),
            'max_recheck_residual': max(r['recheck_residual'] for r in results),
            'output_spread': max(float(np.max(np.abs(m - outputs[0]))) for m in outputs),
        }
        theory = {
            'interaction': interaction,
            'method': method,
            'tolerance': settings.tolerance,
            'ctc_dims': list(layout.dims),
            'otc_deviation': None,
        }
        if interaction == 'otc':
            theory['otc_deviation'] = float(np.max(np.abs(outputs[0] - otc_apply(rho, [0]).matrix)))
        return aggregate, theory

    return Experiment(trial, summarize)


EXPERIMENTS = {
    'measure': _measure_experiment,
    'sgate': _sgate_experiment,
    'sat': _sat_experiment,
    'clone': _clone_experiment,
    'fixpoint': _fixpoint_experiment,
}


def _config_section(run_config, config):
    section = {key: (str(value) if key in ('state', 'cnf', 'out') and value is not None else value)
               for key, value in run_config._asdict().items()}
    section['settings'] = {
        'simulation': config.simulation._asdict(),
        'fixpoint': config.fixpoint._asdict(),
        'protocols': config.protocols._asdict(),
    }
    return section


def run(run_config, config):
    """
    Runs one batch and returns its report: {config, trials, aggregate, theory, provenance}.
    """
    validate_run_config(run_config)
    experiment = EXPERIMENTS[run_config.subcommand](run_config, config)
    logging.info('Running {} trial(s) of {} with master seed {}'.format(
        run_config.trials, run_config.subcommand, run_config.seed))
    results = run_trials(experiment.trial, run_config.trials, run_config.seed, config.runner.max_workers)
    aggregate, theory = experiment.summarize(results)
    return {
        'config': _config_section(run_config, config),
        'trials': results,
        'aggregate': aggregate,
        'theory': theory,
        'provenance': {
            'version': otcsim.__version__,
            'generated_at': datetime.datetime.now(datetime.timezone.utc).isoformat(),
        },
    }


def exit_code_for(error):
    if isinstance(error, (ConvergenceError, ConsistencyError, DimensionLimitError)):
        return EXIT_PROTOCOL_ERROR
    if isinstance(error, (CnfParseError, FixtureError, InvalidStateError, NotHermitianError, NotUnitaryError,
                          UnicodeError, OSError)):
        return EXIT_PARSE_FAILURE
    return EXIT_BAD_ARGUMENTS


def main(config, run_config):
    start = datetime.datetime.now()
    monitoring = Monitoring(config=config.monitoring)

    try:
        report = run(run_config, config)
        otcsim.report.write_report(report, run_config.format, run_config.out)
        end = datetime.datetime.now()
        update_monitoring(end - start, run_config.subcommand, monitoring, report)
        logging.info('{} finished in {:.2f}s'.format(run_config.subcommand, (end - start).total_seconds()))
        return report

    except (ValueError, RuntimeError, OSError) as e:
        monitoring.send_run_metric('run-error', run_config.subcommand, 1)
        code = exit_code_for(e)
        logging.error('{} failed: {}'.format(run_config.subcommand, str(e)))
        if code == EXIT_PROTOCOL_ERROR:
            traceback.print_exc()
        sys.exit(code)


def update_monitoring(duration, subcommand, monitoring, report):
    monitoring.send_run_metric('run-duration', subcommand, duration.total_seconds())
    monitoring.send_run_metric('otc-uses', subcommand, report['aggregate'].get('otc_uses_total', 0))
    failure_rate = report['aggregate'].get('empirical_failure_rate')
    if failure_rate is not None:
        monitoring.send_run_metric('failure-rate', subcommand, failure_rate)
    monitoring.send_run_metric('run-error', subcommand, 0)
