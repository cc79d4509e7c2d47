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

import logging
import sys

import click

from collections import defaultdict
from pathlib import Path

import otcsim.config
import otcsim.experiment
import otcsim.report

from otcsim.cloner import CLONE_BACKENDS
from otcsim.protocols.sat import SAT_MODES
from otcsim.timelike import SOLVER_METHODS


pass_OtcsimConfig = click.make_pass_decorator(otcsim.config.OtcsimConfig)


def configure_logging(verbosity, without_log_timestamp):
    loglevel = max(2 - verbosity, 0) * 10

    if verbosity == 0:
        loglevel = logging.INFO

    if without_log_timestamp:
        log_format = '%(levelname)s: %(message)s'
    else:
        log_format = '[%(asctime)s] %(levelname)s: %(message)s'

    logging.basicConfig(level=loglevel,
                        format=log_format,
                        datefmt='%Y-%m-%d %H:%M:%S')


class OtcsimGroup(click.Group):
    """Click group whose usage errors exit with 1, leaving 2 to unreadable inputs."""

    def main(self, *args, standalone_mode=True, **kwargs):
        try:
            rv = super().main(*args, standalone_mode=False, **kwargs)
        except click.ClickException as e:
            e.show()
            sys.exit(otcsim.experiment.EXIT_BAD_ARGUMENTS)
        except click.Abort:
            click.echo('Aborted!', err=True)
            sys.exit(otcsim.experiment.EXIT_BAD_ARGUMENTS)
        if standalone_mode:
            sys.exit(rv if isinstance(rv, int) else 0)
        return rv


def run_options(f):
    f = click.option('--out', help='Write the report to this file instead of stdout')(f)
    f = click.option('--format', 'report_format', default='json', type=click.Choice(otcsim.report.REPORT_FORMATS),
                     help='Report format')(f)
    f = click.option('--seed', default=0, type=int, help='Master seed; trial i uses seed + i')(f)
    f = click.option('--trials', default=1, type=int, help='Number of independent trials')(f)
    return f


@click.group(cls=OtcsimGroup)
@click.option('-v', '--verbosity', help='Verbosity', default=0, count=True)
@click.option('--without-log-timestamp', help='Do not show timestamp in logs', default=False, is_flag=True)
@click.option('--config-file', help='Specify config file')
@click.option('--max-dimension', type=int, help='Largest composite dimension a state may have')
@click.option('--max-workers', type=int, help='Threads running trials concurrently')
@click.option('--monitoring-provider', help='Metrics provider (None or local)')
@click.pass_context
def cli(ctx, verbosity, without_log_timestamp, config_file, **kwargs):
    config_file = Path(config_file) if config_file else None
    args = defaultdict(lambda: None, kwargs)
    configure_logging(verbosity, without_log_timestamp)
    ctx.obj = otcsim.config.load_config(args, config_file)
    otcsim.config.apply_config(ctx.obj)


@cli.command(name='measure')
@click.option('--state', help='State fixture (JSON)', required=True)
@click.option('--obs', default='sigmaz', help='sigmax, sigmay, sigmaz or an observable fixture (JSON)')
@click.option('--delta', type=float, help='Target accuracy')
@click.option('--eps', type=float, help='Allowed failure probability')
@click.option('--ancillas', type=int, help='Number of ancillas; overrides the Hoeffding budget')
@run_options
@pass_OtcsimConfig
def measure(otcsimconfig, state, obs, delta, eps, ancillas, trials, seed, report_format, out):
    """
    OTC-enhanced measurement of an observable
    """
    otcsim.experiment.main(otcsimconfig, otcsim.experiment.make_run_config(
        'measure', state=state, obs=obs, delta=delta, eps=eps, ancillas=ancillas, trials=trials, seed=seed,
        format=report_format, out=out))


@cli.command(name='sgate')
@click.option('--state', help='Qubit state fixture (JSON)', required=True)
@click.option('--p', '--rounds', 'p', type=int, help='Number of S-gates applied (default 1)')
@click.option('--q', '--repetitions', 'q', type=int, help='sigma_z shots per trial')
@run_options
@pass_OtcsimConfig
def sgate(otcsimconfig, state, p, q, trials, seed, report_format, out):
    """
    Non-linear S-gate rho(n_z) -> rho(n_z^2)
    """
    otcsim.experiment.main(otcsimconfig, otcsim.experiment.make_run_config(
        'sgate', state=state, p=p, q=q, trials=trials, seed=seed, format=report_format, out=out))


@cli.command(name='sat')
@click.option('--cnf', help='DIMACS CNF file', required=True)
@click.option('--p', '--rounds', 'p', type=int, help='S-gate rounds (default ceil(log2(n+1)) + 2)')
@click.option('--q', '--repetitions', 'q', type=int, help='sigma_z shots per decision')
@click.option('--mode', default='analytic', type=click.Choice(SAT_MODES), help='Simulate U_f or count directly')
@run_options
@pass_OtcsimConfig
def sat(otcsimconfig, cnf, p, q, mode, trials, seed, report_format, out):
    """
    Decide satisfiability with OTCs
    """
    otcsim.experiment.main(otcsimconfig, otcsim.experiment.make_run_config(
        'sat', cnf=cnf, p=p, q=q, mode=mode, trials=trials, seed=seed, format=report_format, out=out))


@cli.command(name='clone')
@click.option('--state', help='Qudit state fixture (JSON)', required=True)
@click.option('--delta', type=float, required=True, help='Target accuracy per observable')
@click.option('--eps', type=float, required=True, help='Allowed failure probability per observable')
@click.option('--backend', default='marginal_model', type=click.Choice(CLONE_BACKENDS), help='Cloner backend')
@run_options
@pass_OtcsimConfig
def clone(otcsimconfig, state, delta, eps, backend, trials, seed, report_format, out):
    """
    Reconstruct a state from OTC-decorrelated clones
    """
    otcsim.experiment.main(otcsimconfig, otcsim.experiment.make_run_config(
        'clone', state=state, delta=delta, eps=eps, backend=backend, trials=trials, seed=seed,
        format=report_format, out=out))


@cli.command(name='fixpoint')
@click.option('--state', help='Chronology-respecting input state (JSON)', required=True)
@click.option('--interaction', default='otc',
              help='identity, swap, cnot, grandfather, otc or a unitary fixture (JSON) over input and CTC factors')
@click.option('--method', default='auto', type=click.Choice(SOLVER_METHODS), help='Fixed point solver')
@run_options
@pass_OtcsimConfig
def fixpoint(otcsimconfig, state, interaction, method, trials, seed, report_format, out):
    """
    Solve a Deutsch CTC and evolve the input through it
    """
    otcsim.experiment.main(otcsimconfig, otcsim.experiment.make_run_config(
        'fixpoint', state=state, interaction=interaction, method=method, trials=trials, seed=seed,
        format=report_format, out=out))


if __name__ == '__main__':
    cli()
