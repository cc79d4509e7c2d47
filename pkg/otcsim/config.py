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
import configparser
import logging
import multiprocessing
import pathlib
import sys

import otcsim.monitoring
import otcsim.protocols.measurement
import otcsim.protocols.sat
import otcsim.protocols.scaling
import otcsim.qmath
import otcsim.timelike

SimulationConfig = collections.namedtuple(
    'SimulationConfig',
    ['max_dimension']
)

FixpointConfig = collections.namedtuple(
    'FixpointConfig',
    ['tolerance', 'max_iterations', 'stall_window', 'spectral_max_dimension']
)

ProtocolsConfig = collections.namedtuple(
    'ProtocolsConfig',
    ['repetitions', 'explicit_max_ancillas', 'circuit_max_variables', 'analytic_max_variables']
)

RunnerConfig = collections.namedtuple(
    'RunnerConfig',
    ['max_workers']
)

MonitoringConfig = collections.namedtuple(
    'MonitoringConfig',
    ['monitoring_provider']
)

OtcsimConfig = collections.namedtuple(
    'OtcsimConfig',
    ['simulation', 'fixpoint', 'protocols', 'runner', 'monitoring']
)

DEFAULT_CONFIGURATION_PATH = pathlib.Path('/etc/otcsim/otcsim.ini')

_CONVERTERS = {
    'max_dimension': int,
    'tolerance': float,
    'max_iterations': int,
    'stall_window': int,
    'spectral_max_dimension': int,
    'repetitions': int,
    'explicit_max_ancillas': int,
    'circuit_max_variables': int,
    'analytic_max_variables': int,
    'max_workers': int,
    'monitoring_provider': str,
}


def load_config(args, config_file):
    config = configparser.ConfigParser(interpolation=None)

    # Set defaults

    config['simulation'] = {
        'max_dimension': otcsim.qmath.DEFAULT_DIMENSION_LIMIT,
    }

    config['fixpoint'] = {
        'tolerance': otcsim.timelike.DEFAULT_TOLERANCE,
        'max_iterations': otcsim.timelike.DEFAULT_MAX_ITERATIONS,
        'stall_window': otcsim.timelike.DEFAULT_STALL_WINDOW,
        'spectral_max_dimension': otcsim.timelike.SPECTRAL_MAX_DIMENSION,
    }

    config['protocols'] = {
        'repetitions': otcsim.protocols.scaling.DEFAULT_REPETITIONS,
        'explicit_max_ancillas': otcsim.protocols.measurement.EXPLICIT_MAX_ANCILLAS,
        'circuit_max_variables': otcsim.protocols.sat.CIRCUIT_MAX_VARIABLES,
        'analytic_max_variables': otcsim.protocols.sat.ANALYTIC_MAX_VARIABLES,
    }

    config['runner'] = {
        'max_workers': multiprocessing.cpu_count(),
    }

    config['monitoring'] = {
        'monitoring_provider': otcsim.monitoring.PROVIDER_NONE,
    }

    if config_file:
        logging.debug('Loading configuration from {}'.format(config_file))
        config.read_file(config_file.open())
    elif DEFAULT_CONFIGURATION_PATH.exists():
        logging.debug('Loading configuration from {}'.format(DEFAULT_CONFIGURATION_PATH))
        config.read_file(DEFAULT_CONFIGURATION_PATH.open())
    else:
        logging.debug('No configuration file given nor found in {}, using defaults'.format(
            DEFAULT_CONFIGURATION_PATH))

    sections = [
        ('simulation', SimulationConfig),
        ('fixpoint', FixpointConfig),
        ('protocols', ProtocolsConfig),
        ('runner', RunnerConfig),
        ('monitoring', MonitoringConfig),
    ]
    for section, cls in sections:
        config.read_dict({section: {
            key: str(value)
            for key, value in _zip_fields_with_arg_values(cls._fields, args)
            if value is not None
        }})

    otcsim_config = OtcsimConfig(**{
        section: _namedtuple_from_section(cls, section, config[section])
        for section, cls in sections
    })

    if otcsim_config.monitoring.monitoring_provider not in otcsim.monitoring.PROVIDERS:
        logging.error('Unsupported monitoring_provider "{}" in [monitoring] section, expected one of {}.'.format(
            otcsim_config.monitoring.monitoring_provider, ', '.join(otcsim.monitoring.PROVIDERS)))
        sys.exit(1)

    for section, field in [('simulation', 'max_dimension'), ('fixpoint', 'max_iterations'),
                           ('fixpoint', 'stall_window'), ('protocols', 'repetitions'), ('runner', 'max_workers')]:
        if getattr(getattr(otcsim_config, section), field) < 1:
            logging.error('Configuration "{}" in [{}] section must be positive.'.format(field, section))
            sys.exit(1)

    if not otcsim_config.fixpoint.tolerance > 0:
        logging.error('Configuration "tolerance" in [fixpoint] section must be positive.')
        sys.exit(1)

    return otcsim_config


def apply_config(otcsim_config):
    """Pushes process-wide settings into the library."""
    otcsim.qmath.set_dimension_limit(otcsim_config.simulation.max_dimension)


def _zip_fields_with_arg_values(fields, args):
    return [(field, args[field]) for field in fields]


def _namedtuple_from_section(cls, section, data):
    values = {}
    for field in cls._fields:
        raw = data.get(field)
        try:
            values[field] = _CONVERTERS[field](raw)
        except (TypeError, ValueError):
            logging.error('Invalid value "{}" for "{}" in [{}] section.'.format(raw, field, section))
            sys.exit(1)
    return cls(**values)
