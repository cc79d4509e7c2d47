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

from otcsim.monitoring.local import LocalMonitoring
from otcsim.monitoring.noop import NoopMonitoring


PROVIDER_NONE = 'None'
PROVIDER_LOCAL = 'local'

PROVIDERS = (PROVIDER_NONE, PROVIDER_LOCAL)

RUN_METRIC_KEY = 'otcsim-run'


class Monitoring(object):
    """Front for the configured metrics provider. Tags are [key, metric, subcommand]."""

    def __init__(self, config):
        self._config = config
        self._driver = self._connect_monitoring()

    def _connect_monitoring(self):
        provider = self._config.monitoring_provider
        if provider == PROVIDER_NONE:
            logging.debug('Monitoring provider is noop')
            return NoopMonitoring(self._config)
        elif provider == PROVIDER_LOCAL:
            logging.debug('Monitoring provider is local, writing to {}'.format(LocalMonitoring.metric_file))
            return LocalMonitoring(self._config)

        raise NotImplementedError('Unsupported monitoring provider {}'.format(provider))

    def send(self, tags, value):
        return self._driver.send(tags, value)

    def send_run_metric(self, metric, subcommand, value):
        return self.send([RUN_METRIC_KEY, metric, subcommand], value)
