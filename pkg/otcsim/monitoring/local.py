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

import json
import os
import threading

from otcsim.monitoring.abstract import AbstractMonitoring


class LocalMonitoring(AbstractMonitoring):
    """Appends one JSON document per metric to metrics.json in the working directory."""

    metric_file = 'metrics.json'

    def __init__(self, config):
        super().__init__(config)
        self.seq_no = 0
        self._lock = threading.Lock()

    def _send(self, tags, value):
        with self._lock:
            metric = {
                'seq': self.seq_no,
                'tags': list(tags),
                'value': value,
            }
            with open(self.metric_file, 'a+') as f:
                f.write('{}\n'.format(json.dumps(metric, sort_keys=True)))
            self.seq_no += 1

    def truncate_metric_file(self):
        try:
            os.remove(self.metric_file)
        except FileNotFoundError:
            pass

    def load_metrics(self):
        with open(self.metric_file, 'r') as f:
            for line in f:
                if line.strip():
                    yield json.loads(line)
