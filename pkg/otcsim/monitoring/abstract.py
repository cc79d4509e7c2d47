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


class AbstractMonitoring(object):

    def __init__(self, config):
        self.config = config

    def send(self, tags, value):
        if len(tags) != 3:
            raise AssertionError("Run metrics need 3 tags: 'key', 'metric' and 'subcommand'")
        self._send(tags, value)

    # providers differ only in where a metric ends up
    def _send(self, tags, value):
        pass
