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

import csv
import io
import json
import logging
import pathlib
import sys


REPORT_FORMATS = ('json', 'csv')
VOLATILE_FIELDS = ('generated_at',)


def render_json(report):
    return json.dumps(report, sort_keys=True, indent=2) + '\n'


def render_csv(report):
    """Aggregates and theory values only, one row per value."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(['section', 'key', 'value'])
    for section in ('aggregate', 'theory'):
        for key in sorted(report[section]):
            value = report[section][key]
            writer.writerow([section, key, json.dumps(value) if isinstance(value, (list, dict)) else value])
    return buffer.getvalue()


def render(report, fmt):
    if fmt == 'csv':
        return render_csv(report)
    return render_json(report)


def write_report(report, fmt, out=None):
    text = render(report, fmt)
    if out is None:
        sys.stdout.write(text)
        return
    path = pathlib.Path(out)
    path.write_text(text)
    logging.info('Report written to {}'.format(path))


def without_volatile_fields(report):
    """Copy of a report without the fields that differ between identical runs."""
    stripped = dict(report)
    stripped['provenance'] = {key: value for key, value in report['provenance'].items()
                              if key not in VOLATILE_FIELDS}
    return stripped
