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


class DimensionLimitError(ValueError):
    """Raised when a composite dimension would exceed the configured memory bound."""


class LayoutError(ValueError):
    """Raised when a subsystem layout, index set or permutation does not match the matrix it describes."""


class NotHermitianError(ValueError):
    pass


class NotUnitaryError(ValueError):
    pass


class InvalidStateError(ValueError):
    """Raised when a matrix, vector or ensemble fails quantum-state validation."""


class ConvergenceError(RuntimeError):

    def __init__(self, message, best_residual, iterations):
        super().__init__(message)
        self.best_residual = best_residual
        self.iterations = iterations


class ConsistencyError(RuntimeError):
    """Raised when a fixed point no longer satisfies self-consistency for the inputs it is used with."""


class CnfParseError(ValueError):

    def __init__(self, message, line_number):
        super().__init__('line {}: {}'.format(line_number, message))
        self.line_number = line_number


class FixtureError(ValueError):
    """Raised when a JSON state or observable fixture cannot be decoded."""


class RunConfigError(ValueError):
    """Raised when the parameters of a run are missing or out of range. Names the offending parameter."""

    def __init__(self, parameter, message):
        super().__init__('{}: {}'.format(parameter, message))
        self.parameter = parameter
