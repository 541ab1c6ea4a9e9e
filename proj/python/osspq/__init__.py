# Copyright 2026 The osspq Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Open shop scheduling on qubits: enumeration, symmetry, simulation and optimization."""

import os as _os

_bundled = _os.path.join(_os.path.dirname(__file__), "presets")
if "OSSPQ_PRESET_DIR" not in _os.environ and _os.path.isdir(_bundled):
    _os.environ["OSSPQ_PRESET_DIR"] = _bundled

from ._core import (
    CapabilityError,
    DomainError,
    ParseError,
    enumerate_solutions,
    group_order,
    is_feasible,
    load,
    objective,
    optimize,
    optimum,
    probabilities,
    reach,
    solution_count,
)

__all__ = [
    "CapabilityError",
    "DomainError",
    "ParseError",
    "enumerate_solutions",
    "group_order",
    "is_feasible",
    "load",
    "objective",
    "optimize",
    "optimum",
    "probabilities",
    "reach",
    "solution_count",
]
