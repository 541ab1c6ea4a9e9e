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
"""Smoke tests for the Python bindings."""

import json
import math

import pytest

import osspq


def test_counts_and_enumeration():
    assert osspq.solution_count(2, 2, 4) == 24
    sols = osspq.enumerate_solutions(1, 3, 3)
    assert len(sols) == 6
    assert sols == sorted(sols)
    assert all(osspq.is_feasible(1, 3, 3, z) for z in sols)
    assert not osspq.is_feasible(1, 3, 3, "110000001")


def test_group_order_is_a_python_int():
    assert osspq.group_order(2, 2, 4) == 1152
    assert osspq.group_order(4, 4, 4) == math.factorial(16) * math.factorial(4)


def test_preset_objective_and_optimum():
    assert osspq.objective("ossp133", "100010001") == 8
    value, solutions = osspq.optimum("ossp133")
    assert value == 5
    assert solutions == ["001010100"]
    data = osspq.load("ossp224")
    assert (data["machines"], data["time_slots"], data["jobs"]) == (2, 2, 4)


def test_inline_instance_json():
    text = json.dumps({"machines": 1, "time_slots": 2, "jobs": 2,
                       "objective": {"linear": {"weights": [[1, 2], [3, 1]]}}})
    assert osspq.optimum(text)[0] == 2


def test_reach_and_probabilities_agree():
    plan = osspq.reach("ossp133", "100010001", "010001100")
    assert plan["rotations"] == 2
    probs = osspq.probabilities("ossp133", plan["beta"], plan["gamma"], depth=plan["depth"],
                                initial="100010001")
    assert probs["010001100"] == pytest.approx(1.0, abs=1e-12)


def test_optimize_is_deterministic():
    overrides = {"optimizer": {"max_iterations": 3}, "shots": 256}
    a = osspq.optimize("ossp133-restricted", seed=3, overrides=overrides)
    b = osspq.optimize("ossp133-restricted", seed=3, overrides=overrides)
    a.pop("timing")
    b.pop("timing")
    assert a == b
    assert a["best_expectation"] <= a["iterations"][0]["expectation"]


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        osspq.solution_count(1, 1, 2)
    with pytest.raises(ValueError):
        osspq.objective("ossp133", "10a")
    with pytest.raises(ValueError):
        osspq.load("no-such-preset")
