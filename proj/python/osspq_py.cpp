// Copyright 2026 The osspq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings. Instances are passed as a preset name or as instance JSON
// text; structured results come back as Python objects decoded from JSON.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "osspq/circuit.hpp"
#include "osspq/cop.hpp"
#include "osspq/errors.hpp"
#include "osspq/group.hpp"
#include "osspq/histogram.hpp"
#include "osspq/io.hpp"
#include "osspq/state.hpp"
#include "osspq/vqa.hpp"

namespace py = pybind11;
using nlohmann::json;
using namespace osspq;

namespace {

InstanceFile resolve(const std::string& instance) {
    const auto first = instance.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && instance[first] == '{') return parse_instance(instance);
    return load_preset(instance);
}

py::object to_python(const json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

json from_python(const py::object& o) {
    if (o.is_none()) return json::object();
    return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

void merge(json& target, const json& patch) {
    for (const auto& [key, value] : patch.items()) {
        if (value.is_object() && target.contains(key) && target[key].is_object())
            merge(target[key], value);
        else
            target[key] = value;
    }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Open shop scheduling as a constrained optimization problem on qubits";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<CapabilityError>(m, "CapabilityError", PyExc_NotImplementedError);

    m.def("solution_count", [](int machines, int timeslots, int jobs) {
        return solution_count(OsspInstance(machines, timeslots, jobs));
    });
    m.def("enumerate_solutions", [](int machines, int timeslots, int jobs) {
        std::vector<std::string> out;
        for (const auto& z : enumerate_solutions(OsspInstance(machines, timeslots, jobs)))
            out.push_back(z.to_string());
        return out;
    });
    m.def("is_feasible", [](int machines, int timeslots, int jobs, const std::string& bits) {
        return is_feasible(OsspInstance(machines, timeslots, jobs), BitString::parse(bits));
    });
    m.def("group_order", [](int machines, int timeslots, int jobs) {
        return py::int_(py::str(group_order(OsspInstance(machines, timeslots, jobs))));
    });

    m.def("load", [](const std::string& instance) {
        const auto f = resolve(instance);
        json j = instance_to_json(f.instance, f.objective);
        if (!f.experiment.is_null()) j["experiment"] = f.experiment;
        return to_python(j);
    }, py::arg("instance"));

    m.def("objective", [](const std::string& instance, const std::string& bits) {
        const auto f = resolve(instance);
        return evaluate_objective(f.objective, f.instance, BitString::parse(bits));
    }, py::arg("instance"), py::arg("bits"));

    m.def("optimum", [](const std::string& instance) {
        const auto f = resolve(instance);
        const auto best = optimal_solutions(f.instance, f.objective);
        std::vector<std::string> sols;
        for (const auto& z : best.solutions) sols.push_back(z.to_string());
        return py::make_tuple(best.value, sols);
    }, py::arg("instance"));

    m.def("reach", [](const std::string& instance, const std::string& source, const std::string& target) {
        const auto f = resolve(instance);
        const auto plan = compile_reach(f.instance, BitString::parse(source), BitString::parse(target));
        return to_python({{"word", plan.word},
                          {"depth", plan.circuit.depth()},
                          {"rotations", plan.rotations},
                          {"beta", plan.params.beta},
                          {"gamma", plan.params.gamma}});
    }, py::arg("instance"), py::arg("source"), py::arg("target"));

    m.def("probabilities", [](const std::string& instance, const std::vector<double>& beta,
                              const std::vector<double>& gamma, int depth, const std::string& initial) {
        const auto f = resolve(instance);
        const auto spec = experiment_from_json(f.instance, f.objective, f.experiment);
        const Circuit circuit = build_circuit(f.instance, depth > 0 ? depth : spec.depth, spec.pattern);
        const ParameterVector params{beta, gamma};
        check_parameters(circuit, params);
        const BitString z0 = initial.empty() ? spec.initial : BitString::parse(initial);
        const auto state = apply_circuit(circuit, params, basis_state(f.instance, z0, spec.engine),
                                         PhaseSeparator(f.objective));
        std::map<std::string, double> out;
        for (const auto& [z, p] : distribution(state)) out[z.to_string()] = p;
        return out;
    }, py::arg("instance"), py::arg("beta"), py::arg("gamma"), py::arg("depth") = 0, py::arg("initial") = "");

    m.def("optimize", [](const std::string& instance, std::uint64_t seed, const py::object& overrides) {
        const auto f = resolve(instance);
        json experiment = f.experiment.is_null() ? json::object() : f.experiment;
        merge(experiment, from_python(overrides));
        experiment["optimizer"]["seed"] = seed;
        const auto spec = experiment_from_json(f.instance, f.objective, experiment);
        RunRecord record;
        {
            py::gil_scoped_release release;
            record = run_experiment(spec);
        }
        return to_python(to_json(record));
    }, py::arg("instance"), py::arg("seed") = 0, py::arg("overrides") = py::none());
}
