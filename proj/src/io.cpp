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

#include "osspq/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "osspq/errors.hpp"

#ifndef OSSPQ_PRESET_DIR
#define OSSPQ_PRESET_DIR "presets"
#endif

namespace osspq {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError("missing field '" + path + key + "'");
    }
    return j.at(key);
}

int positive_int(const json& j, const char* key) {
    const json& v = field(j, key, "");
    if (!v.is_number_integer()) throw ParseError(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

std::vector<double> number_row(const json& row, const std::string& path) {
    if (!row.is_array()) throw ParseError("field '" + path + "' must be an array");
    std::vector<double> out;
    for (std::size_t k = 0; k < row.size(); ++k) {
        if (!row[k].is_number()) {
            throw ParseError("field '" + path + "[" + std::to_string(k) + "]' must be a number");
        }
        out.push_back(row[k].get<double>());
    }
    return out;
}

}  // namespace

InstanceFile parse_instance(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // Byte offset -> line number for the message.
        std::size_t line = 1;
        for (std::size_t k = 0; k < std::min<std::size_t>(e.byte, text.size()); ++k) {
            if (text[k] == '\n') ++line;
        }
        throw ParseError("instance file: line " + std::to_string(line) + ": " + e.what());
    }
    const OsspInstance instance(positive_int(j, "machines"), positive_int(j, "time_slots"),
                                positive_int(j, "jobs"));
    const json& obj = field(j, "objective", "");
    std::optional<Objective> objective;
    if (obj.contains("linear")) {
        const json& rows = field(obj.at("linear"), "weights", "objective.linear.");
        if (!rows.is_array() || rows.size() != static_cast<std::size_t>(instance.positions())) {
            throw ParseError("field 'objective.linear.weights' must have " +
                             std::to_string(instance.positions()) + " rows (one per machine/time)");
        }
        std::vector<double> weights;
        for (std::size_t p = 0; p < rows.size(); ++p) {
            const std::string path = "objective.linear.weights[" + std::to_string(p) + "]";
            auto row = number_row(rows[p], path);
            if (row.size() != static_cast<std::size_t>(instance.jobs())) {
                throw ParseError("field '" + path + "' must have " +
                                 std::to_string(instance.jobs()) + " entries");
            }
            weights.insert(weights.end(), row.begin(), row.end());
        }
        objective = Objective::linear(instance, std::move(weights));
    } else if (obj.contains("tsp")) {
        const json& rows = field(obj.at("tsp"), "distances", "objective.tsp.");
        if (!rows.is_array()) throw ParseError("field 'objective.tsp.distances' must be an array");
        std::vector<std::vector<double>> d;
        for (std::size_t u = 0; u < rows.size(); ++u) {
            d.push_back(number_row(rows[u], "objective.tsp.distances[" + std::to_string(u) + "]"));
        }
        objective = Objective::tsp(instance, std::move(d));
    } else {
        throw ParseError("field 'objective' must contain 'linear' or 'tsp'");
    }
    return {instance, *objective, j.value("experiment", json())};
}

InstanceFile load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read instance file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_instance(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

json instance_to_json(const OsspInstance& instance, const Objective& objective) {
    json j;
    j["machines"] = instance.machines();
    j["time_slots"] = instance.time_slots();
    j["jobs"] = instance.jobs();
    if (objective.is_linear()) {
        json rows = json::array();
        const auto& w = objective.as_linear().weights;
        for (int p = 1; p <= instance.positions(); ++p) {
            json row = json::array();
            for (int q = 1; q <= instance.jobs(); ++q) row.push_back(w[instance.bit(p, q)]);
            rows.push_back(std::move(row));
        }
        j["objective"]["linear"]["weights"] = std::move(rows);
    } else {
        j["objective"]["tsp"]["distances"] = objective.as_tsp().distances;
    }
    return j;
}

std::filesystem::path preset_directory() {
    if (const char* env = std::getenv("OSSPQ_PRESET_DIR"); env && *env) return env;
    return OSSPQ_PRESET_DIR;
}

InstanceFile load_preset(std::string_view name) {
    std::string file(name);
    for (char& c : file) {
        if (c == '-') c = '_';
    }
    const auto path = preset_directory() / (file + ".json");
    if (!std::filesystem::exists(path)) {
        throw DomainError("unknown preset '" + std::string(name) + "' (looked for " +
                          path.string() + ")");
    }
    return load_instance(path);
}

}  // namespace osspq
