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

#include "osspq/histogram.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <sstream>

#include "osspq/errors.hpp"
#include "osspq/rng.hpp"

namespace osspq {

Histogram sample(const QuantumState& state, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) throw DomainError("sampling needs at least one shot");
    const auto amps = state.amplitudes();
    std::vector<double> cdf(amps.size());
    double total = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        total += std::norm(amps[i]);
        cdf[i] = total;
    }
    if (total <= 0.0) throw DomainError("cannot sample from a zero state");
    Rng rng(seed);
    std::vector<std::uint64_t> counts(amps.size(), 0);
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform() * total;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) it = std::prev(cdf.end());
        ++counts[static_cast<std::size_t>(it - cdf.begin())];
    }
    Histogram out;
    const auto n = state.basis().instance().bits();
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i]) out.emplace(BitString(n, state.basis().mask(i)), counts[i]);
    }
    return out;
}

std::map<BitString, double> distribution(const QuantumState& state, double cutoff) {
    std::map<BitString, double> out;
    const auto n = state.basis().instance().bits();
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        const double p = std::norm(state.amplitudes()[i]);
        if (p > cutoff) out.emplace(BitString(n, state.basis().mask(i)), p);
    }
    return out;
}

namespace {

std::vector<HistogramRow> finish(const OsspInstance& instance, const Objective& objective,
                                 std::vector<HistogramRow> rows) {
    std::sort(rows.begin(), rows.end(), [](const HistogramRow& a, const HistogramRow& b) {
        if (a.probability != b.probability) return a.probability > b.probability;
        return a.bits < b.bits;
    });
    for (auto& r : rows) {
        r.objective = evaluate_objective(objective, instance, r.bits);
        r.feasible = is_feasible(instance, r.bits);
        r.hamming_to_mode = hamming_distance(r.bits, rows.front().bits);
    }
    return rows;
}

}  // namespace

std::vector<HistogramRow> annotate(const OsspInstance& instance, const Objective& objective,
                                   const Histogram& counts) {
    std::uint64_t shots = 0;
    for (const auto& [z, c] : counts) shots += c;
    std::vector<HistogramRow> rows;
    for (const auto& [z, c] : counts) {
        rows.push_back({z, c, static_cast<double>(c) / static_cast<double>(shots)});
    }
    if (rows.empty()) return rows;
    return finish(instance, objective, std::move(rows));
}

std::vector<HistogramRow> annotate(const OsspInstance& instance, const Objective& objective,
                                   const std::map<BitString, double>& probabilities) {
    std::vector<HistogramRow> rows;
    for (const auto& [z, p] : probabilities) rows.push_back({z, 0, p});
    if (rows.empty()) return rows;
    return finish(instance, objective, std::move(rows));
}

nlohmann::json histogram_to_json(const std::vector<HistogramRow>& rows, std::uint64_t shots) {
    nlohmann::json out;
    out["shots"] = shots;
    auto& list = out["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json row;
        row["bitstring"] = r.bits.to_string();
        if (shots > 0) {
            row["count"] = r.count;
        } else {
            row["probability"] = r.probability;
        }
        row["objective"] = r.objective;
        row["feasible"] = r.feasible;
        row["hamming_distance"] = r.hamming_to_mode;
        list.push_back(std::move(row));
    }
    return out;
}

std::vector<HistogramRow> histogram_from_json(const nlohmann::json& j) {
    std::vector<HistogramRow> rows;
    try {
        const auto shots = j.at("shots").get<std::uint64_t>();
        for (const auto& row : j.at("rows")) {
            HistogramRow r;
            r.bits = BitString::parse(row.at("bitstring").get<std::string>());
            if (shots > 0) {
                r.count = row.at("count").get<std::uint64_t>();
                r.probability = static_cast<double>(r.count) / static_cast<double>(shots);
            } else {
                r.probability = row.at("probability").get<double>();
            }
            r.objective = row.at("objective").get<double>();
            r.feasible = row.at("feasible").get<bool>();
            r.hamming_to_mode = row.at("hamming_distance").get<int>();
            rows.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("histogram: ") + e.what());
    }
    return rows;
}

std::string histogram_to_csv(const std::vector<HistogramRow>& rows, std::uint64_t shots) {
    std::ostringstream out;
    out << "bitstring," << (shots > 0 ? "count" : "probability")
        << ",objective,feasible,hamming_distance\n";
    for (const auto& r : rows) {
        out << r.bits.to_string() << ',';
        if (shots > 0) {
            out << r.count;
        } else {
            out << fmt::format("{:.12g}", r.probability);
        }
        out << ',' << fmt::format("{:g}", r.objective) << ',' << (r.feasible ? "true" : "false")
            << ',' << r.hamming_to_mode << '\n';
    }
    return out.str();
}

std::string histogram_to_text(const std::vector<HistogramRow>& rows, std::uint64_t shots) {
    std::size_t width = 9;
    for (const auto& r : rows) width = std::max(width, r.bits.size());
    std::string out = fmt::format("{:<{}}  {:>11}  {:>9}  {:>8}  {:>7}\n", "bitstring", width,
                                  shots > 0 ? "count" : "probability", "objective", "feasible",
                                  "hamming");
    for (const auto& r : rows) {
        const std::string freq =
            shots > 0 ? std::to_string(r.count) : fmt::format("{:.6f}", r.probability);
        out += fmt::format("{:<{}}  {:>11}  {:>9g}  {:>8}  {:>7}\n", r.bits.to_string(), width,
                           freq, r.objective, r.feasible ? "true" : "false", r.hamming_to_mode);
    }
    return out;
}

}  // namespace osspq
