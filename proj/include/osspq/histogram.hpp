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

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "osspq/cop.hpp"
#include "osspq/state.hpp"

namespace osspq {

using Histogram = std::map<BitString, std::uint64_t>;

/// Multinomial draw of `shots` measurements from |amplitude|². Deterministic in
/// `seed` (see Rng). Throws DomainError for shots == 0.
Histogram sample(const QuantumState& state, std::uint64_t shots, std::uint64_t seed);

/// Exact measurement distribution; entries below `cutoff` are dropped.
std::map<BitString, double> distribution(const QuantumState& state, double cutoff = 1e-12);

struct HistogramRow {
    BitString bits;
    std::uint64_t count = 0;  // 0 for exact distributions
    double probability = 0.0;
    double objective = 0.0;
    bool feasible = false;
    int hamming_to_mode = 0;
};

/// Rows sorted by frequency (descending), then bit string. Hamming distance is
/// measured to the first row.
std::vector<HistogramRow> annotate(const OsspInstance& instance, const Objective& objective,
                                   const Histogram& counts);
std::vector<HistogramRow> annotate(const OsspInstance& instance, const Objective& objective,
                                   const std::map<BitString, double>& probabilities);

/// {"shots": n, "rows": [{bitstring, count|probability, objective, feasible,
/// hamming_distance}, …]}; shots == 0 marks an exact distribution.
nlohmann::json histogram_to_json(const std::vector<HistogramRow>& rows, std::uint64_t shots);
std::vector<HistogramRow> histogram_from_json(const nlohmann::json& j);
std::string histogram_to_csv(const std::vector<HistogramRow>& rows, std::uint64_t shots);
std::string histogram_to_text(const std::vector<HistogramRow>& rows, std::uint64_t shots);

}  // namespace osspq
