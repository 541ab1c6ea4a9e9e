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

// Instance and preset files.
//
//   {
//     "machines": M, "time_slots": T, "jobs": J,
//     "objective": {"linear": {"weights": [[J values] per (m,t) row]}}
//                | {"tsp": {"distances": [[J values] x J]}},
//     "experiment": { … }          // optional, presets only
//   }
//
// Weight rows are ordered (m,t) = (1,1), (1,2), …, (M,T).

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "osspq/cop.hpp"

namespace osspq {

struct InstanceFile {
    OsspInstance instance;
    Objective objective;
    nlohmann::json experiment;  // null when absent
};

/// Throws ParseError with the offending field path or parser byte offset, and
/// DomainError for well-formed but inconsistent content (e.g. J > M·T).
InstanceFile parse_instance(std::string_view text);
InstanceFile load_instance(const std::filesystem::path& path);
nlohmann::json instance_to_json(const OsspInstance& instance, const Objective& objective);

/// Directory holding the shipped presets: $OSSPQ_PRESET_DIR if set, otherwise
/// the source-tree presets/ directory recorded at build time.
std::filesystem::path preset_directory();
/// Preset names map to files by replacing '-' with '_': "ossp133-restricted"
/// reads ossp133_restricted.json. Throws DomainError for unknown names.
InstanceFile load_preset(std::string_view name);

}  // namespace osspq
