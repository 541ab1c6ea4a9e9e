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

#include <stdexcept>
#include <string>

namespace osspq {

/// Invalid input: malformed instance, out-of-range coordinate, length
/// mismatch, infeasible string where a solution is required.
class DomainError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// The request is well formed but exceeds a hard size cap of this build
/// (brute-force scans, dense exponentials, 64-bit bit strings).
class CapabilityError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Malformed instance/preset/record file. The message carries the field path
/// or the byte offset reported by the JSON parser.
class ParseError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace osspq
