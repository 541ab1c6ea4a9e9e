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

// Open-shop scheduling instances, their bit-string encoding, constraints and
// objectives, and exhaustive solution enumeration.
//
// Conventions used throughout the library:
//   * Coordinates (machine, time, job) are 1-based.
//   * Positions are numbered p = T·(m−1) + t, 1-based.
//   * Bits are addressed internally by a 0-based position n = J·(p−1) + (j−1);
//     coordinate_to_index() reports the 1-based index n + 1.
//   * Text form of a bit string prints bit 0 (index 1) leftmost.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace osspq {

inline constexpr std::size_t kMaxBits = 64;

struct Coordinate {
    int machine = 1;
    int time = 1;
    int job = 1;

    friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

/// Fixed-length bit string of at most 64 bits, stored as a mask where bit n of
/// the mask is the (n+1)-th character of the text form.
class BitString {
   public:
    BitString() = default;
    BitString(std::size_t length, std::uint64_t mask);

    static BitString zeros(std::size_t length) { return BitString(length, 0); }
    /// Parses a string of '0'/'1'. Throws DomainError on other characters or
    /// lengths above 64.
    static BitString parse(std::string_view text);

    std::size_t size() const { return size_; }
    std::uint64_t mask() const { return mask_; }
    bool test(std::size_t bit) const { return (mask_ >> bit) & 1U; }
    void set(std::size_t bit, bool value);
    int weight() const;
    int weight_in(std::uint64_t submask) const;
    std::string to_string() const;

    friend bool operator==(const BitString&, const BitString&) = default;
    /// Lexicographic order of the text form (for equal lengths).
    friend std::strong_ordering operator<=>(const BitString& a, const BitString& b);

   private:
    std::size_t size_ = 0;
    std::uint64_t mask_ = 0;
};

int hamming_distance(const BitString& a, const BitString& b);

enum class ConstraintKind { OneHot, AtMostOne };

struct Constraint {
    ConstraintKind kind = ConstraintKind::OneHot;
    std::vector<std::size_t> bits;  // 0-based, nonempty
};

/// True iff |z ∧ z_I| == 1 (one-hot) or <= 1 (at-most-one).
bool evaluate_constraint(const Constraint& c, const BitString& z);

class OsspInstance {
   public:
    /// Throws DomainError unless machines, time_slots, jobs >= 1 and
    /// machines·time_slots >= jobs, and CapabilityError above 64 bits.
    OsspInstance(int machines, int time_slots, int jobs);

    int machines() const { return machines_; }
    int time_slots() const { return time_slots_; }
    int jobs() const { return jobs_; }
    int positions() const { return machines_ * time_slots_; }
    std::size_t bits() const { return static_cast<std::size_t>(positions()) * jobs_; }
    /// Every position is occupied in every solution (P == J).
    bool busy() const { return positions() == jobs_; }

    /// 0-based bit of a coordinate. Throws DomainError when out of bounds.
    std::size_t bit(const Coordinate& c) const;
    /// 0-based bit of (position p, job j), both 1-based.
    std::size_t bit(int position, int job) const {
        return static_cast<std::size_t>(jobs_) * (position - 1) + (job - 1);
    }
    Coordinate coordinate(std::size_t bit) const;
    int position_of(std::size_t bit) const { return static_cast<int>(bit / jobs_) + 1; }
    int job_of(std::size_t bit) const { return static_cast<int>(bit % jobs_) + 1; }

    std::uint64_t job_block(int job) const;
    std::uint64_t position_block(int position) const;

    /// J one-hot job constraints followed by P at-most-one position constraints.
    std::vector<Constraint> constraints() const;

    /// Throws DomainError if z.size() != bits().
    void check_length(const BitString& z) const;

    friend bool operator==(const OsspInstance&, const OsspInstance&) = default;

   private:
    int machines_;
    int time_slots_;
    int jobs_;
};

/// 1-based bit index J·(T·(m−1) + (t−1)) + j.
std::size_t coordinate_to_index(const OsspInstance& instance, const Coordinate& c);
Coordinate index_to_coordinate(const OsspInstance& instance, std::size_t index);

bool is_feasible(const OsspInstance& instance, const BitString& z);

/// Number of solutions (MT)!/(MT−J)!, saturating at UINT64_MAX.
std::uint64_t solution_count(const OsspInstance& instance);

/// All solutions in lexicographic order of their text form.
/// Throws CapabilityError above 10'000'000 solutions.
std::vector<BitString> enumerate_solutions(const OsspInstance& instance);

struct LinearObjective {
    std::vector<double> weights;  // one per bit
};

/// Tour cost over cities = jobs visited at time slots; time wraps cyclically.
struct TspObjective {
    std::vector<std::vector<double>> distances;  // J x J, symmetric, >= 0
};

class Objective {
   public:
    /// Validates the weight count against the instance.
    static Objective linear(const OsspInstance& instance, std::vector<double> weights);
    /// Validates M == 1, T == J and a symmetric, non-negative J x J table.
    static Objective tsp(const OsspInstance& instance, std::vector<std::vector<double>> distances);

    bool is_linear() const { return std::holds_alternative<LinearObjective>(form_); }
    const LinearObjective& as_linear() const { return std::get<LinearObjective>(form_); }
    const TspObjective& as_tsp() const { return std::get<TspObjective>(form_); }
    std::size_t bits() const { return bits_; }
    int jobs() const { return jobs_; }

    /// f(z) for an arbitrary (not necessarily feasible) bit mask.
    double value(std::uint64_t mask) const;

   private:
    Objective() = default;
    std::variant<LinearObjective, TspObjective> form_;
    std::size_t bits_ = 0;
    int jobs_ = 0;
};

/// Throws DomainError on shape mismatch.
double evaluate_objective(const Objective& objective, const OsspInstance& instance,
                          const BitString& z);

struct OptimalSet {
    double value = 0.0;
    std::vector<BitString> solutions;  // lexicographic
};

/// Brute-force argmin over enumerate_solutions(). Values within 1e-9 of the
/// minimum count as optimal.
OptimalSet optimal_solutions(const OsspInstance& instance, const Objective& objective);

}  // namespace osspq

template <>
struct std::hash<osspq::BitString> {
    std::size_t operator()(const osspq::BitString& z) const noexcept {
        return std::hash<std::uint64_t>{}(z.mask() * 0x9E3779B97F4A7C15ULL ^ z.size());
    }
};
