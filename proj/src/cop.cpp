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

#include "osspq/cop.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "osspq/errors.hpp"

namespace osspq {

BitString::BitString(std::size_t length, std::uint64_t mask) : size_(length), mask_(mask) {
    if (length > kMaxBits) {
        throw CapabilityError("bit strings are limited to 64 bits, got " + std::to_string(length));
    }
    if (length < kMaxBits && (mask >> length) != 0) {
        throw DomainError("bit mask has bits beyond length " + std::to_string(length));
    }
}

BitString BitString::parse(std::string_view text) {
    if (text.size() > kMaxBits) {
        throw CapabilityError("bit strings are limited to 64 bits, got " +
                              std::to_string(text.size()));
    }
    std::uint64_t mask = 0;
    for (std::size_t n = 0; n < text.size(); ++n) {
        if (text[n] == '1') {
            mask |= std::uint64_t{1} << n;
        } else if (text[n] != '0') {
            throw DomainError("invalid bit string '" + std::string(text) + "'");
        }
    }
    return BitString(text.size(), mask);
}

void BitString::set(std::size_t bit, bool value) {
    if (bit >= size_) throw DomainError("bit " + std::to_string(bit) + " out of range");
    const std::uint64_t b = std::uint64_t{1} << bit;
    mask_ = value ? (mask_ | b) : (mask_ & ~b);
}

int BitString::weight() const { return std::popcount(mask_); }

int BitString::weight_in(std::uint64_t submask) const { return std::popcount(mask_ & submask); }

std::string BitString::to_string() const {
    std::string s(size_, '0');
    for (std::size_t n = 0; n < size_; ++n) {
        if (test(n)) s[n] = '1';
    }
    return s;
}

std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    if (a.size_ != b.size_) return a.size_ <=> b.size_;
    const std::uint64_t diff = a.mask_ ^ b.mask_;
    if (diff == 0) return std::strong_ordering::equal;
    // First differing character decides; '1' > '0'.
    const int first = std::countr_zero(diff);
    return ((a.mask_ >> first) & 1U) ? std::strong_ordering::greater : std::strong_ordering::less;
}

int hamming_distance(const BitString& a, const BitString& b) {
    if (a.size() != b.size()) throw DomainError("hamming distance: length mismatch");
    return std::popcount(a.mask() ^ b.mask());
}

bool evaluate_constraint(const Constraint& c, const BitString& z) {
    if (c.bits.empty()) throw DomainError("constraint index set is empty");
    int weight = 0;
    for (std::size_t n : c.bits) {
        if (n >= z.size()) {
            throw DomainError("constraint index " + std::to_string(n + 1) +
                              " exceeds bit string length " + std::to_string(z.size()));
        }
        weight += z.test(n) ? 1 : 0;
    }
    return c.kind == ConstraintKind::OneHot ? weight == 1 : weight <= 1;
}

OsspInstance::OsspInstance(int machines, int time_slots, int jobs)
    : machines_(machines), time_slots_(time_slots), jobs_(jobs) {
    if (machines < 1 || time_slots < 1 || jobs < 1) {
        throw DomainError("machines, time slots and jobs must all be >= 1");
    }
    if (static_cast<long long>(machines) * time_slots < jobs) {
        throw DomainError("infeasible instance: " + std::to_string(jobs) + " jobs but only " +
                          std::to_string(static_cast<long long>(machines) * time_slots) +
                          " positions");
    }
    if (static_cast<long long>(machines) * time_slots * jobs > static_cast<long long>(kMaxBits)) {
        throw CapabilityError("instance needs more than 64 bits");
    }
}

std::size_t OsspInstance::bit(const Coordinate& c) const {
    if (c.machine < 1 || c.machine > machines_ || c.time < 1 || c.time > time_slots_ ||
        c.job < 1 || c.job > jobs_) {
        throw DomainError("coordinate (" + std::to_string(c.machine) + "," +
                          std::to_string(c.time) + "," + std::to_string(c.job) +
                          ") out of bounds");
    }
    return bit(time_slots_ * (c.machine - 1) + c.time, c.job);
}

Coordinate OsspInstance::coordinate(std::size_t bit) const {
    if (bit >= bits()) throw DomainError("bit " + std::to_string(bit) + " out of range");
    const int p0 = static_cast<int>(bit / jobs_);
    return {p0 / time_slots_ + 1, p0 % time_slots_ + 1, static_cast<int>(bit % jobs_) + 1};
}

std::uint64_t OsspInstance::job_block(int job) const {
    std::uint64_t m = 0;
    for (int p = 1; p <= positions(); ++p) m |= std::uint64_t{1} << bit(p, job);
    return m;
}

std::uint64_t OsspInstance::position_block(int position) const {
    std::uint64_t m = 0;
    for (int j = 1; j <= jobs_; ++j) m |= std::uint64_t{1} << bit(position, j);
    return m;
}

std::vector<Constraint> OsspInstance::constraints() const {
    std::vector<Constraint> out;
    out.reserve(jobs_ + positions());
    for (int j = 1; j <= jobs_; ++j) {
        Constraint c{ConstraintKind::OneHot, {}};
        for (int p = 1; p <= positions(); ++p) c.bits.push_back(bit(p, j));
        out.push_back(std::move(c));
    }
    for (int p = 1; p <= positions(); ++p) {
        Constraint c{ConstraintKind::AtMostOne, {}};
        for (int j = 1; j <= jobs_; ++j) c.bits.push_back(bit(p, j));
        out.push_back(std::move(c));
    }
    return out;
}

void OsspInstance::check_length(const BitString& z) const {
    if (z.size() != bits()) {
        throw DomainError("bit string has length " + std::to_string(z.size()) +
                          ", instance needs " + std::to_string(bits()));
    }
}

std::size_t coordinate_to_index(const OsspInstance& instance, const Coordinate& c) {
    return instance.bit(c) + 1;
}

Coordinate index_to_coordinate(const OsspInstance& instance, std::size_t index) {
    if (index < 1) throw DomainError("bit indices are 1-based");
    return instance.coordinate(index - 1);
}

bool is_feasible(const OsspInstance& instance, const BitString& z) {
    instance.check_length(z);
    for (int j = 1; j <= instance.jobs(); ++j) {
        if (z.weight_in(instance.job_block(j)) != 1) return false;
    }
    for (int p = 1; p <= instance.positions(); ++p) {
        if (z.weight_in(instance.position_block(p)) > 1) return false;
    }
    return true;
}

std::uint64_t solution_count(const OsspInstance& instance) {
    std::uint64_t count = 1;
    const std::uint64_t P = instance.positions();
    for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(instance.jobs()); ++k) {
        const std::uint64_t factor = P - k;
        if (count > std::numeric_limits<std::uint64_t>::max() / factor) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        count *= factor;
    }
    return count;
}

namespace {

void assign_jobs(const OsspInstance& inst, int job, std::uint64_t used_positions,
                 std::uint64_t mask, std::vector<BitString>& out) {
    if (job > inst.jobs()) {
        out.emplace_back(inst.bits(), mask);
        return;
    }
    for (int p = 1; p <= inst.positions(); ++p) {
        const std::uint64_t pbit = std::uint64_t{1} << (p - 1);
        if (used_positions & pbit) continue;
        assign_jobs(inst, job + 1, used_positions | pbit,
                    mask | (std::uint64_t{1} << inst.bit(p, job)), out);
    }
}

}  // namespace

std::vector<BitString> enumerate_solutions(const OsspInstance& instance) {
    constexpr std::uint64_t kCap = 10'000'000;
    const std::uint64_t count = solution_count(instance);
    if (count > kCap) {
        throw CapabilityError("instance has " + std::to_string(count) +
                              " solutions; enumeration is capped at 10^7");
    }
    std::vector<BitString> out;
    out.reserve(count);
    assign_jobs(instance, 1, 0, 0, out);
    std::sort(out.begin(), out.end());
    return out;
}

Objective Objective::linear(const OsspInstance& instance, std::vector<double> weights) {
    if (weights.size() != instance.bits()) {
        throw DomainError("linear objective needs " + std::to_string(instance.bits()) +
                          " weights, got " + std::to_string(weights.size()));
    }
    Objective o;
    o.form_ = LinearObjective{std::move(weights)};
    o.bits_ = instance.bits();
    o.jobs_ = instance.jobs();
    return o;
}

Objective Objective::tsp(const OsspInstance& instance,
                         std::vector<std::vector<double>> distances) {
    const int J = instance.jobs();
    if (instance.machines() != 1 || instance.time_slots() != J) {
        throw DomainError("tsp objective requires one machine and as many time slots as jobs");
    }
    if (distances.size() != static_cast<std::size_t>(J)) {
        throw DomainError("tsp distance table must be " + std::to_string(J) + "x" +
                          std::to_string(J));
    }
    for (const auto& row : distances) {
        if (row.size() != static_cast<std::size_t>(J)) {
            throw DomainError("tsp distance table must be square");
        }
    }
    for (int u = 0; u < J; ++u) {
        for (int v = 0; v < J; ++v) {
            if (distances[u][v] < 0) throw DomainError("tsp distances must be non-negative");
            if (distances[u][v] != distances[v][u]) {
                throw DomainError("tsp distance table must be symmetric");
            }
        }
    }
    Objective o;
    o.form_ = TspObjective{std::move(distances)};
    o.bits_ = instance.bits();
    o.jobs_ = J;
    return o;
}

double Objective::value(std::uint64_t mask) const {
    if (const auto* lin = std::get_if<LinearObjective>(&form_)) {
        double sum = 0.0;
        while (mask) {
            sum += lin->weights[std::countr_zero(mask)];
            mask &= mask - 1;
        }
        return sum;
    }
    const auto& d = std::get<TspObjective>(form_).distances;
    const int J = jobs_;
    auto z = [&](int time, int city) {
        return (mask >> (static_cast<std::size_t>(J) * time + city)) & 1U;
    };
    double sum = 0.0;
    for (int u = 0; u < J; ++u) {
        for (int v = u + 1; v < J; ++v) {
            double pair = 0.0;
            for (int t = 0; t < J; ++t) {
                const int next = (t + 1) % J;
                pair += static_cast<double>(z(t, u) * z(next, v) + z(t, v) * z(next, u));
            }
            sum += d[u][v] * pair;
        }
    }
    return sum;
}

double evaluate_objective(const Objective& objective, const OsspInstance& instance,
                          const BitString& z) {
    instance.check_length(z);
    if (objective.bits() != instance.bits() || objective.jobs() != instance.jobs()) {
        throw DomainError("objective does not match the instance shape");
    }
    return objective.value(z.mask());
}

OptimalSet optimal_solutions(const OsspInstance& instance, const Objective& objective) {
    const auto solutions = enumerate_solutions(instance);
    OptimalSet best;
    best.value = std::numeric_limits<double>::infinity();
    for (const auto& z : solutions) {
        best.value = std::min(best.value, evaluate_objective(objective, instance, z));
    }
    const double tol = 1e-9 * std::max(1.0, std::abs(best.value));
    for (const auto& z : solutions) {
        if (evaluate_objective(objective, instance, z) <= best.value + tol) {
            best.solutions.push_back(z);
        }
    }
    return best;
}

}  // namespace osspq
