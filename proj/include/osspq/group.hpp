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

// Constraint graph of an OSSP instance and its feasibility-preserving group
// F' = S_P × S_J (plus the position/job transposer in the busy case).

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "osspq/cop.hpp"
#include "osspq/permutation.hpp"

namespace osspq {

class ConstraintGraph {
   public:
    explicit ConstraintGraph(std::vector<std::uint64_t> adjacency);

    std::size_t vertex_count() const { return adjacency_.size(); }
    bool adjacent(std::size_t u, std::size_t v) const { return (adjacency_[u] >> v) & 1U; }
    std::uint64_t neighbors(std::size_t u) const { return adjacency_[u]; }
    std::size_t edge_count() const;
    /// Unordered pairs (u < v), 0-based, in lexicographic order.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

   private:
    std::vector<std::uint64_t> adjacency_;
};

/// Edge between distinct bits iff they share a position or a job.
ConstraintGraph build_constraint_graph(const OsspInstance& instance);

/// Vertices are 0-based. Throws DomainError for out-of-range vertices.
bool is_independent_set(const ConstraintGraph& graph, std::span<const std::size_t> vertices);

/// Throws DomainError if the permutation degree differs from the vertex count.
bool is_automorphism(const ConstraintGraph& graph, const Permutation& perm);

/// (σ, τ) acting as (p, j) ↦ (σ(p), τ(j)); with `transpose` set, the result is
/// further mapped (p, j) ↦ (j, p), which requires a busy instance.
struct GroupElement {
    Permutation position;  // on 0-based positions
    Permutation job;       // on 0-based jobs
    bool transpose = false;

    static GroupElement identity(const OsspInstance& instance);
    static GroupElement of_jobs(const OsspInstance& instance, Permutation job);
    static GroupElement of_positions(const OsspInstance& instance, Permutation position);
};

/// Induced permutation of the bits. Throws DomainError on size mismatch or a
/// transposer on a non-busy instance.
Permutation vertex_permutation(const OsspInstance& instance, const GroupElement& g);

/// Moves bit n to bit g(n).
BitString apply_group_element(const OsspInstance& instance, const GroupElement& g,
                              const BitString& z);
BitString apply_vertex_permutation(const Permutation& perm, const BitString& z);

/// τ_1 … τ_{J−1}, τ_i swapping jobs i and i+1.
std::vector<GroupElement> job_generators(const OsspInstance& instance);
/// Generators of S_P × S_J: job generators, then adjacent position
/// transpositions σ_1 … σ_{P−1}. Job and position blocks are block systems
/// of this subgroup; in the busy case the transposer exchanges the two
/// systems, so neither is a block system of the full group.
std::vector<GroupElement> product_generators(const OsspInstance& instance);
/// Job generators, then adjacent position transpositions σ_1 … σ_{P−1}, then
/// the position/job transposer for busy instances with J >= 2.
std::vector<GroupElement> group_generators(const OsspInstance& instance);

/// Closed form: 2·(J!)² when busy (J >= 2), P!·J! otherwise. Decimal string.
std::string group_order(const OsspInstance& instance);
/// Order of ⟨generators⟩ acting on the bits, via Schreier–Sims.
std::string generated_order(const OsspInstance& instance, std::span<const GroupElement> generators);

/// Breadth-first closure of {z} under the generators, sorted.
/// Throws DomainError if z is not a solution.
std::vector<BitString> orbit(const OsspInstance& instance, const BitString& z,
                             std::span<const GroupElement> generators);

struct BlockSystem {
    std::vector<std::vector<std::size_t>> blocks;  // 0-based bits

    static BlockSystem job_blocks(const OsspInstance& instance);
    static BlockSystem position_blocks(const OsspInstance& instance);
    static BlockSystem singletons(const OsspInstance& instance);
};

/// True iff every generator maps every block onto a block of the partition.
/// Throws DomainError if `system` does not partition the bits.
bool verify_block_system(const OsspInstance& instance, const BlockSystem& system,
                         std::span<const GroupElement> generators);

/// Adjacent job transposition indices i ∈ [1, J−1] in application order:
/// the first entry acts first.
using TranspositionWord = std::vector<int>;

/// Bubble-sort factorization; length equals the inversion count of τ, so at
/// most J(J−1)/2.
TranspositionWord decompose_job_permutation(const Permutation& tau);
Permutation recompose_job_permutation(const TranspositionWord& word, std::size_t jobs);

/// Connectivity of the solution graph whose edges join z and τ_i z for each i
/// in `family`. Throws DomainError for indices outside [1, J−1].
bool check_mixing_family(const OsspInstance& instance, std::span<const int> family);

/// Elements of the group generated by `generators` on `degree` points, by
/// closure under right multiplication; sorted. Throws CapabilityError once
/// more than `cap` elements are found.
std::vector<Permutation> group_closure(std::span<const Permutation> generators, std::size_t degree,
                                       std::size_t cap = 1'000'000);

/// Every permutation of the bits mapping each solution to a solution, sorted.
/// Throws CapabilityError above 10 vertices.
std::vector<Permutation> bruteforce_feasibility_preservers(const ConstraintGraph& graph,
                                                           std::span<const BitString> solutions);

}  // namespace osspq
