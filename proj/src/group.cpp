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

#include "osspq/group.hpp"

#include <algorithm>
#include <bit>
#include <boost/multiprecision/cpp_int.hpp>
#include <future>
#include <queue>
#include <set>
#include <unordered_set>

#include "osspq/errors.hpp"

namespace osspq {

ConstraintGraph::ConstraintGraph(std::vector<std::uint64_t> adjacency)
    : adjacency_(std::move(adjacency)) {
    if (adjacency_.size() > kMaxBits) throw CapabilityError("graphs are limited to 64 vertices");
    for (std::size_t u = 0; u < adjacency_.size(); ++u) {
        if ((adjacency_[u] >> u) & 1U) throw DomainError("constraint graph has a self loop");
        for (std::size_t v = 0; v < adjacency_.size(); ++v) {
            if (adjacent(u, v) != adjacent(v, u)) throw DomainError("adjacency is not symmetric");
        }
    }
}

std::size_t ConstraintGraph::edge_count() const {
    std::size_t twice = 0;
    for (auto row : adjacency_) twice += std::popcount(row);
    return twice / 2;
}

std::vector<std::pair<std::size_t, std::size_t>> ConstraintGraph::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < adjacency_.size(); ++u) {
        for (std::size_t v = u + 1; v < adjacency_.size(); ++v) {
            if (adjacent(u, v)) out.emplace_back(u, v);
        }
    }
    return out;
}

ConstraintGraph build_constraint_graph(const OsspInstance& instance) {
    std::vector<std::uint64_t> adj(instance.bits(), 0);
    for (std::size_t n = 0; n < instance.bits(); ++n) {
        const std::uint64_t related = instance.position_block(instance.position_of(n)) |
                                      instance.job_block(instance.job_of(n));
        adj[n] = related & ~(std::uint64_t{1} << n);
    }
    return ConstraintGraph(std::move(adj));
}

bool is_independent_set(const ConstraintGraph& graph, std::span<const std::size_t> vertices) {
    std::uint64_t members = 0;
    for (std::size_t v : vertices) {
        if (v >= graph.vertex_count()) {
            throw DomainError("vertex " + std::to_string(v + 1) + " out of range");
        }
        members |= std::uint64_t{1} << v;
    }
    for (std::size_t v : vertices) {
        if (graph.neighbors(v) & members) return false;
    }
    return true;
}

bool is_automorphism(const ConstraintGraph& graph, const Permutation& perm) {
    const std::size_t n = graph.vertex_count();
    if (perm.size() != n) throw DomainError("permutation degree differs from vertex count");
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            if (graph.adjacent(u, v) != graph.adjacent(perm(u), perm(v))) return false;
        }
    }
    return true;
}

GroupElement GroupElement::identity(const OsspInstance& instance) {
    return {Permutation(instance.positions()), Permutation(instance.jobs()), false};
}

GroupElement GroupElement::of_jobs(const OsspInstance& instance, Permutation job) {
    return {Permutation(instance.positions()), std::move(job), false};
}

GroupElement GroupElement::of_positions(const OsspInstance& instance, Permutation position) {
    return {std::move(position), Permutation(instance.jobs()), false};
}

Permutation vertex_permutation(const OsspInstance& instance, const GroupElement& g) {
    const auto P = static_cast<std::size_t>(instance.positions());
    const auto J = static_cast<std::size_t>(instance.jobs());
    if (g.position.size() != P || g.job.size() != J) {
        throw DomainError("group element does not match the instance shape");
    }
    if (g.transpose && !instance.busy()) {
        throw DomainError("the position/job transposer only exists for busy instances");
    }
    std::vector<std::size_t> images(instance.bits());
    for (std::size_t p = 0; p < P; ++p) {
        for (std::size_t j = 0; j < J; ++j) {
            std::size_t np = g.position(p);
            std::size_t nj = g.job(j);
            if (g.transpose) std::swap(np, nj);
            images[J * p + j] = J * np + nj;
        }
    }
    return Permutation(std::move(images));
}

BitString apply_vertex_permutation(const Permutation& perm, const BitString& z) {
    if (perm.size() != z.size()) throw DomainError("permutation degree differs from bit count");
    std::uint64_t out = 0;
    std::uint64_t mask = z.mask();
    while (mask) {
        const int n = std::countr_zero(mask);
        out |= std::uint64_t{1} << perm(static_cast<std::size_t>(n));
        mask &= mask - 1;
    }
    return BitString(z.size(), out);
}

BitString apply_group_element(const OsspInstance& instance, const GroupElement& g,
                              const BitString& z) {
    instance.check_length(z);
    return apply_vertex_permutation(vertex_permutation(instance, g), z);
}

std::vector<GroupElement> job_generators(const OsspInstance& instance) {
    std::vector<GroupElement> out;
    for (int i = 1; i < instance.jobs(); ++i) {
        out.push_back(GroupElement::of_jobs(
            instance, Permutation::transposition(instance.jobs(), i - 1, i)));
    }
    return out;
}

std::vector<GroupElement> product_generators(const OsspInstance& instance) {
    auto out = job_generators(instance);
    for (int i = 1; i < instance.positions(); ++i) {
        out.push_back(GroupElement::of_positions(
            instance, Permutation::transposition(instance.positions(), i - 1, i)));
    }
    return out;
}

std::vector<GroupElement> group_generators(const OsspInstance& instance) {
    auto out = product_generators(instance);
    if (instance.busy() && instance.jobs() >= 2) {
        auto t = GroupElement::identity(instance);
        t.transpose = true;
        out.push_back(std::move(t));
    }
    return out;
}

std::string group_order(const OsspInstance& instance) {
    using boost::multiprecision::cpp_int;
    auto factorial = [](int n) {
        cpp_int f = 1;
        for (int k = 2; k <= n; ++k) f *= k;
        return f;
    };
    const cpp_int jobs = factorial(instance.jobs());
    if (instance.busy()) {
        return (instance.jobs() >= 2 ? cpp_int(2 * jobs * jobs) : cpp_int(1)).str();
    }
    return (factorial(instance.positions()) * jobs).str();
}

std::string generated_order(const OsspInstance& instance,
                            std::span<const GroupElement> generators) {
    std::vector<Permutation> perms;
    perms.reserve(generators.size());
    for (const auto& g : generators) perms.push_back(vertex_permutation(instance, g));
    return generated_group_order(perms, instance.bits());
}

std::vector<BitString> orbit(const OsspInstance& instance, const BitString& z,
                             std::span<const GroupElement> generators) {
    if (!is_feasible(instance, z)) {
        throw DomainError("orbit: " + z.to_string() + " is not a solution");
    }
    std::vector<Permutation> perms;
    for (const auto& g : generators) perms.push_back(vertex_permutation(instance, g));
    std::unordered_set<BitString> seen{z};
    std::queue<BitString> frontier;
    frontier.push(z);
    while (!frontier.empty()) {
        const BitString cur = frontier.front();
        frontier.pop();
        for (const auto& p : perms) {
            BitString next = apply_vertex_permutation(p, cur);
            if (seen.insert(next).second) frontier.push(next);
        }
    }
    std::vector<BitString> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

BlockSystem BlockSystem::job_blocks(const OsspInstance& instance) {
    BlockSystem s;
    for (int j = 1; j <= instance.jobs(); ++j) {
        auto& block = s.blocks.emplace_back();
        for (int p = 1; p <= instance.positions(); ++p) block.push_back(instance.bit(p, j));
    }
    return s;
}

BlockSystem BlockSystem::position_blocks(const OsspInstance& instance) {
    BlockSystem s;
    for (int p = 1; p <= instance.positions(); ++p) {
        auto& block = s.blocks.emplace_back();
        for (int j = 1; j <= instance.jobs(); ++j) block.push_back(instance.bit(p, j));
    }
    return s;
}

BlockSystem BlockSystem::singletons(const OsspInstance& instance) {
    BlockSystem s;
    for (std::size_t n = 0; n < instance.bits(); ++n) s.blocks.push_back({n});
    return s;
}

bool verify_block_system(const OsspInstance& instance, const BlockSystem& system,
                         std::span<const GroupElement> generators) {
    std::vector<std::uint64_t> masks;
    std::uint64_t covered = 0;
    for (const auto& block : system.blocks) {
        if (block.empty()) throw DomainError("block system contains an empty block");
        std::uint64_t m = 0;
        for (std::size_t n : block) {
            if (n >= instance.bits()) throw DomainError("block member out of range");
            const std::uint64_t b = std::uint64_t{1} << n;
            if ((covered | m) & b) throw DomainError("blocks overlap");
            m |= b;
        }
        covered |= m;
        masks.push_back(m);
    }
    const std::uint64_t all =
        instance.bits() == kMaxBits ? ~std::uint64_t{0} : (std::uint64_t{1} << instance.bits()) - 1;
    if (covered != all) throw DomainError("blocks do not cover every bit");

    for (const auto& g : generators) {
        const Permutation perm = vertex_permutation(instance, g);
        for (std::uint64_t m : masks) {
            const std::uint64_t image = apply_vertex_permutation(perm, BitString(instance.bits(), m)).mask();
            if (std::find(masks.begin(), masks.end(), image) == masks.end()) return false;
        }
    }
    return true;
}

TranspositionWord decompose_job_permutation(const Permutation& tau) {
    // Bubble sort the one-line form with adjacent position swaps s_k on the
    // right: τ·s_1·…·s_k = id, hence τ = s_k·…·s_1 and s_1 acts first.
    std::vector<std::size_t> line = tau.images();
    TranspositionWord word;
    for (std::size_t pass = 0; pass + 1 < line.size(); ++pass) {
        bool swapped = false;
        for (std::size_t i = 0; i + 1 < line.size() - pass; ++i) {
            if (line[i] > line[i + 1]) {
                std::swap(line[i], line[i + 1]);
                word.push_back(static_cast<int>(i) + 1);
                swapped = true;
            }
        }
        if (!swapped) break;
    }
    return word;
}

Permutation recompose_job_permutation(const TranspositionWord& word, std::size_t jobs) {
    Permutation out(jobs);
    for (int i : word) {
        if (i < 1 || static_cast<std::size_t>(i) >= jobs) {
            throw DomainError("transposition index " + std::to_string(i) + " out of range");
        }
        out = Permutation::transposition(jobs, i - 1, i) * out;
    }
    return out;
}

bool check_mixing_family(const OsspInstance& instance, std::span<const int> family) {
    std::vector<Permutation> perms;
    for (int i : family) {
        if (i < 1 || i >= instance.jobs()) {
            throw DomainError("mixer index " + std::to_string(i) + " outside [1, J-1]");
        }
        perms.push_back(vertex_permutation(
            instance, GroupElement::of_jobs(
                          instance, Permutation::transposition(instance.jobs(), i - 1, i))));
    }
    const auto solutions = enumerate_solutions(instance);
    std::unordered_set<BitString> seen{solutions.front()};
    std::queue<BitString> frontier;
    frontier.push(solutions.front());
    while (!frontier.empty()) {
        const BitString cur = frontier.front();
        frontier.pop();
        for (const auto& p : perms) {
            BitString next = apply_vertex_permutation(p, cur);
            if (seen.insert(next).second) frontier.push(next);
        }
    }
    return seen.size() == solutions.size();
}

std::vector<Permutation> group_closure(std::span<const Permutation> generators, std::size_t degree,
                                       std::size_t cap) {
    for (const auto& g : generators) {
        if (g.size() != degree) throw DomainError("generator degree mismatch");
    }
    std::set<Permutation> seen{Permutation(degree)};
    std::queue<Permutation> frontier;
    frontier.push(Permutation(degree));
    while (!frontier.empty()) {
        const Permutation g = frontier.front();
        frontier.pop();
        for (const auto& s : generators) {
            Permutation h = g * s;
            if (seen.insert(h).second) {
                if (seen.size() > cap) {
                    throw CapabilityError("group closure exceeds " + std::to_string(cap) +
                                          " elements");
                }
                frontier.push(std::move(h));
            }
        }
    }
    return {seen.begin(), seen.end()};
}

std::vector<Permutation> bruteforce_feasibility_preservers(const ConstraintGraph& graph,
                                                           std::span<const BitString> solutions) {
    const std::size_t n = graph.vertex_count();
    if (n > 10) {
        throw CapabilityError("brute-force permutation scan is capped at 10 vertices, got " +
                              std::to_string(n));
    }
    std::unordered_set<std::uint64_t> feasible;
    for (const auto& z : solutions) feasible.insert(z.mask());

    auto maps_solutions = [&](const std::vector<std::size_t>& images) {
        for (const auto& z : solutions) {
            std::uint64_t out = 0;
            for (std::size_t v = 0; v < n; ++v) {
                if (z.test(v)) out |= std::uint64_t{1} << images[v];
            }
            if (!feasible.contains(out)) return false;
        }
        return true;
    };

    // One task per image of vertex 0; each task walks the remaining (n−1)!
    // permutations in lexicographic order.
    auto scan = [&](std::size_t first) {
        std::vector<Permutation> found;
        std::vector<std::size_t> rest;
        for (std::size_t v = 0; v < n; ++v) {
            if (v != first) rest.push_back(v);
        }
        std::vector<std::size_t> images(n);
        images[0] = first;
        do {
            std::copy(rest.begin(), rest.end(), images.begin() + 1);
            if (maps_solutions(images)) found.emplace_back(images);
        } while (std::next_permutation(rest.begin(), rest.end()));
        return found;
    };

    std::vector<Permutation> out;
    if (n == 0) return {Permutation(0)};
    std::vector<std::future<std::vector<Permutation>>> tasks;
    for (std::size_t first = 0; first < n; ++first) {
        tasks.push_back(std::async(std::launch::async, scan, first));
    }
    for (auto& t : tasks) {
        auto part = t.get();
        out.insert(out.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace osspq
