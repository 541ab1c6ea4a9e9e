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

#include "osspq/permutation.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <optional>

#include "osspq/errors.hpp"

namespace osspq {

Permutation::Permutation(std::size_t n) : images_(n) {
    std::iota(images_.begin(), images_.end(), std::size_t{0});
}

Permutation::Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t x : images_) {
        if (x >= images_.size() || seen[x]) throw DomainError("not a permutation");
        seen[x] = true;
    }
}

Permutation Permutation::transposition(std::size_t n, std::size_t a, std::size_t b) {
    Permutation p(n);
    std::swap(p.images_[a], p.images_[b]);
    return p;
}

bool Permutation::is_identity() const {
    for (std::size_t x = 0; x < images_.size(); ++x) {
        if (images_[x] != x) return false;
    }
    return true;
}

Permutation Permutation::inverse() const {
    Permutation inv(images_.size());
    for (std::size_t x = 0; x < images_.size(); ++x) inv.images_[images_[x]] = x;
    return inv;
}

std::string Permutation::cycle_notation() const {
    std::string out;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t start = 0; start < images_.size(); ++start) {
        if (seen[start] || images_[start] == start) continue;
        out += '(';
        std::size_t x = start;
        bool first = true;
        while (!seen[x]) {
            seen[x] = true;
            if (!first) out += ',';
            out += std::to_string(x + 1);
            first = false;
            x = images_[x];
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) throw DomainError("composing permutations of different degree");
    Permutation out(a.size());
    for (std::size_t x = 0; x < a.size(); ++x) out.images_[x] = a.images_[b.images_[x]];
    return out;
}

namespace {

// Knuth's formulation of Schreier–Sims with the full base 0, 1, …, n−1:
// transversal_[k][j], when set, maps k to j and fixes 0, …, k−1.
class StabilizerChain {
   public:
    explicit StabilizerChain(std::size_t n)
        : n_(n), transversal_(n, std::vector<std::optional<Permutation>>(n)), strong_(n) {
        for (std::size_t k = 0; k < n; ++k) transversal_[k][k] = Permutation(n);
    }

    bool contains(Permutation g, std::size_t level) const {
        for (std::size_t k = level; k < n_; ++k) {
            const auto& t = transversal_[k][g(k)];
            if (!t) return false;
            g = t->inverse() * g;
        }
        return true;
    }

    void add(const Permutation& g, std::size_t level) {
        strong_[level].push_back(g);
        std::vector<std::size_t> known;
        for (std::size_t j = 0; j < n_; ++j) {
            if (transversal_[level][j]) known.push_back(j);
        }
        for (std::size_t j : known) extend(g * *transversal_[level][j], level);
    }

    std::string order() const {
        boost::multiprecision::cpp_int total = 1;
        for (std::size_t k = 0; k < n_; ++k) {
            std::size_t orbit = 0;
            for (const auto& t : transversal_[k]) orbit += t.has_value() ? 1 : 0;
            total *= orbit;
        }
        return total.str();
    }

   private:
    void extend(const Permutation& h, std::size_t level) {
        const std::size_t j = h(level);
        if (const auto& t = transversal_[level][j]) {
            Permutation residue = t->inverse() * h;
            if (!contains(residue, level + 1)) add(residue, level + 1);
            return;
        }
        transversal_[level][j] = h;
        for (std::size_t i = 0; i < strong_[level].size(); ++i) {
            extend(strong_[level][i] * h, level);
        }
    }

    std::size_t n_;
    std::vector<std::vector<std::optional<Permutation>>> transversal_;
    std::vector<std::vector<Permutation>> strong_;
};

}  // namespace

std::string generated_group_order(std::span<const Permutation> generators, std::size_t degree) {
    StabilizerChain chain(degree);
    for (const auto& g : generators) {
        if (g.size() != degree) throw DomainError("generator degree mismatch");
        if (!chain.contains(g, 0)) chain.add(g, 0);
    }
    return chain.order();
}

}  // namespace osspq
