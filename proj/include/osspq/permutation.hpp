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

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace osspq {

/// Bijection of {0, …, n−1}. Printed in 1-based cycle notation.
class Permutation {
   public:
    Permutation() = default;
    /// Identity on n points.
    explicit Permutation(std::size_t n);
    /// Throws DomainError unless `images` is a bijection of {0, …, n−1}.
    explicit Permutation(std::vector<std::size_t> images);

    /// Swaps a and b (0-based).
    static Permutation transposition(std::size_t n, std::size_t a, std::size_t b);

    std::size_t size() const { return images_.size(); }
    std::size_t operator()(std::size_t x) const { return images_[x]; }
    const std::vector<std::size_t>& images() const { return images_; }

    bool is_identity() const;
    Permutation inverse() const;
    /// "(1,2)(5,6)"; the identity prints as "()".
    std::string cycle_notation() const;

    /// Function composition: (a * b)(x) = a(b(x)), i.e. b acts first.
    friend Permutation operator*(const Permutation& a, const Permutation& b);
    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

   private:
    std::vector<std::size_t> images_;
};

/// Order of the group generated by `generators` (all of degree `degree`),
/// as a decimal string. Uses Schreier–Sims with the base 0, 1, …, degree−1.
std::string generated_group_order(std::span<const Permutation> generators, std::size_t degree);

}  // namespace osspq
