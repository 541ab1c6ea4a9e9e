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

// Exact noiseless state simulation: SWAP-rotation mixers, diagonal phase
// separators and expectation values, over either the full 2^N computational
// basis or the subspace fixed by per-position-block Hamming weights.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "osspq/cop.hpp"

namespace osspq {

using Amplitude = std::complex<double>;

enum class Engine { Full, Subspace };

/// Computational basis carried by a state. Immutable and shared between
/// copies of a state.
///
/// Full: all 2^N masks, index == mask (N <= 26).
/// Subspace: masks whose weight inside each position block equals that of a
/// reference string (0 or 1 per block). Mixers and phase separators never
/// leave this set. Indices are mixed-radix: the k-th occupied position block
/// contributes digit (job − 1) with weight J^k.
class Basis {
   public:
    static std::shared_ptr<const Basis> full(const OsspInstance& instance);
    /// Throws DomainError if some position block of `reference` has weight > 1.
    static std::shared_ptr<const Basis> subspace(const OsspInstance& instance,
                                                 const BitString& reference);

    Engine engine() const { return engine_; }
    const OsspInstance& instance() const { return instance_; }
    std::size_t dimension() const { return dimension_; }
    std::uint64_t mask(std::size_t index) const {
        return engine_ == Engine::Full ? index : masks_[index];
    }
    std::optional<std::size_t> index(std::uint64_t mask) const;
    /// Occupied position blocks (1-based), subspace engine only.
    const std::vector<int>& occupied() const { return occupied_; }

    bool same_as(const Basis& other) const;

   private:
    Basis(const OsspInstance& instance, Engine engine) : instance_(instance), engine_(engine) {}

    OsspInstance instance_;
    Engine engine_;
    std::size_t dimension_ = 0;
    std::vector<int> occupied_;
    std::vector<std::uint64_t> masks_;
};

class QuantumState {
   public:
    /// Throws DomainError if the amplitude count differs from the dimension.
    QuantumState(std::shared_ptr<const Basis> basis, std::vector<Amplitude> amplitudes);

    const Basis& basis() const { return *basis_; }
    const std::shared_ptr<const Basis>& shared_basis() const { return basis_; }
    Engine engine() const { return basis_->engine(); }
    std::size_t dimension() const { return amplitudes_.size(); }

    std::span<const Amplitude> amplitudes() const { return amplitudes_; }
    std::span<Amplitude> amplitudes() { return amplitudes_; }
    /// Zero for strings outside the basis.
    Amplitude amplitude(const BitString& z) const;
    double norm() const;

   private:
    std::shared_ptr<const Basis> basis_;
    std::vector<Amplitude> amplitudes_;
};

/// |z⟩. The subspace engine builds its basis from z's position-block weights.
QuantumState basis_state(const OsspInstance& instance, const BitString& z, Engine engine);

/// |⟨a|b⟩|, matching amplitudes by bit string so the two states may use
/// different engines.
double fidelity(const QuantumState& a, const QuantumState& b);

/// e^{iβ·SWAP_ab} = cos β·I + i sin β·SWAP on bits a and b (0-based).
/// The subspace engine requires a and b in the same position block.
void apply_swap_rotation(QuantumState& state, std::size_t a, std::size_t b, double beta);

/// B_i = Σ_p SWAP of the bits (p, i) and (p, i+1) over all positions p.
struct MixerHamiltonian {
    int generator = 1;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;

    /// Throws DomainError unless 1 <= generator <= J−1.
    static MixerHamiltonian for_generator(const OsspInstance& instance, int generator);
};

/// e^{iβ B_i}; the P swap rotations commute.
void apply_mixer(QuantumState& state, const MixerHamiltonian& mixer, double beta);

/// Diagonal operator C = Σ_z f(z)|z⟩⟨z| built from an objective.
class PhaseSeparator {
   public:
    explicit PhaseSeparator(Objective objective) : objective_(std::move(objective)) {}

    const Objective& objective() const { return objective_; }
    double value(std::uint64_t mask) const { return objective_.value(mask); }
    /// f over the basis, in basis order.
    std::vector<double> diagonal(const Basis& basis) const;

   private:
    Objective objective_;
};

/// Multiplies the amplitude of |z⟩ by e^{iγ f(z)}.
void apply_phase_separator(QuantumState& state, const PhaseSeparator& separator, double gamma);
/// Same with a precomputed diagonal (basis order).
void apply_phase(QuantumState& state, std::span<const double> diagonal, double gamma);

/// e^{−iβ Σ B_i} for the whole family, by dense exponentiation on the
/// subspace. Throws DomainError on the full engine and CapabilityError above
/// dimension 4096.
void apply_simultaneous_mixer(QuantumState& state, std::span<const MixerHamiltonian> family,
                              double beta);

/// Σ_z f(z)|⟨z|ψ⟩|².
double expectation(const QuantumState& state, const PhaseSeparator& separator);
double expectation(const QuantumState& state, std::span<const double> diagonal);

/// Probability of measuring a solution of the instance.
double feasible_mass(const OsspInstance& instance, const QuantumState& state);

}  // namespace osspq
