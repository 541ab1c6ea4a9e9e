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

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "osspq/cop.hpp"
#include "osspq/state.hpp"

namespace osspq {

inline constexpr double kBetaMax = std::numbers::pi / 2;

enum class LayerKind { Mixer, Phase };

struct Layer {
    LayerKind kind = LayerKind::Mixer;
    int generator = 0;      // mixer layers: i in [1, J−1]
    std::size_t slot = 0;   // index into ParameterVector::beta or ::gamma
};

enum class LayerPattern {
    MixersThenPhase,  // per round: B_1 … B_{J−1}, C
    MixersOnly,       // per round: B_1 … B_{J−1}
};

/// Ordered product of parametrized layers, stored as written:
///
///   U = e^{iβ_1 B_1} e^{iβ_2 B_2} … e^{iγ_1 C} · e^{iβ_J B_1} … e^{iγ_2 C} · …
///
/// Slots are numbered left to right. Acting on a state, the rightmost layer
/// is applied first (see apply_circuit).
class Circuit {
   public:
    Circuit(OsspInstance instance, int depth, LayerPattern pattern, std::vector<Layer> layers,
            std::size_t beta_slots, std::size_t gamma_slots);

    const OsspInstance& instance() const { return instance_; }
    int depth() const { return depth_; }
    LayerPattern pattern() const { return pattern_; }
    const std::vector<Layer>& layers() const { return layers_; }
    std::size_t beta_slots() const { return beta_slots_; }
    std::size_t gamma_slots() const { return gamma_slots_; }
    std::size_t parameter_count() const { return beta_slots_ + gamma_slots_; }

    /// Mixer layers in the order they act on a state.
    std::vector<Layer> application_order() const;

   private:
    OsspInstance instance_;
    int depth_;
    LayerPattern pattern_;
    std::vector<Layer> layers_;
    std::size_t beta_slots_;
    std::size_t gamma_slots_;
};

/// Throws DomainError for depth < 1.
Circuit build_circuit(const OsspInstance& instance, int depth,
                      LayerPattern pattern = LayerPattern::MixersThenPhase);

struct ParameterVector {
    std::vector<double> beta;   // each in [0, π/2]
    std::vector<double> gamma;  // unrestricted

    static ParameterVector zeros(const Circuit& circuit);
    /// [β..., γ...] and back.
    std::vector<double> flatten() const;
    static ParameterVector unflatten(const Circuit& circuit, std::span<const double> x);

    friend bool operator==(const ParameterVector&, const ParameterVector&) = default;
};

/// Throws DomainError when the slot counts differ from the circuit's.
void check_parameters(const Circuit& circuit, const ParameterVector& params);

/// U(β, γ)|initial⟩. β outside [0, π/2] is clamped with a warning on stderr.
QuantumState apply_circuit(const Circuit& circuit, const ParameterVector& params,
                           const QuantumState& initial, const PhaseSeparator& separator);

/// Repeated evaluation of one circuit from one initial state, with the
/// phase-separator diagonal computed once.
class CircuitEvaluator {
   public:
    CircuitEvaluator(Circuit circuit, QuantumState initial, PhaseSeparator separator);

    const Circuit& circuit() const { return circuit_; }
    const QuantumState& initial() const { return initial_; }
    const PhaseSeparator& separator() const { return separator_; }
    std::span<const double> diagonal() const { return diagonal_; }

    QuantumState state(const ParameterVector& params) const;
    double expectation(const ParameterVector& params) const;

   private:
    Circuit circuit_;
    QuantumState initial_;
    PhaseSeparator separator_;
    std::vector<double> diagonal_;
    std::vector<MixerHamiltonian> mixers_;  // index generator − 1
};

}  // namespace osspq
