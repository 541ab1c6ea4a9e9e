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

#include "osspq/circuit.hpp"

#include <algorithm>
#include <iostream>

#include "osspq/errors.hpp"

namespace osspq {

Circuit::Circuit(OsspInstance instance, int depth, LayerPattern pattern, std::vector<Layer> layers,
                 std::size_t beta_slots, std::size_t gamma_slots)
    : instance_(instance),
      depth_(depth),
      pattern_(pattern),
      layers_(std::move(layers)),
      beta_slots_(beta_slots),
      gamma_slots_(gamma_slots) {}

std::vector<Layer> Circuit::application_order() const {
    std::vector<Layer> out;
    for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
        if (it->kind == LayerKind::Mixer) out.push_back(*it);
    }
    return out;
}

Circuit build_circuit(const OsspInstance& instance, int depth, LayerPattern pattern) {
    if (depth < 1) throw DomainError("circuit depth must be >= 1");
    std::vector<Layer> layers;
    std::size_t beta = 0;
    std::size_t gamma = 0;
    for (int round = 0; round < depth; ++round) {
        for (int i = 1; i < instance.jobs(); ++i) {
            layers.push_back({LayerKind::Mixer, i, beta++});
        }
        if (pattern == LayerPattern::MixersThenPhase) {
            layers.push_back({LayerKind::Phase, 0, gamma++});
        }
    }
    return Circuit(instance, depth, pattern, std::move(layers), beta, gamma);
}

ParameterVector ParameterVector::zeros(const Circuit& circuit) {
    return {std::vector<double>(circuit.beta_slots(), 0.0),
            std::vector<double>(circuit.gamma_slots(), 0.0)};
}

std::vector<double> ParameterVector::flatten() const {
    std::vector<double> x(beta);
    x.insert(x.end(), gamma.begin(), gamma.end());
    return x;
}

ParameterVector ParameterVector::unflatten(const Circuit& circuit, std::span<const double> x) {
    if (x.size() != circuit.parameter_count()) {
        throw DomainError("expected " + std::to_string(circuit.parameter_count()) +
                          " parameters, got " + std::to_string(x.size()));
    }
    const auto split = x.begin() + static_cast<std::ptrdiff_t>(circuit.beta_slots());
    return {std::vector<double>(x.begin(), split), std::vector<double>(split, x.end())};
}

void check_parameters(const Circuit& circuit, const ParameterVector& params) {
    if (params.beta.size() != circuit.beta_slots() || params.gamma.size() != circuit.gamma_slots()) {
        throw DomainError("circuit has " + std::to_string(circuit.beta_slots()) + " beta and " +
                          std::to_string(circuit.gamma_slots()) + " gamma slots, got " +
                          std::to_string(params.beta.size()) + " and " +
                          std::to_string(params.gamma.size()));
    }
}

namespace {

void run_layers(const Circuit& circuit, const ParameterVector& params, QuantumState& state,
                std::span<const double> diagonal, std::span<const MixerHamiltonian> mixers) {
    check_parameters(circuit, params);
    bool clamped = false;
    const auto& layers = circuit.layers();
    for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
        if (it->kind == LayerKind::Phase) {
            apply_phase(state, diagonal, params.gamma[it->slot]);
            continue;
        }
        double beta = params.beta[it->slot];
        if (beta < 0.0 || beta > kBetaMax) {
            beta = std::clamp(beta, 0.0, kBetaMax);
            clamped = true;
        }
        apply_mixer(state, mixers[static_cast<std::size_t>(it->generator - 1)], beta);
    }
    if (clamped) std::clog << "warning: beta outside [0, pi/2] clamped\n";
}

std::vector<MixerHamiltonian> all_mixers(const OsspInstance& instance) {
    std::vector<MixerHamiltonian> out;
    for (int i = 1; i < instance.jobs(); ++i) {
        out.push_back(MixerHamiltonian::for_generator(instance, i));
    }
    return out;
}

}  // namespace

QuantumState apply_circuit(const Circuit& circuit, const ParameterVector& params,
                           const QuantumState& initial, const PhaseSeparator& separator) {
    if (!(initial.basis().instance() == circuit.instance())) {
        throw DomainError("initial state belongs to a different instance");
    }
    QuantumState state = initial;
    const auto diagonal = circuit.gamma_slots() ? separator.diagonal(state.basis())
                                                : std::vector<double>(state.dimension(), 0.0);
    run_layers(circuit, params, state, diagonal, all_mixers(circuit.instance()));
    return state;
}

CircuitEvaluator::CircuitEvaluator(Circuit circuit, QuantumState initial, PhaseSeparator separator)
    : circuit_(std::move(circuit)),
      initial_(std::move(initial)),
      separator_(std::move(separator)),
      diagonal_(separator_.diagonal(initial_.basis())),
      mixers_(all_mixers(circuit_.instance())) {
    if (!(initial_.basis().instance() == circuit_.instance())) {
        throw DomainError("initial state belongs to a different instance");
    }
}

QuantumState CircuitEvaluator::state(const ParameterVector& params) const {
    QuantumState s = initial_;
    run_layers(circuit_, params, s, diagonal_, mixers_);
    return s;
}

double CircuitEvaluator::expectation(const ParameterVector& params) const {
    return osspq::expectation(state(params), diagonal_);
}

}  // namespace osspq
