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

// Variational loop: objective evaluation, the two classical optimizers,
// exact-reachability compilation and end-to-end experiment runs.

#pragma once

#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "osspq/circuit.hpp"
#include "osspq/cop.hpp"
#include "osspq/group.hpp"
#include "osspq/histogram.hpp"
#include "osspq/state.hpp"

namespace osspq {

/// Exact ⟨C⟩ for shots == 0, otherwise the mean objective over `shots`
/// sampled strings drawn with `seed`.
double objective_value(const CircuitEvaluator& evaluator, const ParameterVector& params,
                       std::uint64_t shots = 0, std::uint64_t seed = 0);

enum class OptimizerKind { TrustRegion, SampledGradientDescent };

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

struct OptimizerConfig {
    OptimizerKind kind = OptimizerKind::TrustRegion;
    std::uint64_t seed = 0;
    /// Trust region: objective evaluations. Sampled descent: iterations.
    int max_iterations = 3000;
    std::uint64_t shots = 0;  // 0: exact expectation

    // Trust region.
    double initial_radius = std::numbers::pi / 4;
    double final_radius = 1e-4;

    // Sampled gradient descent.
    std::size_t sample_size = 40;
    double radius = std::numbers::pi / 8;
    double shrink_gain = 0.5;       // κ
    double min_shrink = 0.25;       // lower clamp of the per-step radius factor
    Interval gamma_box{0.0, 2 * std::numbers::pi};  // γ search domain

    /// Initial γ are drawn uniformly from here; initial β from [0, π/2].
    Interval gamma_init{0.0, 2 * std::numbers::pi};

    /// Throws DomainError on sample_size == 0 or non-positive radii.
    void validate() const;
};

nlohmann::json to_json(const OptimizerConfig& config);
/// Missing keys keep their defaults.
OptimizerConfig optimizer_config_from_json(const nlohmann::json& j, OptimizerConfig base = {});

struct IterationRecord {
    int iteration = 0;
    std::vector<double> params;  // flattened [β..., γ...]
    double expectation = 0.0;
    double radius = 0.0;
    int evaluations = 0;         // cumulative
    std::vector<HistogramRow> histogram;  // sampled descent only
};

struct OptimizationResult {
    ParameterVector initial;
    ParameterVector best;
    double best_value = 0.0;
    std::vector<IterationRecord> trace;
    int evaluations = 0;
    std::string status;  // "converged" or "budget"
};

/// Linear-model trust-region minimization (COBYLA-style, no general
/// constraints): a simplex of n+1 points defines a linear model, the trial
/// step minimizes it within radius ρ, and ρ halves when steps stop paying
/// off. β candidates are clamped into [0, π/2] before evaluation; γ is
/// unbounded.
OptimizationResult optimize_trust_region(const CircuitEvaluator& evaluator,
                                         const OptimizerConfig& config);

/// Sampled gradient descent: each step draws `sample_size` points uniformly
/// from the ball of the current radius around the incumbent (intersected with
/// the parameter box), keeps the best of them and the incumbent, and shrinks
/// the radius by clamp(1 − κ·drop/max(|F|, ε), min_shrink, 1).
OptimizationResult optimize_sgd(const CircuitEvaluator& evaluator, const OptimizerConfig& config);

struct MinimizeResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
    std::string status;
    std::vector<IterationRecord> trace;  // one entry per improvement
};

/// The trust-region routine over a plain box; candidates are projected into
/// `box` before evaluation. `config.max_iterations` bounds evaluations.
MinimizeResult minimize_trust_region(const std::function<double(std::span<const double>)>& f,
                                     std::vector<double> x0, std::span<const Interval> box,
                                     const OptimizerConfig& config);

struct ReachPlan {
    TranspositionWord word;
    Circuit circuit;
    ParameterVector params;
    std::size_t rotations = 0;  // β slots set to π/2
};

/// Parameters on the grid {0, π/2} driving `source` to `target`: τ with
/// (id, τ)·source = target is decomposed into adjacent transpositions and
/// embedded into a depth-max(1, J(J−1)/2) circuit with γ ≡ 0.
/// Throws CapabilityError on non-busy instances and DomainError for
/// infeasible strings.
ReachPlan compile_reach(const OsspInstance& instance, const BitString& source,
                        const BitString& target);

struct ExperimentSpec {
    OsspInstance instance;
    Objective objective;
    BitString initial;
    int depth = 1;
    LayerPattern pattern = LayerPattern::MixersThenPhase;
    Engine engine = Engine::Subspace;
    OptimizerConfig optimizer;
    std::uint64_t shots = 1024;  // final histogram; 0 = exact distribution
    bool iteration_histograms = false;  // sample every accepted step after the start
};

/// Reads the "experiment" block of a preset; flags override afterwards.
ExperimentSpec experiment_from_json(const OsspInstance& instance, const Objective& objective,
                                    const nlohmann::json& experiment);

struct RunRecord {
    nlohmann::json config;
    std::uint64_t seed = 0;
    OptimizationResult optimization;
    std::uint64_t shots = 0;
    std::vector<HistogramRow> histogram;
    double zero_parameter_value = 0.0;   // objective_value at all-zero parameters
    std::optional<BitString> best_feasible;
    double best_feasible_value = 0.0;
    OptimalSet classical_optimum;
    double wall_seconds = 0.0;

    /// Fraction of the final histogram on its most frequent string.
    double mode_fraction() const;
};

RunRecord run_experiment(const ExperimentSpec& spec);

/// Deterministic content plus a "timing" sidecar holding wall-clock data.
nlohmann::json to_json(const RunRecord& record);

}  // namespace osspq
