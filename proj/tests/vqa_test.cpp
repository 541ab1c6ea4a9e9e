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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "osspq/circuit.hpp"
#include "osspq/errors.hpp"
#include "osspq/group.hpp"
#include "osspq/histogram.hpp"
#include "osspq/io.hpp"
#include "osspq/vqa.hpp"

namespace osspq {
namespace {

using testing_support::flatten;
constexpr double kPi = std::numbers::pi;

const OsspInstance k133(1, 3, 3);
const OsspInstance k224(2, 2, 4);
const auto kZ133 = BitString::parse("100010001");
const auto kZ224 = BitString::parse("1000010000100001");
const Objective kObj133 = Objective::linear(k133, flatten(testing_support::kWeightsOssp133));
const Objective kObj224 = Objective::linear(k224, flatten(testing_support::kWeightsOssp224));

CircuitEvaluator evaluator133(int depth) {
    return CircuitEvaluator(build_circuit(k133, depth), basis_state(k133, kZ133, Engine::Subspace),
                            PhaseSeparator(kObj133));
}

TEST(ObjectiveValue, ZeroParametersGiveTheClassicalValue) {
    auto ev = evaluator133(1);
    EXPECT_DOUBLE_EQ(objective_value(ev, ParameterVector::zeros(ev.circuit())), 8.0);
    const CircuitEvaluator ev224(build_circuit(k224, 6), basis_state(k224, kZ224, Engine::Subspace),
                                 PhaseSeparator(kObj224));
    EXPECT_DOUBLE_EQ(objective_value(ev224, ParameterVector::zeros(ev224.circuit())), 11.0);
    EXPECT_THROW(objective_value(ev, ParameterVector{{0.1}, {0.0}}), DomainError);
}

TEST(ObjectiveValue, ZeroParametersMatchEveryFeasibleStart) {
    for (const auto& z : enumerate_solutions(k224)) {
        const CircuitEvaluator ev(build_circuit(k224, 2), basis_state(k224, z, Engine::Subspace),
                                  PhaseSeparator(kObj224));
        EXPECT_DOUBLE_EQ(objective_value(ev, ParameterVector::zeros(ev.circuit())),
                         evaluate_objective(kObj224, k224, z));
    }
}

TEST(ObjectiveValue, SampledEstimateWithinThreeSigma) {
    auto ev = evaluator133(1);
    const ParameterVector p{{0.6, 1.1}, {0.4}};
    const double exact = objective_value(ev, p);
    // Standard deviation of f under the exact distribution.
    double second = 0.0;
    for (const auto& [z, prob] : distribution(ev.state(p)))
        second += prob * std::pow(kObj133.value(z.mask()), 2);
    const double sigma = std::sqrt(second - exact * exact);
    const std::uint64_t shots = 1'000'000;
    const double est = objective_value(ev, p, shots, 77);
    EXPECT_LT(std::abs(est - exact), 3 * sigma / std::sqrt(static_cast<double>(shots)));
}

TEST(TrustRegion, QuadraticBowlConvergesWithin200Evaluations) {
    const std::vector<double> centre{0.3, -1.2, 0.8};
    auto f = [&](std::span<const double> x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += (i + 1.0) * (x[i] - centre[i]) * (x[i] - centre[i]);
        return s;
    };
    const std::vector<Interval> box(3, Interval{-5.0, 5.0});
    OptimizerConfig cfg;
    cfg.max_iterations = 200;
    cfg.initial_radius = 0.5;
    cfg.final_radius = 1e-6;
    const auto r = minimize_trust_region(f, {2.0, 2.0, -2.0}, box, cfg);
    EXPECT_LE(r.evaluations, 200);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(r.x[i], centre[i], 1e-4);
    EXPECT_NEAR(r.value, 0.0, 1e-8);
    EXPECT_EQ(r.status, "converged");
}

TEST(TrustRegion, RespectsTheBox) {
    auto f = [](std::span<const double> x) { return x[0] + x[1]; };
    const std::vector<Interval> box{{0.0, 1.0}, {0.5, 2.0}};
    OptimizerConfig cfg;
    cfg.max_iterations = 300;
    const auto r = minimize_trust_region(f, {0.7, 1.5}, box, cfg);
    EXPECT_NEAR(r.x[0], 0.0, 1e-9);
    EXPECT_NEAR(r.x[1], 0.5, 1e-9);
}

TEST(TrustRegion, ZeroBudgetReturnsInitialParameters) {
    auto ev = evaluator133(3);
    OptimizerConfig cfg;
    cfg.max_iterations = 0;
    cfg.seed = 4;
    const auto r = optimize_trust_region(ev, cfg);
    EXPECT_EQ(r.best, r.initial);
    EXPECT_EQ(r.status, "budget");
    EXPECT_DOUBLE_EQ(r.best_value, objective_value(ev, r.initial));
}

TEST(TrustRegion, BudgetIsHonouredAndTraceImproves) {
    auto ev = evaluator133(3);
    OptimizerConfig cfg;
    cfg.max_iterations = 50;
    cfg.seed = 2;
    const auto r = optimize_trust_region(ev, cfg);
    EXPECT_LE(r.evaluations, 50);
    EXPECT_EQ(r.status, "budget");
    for (std::size_t k = 1; k < r.trace.size(); ++k)
        EXPECT_LT(r.trace[k].expectation, r.trace[k - 1].expectation);
    for (double b : r.best.beta) {
        EXPECT_GE(b, 0.0);
        EXPECT_LE(b, kPi / 2);
    }
}

TEST(TrustRegion, Deterministic) {
    auto ev = evaluator133(2);
    OptimizerConfig cfg;
    cfg.max_iterations = 300;
    cfg.seed = 19;
    const auto a = optimize_trust_region(ev, cfg);
    const auto b = optimize_trust_region(ev, cfg);
    EXPECT_EQ(a.best, b.best);
    EXPECT_EQ(a.best_value, b.best_value);
}

OptimizerConfig sgd_config(std::uint64_t seed) {
    OptimizerConfig cfg;
    cfg.kind = OptimizerKind::SampledGradientDescent;
    cfg.seed = seed;
    cfg.max_iterations = 5;
    cfg.gamma_box = {0.0, kPi / 2};
    cfg.gamma_init = {0.0, kPi / 2};
    return cfg;
}

TEST(Sgd, TraceIsMonotoneAndStaysInTheBox) {
    auto ev = evaluator133(1);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto r = optimize_sgd(ev, sgd_config(seed));
        ASSERT_EQ(r.trace.size(), 6u);
        EXPECT_EQ(r.evaluations, 1 + 5 * 40);
        for (std::size_t k = 1; k < r.trace.size(); ++k) {
            EXPECT_LE(r.trace[k].expectation, r.trace[k - 1].expectation);
            EXPECT_LE(r.trace[k].radius, r.trace[k - 1].radius);
        }
        for (const auto& it : r.trace)
            for (double x : it.params) {
                EXPECT_GE(x, 0.0);
                EXPECT_LE(x, kPi / 2);
            }
        EXPECT_DOUBLE_EQ(r.best_value, r.trace.back().expectation);
    }
}

TEST(Sgd, RadiusRuleShrinksWithTheRelativeDrop) {
    auto ev = evaluator133(1);
    auto cfg = sgd_config(3);
    const auto r = optimize_sgd(ev, cfg);
    for (std::size_t k = 1; k < r.trace.size(); ++k) {
        const double fi = r.trace[k - 1].expectation, fn = r.trace[k].expectation;
        const double factor = std::clamp(1.0 - 0.5 * (fi - fn) / std::abs(fi), 0.25, 1.0);
        EXPECT_NEAR(r.trace[k].radius, r.trace[k - 1].radius * factor, 1e-15);
    }
}

TEST(Sgd, DegenerateBallNeverMoves) {
    auto ev = evaluator133(1);
    auto cfg = sgd_config(8);
    cfg.sample_size = 1;
    cfg.radius = 1e-300;
    const auto r = optimize_sgd(ev, cfg);
    for (const auto& it : r.trace) EXPECT_EQ(it.params, r.initial.flatten());
}

TEST(Sgd, DeterministicAcrossRuns) {
    auto ev = evaluator133(1);
    const auto a = optimize_sgd(ev, sgd_config(31));
    const auto b = optimize_sgd(ev, sgd_config(31));
    ASSERT_EQ(a.trace.size(), b.trace.size());
    for (std::size_t k = 0; k < a.trace.size(); ++k) {
        EXPECT_EQ(a.trace[k].params, b.trace[k].params);
        EXPECT_EQ(a.trace[k].expectation, b.trace[k].expectation);
    }
}

TEST(Sgd, ValidatesConfig) {
    auto cfg = sgd_config(1);
    cfg.sample_size = 0;
    EXPECT_THROW(cfg.validate(), DomainError);
    cfg = sgd_config(1);
    cfg.radius = 0.0;
    EXPECT_THROW(cfg.validate(), DomainError);
}

void expect_reaches(const OsspInstance& inst, const Objective& obj, std::size_t max_rotations) {
    const auto sols = enumerate_solutions(inst);
    const PhaseSeparator sep(obj);
    for (const auto& src : sols) {
        const auto s0 = basis_state(inst, src, Engine::Subspace);
        for (const auto& dst : sols) {
            const auto plan = compile_reach(inst, src, dst);
            EXPECT_LE(plan.rotations, max_rotations);
            EXPECT_EQ(plan.rotations, plan.word.size());
            for (double g : plan.params.gamma) EXPECT_EQ(g, 0.0);
            std::size_t on = 0;
            for (double b : plan.params.beta) {
                EXPECT_TRUE(b == 0.0 || b == kPi / 2);
                on += b != 0.0;
            }
            EXPECT_EQ(on, plan.rotations);
            const auto out = apply_circuit(plan.circuit, plan.params, s0, sep);
            EXPECT_NEAR(fidelity(out, basis_state(inst, dst, Engine::Subspace)), 1.0, 1e-10)
                << src.to_string() << " -> " << dst.to_string();
        }
    }
}

TEST(CompileReach, ExhaustiveOnBothPresets) {
    expect_reaches(k224, kObj224, 18);
    expect_reaches(k133, kObj133, 6);
}

TEST(CompileReach, Examples) {
    const auto plan = compile_reach(k133, kZ133, BitString::parse("010001100"));
    EXPECT_EQ(recompose_job_permutation(plan.word, 3),
              Permutation::transposition(3, 0, 1) * Permutation::transposition(3, 1, 2));
    const auto same = compile_reach(k133, kZ133, kZ133);
    EXPECT_TRUE(same.word.empty());
    for (double b : same.params.beta) EXPECT_EQ(b, 0.0);
    EXPECT_THROW(compile_reach(k133, kZ133, BitString::parse("110000001")), DomainError);
    const OsspInstance nb(1, 3, 2);
    EXPECT_THROW(compile_reach(nb, BitString::parse("100100"), BitString::parse("010100")), CapabilityError);
}

ExperimentSpec spec133(int depth, OptimizerConfig cfg, std::uint64_t shots) {
    ExperimentSpec s{k133, kObj133, kZ133, depth, LayerPattern::MixersThenPhase, Engine::Subspace, cfg, shots, false};
    return s;
}

TEST(RunExperiment, OracleConsistency) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        auto cfg = sgd_config(seed);
        const auto rec = run_experiment(spec133(1, cfg, 256));
        EXPECT_DOUBLE_EQ(rec.zero_parameter_value, 8.0);
        ASSERT_TRUE(rec.best_feasible.has_value());
        EXPECT_GE(rec.best_feasible_value, rec.classical_optimum.value);
        EXPECT_EQ(rec.classical_optimum.value, 5.0);
        std::uint64_t total = 0;
        for (const auto& row : rec.histogram) total += row.count;
        EXPECT_EQ(total, 256u);
    }
}

TEST(RunExperiment, ZeroShotsRecordsTheExactDistribution) {
    auto cfg = sgd_config(2);
    const auto rec = run_experiment(spec133(1, cfg, 0));
    double total = 0.0;
    for (const auto& row : rec.histogram) {
        EXPECT_EQ(row.count, 0u);
        total += row.probability;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    const auto j = to_json(rec);
    EXPECT_EQ(j.at("histogram").at("shots"), 0);
    EXPECT_TRUE(j.at("histogram").at("rows").at(0).contains("probability"));
}

TEST(RunExperiment, DeterministicRecordApartFromTiming) {
    const auto f = load_preset("ossp133-restricted");
    auto spec = experiment_from_json(f.instance, f.objective, f.experiment);
    spec.optimizer.seed = 5;
    auto a = to_json(run_experiment(spec));
    auto b = to_json(run_experiment(spec));
    a.erase("timing");
    b.erase("timing");
    EXPECT_EQ(a.dump(), b.dump());
    // Five descent steps, each with its own histogram.
    ASSERT_EQ(a.at("iterations").size(), 6u);
    EXPECT_FALSE(a.at("iterations").at(0).contains("histogram"));
    for (std::size_t k = 1; k <= 5; ++k) EXPECT_TRUE(a.at("iterations").at(k).contains("histogram"));
}

TEST(RunExperiment, TableSchemaOnTheDepthSixPreset) {
    const auto f = load_preset("ossp224");
    auto spec = experiment_from_json(f.instance, f.objective, f.experiment);
    spec.optimizer.seed = 1;
    spec.optimizer.max_iterations = 200;
    const auto j = to_json(run_experiment(spec));
    const auto& row = j.at("histogram").at("rows").at(0);
    for (const char* key : {"bitstring", "count", "objective", "feasible", "hamming_distance"})
        EXPECT_TRUE(row.contains(key)) << key;
    EXPECT_EQ(j.at("histogram").at("shots"), 1024);
    EXPECT_EQ(j.at("best_params").at("beta").size(), 18u);
    EXPECT_EQ(j.at("best_params").at("gamma").size(), 6u);
    EXPECT_EQ(j.at("classical_optimum").at("value"), 5.0);
}

TEST(OptimizerConfigJson, RoundTrip) {
    auto cfg = sgd_config(9);
    cfg.radius = 0.25;
    cfg.gamma_init = {0.0, 0.1};
    const auto back = optimizer_config_from_json(to_json(cfg));
    EXPECT_EQ(to_json(back).dump(), to_json(cfg).dump());
    EXPECT_THROW(optimizer_config_from_json({{"kind", "nelder-mead"}}), DomainError);
    EXPECT_THROW(optimizer_config_from_json({{"sample_size", 0}}), DomainError);
}

}  // namespace
}  // namespace osspq
