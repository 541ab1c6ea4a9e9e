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

#include "osspq/vqa.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <thread>

#include "osspq/errors.hpp"
#include "osspq/rng.hpp"

namespace osspq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string_view kind_name(OptimizerKind k) {
    return k == OptimizerKind::TrustRegion ? "tr" : "sgd";
}

OptimizerKind parse_kind(const std::string& s) {
    if (s == "tr" || s == "trust-region") return OptimizerKind::TrustRegion;
    if (s == "sgd" || s == "sampled-gradient-descent") return OptimizerKind::SampledGradientDescent;
    throw DomainError("unknown optimizer '" + s + "' (expected tr or sgd)");
}

Interval parse_interval(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) throw DomainError("interval must be [lo, hi]");
    Interval iv{j[0].get<double>(), j[1].get<double>()};
    if (!(iv.lo <= iv.hi)) throw DomainError("interval must satisfy lo <= hi");
    return iv;
}

double project(double x, const Interval& iv) { return std::clamp(x, iv.lo, iv.hi); }

std::vector<double> random_start(const Circuit& circuit, const OptimizerConfig& config) {
    Rng rng(Rng::derive(config.seed, 0));
    std::vector<double> x;
    x.reserve(circuit.parameter_count());
    for (std::size_t i = 0; i < circuit.beta_slots(); ++i) x.push_back(rng.uniform(0.0, kBetaMax));
    for (std::size_t i = 0; i < circuit.gamma_slots(); ++i)
        x.push_back(rng.uniform(config.gamma_init.lo, config.gamma_init.hi));
    return x;
}

std::vector<Interval> parameter_box(const Circuit& circuit, Interval gamma) {
    std::vector<Interval> box(circuit.beta_slots(), Interval{0.0, kBetaMax});
    box.insert(box.end(), circuit.gamma_slots(), gamma);
    return box;
}

// Simplex state for the trust-region routine. Vertex 0 is always the best.
struct Simplex {
    std::vector<std::vector<double>> x;
    std::vector<double> f;

    Eigen::MatrixXd offsets() const {
        const std::size_t n = x[0].size();
        Eigen::MatrixXd d(n, n);
        for (std::size_t k = 1; k <= n; ++k)
            for (std::size_t i = 0; i < n; ++i) d(i, k - 1) = x[k][i] - x[0][i];
        return d;
    }

    void promote_best() {
        const auto best = std::min_element(f.begin(), f.end()) - f.begin();
        std::swap(x[0], x[best]);
        std::swap(f[0], f[best]);
    }
};

}  // namespace

void OptimizerConfig::validate() const {
    if (sample_size < 1) throw DomainError("sample size must be at least 1");
    if (!(radius > 0.0)) throw DomainError("sampling radius must be positive");
    if (!(initial_radius > 0.0) || !(final_radius > 0.0))
        throw DomainError("trust-region radii must be positive");
    if (final_radius > initial_radius)
        throw DomainError("final radius must not exceed the initial radius");
    if (!(shrink_gain >= 0.0)) throw DomainError("radius shrink gain must be non-negative");
    if (!(min_shrink > 0.0 && min_shrink <= 1.0))
        throw DomainError("minimum shrink factor must lie in (0, 1]");
    if (max_iterations < 0) throw DomainError("iteration budget must be non-negative");
    if (!(gamma_box.lo <= gamma_box.hi) || !(gamma_init.lo <= gamma_init.hi))
        throw DomainError("gamma intervals must satisfy lo <= hi");
}

nlohmann::json to_json(const OptimizerConfig& c) {
    return {
        {"kind", kind_name(c.kind)},
        {"seed", c.seed},
        {"max_iterations", c.max_iterations},
        {"shots", c.shots},
        {"initial_radius", c.initial_radius},
        {"final_radius", c.final_radius},
        {"sample_size", c.sample_size},
        {"radius", c.radius},
        {"shrink_gain", c.shrink_gain},
        {"min_shrink", c.min_shrink},
        {"gamma_box", {c.gamma_box.lo, c.gamma_box.hi}},
        {"gamma_init", {c.gamma_init.lo, c.gamma_init.hi}},
    };
}

OptimizerConfig optimizer_config_from_json(const nlohmann::json& j, OptimizerConfig c) {
    if (!j.is_object()) throw DomainError("optimizer block must be an object");
    try {
        if (j.contains("kind")) c.kind = parse_kind(j.at("kind").get<std::string>());
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("max_iterations")) c.max_iterations = j.at("max_iterations").get<int>();
        if (j.contains("shots")) c.shots = j.at("shots").get<std::uint64_t>();
        if (j.contains("initial_radius")) c.initial_radius = j.at("initial_radius").get<double>();
        if (j.contains("final_radius")) c.final_radius = j.at("final_radius").get<double>();
        if (j.contains("sample_size")) c.sample_size = j.at("sample_size").get<std::size_t>();
        if (j.contains("radius")) c.radius = j.at("radius").get<double>();
        if (j.contains("shrink_gain")) c.shrink_gain = j.at("shrink_gain").get<double>();
        if (j.contains("min_shrink")) c.min_shrink = j.at("min_shrink").get<double>();
        if (j.contains("gamma_box")) c.gamma_box = parse_interval(j.at("gamma_box"));
        if (j.contains("gamma_init")) c.gamma_init = parse_interval(j.at("gamma_init"));
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("optimizer block: ") + e.what());
    }
    c.validate();
    return c;
}

double objective_value(const CircuitEvaluator& evaluator, const ParameterVector& params,
                       std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) return evaluator.expectation(params);
    const QuantumState state = evaluator.state(params);
    const Histogram counts = sample(state, shots, seed);
    double total = 0.0;
    for (const auto& [z, n] : counts)
        total += static_cast<double>(n) * evaluator.separator().value(z.mask());
    return total / static_cast<double>(shots);
}

MinimizeResult minimize_trust_region(const std::function<double(std::span<const double>)>& f,
                                     std::vector<double> x0, std::span<const Interval> box,
                                     const OptimizerConfig& config) {
    config.validate();
    const std::size_t n = x0.size();
    if (box.size() != n) throw DomainError("box dimension does not match the start point");
    for (std::size_t i = 0; i < n; ++i) x0[i] = project(x0[i], box[i]);

    MinimizeResult out;
    const int budget = config.max_iterations;
    auto evaluate = [&](const std::vector<double>& x) {
        ++out.evaluations;
        return f(x);
    };
    auto record = [&](const std::vector<double>& x, double value, double rho) {
        out.trace.push_back({static_cast<int>(out.trace.size()), x, value, rho, out.evaluations, {}});
    };

    out.x = x0;
    if (budget == 0 || n == 0) {
        out.value = f(x0);
        out.status = n == 0 ? "converged" : "budget";
        record(out.x, out.value, config.initial_radius);
        return out;
    }

    double rho = config.initial_radius;
    Simplex s;
    s.x.push_back(x0);
    s.f.push_back(evaluate(x0));
    record(x0, s.f[0], rho);

    // Point at distance rho from `base` along `dir`, flipping the sign when
    // the box would cut the step short.
    auto step_inside = [&](const std::vector<double>& base, const Eigen::VectorXd& dir) {
        std::vector<double> plus(n), minus(n);
        for (std::size_t i = 0; i < n; ++i) {
            plus[i] = project(base[i] + rho * dir(i), box[i]);
            minus[i] = project(base[i] - rho * dir(i), box[i]);
        }
        double dp = 0.0, dm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            dp += (plus[i] - base[i]) * (plus[i] - base[i]);
            dm += (minus[i] - base[i]) * (minus[i] - base[i]);
        }
        return dp >= dm ? plus : minus;
    };

    auto rebuild = [&]() {
        s.x.resize(1);
        s.f.resize(1);
        for (std::size_t k = 0; k < n && out.evaluations < budget; ++k) {
            s.x.push_back(step_inside(s.x[0], Eigen::VectorXd::Unit(n, k)));
            s.f.push_back(evaluate(s.x.back()));
        }
    };

    auto improve = [&](const std::vector<double>& x, double value) {
        if (value < out.trace.back().expectation) record(x, value, rho);
    };

    rebuild();
    for (std::size_t k = 1; k < s.x.size(); ++k) improve(s.x[k], s.f[k]);

    while (out.evaluations < budget) {
        if (s.x.size() < n + 1) break;  // budget ran out while building
        s.promote_best();
        const Eigen::MatrixXd d = s.offsets();
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(d);
        qr.setThreshold(1e-10);
        if (qr.rank() < static_cast<Eigen::Index>(n)) {
            rebuild();
            continue;
        }

        // Geometry: every vertex within 2ρ of the best, and the simplex not
        // flattened (smallest singular value relative to ρ).
        std::size_t far = 0;
        double far_dist = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
            const double dist = d.col(static_cast<Eigen::Index>(k - 1)).norm();
            if (dist > far_dist) {
                far_dist = dist;
                far = k;
            }
        }
        const Eigen::MatrixXd dinv = qr.inverse();
        const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(d).singularValues();
        const bool flat = sv(sv.size() - 1) < 0.1 * rho;
        if (far_dist > 2.0 * rho || flat) {
            std::size_t l = far;
            if (far_dist <= 2.0 * rho) {
                // Replace the vertex whose opposite face is largest relative to
                // its height: the row of D^{-1} with the largest norm.
                double worst = -1.0;
                for (std::size_t k = 1; k <= n; ++k) {
                    const double r = dinv.row(static_cast<Eigen::Index>(k - 1)).norm();
                    if (r > worst) {
                        worst = r;
                        l = k;
                    }
                }
            }
            Eigen::VectorXd dir = dinv.row(static_cast<Eigen::Index>(l - 1)).transpose();
            dir /= dir.norm();
            s.x[l] = step_inside(s.x[0], dir);
            s.f[l] = evaluate(s.x[l]);
            improve(s.x[l], s.f[l]);
            continue;
        }

        // Linear model gradient: D^T g = Δf.
        Eigen::VectorXd df(n);
        for (std::size_t k = 1; k <= n; ++k) df(static_cast<Eigen::Index>(k - 1)) = s.f[k] - s.f[0];
        const Eigen::VectorXd g = dinv.transpose() * df;

        // Projected steepest descent: coordinates pinned at a bound with the
        // gradient pushing outward do not move.
        Eigen::VectorXd dir = -g;
        for (std::size_t i = 0; i < n; ++i) {
            const auto ii = static_cast<Eigen::Index>(i);
            if ((s.x[0][i] <= box[i].lo && dir(ii) < 0) || (s.x[0][i] >= box[i].hi && dir(ii) > 0))
                dir(ii) = 0.0;
        }
        const double gnorm = dir.norm();
        bool progress = false;
        if (gnorm > 0.0) {
            std::vector<double> trial(n);
            for (std::size_t i = 0; i < n; ++i)
                trial[i] = project(s.x[0][i] + rho * dir(static_cast<Eigen::Index>(i)) / gnorm, box[i]);
            if (trial != s.x[0]) {
                const double ft = evaluate(trial);
                improve(trial, ft);
                // Barycentric coordinates of the trial point; replacing the
                // vertex with the largest |λ_k| keeps the simplex fattest.
                Eigen::VectorXd off(n);
                for (std::size_t i = 0; i < n; ++i)
                    off(static_cast<Eigen::Index>(i)) = trial[i] - s.x[0][i];
                const Eigen::VectorXd lam = dinv * off;
                const double lam0 = 1.0 - lam.sum();
                const double worst_f = *std::max_element(s.f.begin(), s.f.end());
                if (ft < s.f[0]) {
                    std::size_t l = 0;
                    double best = std::abs(lam0);
                    for (std::size_t k = 1; k <= n; ++k) {
                        const double v = std::abs(lam(static_cast<Eigen::Index>(k - 1)));
                        if (v > best) {
                            best = v;
                            l = k;
                        }
                    }
                    s.x[l] = trial;
                    s.f[l] = ft;
                    progress = true;
                } else if (ft < worst_f) {
                    std::size_t l = 1;
                    double best = -1.0;
                    for (std::size_t k = 1; k <= n; ++k) {
                        const double v = std::abs(lam(static_cast<Eigen::Index>(k - 1)));
                        if (v > best) {
                            best = v;
                            l = k;
                        }
                    }
                    if (best > 0.1) {
                        s.x[l] = trial;
                        s.f[l] = ft;
                    }
                }
            }
        }
        if (!progress) {
            if (rho <= config.final_radius) {
                out.status = "converged";
                break;
            }
            rho = std::max(rho / 2.0, config.final_radius);
        }
    }
    if (out.status.empty()) out.status = out.evaluations >= budget ? "budget" : "converged";
    out.x = out.trace.back().params;
    out.value = out.trace.back().expectation;
    return out;
}

OptimizationResult optimize_trust_region(const CircuitEvaluator& evaluator,
                                         const OptimizerConfig& config) {
    config.validate();
    const Circuit& circuit = evaluator.circuit();
    const auto box = parameter_box(circuit, Interval{-kInf, kInf});
    const std::vector<double> x0 = random_start(circuit, config);
    std::uint64_t calls = 0;
    auto f = [&](std::span<const double> x) {
        const auto p = ParameterVector::unflatten(circuit, x);
        return objective_value(evaluator, p, config.shots, Rng::derive(config.seed, 2, calls++));
    };
    MinimizeResult m = minimize_trust_region(f, x0, box, config);
    OptimizationResult out;
    out.initial = ParameterVector::unflatten(circuit, x0);
    out.best = ParameterVector::unflatten(circuit, m.x);
    out.best_value = m.value;
    out.trace = std::move(m.trace);
    out.evaluations = m.evaluations;
    out.status = m.status;
    return out;
}

OptimizationResult optimize_sgd(const CircuitEvaluator& evaluator, const OptimizerConfig& config) {
    config.validate();
    const Circuit& circuit = evaluator.circuit();
    const auto box = parameter_box(circuit, config.gamma_box);
    const std::size_t n = box.size();

    std::vector<double> x = random_start(circuit, config);
    for (std::size_t i = 0; i < n; ++i) x[i] = project(x[i], box[i]);
    auto eval = [&](const std::vector<double>& p, std::uint64_t stream_seed) {
        return objective_value(evaluator, ParameterVector::unflatten(circuit, p), config.shots,
                               stream_seed);
    };

    OptimizationResult out;
    out.initial = ParameterVector::unflatten(circuit, x);
    double fx = eval(x, Rng::derive(config.seed, 2, 0, 0));
    out.evaluations = 1;
    double r = config.radius;
    out.trace.push_back({0, x, fx, r, out.evaluations, {}});

    const unsigned workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    for (int it = 1; it <= config.max_iterations; ++it) {
        // Candidates are generated sequentially from one stream so the set
        // does not depend on the evaluation schedule.
        Rng rng(Rng::derive(config.seed, 1, static_cast<std::uint64_t>(it)));
        std::vector<std::vector<double>> cand(config.sample_size, std::vector<double>(n));
        for (auto& c : cand) {
            for (int attempt = 0;; ++attempt) {
                double norm2 = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    // Box–Muller; 1 − u keeps the log argument positive.
                    const double u1 = 1.0 - rng.uniform();
                    const double u2 = rng.uniform();
                    c[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
                    norm2 += c[i] * c[i];
                }
                const double scale =
                    norm2 > 0.0 ? r * std::pow(rng.uniform(), 1.0 / static_cast<double>(n)) /
                                      std::sqrt(norm2)
                                : 0.0;
                bool inside = true;
                for (std::size_t i = 0; i < n; ++i) {
                    c[i] = x[i] + scale * c[i];
                    inside = inside && c[i] >= box[i].lo && c[i] <= box[i].hi;
                }
                if (inside) break;
                if (attempt == 999) {
                    for (std::size_t i = 0; i < n; ++i) c[i] = project(c[i], box[i]);
                    break;
                }
            }
        }

        std::vector<double> values(cand.size());
        std::vector<std::future<void>> jobs;
        for (unsigned w = 0; w < workers; ++w) {
            jobs.push_back(std::async(std::launch::async, [&, w] {
                for (std::size_t k = w; k < cand.size(); k += workers)
                    values[k] = eval(cand[k], Rng::derive(config.seed, 2,
                                                          static_cast<std::uint64_t>(it), k + 1));
            }));
        }
        for (auto& j : jobs) j.get();
        out.evaluations += static_cast<int>(cand.size());

        // The incumbent is candidate zero; strict comparison keeps it on ties.
        std::size_t pick = cand.size();
        double fbest = fx;
        for (std::size_t k = 0; k < cand.size(); ++k) {
            if (values[k] < fbest) {
                fbest = values[k];
                pick = k;
            }
        }
        const double drop = fx - fbest;
        const double factor = std::clamp(
            1.0 - config.shrink_gain * drop / std::max(std::abs(fx), 1e-12), config.min_shrink, 1.0);
        if (pick < cand.size()) x = cand[pick];
        fx = fbest;
        r *= factor;
        out.trace.push_back({it, x, fx, r, out.evaluations, {}});
    }
    out.best = ParameterVector::unflatten(circuit, x);
    out.best_value = fx;
    out.status = "budget";
    return out;
}

ReachPlan compile_reach(const OsspInstance& instance, const BitString& source,
                        const BitString& target) {
    if (!instance.busy())
        throw CapabilityError("compile_reach supports busy instances only (M*T == J)");
    instance.check_length(source);
    instance.check_length(target);
    if (!is_feasible(instance, source)) throw DomainError("source is not a solution");
    if (!is_feasible(instance, target)) throw DomainError("target is not a solution");

    const std::size_t jobs = static_cast<std::size_t>(instance.jobs());
    std::vector<std::size_t> job_at_source(jobs), job_at_target(jobs);
    for (std::size_t bit = 0; bit < instance.bits(); ++bit) {
        const auto p = static_cast<std::size_t>(instance.position_of(bit) - 1);
        const auto j = static_cast<std::size_t>(instance.job_of(bit) - 1);
        if (source.test(bit)) job_at_source[p] = j;
        if (target.test(bit)) job_at_target[p] = j;
    }
    // τ(job_at_source[p]) = job_at_target[p] for every position p.
    std::vector<std::size_t> images(jobs);
    for (std::size_t p = 0; p < jobs; ++p) images[job_at_source[p]] = job_at_target[p];
    const Permutation tau(images);

    TranspositionWord word = decompose_job_permutation(tau);
    const int depth = std::max<int>(1, static_cast<int>(jobs * (jobs - 1) / 2));
    Circuit circuit = build_circuit(instance, depth, LayerPattern::MixersThenPhase);
    ParameterVector params = ParameterVector::zeros(circuit);

    std::size_t next = 0;
    for (const Layer& layer : circuit.application_order()) {
        if (next == word.size()) break;
        if (layer.kind == LayerKind::Mixer && layer.generator == word[next]) {
            params.beta[layer.slot] = kBetaMax;
            ++next;
        }
    }
    if (next != word.size()) throw DomainError("transposition word does not fit the circuit");
    return ReachPlan{std::move(word), std::move(circuit), std::move(params), next};
}

ExperimentSpec experiment_from_json(const OsspInstance& instance, const Objective& objective,
                                    const nlohmann::json& e) {
    ExperimentSpec spec{instance, objective, BitString::zeros(instance.bits()), 1,
                        LayerPattern::MixersThenPhase, Engine::Subspace, {}, 1024, false};
    if (e.is_null()) return spec;
    if (!e.is_object()) throw DomainError("experiment block must be an object");
    try {
        if (e.contains("initial")) spec.initial = BitString::parse(e.at("initial").get<std::string>());
        instance.check_length(spec.initial);
        if (e.contains("depth")) spec.depth = e.at("depth").get<int>();
        if (e.contains("pattern")) {
            const auto p = e.at("pattern").get<std::string>();
            if (p == "mixers_then_phase") spec.pattern = LayerPattern::MixersThenPhase;
            else if (p == "mixers_only") spec.pattern = LayerPattern::MixersOnly;
            else throw DomainError("unknown layer pattern '" + p + "'");
        }
        if (e.contains("engine")) {
            const auto s = e.at("engine").get<std::string>();
            if (s == "full") spec.engine = Engine::Full;
            else if (s == "subspace") spec.engine = Engine::Subspace;
            else throw DomainError("unknown engine '" + s + "'");
        }
        if (e.contains("shots")) spec.shots = e.at("shots").get<std::uint64_t>();
        if (e.contains("iteration_histograms"))
            spec.iteration_histograms = e.at("iteration_histograms").get<bool>();
        if (e.contains("optimizer")) spec.optimizer = optimizer_config_from_json(e.at("optimizer"));
    } catch (const nlohmann::json::exception& ex) {
        throw DomainError(std::string("experiment block: ") + ex.what());
    }
    return spec;
}

double RunRecord::mode_fraction() const {
    if (histogram.empty()) return 0.0;
    return histogram.front().probability;
}

RunRecord run_experiment(const ExperimentSpec& spec) {
    const auto start = std::chrono::steady_clock::now();
    spec.optimizer.validate();
    spec.instance.check_length(spec.initial);

    Circuit circuit = build_circuit(spec.instance, spec.depth, spec.pattern);
    CircuitEvaluator evaluator(circuit, basis_state(spec.instance, spec.initial, spec.engine),
                               PhaseSeparator(spec.objective));

    RunRecord rec;
    rec.seed = spec.optimizer.seed;
    rec.shots = spec.shots;
    rec.config = {
        {"instance", {{"machines", spec.instance.machines()},
                      {"time_slots", spec.instance.time_slots()},
                      {"jobs", spec.instance.jobs()}}},
        {"initial", spec.initial.to_string()},
        {"depth", spec.depth},
        {"pattern", spec.pattern == LayerPattern::MixersThenPhase ? "mixers_then_phase"
                                                                  : "mixers_only"},
        {"engine", spec.engine == Engine::Full ? "full" : "subspace"},
        {"shots", spec.shots},
        {"optimizer", to_json(spec.optimizer)},
    };
    rec.zero_parameter_value = objective_value(evaluator, ParameterVector::zeros(circuit));

    rec.optimization = spec.optimizer.kind == OptimizerKind::TrustRegion
                           ? optimize_trust_region(evaluator, spec.optimizer)
                           : optimize_sgd(evaluator, spec.optimizer);

    auto rows_for = [&](const std::vector<double>& flat, std::uint64_t seed) {
        const QuantumState state =
            evaluator.state(ParameterVector::unflatten(circuit, flat));
        if (spec.shots == 0) return annotate(spec.instance, spec.objective, distribution(state));
        return annotate(spec.instance, spec.objective, sample(state, spec.shots, seed));
    };
    if (spec.iteration_histograms) {
        // Iteration 0 is the random start, not a descent step.
        for (auto& it : rec.optimization.trace)
            if (it.iteration > 0)
                it.histogram = rows_for(
                it.params, Rng::derive(spec.optimizer.seed, 4, static_cast<std::uint64_t>(it.iteration)));
    }
    rec.histogram = rows_for(rec.optimization.best.flatten(), Rng::derive(spec.optimizer.seed, 3));

    for (const HistogramRow& row : rec.histogram) {
        if (row.feasible && (!rec.best_feasible || row.objective < rec.best_feasible_value)) {
            rec.best_feasible = row.bits;
            rec.best_feasible_value = row.objective;
        }
    }
    rec.classical_optimum = optimal_solutions(spec.instance, spec.objective);
    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

namespace {

nlohmann::json params_json(const std::vector<double>& flat, std::size_t beta_slots) {
    const auto split = flat.begin() + static_cast<std::ptrdiff_t>(beta_slots);
    return {{"beta", std::vector<double>(flat.begin(), split)},
            {"gamma", std::vector<double>(split, flat.end())}};
}

nlohmann::json params_json(const ParameterVector& p) {
    return {{"beta", p.beta}, {"gamma", p.gamma}};
}

}  // namespace

nlohmann::json to_json(const RunRecord& rec) {
    const auto& opt = rec.optimization;
    const std::size_t beta_slots = opt.best.beta.size();
    nlohmann::json iterations = nlohmann::json::array();
    for (const auto& it : opt.trace) {
        nlohmann::json j = {{"iteration", it.iteration},
                            {"accepted_params", params_json(it.params, beta_slots)},
                            {"expectation", it.expectation},
                            {"radius", it.radius},
                            {"evaluations", it.evaluations}};
        if (!it.histogram.empty()) j["histogram"] = histogram_to_json(it.histogram, rec.shots);
        iterations.push_back(std::move(j));
    }
    nlohmann::json optimum_solutions = nlohmann::json::array();
    for (const auto& z : rec.classical_optimum.solutions) optimum_solutions.push_back(z.to_string());

    nlohmann::json best_feasible = nullptr;
    if (rec.best_feasible)
        best_feasible = {{"bitstring", rec.best_feasible->to_string()},
                         {"objective", rec.best_feasible_value}};

    return {
        {"config", rec.config},
        {"seeds", {{"run", rec.seed}}},
        {"status", opt.status},
        {"evaluations", opt.evaluations},
        {"zero_parameter_value", rec.zero_parameter_value},
        {"initial_params", params_json(opt.initial)},
        {"best_params", params_json(opt.best)},
        // Both optimizers end on their incumbent, so final and best coincide.
        {"final_params", params_json(opt.best)},
        {"best_expectation", opt.best_value},
        {"iterations", std::move(iterations)},
        {"histogram", histogram_to_json(rec.histogram, rec.shots)},
        {"mode_fraction", rec.mode_fraction()},
        {"best_feasible", std::move(best_feasible)},
        {"classical_optimum",
         {{"value", rec.classical_optimum.value}, {"solutions", std::move(optimum_solutions)}}},
        {"timing", {{"wall_seconds", rec.wall_seconds}}},
    };
}

}  // namespace osspq
