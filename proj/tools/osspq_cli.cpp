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

// osspq command-line driver.
//
// Exit codes: 0 success, 2 invalid input, 3 verification mismatch,
// 4 capability limit exceeded.

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "osspq/circuit.hpp"
#include "osspq/cop.hpp"
#include "osspq/errors.hpp"
#include "osspq/group.hpp"
#include "osspq/histogram.hpp"
#include "osspq/io.hpp"
#include "osspq/state.hpp"
#include "osspq/vqa.hpp"

namespace {

using namespace osspq;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kInvalid = 2;
constexpr int kMismatch = 3;
constexpr int kCapability = 4;

struct Options {
    std::string instance;
    std::string preset;
    std::string out;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> shots;
    std::optional<std::string> engine;
    std::optional<int> depth;
    std::optional<std::string> optimizer;
    std::optional<std::size_t> sgd_samples;
    std::optional<double> sgd_radius;
    std::optional<int> iterations;
    std::optional<std::string> initial;
    std::string source;
    std::string target;
    std::string params;
    std::vector<double> beta;
    std::vector<double> gamma;
    std::string in;
};

InstanceFile load_input(const Options& o) {
    if (!o.instance.empty() && !o.preset.empty())
        throw DomainError("--instance and --preset are mutually exclusive");
    if (!o.preset.empty()) return load_preset(o.preset);
    if (!o.instance.empty()) return load_instance(o.instance);
    throw DomainError("one of --instance or --preset is required");
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw DomainError("cannot write " + o.out);
    f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

Engine parse_engine(const std::string& s) {
    if (s == "full") return Engine::Full;
    if (s == "subspace") return Engine::Subspace;
    throw DomainError("unknown engine '" + s + "'");
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("OSSPQ_SEED")) {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(env, &used);
            if (used == std::string_view(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw DomainError(std::string("OSSPQ_SEED is not an unsigned integer: ") + env);
    }
    return 0;
}

json instance_json(const OsspInstance& inst) {
    return {{"machines", inst.machines()}, {"time_slots", inst.time_slots()}, {"jobs", inst.jobs()}};
}

// --- enumerate --------------------------------------------------------------

int cmd_enumerate(const Options& o) {
    const InstanceFile f = load_input(o);
    struct Row {
        BitString z;
        double value;
    };
    std::vector<Row> rows;
    for (const auto& z : enumerate_solutions(f.instance))
        rows.push_back({z, evaluate_objective(f.objective, f.instance, z)});
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.value < b.value; });
    const double best = rows.empty() ? 0.0 : rows.front().value;
    auto optimal = [&](const Row& r) { return std::abs(r.value - best) <= 1e-9; };

    std::string text;
    if (o.format == "json") {
        json j = {{"instance", instance_json(f.instance)},
                  {"solution_count", rows.size()},
                  {"optimal_value", best}};
        json arr = json::array();
        for (const auto& r : rows)
            arr.push_back({{"bitstring", r.z.to_string()}, {"value", r.value}, {"optimal", optimal(r)}});
        j["rows"] = std::move(arr);
        text = dump(j);
    } else if (o.format == "csv") {
        text = "bitstring,value,optimal\n";
        for (const auto& r : rows)
            text += fmt::format("{},{},{}\n", r.z.to_string(), r.value, optimal(r) ? 1 : 0);
    } else {
        text = fmt::format("OSSP({},{},{}): {} solutions, optimum {}\n", f.instance.machines(),
                           f.instance.time_slots(), f.instance.jobs(), rows.size(), best);
        for (const auto& r : rows)
            text += fmt::format("{}  {:>8g}{}\n", r.z.to_string(), r.value, optimal(r) ? "  *" : "");
    }
    emit(o, text);
    return kOk;
}

// --- graph ------------------------------------------------------------------

int cmd_graph(const Options& o) {
    const InstanceFile f = load_input(o);
    const ConstraintGraph g = build_constraint_graph(f.instance);
    const auto edges = g.edges();
    std::string text;
    if (o.format == "json") {
        json arr = json::array();
        for (const auto& [u, v] : edges) arr.push_back({u + 1, v + 1});
        text = dump({{"instance", instance_json(f.instance)},
                     {"vertices", g.vertex_count()},
                     {"edge_count", edges.size()},
                     {"edges", std::move(arr)}});
    } else if (o.format == "csv") {
        text = "u,v\n";
        for (const auto& [u, v] : edges) text += fmt::format("{},{}\n", u + 1, v + 1);
    } else {
        text = fmt::format("{} vertices, {} edges (1-based bit indices)\n", g.vertex_count(),
                           edges.size());
        for (const auto& [u, v] : edges) text += fmt::format("{} -- {}\n", u + 1, v + 1);
    }
    emit(o, text);
    return kOk;
}

// --- group-check ------------------------------------------------------------

int cmd_group_check(const Options& o) {
    const InstanceFile f = load_input(o);
    const OsspInstance& inst = f.instance;
    const auto generators = group_generators(inst);
    std::vector<Permutation> perms;
    json gens = json::array();
    for (const auto& g : generators) {
        perms.push_back(vertex_permutation(inst, g));
        gens.push_back(perms.back().cycle_notation());
    }

    const std::string claimed = group_order(inst);
    const std::string generated = generated_order(inst, generators);
    const auto solutions = enumerate_solutions(inst);
    const bool transitive = !solutions.empty() && orbit(inst, solutions.front(), generators) == solutions;
    // Blocks are checked against S_P × S_J; the busy-case transposer swaps
    // the two systems instead of preserving either.
    const auto product = product_generators(inst);
    const bool job_blocks = verify_block_system(inst, BlockSystem::job_blocks(inst), product);
    const bool position_blocks =
        verify_block_system(inst, BlockSystem::position_blocks(inst), product);
    bool transposer_swaps = true;
    if (generators.size() > product.size()) {
        const Permutation t = vertex_permutation(inst, generators.back());
        for (const auto& block : BlockSystem::job_blocks(inst).blocks) {
            std::vector<std::size_t> image;
            for (std::size_t v : block) image.push_back(t(v));
            std::sort(image.begin(), image.end());
            const auto pos = BlockSystem::position_blocks(inst).blocks;
            transposer_swaps = transposer_swaps && std::find(pos.begin(), pos.end(), image) != pos.end();
        }
    }
    bool automorphisms = true;
    const ConstraintGraph graph = build_constraint_graph(inst);
    for (const auto& p : perms) automorphisms = automorphisms && is_automorphism(graph, p);

    json report = {{"instance", instance_json(inst)},
                   {"generators", gens},
                   {"claimed_order", claimed},
                   {"generated_order", generated},
                   {"order_match", claimed == generated},
                   {"generators_are_automorphisms", automorphisms},
                   {"transitive", transitive},
                   {"job_blocks", job_blocks},
                   {"position_blocks", position_blocks}};
    if (generators.size() > product.size()) report["transposer_swaps_blocks"] = transposer_swaps;
    bool ok = claimed == generated && transitive && job_blocks && position_blocks &&
              automorphisms && transposer_swaps;

    std::string notice;
    if (inst.bits() <= 10) {
        const auto brute = bruteforce_feasibility_preservers(graph, solutions);
        const auto closure = group_closure(perms, inst.bits());
        const bool match = brute == closure;
        report["bruteforce"] = {{"checked", true},
                                {"preservers", brute.size()},
                                {"match", match}};
        ok = ok && match;
    } else {
        report["bruteforce"] = {{"checked", false}};
        notice = fmt::format("notice: brute-force scan skipped ({} bits exceeds the 10-bit cap)\n",
                             inst.bits());
    }
    report["ok"] = ok;

    if (!notice.empty()) std::cerr << notice;
    if (o.format == "json") {
        emit(o, dump(report));
    } else {
        auto yn = [](bool b) { return b ? "yes" : "no"; };
        std::string text = fmt::format("OSSP({},{},{})\n", inst.machines(), inst.time_slots(), inst.jobs());
        text += "generators:\n";
        for (const auto& g : gens) text += "  " + g.get<std::string>() + "\n";
        text += fmt::format("order: claimed {} generated {} match: {}\n", claimed, generated,
                            yn(claimed == generated));
        text += fmt::format("generators are automorphisms: {}\n", yn(automorphisms));
        text += fmt::format("transitive: {}\n", yn(transitive));
        text += fmt::format("job blocks (S_P x S_J): {}\nposition blocks (S_P x S_J): {}\n",
                            yn(job_blocks), yn(position_blocks));
        if (report.contains("transposer_swaps_blocks"))
            text += fmt::format("transposer swaps job and position blocks: {}\n",
                                yn(transposer_swaps));
        if (report["bruteforce"]["checked"].get<bool>())
            text += fmt::format("brute-force match: {} ({} preservers)\n",
                                yn(report["bruteforce"]["match"].get<bool>()),
                                report["bruteforce"]["preservers"].get<std::size_t>());
        else
            text += "brute-force match: skipped\n";
        emit(o, text);
    }
    return ok ? kOk : kMismatch;
}

// --- reach ------------------------------------------------------------------

int cmd_reach(const Options& o) {
    const InstanceFile f = load_input(o);
    if (o.source.empty() || o.target.empty()) throw DomainError("--source and --target are required");
    const BitString source = BitString::parse(o.source);
    const BitString target = BitString::parse(o.target);
    const ReachPlan plan = compile_reach(f.instance, source, target);
    const Engine engine = o.engine ? parse_engine(*o.engine) : Engine::Subspace;
    const QuantumState out = apply_circuit(plan.circuit, plan.params,
                                           basis_state(f.instance, source, engine),
                                           PhaseSeparator(f.objective));
    const double fid = fidelity(out, basis_state(f.instance, target, engine));
    const bool ok = std::abs(fid - 1.0) <= 1e-10;

    if (o.format == "json") {
        emit(o, dump({{"source", source.to_string()},
                      {"target", target.to_string()},
                      {"word", plan.word},
                      {"depth", plan.circuit.depth()},
                      {"rotations", plan.rotations},
                      {"beta", plan.params.beta},
                      {"gamma", plan.params.gamma},
                      {"fidelity", fid}}));
    } else {
        std::string word;
        for (int i : plan.word) word += fmt::format("{}t{}", word.empty() ? "" : " ", i);
        std::string beta;
        for (double b : plan.params.beta) beta += fmt::format("{}{:.6f}", beta.empty() ? "" : ",", b);
        emit(o, fmt::format("word (first acts first): [{}]\ndepth: {}\nrotations: {}\nbeta: {}\n"
                            "fidelity: {:.6f}\n",
                            word, plan.circuit.depth(), plan.rotations, beta, fid));
    }
    return ok ? kOk : kMismatch;
}

// --- simulate ---------------------------------------------------------------

ParameterVector read_params(const Options& o, const Circuit& circuit) {
    ParameterVector p = ParameterVector::zeros(circuit);
    if (!o.params.empty()) {
        std::ifstream in(o.params);
        if (!in) throw DomainError("cannot read " + o.params);
        json j;
        try {
            j = json::parse(in);
            p.beta = j.at("beta").get<std::vector<double>>();
            p.gamma = j.at("gamma").get<std::vector<double>>();
        } catch (const json::exception& e) {
            throw ParseError(o.params + ": " + e.what());
        }
    }
    if (!o.beta.empty()) p.beta = o.beta;
    if (!o.gamma.empty()) p.gamma = o.gamma;
    check_parameters(circuit, p);
    return p;
}

std::string render_histogram(const std::string& format, const std::vector<HistogramRow>& rows,
                             std::uint64_t shots) {
    if (format == "csv") return histogram_to_csv(rows, shots);
    if (format == "text") return histogram_to_text(rows, shots);
    return dump(histogram_to_json(rows, shots));
}

int cmd_simulate(const Options& o) {
    const InstanceFile f = load_input(o);
    const ExperimentSpec base = experiment_from_json(f.instance, f.objective, f.experiment);
    const int depth = o.depth.value_or(base.depth);
    const Engine engine = o.engine ? parse_engine(*o.engine) : base.engine;
    const BitString initial = o.initial ? BitString::parse(*o.initial) : base.initial;
    f.instance.check_length(initial);
    const std::uint64_t shots = o.shots.value_or(base.shots);
    const std::uint64_t seed = o.seed.value_or(default_seed());

    const Circuit circuit = build_circuit(f.instance, depth, base.pattern);
    const ParameterVector params = read_params(o, circuit);
    const PhaseSeparator sep(f.objective);
    const QuantumState state = apply_circuit(circuit, params, basis_state(f.instance, initial, engine), sep);
    const auto rows = shots == 0 ? annotate(f.instance, f.objective, distribution(state))
                                 : annotate(f.instance, f.objective, sample(state, shots, seed));
    if (o.format == "json") {
        emit(o, dump({{"initial", initial.to_string()},
                      {"depth", depth},
                      {"params", {{"beta", params.beta}, {"gamma", params.gamma}}},
                      {"expectation", expectation(state, sep)},
                      {"feasible_mass", feasible_mass(f.instance, state)},
                      {"seed", seed},
                      {"histogram", histogram_to_json(rows, shots)}}));
    } else {
        emit(o, render_histogram(o.format, rows, shots));
    }
    return kOk;
}

// --- optimize ---------------------------------------------------------------

int cmd_optimize(const Options& o) {
    const InstanceFile f = load_input(o);
    ExperimentSpec spec = experiment_from_json(f.instance, f.objective, f.experiment);
    if (o.depth) spec.depth = *o.depth;
    if (o.engine) spec.engine = parse_engine(*o.engine);
    if (o.initial) spec.initial = BitString::parse(*o.initial);
    if (o.shots) spec.shots = *o.shots;
    if (o.optimizer) {
        if (*o.optimizer == "tr") spec.optimizer.kind = OptimizerKind::TrustRegion;
        else if (*o.optimizer == "sgd") spec.optimizer.kind = OptimizerKind::SampledGradientDescent;
        else throw DomainError("unknown optimizer '" + *o.optimizer + "'");
    }
    if (o.sgd_samples) spec.optimizer.sample_size = *o.sgd_samples;
    if (o.sgd_radius) spec.optimizer.radius = *o.sgd_radius;
    if (o.iterations) spec.optimizer.max_iterations = *o.iterations;
    if (o.seed) spec.optimizer.seed = *o.seed;
    else if (std::getenv("OSSPQ_SEED")) spec.optimizer.seed = default_seed();
    spec.optimizer.validate();

    const RunRecord rec = run_experiment(spec);

    std::string summary = fmt::format("status: {} after {} evaluations, best expectation {:.6f}\n",
                                      rec.optimization.status, rec.optimization.evaluations,
                                      rec.optimization.best_value);
    if (!rec.histogram.empty())
        summary += fmt::format("mode: {} (fraction {:.3f}, value {}, {})\n",
                               rec.histogram.front().bits.to_string(), rec.mode_fraction(),
                               rec.histogram.front().objective,
                               rec.histogram.front().feasible ? "feasible" : "infeasible");
    if (rec.best_feasible)
        summary += fmt::format("best feasible sample: {} value {} (optimum {}, gap {})\n",
                               rec.best_feasible->to_string(), rec.best_feasible_value,
                               rec.classical_optimum.value,
                               rec.best_feasible_value - rec.classical_optimum.value);
    else
        summary += "best feasible sample: none\n";

    const json j = to_json(rec);
    std::string text;
    if (o.format == "json") text = dump(j);
    else text = render_histogram(o.format, rec.histogram, rec.shots);

    if (o.out.empty()) {
        std::cout << text;
        std::cerr << summary;
    } else {
        emit(o, text);
        std::cout << summary;
    }
    return kOk;
}

// --- report -----------------------------------------------------------------

int cmd_report(const Options& o) {
    if (o.in.empty()) throw DomainError("--in is required");
    std::ifstream in(o.in);
    if (!in) throw DomainError("cannot read " + o.in);
    json rec;
    try {
        rec = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(o.in + ": " + e.what());
    }
    try {
        const auto& hist = rec.at("histogram");
        const auto rows = histogram_from_json(hist);
        const auto shots = hist.at("shots").get<std::uint64_t>();
        if (o.format == "json") {
            emit(o, dump(hist));
            return kOk;
        }
        if (o.format == "csv") {
            emit(o, histogram_to_csv(rows, shots));
            return kOk;
        }
        std::string text = fmt::format("status: {}\nbest expectation: {:.6f}\n",
                                       rec.at("status").get<std::string>(),
                                       rec.at("best_expectation").get<double>());
        for (const auto& it : rec.at("iterations")) {
            text += fmt::format("iteration {}: expectation {:.6f} radius {:.6f}\n",
                                it.at("iteration").get<int>(), it.at("expectation").get<double>(),
                                it.at("radius").get<double>());
            if (it.contains("histogram")) {
                const auto& h = it.at("histogram");
                text += histogram_to_text(histogram_from_json(h), h.at("shots").get<std::uint64_t>());
            }
        }
        text += "final histogram:\n" + histogram_to_text(rows, shots);
        emit(o, text);
    } catch (const json::exception& e) {
        throw ParseError(o.in + ": not a run record (" + e.what() + ")");
    }
    return kOk;
}

void add_input(CLI::App* sub, Options& o) {
    sub->add_option("--instance", o.instance, "Instance JSON file");
    sub->add_option("--preset", o.preset, "Shipped preset (ossp224, ossp133, ossp133-restricted, ...)");
}

void add_output(CLI::App* sub, Options& o) {
    sub->add_option("--out", o.out, "Write output here instead of stdout");
    sub->add_option("--format", o.format, "json | csv | text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
}

void add_run_flags(CLI::App* sub, Options& o) {
    sub->add_option("--seed", o.seed, "Seed (default: $OSSPQ_SEED, else 0)");
    sub->add_option("--shots", o.shots, "Measurement shots; 0 = exact distribution");
    sub->add_option("--engine", o.engine, "full | subspace")
        ->check(CLI::IsMember({"full", "subspace"}));
    sub->add_option("--depth", o.depth, "Circuit rounds p")->check(CLI::PositiveNumber);
    sub->add_option("--initial", o.initial, "Initial basis string");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Group-theoretic quantum circuits for open-shop scheduling"};
    app.require_subcommand(1);
    Options o;

    auto* enumerate = app.add_subcommand("enumerate", "List all solutions with objective values");
    add_input(enumerate, o);
    add_output(enumerate, o);

    auto* graph = app.add_subcommand("graph", "Constraint graph edges");
    add_input(graph, o);
    add_output(graph, o);

    auto* group = app.add_subcommand("group-check", "Verify group order, orbits and blocks");
    add_input(group, o);
    add_output(group, o);

    auto* reach = app.add_subcommand("reach", "Compile a grid circuit from source to target");
    add_input(reach, o);
    add_output(reach, o);
    reach->add_option("--source", o.source, "Source solution")->required();
    reach->add_option("--target", o.target, "Target solution")->required();
    reach->add_option("--engine", o.engine, "full | subspace")
        ->check(CLI::IsMember({"full", "subspace"}));

    auto* simulate = app.add_subcommand("simulate", "Run a circuit at given parameters");
    add_input(simulate, o);
    add_output(simulate, o);
    add_run_flags(simulate, o);
    simulate->add_option("--params", o.params, "JSON file with beta and gamma arrays");
    simulate->add_option("--beta", o.beta, "Comma-separated beta values")->delimiter(',');
    simulate->add_option("--gamma", o.gamma, "Comma-separated gamma values")->delimiter(',');

    auto* optimize = app.add_subcommand("optimize", "Variational optimization run");
    add_input(optimize, o);
    add_output(optimize, o);
    add_run_flags(optimize, o);
    optimize->add_option("--optimizer", o.optimizer, "tr | sgd")->check(CLI::IsMember({"tr", "sgd"}));
    optimize->add_option("--sgd-samples", o.sgd_samples, "Samples per descent step")
        ->check(CLI::PositiveNumber);
    optimize->add_option("--sgd-radius", o.sgd_radius, "Initial ball radius")
        ->check(CLI::PositiveNumber);
    optimize->add_option("--iterations", o.iterations,
                         "Budget: evaluations (tr) or descent steps (sgd)")
        ->check(CLI::NonNegativeNumber);

    auto* report = app.add_subcommand("report", "Render a saved run record");
    report->add_option("--in", o.in, "Run record JSON")->required();
    add_output(report, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInvalid;
    }
    if (report->parsed() && report->count("--format") == 0) o.format = "text";

    try {
        if (enumerate->parsed()) return cmd_enumerate(o);
        if (graph->parsed()) return cmd_graph(o);
        if (group->parsed()) return cmd_group_check(o);
        if (reach->parsed()) return cmd_reach(o);
        if (simulate->parsed()) return cmd_simulate(o);
        if (optimize->parsed()) return cmd_optimize(o);
        if (report->parsed()) return cmd_report(o);
    } catch (const CapabilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCapability;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kInvalid;
}
