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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances and seeds are fixed here.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <fmt/format.h>

#include "json.hpp"
#include "oracles.hpp"
#include "osspq/circuit.hpp"
#include "osspq/cop.hpp"
#include "osspq/group.hpp"
#include "osspq/histogram.hpp"
#include "osspq/io.hpp"
#include "osspq/permutation.hpp"
#include "osspq/state.hpp"
#include "osspq/vqa.hpp"

namespace {

using namespace osspq;
using nlohmann::json;
using Clock = std::chrono::steady_clock;
constexpr double kPi = std::numbers::pi;

constexpr double kFidelityTol = 1e-10;
constexpr double kUnitarityTol = 1e-12;
constexpr std::uint64_t kSeeds = 10;  // seeds 1..10
constexpr int kMajority = 7;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string run_cli(const std::string& args, int& code) {
    const std::string cmd = std::string(OSSPQ_CLI_PATH) + " " + args + " 2>/dev/null";
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        code = -1;
        return out;
    }
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int status = pclose(pipe);
    code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

// 1. Enumeration goldens through the CLI.
Outcome c1_enumeration() {
    auto check = [](const char* preset, const std::vector<testing_support::Row>& table, double& secs) {
        const auto t0 = Clock::now();
        int code = 0;
        const auto out = run_cli(fmt::format("enumerate --preset {}", preset), code);
        secs = seconds_since(t0);
        if (code != 0) return false;
        const auto j = json::parse(out);
        std::set<std::pair<std::string, double>> got, want;
        for (const auto& r : j.at("rows")) got.emplace(r.at("bitstring").get<std::string>(), r.at("value").get<double>());
        for (const auto& r : table) want.emplace(r.bits, r.value);
        return got == want && j.at("rows").size() == table.size();
    };
    double ta = 0, tb = 0;
    const bool a = check("ossp224", testing_support::kTableOssp224, ta);
    const bool b = check("ossp133", testing_support::kTableOssp133, tb);
    int code = 0;
    const auto j = json::parse(run_cli("enumerate --preset ossp133", code));
    const bool min_ok = j.at("rows").at(0).at("bitstring") == "001010100" && j.at("optimal_value") == 5.0;
    return {a && b && min_ok && ta < 1.0 && tb < 1.0,
            fmt::format("24/24 and 6/6 rows exact: {}/{}, min 5 at 001010100: {}, {:.3f}s + {:.3f}s", a, b,
                        min_ok, ta, tb)};
}

// 2. Counting law.
Outcome c2_counting() {
    const auto t0 = Clock::now();
    int instances = 0, bad = 0;
    for (int M = 1; M <= 6; ++M)
        for (int T = 1; M * T <= 6; ++T)
            for (int J = 1; J <= M * T; ++J) {
                ++instances;
                if (enumerate_solutions(OsspInstance(M, T, J)).size() !=
                    testing_support::factorial_ratio(M * T, J))
                    ++bad;
            }
    const double secs = seconds_since(t0);
    return {bad == 0 && secs < 10.0, fmt::format("{} instances, {} mismatches, {:.2f}s", instances, bad, secs)};
}

// 3. Group orders and the 9! brute-force scan.
Outcome c3_group() {
    const auto t0 = Clock::now();
    const std::array<std::tuple<int, int, int, const char*>, 3> cases{
        {{2, 2, 4, "1152"}, {1, 3, 3, "72"}, {1, 3, 2, "12"}}};
    bool orders = true;
    std::string got;
    for (const auto& [M, T, J, want] : cases) {
        const OsspInstance inst(M, T, J);
        const auto o = generated_order(inst, group_generators(inst));
        orders = orders && o == want && group_order(inst) == want;
        got += (got.empty() ? "" : "/") + o;
    }
    const OsspInstance inst(1, 3, 3);
    const auto brute = bruteforce_feasibility_preservers(build_constraint_graph(inst), enumerate_solutions(inst));
    std::vector<testing_support::Images> gens;
    for (const auto& g : group_generators(inst)) gens.push_back(vertex_permutation(inst, g).images());
    const auto closure = testing_support::closure(gens, 9);
    std::set<testing_support::Images> found;
    for (const auto& p : brute) found.insert(p.images());
    const bool scan = found == closure;
    const double secs = seconds_since(t0);
    return {orders && scan && secs < 60.0,
            fmt::format("orders {}, 9! scan finds {} = generated group: {}, {:.2f}s", got, brute.size(), scan, secs)};
}

// 4. Transitivity from every solution of every counting-law instance.
Outcome c4_transitivity() {
    int instances = 0, bad = 0;
    for (int M = 1; M <= 6; ++M)
        for (int T = 1; M * T <= 6; ++T)
            for (int J = 1; J <= M * T; ++J) {
                ++instances;
                const OsspInstance inst(M, T, J);
                const auto sols = enumerate_solutions(inst);
                const auto gens = group_generators(inst);
                for (const auto& z : sols)
                    if (orbit(inst, z, gens) != sols) {
                        ++bad;
                        break;
                    }
            }
    return {bad == 0, fmt::format("{} instances, every start point, {} failures", instances, bad)};
}

// 5. Gate identities and unitarity.
Outcome c5_gates() {
    std::mt19937_64 gen(5);
    std::normal_distribution<double> nd;
    const OsspInstance inst(2, 2, 4);  // 16 qubits
    const auto basis = Basis::full(inst);
    double worst_identity = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Amplitude> amps(basis->dimension());
        double n2 = 0;
        for (auto& a : amps) {
            a = {nd(gen), nd(gen)};
            n2 += std::norm(a);
        }
        for (auto& a : amps) a /= std::sqrt(n2);
        const QuantumState s0(basis, amps);
        const std::size_t a = gen() % 16;
        std::size_t b = gen() % 15;
        if (b >= a) ++b;
        auto s = s0;
        apply_swap_rotation(s, a, b, kPi / 2);
        // i·SWAP: amplitude of x moves to x with bits a and b exchanged.
        for (std::uint64_t x = 0; x < basis->dimension(); ++x) {
            std::uint64_t y = x;
            if (((x >> a) & 1U) != ((x >> b) & 1U)) y ^= (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
            worst_identity = std::max(worst_identity, std::abs(s.amplitudes()[y] - Amplitude(0, 1) * s0.amplitudes()[x]));
        }
        auto t = s0;
        apply_swap_rotation(t, a, b, 0.0);
        for (std::size_t x = 0; x < basis->dimension(); ++x)
            worst_identity = std::max(worst_identity, std::abs(t.amplitudes()[x] - s0.amplitudes()[x]));
    }

    const OsspInstance k224(2, 2, 4);
    const auto sub = Basis::subspace(k224, BitString::parse("1000010000100001"));
    const PhaseSeparator sep(Objective::linear(k224, testing_support::flatten(testing_support::kWeightsOssp224)));
    std::vector<MixerHamiltonian> mixers;
    for (int i = 1; i <= 3; ++i) mixers.push_back(MixerHamiltonian::for_generator(k224, i));
    std::uniform_real_distribution<double> angle(-2 * kPi, 2 * kPi);
    double worst_norm = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        auto s = basis_state(k224, BitString::parse("1000010000100001"), Engine::Subspace);
        switch (trial % 4) {
            case 0: {
                const std::size_t p = gen() % 4, j = gen() % 3;
                apply_swap_rotation(s, 4 * p + j, 4 * p + j + 1, angle(gen));
                break;
            }
            case 1: apply_mixer(s, mixers[gen() % 3], angle(gen)); break;
            case 2:
                apply_mixer(s, mixers[0], angle(gen));
                apply_phase_separator(s, sep, angle(gen));
                break;
            default: apply_simultaneous_mixer(s, mixers, angle(gen));
        }
        worst_norm = std::max(worst_norm, std::abs(s.norm() - 1.0));
    }
    return {worst_identity < 1e-15 && worst_norm < kUnitarityTol,
            fmt::format("max identity deviation {:.1e}, max |norm-1| over 1000 trials {:.1e}", worst_identity,
                        worst_norm)};
}

// 6. Engine equivalence on both preset circuits.
Outcome c6_engines() {
    std::mt19937_64 gen(6);
    std::uniform_real_distribution<double> b(0, kPi / 2), g(0, 2 * kPi);
    double worst = 0.0;
    for (const char* preset : {"ossp224", "ossp133"}) {
        const auto f = load_preset(preset);
        const auto spec = experiment_from_json(f.instance, f.objective, f.experiment);
        const auto c = build_circuit(f.instance, spec.depth);
        const PhaseSeparator sep(f.objective);
        const auto full0 = basis_state(f.instance, spec.initial, Engine::Full);
        const auto sub0 = basis_state(f.instance, spec.initial, Engine::Subspace);
        for (int trial = 0; trial < 100; ++trial) {
            ParameterVector p = ParameterVector::zeros(c);
            for (auto& x : p.beta) x = b(gen);
            for (auto& x : p.gamma) x = g(gen);
            const double fid = fidelity(apply_circuit(c, p, full0, sep), apply_circuit(c, p, sub0, sep));
            worst = std::max(worst, std::abs(1.0 - fid));
        }
    }
    return {worst <= kFidelityTol, fmt::format("2 x 100 parameter vectors, max |1 - fidelity| {:.1e}", worst)};
}

// 7. Exhaustive reachability.
Outcome c7_reach() {
    const auto t0 = Clock::now();
    int pairs = 0, bad = 0;
    std::size_t most = 0;
    for (auto [preset, bound] : {std::pair{"ossp224", std::size_t{18}}, std::pair{"ossp133", std::size_t{6}}}) {
        const auto f = load_preset(preset);
        const PhaseSeparator sep(f.objective);
        const auto sols = enumerate_solutions(f.instance);
        for (const auto& src : sols)
            for (const auto& dst : sols) {
                ++pairs;
                const auto plan = compile_reach(f.instance, src, dst);
                const auto out = apply_circuit(plan.circuit, plan.params,
                                               basis_state(f.instance, src, Engine::Subspace), sep);
                const double fid = fidelity(out, basis_state(f.instance, dst, Engine::Subspace));
                most = std::max(most, plan.rotations);
                if (std::abs(fid - 1.0) > kFidelityTol || plan.rotations > bound) ++bad;
            }
    }
    const double secs = seconds_since(t0);
    return {bad == 0 && secs < 30.0,
            fmt::format("{} pairs, {} failures, max rotations {}, {:.2f}s", pairs, bad, most, secs)};
}

// 8. Grid feasibility of the restricted circuit.
Outcome c8_grid() {
    const OsspInstance inst(1, 3, 3);
    const auto f = load_preset("ossp133");
    const PhaseSeparator sep(f.objective);
    const auto c = build_circuit(inst, 1);
    const auto z0 = BitString::parse("100010001");
    bool single = true;
    std::set<std::string> reached;
    for (const auto& src : enumerate_solutions(inst))
        for (int bits = 0; bits < 4; ++bits) {
            const ParameterVector p{{(bits & 1) ? kPi / 2 : 0.0, (bits & 2) ? kPi / 2 : 0.0}, {0.0}};
            const auto s = apply_circuit(c, p, basis_state(inst, src, Engine::Full), sep);
            std::size_t support = 0, where = 0;
            for (std::size_t i = 0; i < s.dimension(); ++i)
                if (std::abs(s.amplitudes()[i]) > 1e-12) {
                    ++support;
                    where = i;
                }
            const BitString out(9, s.basis().mask(where));
            single = single && support == 1 && std::abs(std::abs(s.amplitudes()[where]) - 1.0) < 1e-12 &&
                     is_feasible(inst, out);
            if (src == z0) reached.insert(out.to_string());
        }
    const std::set<std::string> want{"100010001", "010100001", "100001010", "010001100"};
    return {single && reached == want,
            fmt::format("single feasible basis state at every grid point: {}, reachable set matches: {}", single,
                        reached == want)};
}

struct Runs {
    std::vector<RunRecord> records;
    std::vector<BitString> initials;
    std::vector<double> initial_values;
};

// 9. Depth-6 trust-region runs.
Outcome c9_ossp224(Runs& runs) {
    const auto t0 = Clock::now();
    const auto f = load_preset("ossp224");
    auto spec = experiment_from_json(f.instance, f.objective, f.experiment);
    const auto optimum = optimal_solutions(f.instance, f.objective);
    int hits = 0;
    double best_fraction = 0.0;
    std::string per_seed;
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
        spec.optimizer.seed = seed;
        auto rec = run_experiment(spec);
        const auto& mode = rec.histogram.front().bits;
        const bool hit = std::find(optimum.solutions.begin(), optimum.solutions.end(), mode) != optimum.solutions.end();
        hits += hit;
        if (hit) best_fraction = std::max(best_fraction, rec.mode_fraction());
        per_seed += hit ? '+' : '-';
        runs.records.push_back(std::move(rec));
        runs.initials.push_back(spec.initial);
        runs.initial_values.push_back(evaluate_objective(f.objective, f.instance, spec.initial));
    }
    const double secs = seconds_since(t0);
    return {hits >= kMajority && best_fraction >= 0.5 && secs < 600.0,
            fmt::format("mode is a value-5 optimum in {}/{} seeds [{}], best dominant fraction {:.3f}, {:.1f}s", hits,
                        kSeeds, per_seed, best_fraction, secs)};
}

// 10. Restricted sampled-gradient-descent runs.
Outcome c10_ossp133(Runs& runs) {
    const auto t0 = Clock::now();
    const auto f = load_preset("ossp133-restricted");
    auto spec = experiment_from_json(f.instance, f.objective, f.experiment);
    int hits = 0;
    std::string per_seed;
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
        spec.optimizer.seed = seed;
        auto rec = run_experiment(spec);
        const auto& trace = rec.optimization.trace;
        bool monotone = true, reached = false;
        for (std::size_t k = 0; k < trace.size(); ++k) {
            if (k > 0 && trace[k].expectation > trace[k - 1].expectation) monotone = false;
            if (k >= 1 && k <= 5 && trace[k].expectation <= 6.05) reached = true;
        }
        const bool mode = rec.histogram.front().bits.to_string() == "010001100";
        const bool hit = monotone && reached && mode && trace.size() == 6;
        hits += hit;
        per_seed += hit ? '+' : '-';
        runs.records.push_back(std::move(rec));
        runs.initials.push_back(spec.initial);
        runs.initial_values.push_back(evaluate_objective(f.objective, f.instance, spec.initial));
    }
    const double secs = seconds_since(t0);
    return {hits >= kMajority && secs < 120.0,
            fmt::format("monotone, <= 6.05 within 5 steps and mode 010001100 in {}/{} seeds [{}], {:.1f}s", hits,
                        kSeeds, per_seed, secs)};
}

// 11. Mixing-family verdicts against an independent connectivity check.
Outcome c11_mixing() {
    const OsspInstance inst(2, 2, 4);
    const auto sols = testing_support::feasible_by_scan(2, 2, 4);
    auto connected = [&](const std::vector<int>& family) {
        std::set<std::string> seen{sols.front()};
        std::vector<std::string> stack{sols.front()};
        while (!stack.empty()) {
            const std::string z = stack.back();
            stack.pop_back();
            for (int i : family) {
                std::string w = z;
                for (int p = 0; p < 4; ++p) std::swap(w[static_cast<std::size_t>(4 * p + i - 1)], w[static_cast<std::size_t>(4 * p + i)]);
                if (seen.insert(w).second) stack.push_back(w);
            }
        }
        return seen.size() == sols.size();
    };
    const bool full = check_mixing_family(inst, std::vector<int>{1, 2, 3});
    bool singles = true, agree = connected({1, 2, 3}) == full;
    for (int i = 1; i <= 3; ++i) {
        const bool v = check_mixing_family(inst, std::vector<int>{i});
        singles = singles && !v;
        agree = agree && connected({i}) == v;
    }
    return {full && singles && agree,
            fmt::format("{{B1,B2,B3}} irreducible: {}, every single {{Bi}} reducible: {}, oracle agrees: {}", full,
                        singles, agree)};
}

// 12. Oracle consistency over every optimization run above.
Outcome c12_oracles(const Runs& runs, const std::string& presets_note) {
    int checked = 0, bad = 0, without_feasible = 0;
    for (std::size_t k = 0; k < runs.records.size(); ++k) {
        const auto& rec = runs.records[k];
        ++checked;
        if (rec.zero_parameter_value != runs.initial_values[k]) ++bad;
        if (!rec.best_feasible) {
            ++without_feasible;
            continue;
        }
        if (rec.best_feasible_value < rec.classical_optimum.value) ++bad;
    }
    return {checked > 0 && bad == 0,
            fmt::format("{} runs ({}), {} violations, {} without a feasible sample", checked, presets_note, bad,
                        without_feasible)};
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria;
    Runs runs;
    criteria.emplace_back("C1 enumeration goldens", c1_enumeration);
    criteria.emplace_back("C2 counting law", c2_counting);
    criteria.emplace_back("C3 group order and brute force", c3_group);
    criteria.emplace_back("C4 transitivity", c4_transitivity);
    criteria.emplace_back("C5 gate identities and unitarity", c5_gates);
    criteria.emplace_back("C6 engine equivalence", c6_engines);
    criteria.emplace_back("C7 exhaustive reachability", c7_reach);
    criteria.emplace_back("C8 grid feasibility", c8_grid);
    criteria.emplace_back("C9 depth-6 trust-region runs", [&] { return c9_ossp224(runs); });
    criteria.emplace_back("C10 restricted sampled descent", [&] { return c10_ossp133(runs); });
    criteria.emplace_back("C11 mixing-family verdicts", c11_mixing);
    criteria.emplace_back("C12 oracle consistency", [&] { return c12_oracles(runs, "C9 and C10"); });

    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::printf("%s  %-36s %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
