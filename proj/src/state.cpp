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

#include "osspq/state.hpp"

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "osspq/errors.hpp"

namespace osspq {

namespace {

constexpr std::size_t kMaxFullBits = 26;
constexpr std::size_t kMaxSubspaceDimension = std::size_t{1} << 26;
constexpr std::size_t kMaxDenseDimension = 4096;

}  // namespace

std::shared_ptr<const Basis> Basis::full(const OsspInstance& instance) {
    if (instance.bits() > kMaxFullBits) {
        throw CapabilityError("full statevector engine is limited to 26 qubits, instance has " +
                              std::to_string(instance.bits()));
    }
    auto b = std::shared_ptr<Basis>(new Basis(instance, Engine::Full));
    b->dimension_ = std::size_t{1} << instance.bits();
    return b;
}

std::shared_ptr<const Basis> Basis::subspace(const OsspInstance& instance,
                                             const BitString& reference) {
    instance.check_length(reference);
    auto b = std::shared_ptr<Basis>(new Basis(instance, Engine::Subspace));
    for (int p = 1; p <= instance.positions(); ++p) {
        const int w = reference.weight_in(instance.position_block(p));
        if (w > 1) {
            throw DomainError("subspace engine needs at most one job per position; " +
                              reference.to_string() + " has " + std::to_string(w) +
                              " in position " + std::to_string(p));
        }
        if (w == 1) b->occupied_.push_back(p);
    }
    std::size_t dim = 1;
    for (std::size_t k = 0; k < b->occupied_.size(); ++k) {
        dim *= static_cast<std::size_t>(instance.jobs());
        if (dim > kMaxSubspaceDimension) {
            throw CapabilityError("subspace dimension exceeds 2^26");
        }
    }
    b->dimension_ = dim;
    b->masks_.resize(dim);
    const auto J = static_cast<std::size_t>(instance.jobs());
    for (std::size_t idx = 0; idx < dim; ++idx) {
        std::size_t rest = idx;
        std::uint64_t m = 0;
        for (int p : b->occupied_) {
            m |= std::uint64_t{1} << instance.bit(p, static_cast<int>(rest % J) + 1);
            rest /= J;
        }
        b->masks_[idx] = m;
    }
    return b;
}

std::optional<std::size_t> Basis::index(std::uint64_t mask) const {
    if (engine_ == Engine::Full) {
        if (instance_.bits() < 64 && (mask >> instance_.bits()) != 0) return std::nullopt;
        return static_cast<std::size_t>(mask);
    }
    const auto J = static_cast<std::size_t>(instance_.jobs());
    std::uint64_t seen = 0;
    std::size_t idx = 0;
    std::size_t stride = 1;
    for (int p : occupied_) {
        const std::uint64_t in_block = mask & instance_.position_block(p);
        if (std::popcount(in_block) != 1) return std::nullopt;
        idx += stride * (static_cast<std::size_t>(std::countr_zero(in_block)) % J);
        stride *= J;
        seen |= in_block;
    }
    if (seen != mask) return std::nullopt;
    return idx;
}

bool Basis::same_as(const Basis& other) const {
    return this == &other || (engine_ == other.engine_ && instance_ == other.instance_ &&
                              occupied_ == other.occupied_);
}

QuantumState::QuantumState(std::shared_ptr<const Basis> basis, std::vector<Amplitude> amplitudes)
    : basis_(std::move(basis)), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != basis_->dimension()) {
        throw DomainError("amplitude count does not match the basis dimension");
    }
}

Amplitude QuantumState::amplitude(const BitString& z) const {
    basis_->instance().check_length(z);
    const auto idx = basis_->index(z.mask());
    return idx ? amplitudes_[*idx] : Amplitude{};
}

double QuantumState::norm() const {
    double sum = 0.0;
    for (const auto& a : amplitudes_) sum += std::norm(a);
    return std::sqrt(sum);
}

QuantumState basis_state(const OsspInstance& instance, const BitString& z, Engine engine) {
    instance.check_length(z);
    auto basis = engine == Engine::Full ? Basis::full(instance) : Basis::subspace(instance, z);
    std::vector<Amplitude> amps(basis->dimension());
    amps[*basis->index(z.mask())] = 1.0;
    return QuantumState(std::move(basis), std::move(amps));
}

double fidelity(const QuantumState& a, const QuantumState& b) {
    if (!(a.basis().instance() == b.basis().instance())) {
        throw DomainError("fidelity between states of different instances");
    }
    Amplitude overlap{};
    if (a.basis().same_as(b.basis())) {
        for (std::size_t i = 0; i < a.dimension(); ++i) {
            overlap += std::conj(a.amplitudes()[i]) * b.amplitudes()[i];
        }
    } else {
        for (std::size_t i = 0; i < a.dimension(); ++i) {
            if (const auto j = b.basis().index(a.basis().mask(i))) {
                overlap += std::conj(a.amplitudes()[i]) * b.amplitudes()[*j];
            }
        }
    }
    return std::abs(overlap);
}

void apply_swap_rotation(QuantumState& state, std::size_t a, std::size_t b, double beta) {
    const Basis& basis = state.basis();
    const OsspInstance& inst = basis.instance();
    if (a == b || a >= inst.bits() || b >= inst.bits()) {
        throw DomainError("swap rotation needs two distinct bits in range");
    }
    const double c = std::cos(beta);
    const Amplitude is{0.0, std::sin(beta)};
    const Amplitude diag = std::polar(1.0, beta);
    auto amps = state.amplitudes();
    const std::uint64_t ma = std::uint64_t{1} << a;
    const std::uint64_t mb = std::uint64_t{1} << b;

    if (basis.engine() == Engine::Full) {
        for (std::size_t i = 0; i < amps.size(); ++i) {
            const bool za = i & ma;
            const bool zb = i & mb;
            if (za == zb) {
                amps[i] *= diag;
            } else if (zb) {  // visit each mixed pair once, from its |..0_a..1_b..⟩ member
                const std::size_t j = i ^ ma ^ mb;
                const Amplitude x = amps[i];
                const Amplitude y = amps[j];
                amps[i] = c * x + is * y;
                amps[j] = is * x + c * y;
            }
        }
        return;
    }

    if (inst.position_of(a) != inst.position_of(b)) {
        throw DomainError("subspace engine only supports swaps inside one position block");
    }
    const auto J = static_cast<std::size_t>(inst.jobs());
    const auto& occ = basis.occupied();
    std::size_t stride = 0;
    for (std::size_t k = 0, s = 1; k < occ.size(); ++k, s *= J) {
        if (occ[k] == inst.position_of(a)) stride = s;
    }
    if (stride == 0) {
        // Unoccupied block: both bits are always 0.
        for (auto& x : amps) x *= diag;
        return;
    }
    const auto ja = static_cast<std::ptrdiff_t>(a % J);
    const auto jb = static_cast<std::ptrdiff_t>(b % J);
    const std::ptrdiff_t shift = (ja - jb) * static_cast<std::ptrdiff_t>(stride);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const std::uint64_t m = basis.mask(i);
        const bool za = m & ma;
        const bool zb = m & mb;
        if (za == zb) {
            amps[i] *= diag;
        } else if (zb) {
            const auto j = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(i) + shift);
            const Amplitude x = amps[i];
            const Amplitude y = amps[j];
            amps[i] = c * x + is * y;
            amps[j] = is * x + c * y;
        }
    }
}

MixerHamiltonian MixerHamiltonian::for_generator(const OsspInstance& instance, int generator) {
    if (generator < 1 || generator >= instance.jobs()) {
        throw DomainError("mixer generator " + std::to_string(generator) + " outside [1, " +
                          std::to_string(instance.jobs() - 1) + "]");
    }
    MixerHamiltonian h{generator, {}};
    for (int p = 1; p <= instance.positions(); ++p) {
        h.pairs.emplace_back(instance.bit(p, generator), instance.bit(p, generator + 1));
    }
    return h;
}

void apply_mixer(QuantumState& state, const MixerHamiltonian& mixer, double beta) {
    for (const auto& [a, b] : mixer.pairs) apply_swap_rotation(state, a, b, beta);
}

std::vector<double> PhaseSeparator::diagonal(const Basis& basis) const {
    if (basis.instance().bits() != objective_.bits()) {
        throw DomainError("phase separator does not match the state's instance");
    }
    std::vector<double> out(basis.dimension());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = objective_.value(basis.mask(i));
    return out;
}

void apply_phase(QuantumState& state, std::span<const double> diagonal, double gamma) {
    auto amps = state.amplitudes();
    if (diagonal.size() != amps.size()) throw DomainError("diagonal length mismatch");
    for (std::size_t i = 0; i < amps.size(); ++i) amps[i] *= std::polar(1.0, gamma * diagonal[i]);
}

void apply_phase_separator(QuantumState& state, const PhaseSeparator& separator, double gamma) {
    apply_phase(state, separator.diagonal(state.basis()), gamma);
}

void apply_simultaneous_mixer(QuantumState& state, std::span<const MixerHamiltonian> family,
                              double beta) {
    if (state.engine() != Engine::Subspace) {
        throw DomainError("the simultaneous mixer runs on the subspace engine only");
    }
    const std::size_t dim = state.dimension();
    if (dim > kMaxDenseDimension) {
        throw CapabilityError("simultaneous mixer is limited to subspace dimension 4096, got " +
                              std::to_string(dim));
    }
    const Basis& basis = state.basis();
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
    for (const auto& mixer : family) {
        for (const auto& [a, b] : mixer.pairs) {
            const std::uint64_t ab = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
            for (std::size_t i = 0; i < dim; ++i) {
                const std::uint64_t m = basis.mask(i);
                const std::uint64_t swapped =
                    (std::popcount(m & ab) == 1) ? (m ^ ab) : m;
                const auto j = basis.index(swapped);
                if (!j) throw DomainError("mixer leaves the subspace");
                h(static_cast<Eigen::Index>(*j), static_cast<Eigen::Index>(i)) += 1.0;
            }
        }
    }
    const Eigen::MatrixXcd u =
        (Amplitude{0.0, -beta} * h.cast<Amplitude>()).exp();
    auto amps = state.amplitudes();
    Eigen::Map<Eigen::VectorXcd> v(amps.data(), static_cast<Eigen::Index>(dim));
    const Eigen::VectorXcd out = u * v;
    v = out;
}

double expectation(const QuantumState& state, std::span<const double> diagonal) {
    auto amps = state.amplitudes();
    if (diagonal.size() != amps.size()) throw DomainError("diagonal length mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) sum += diagonal[i] * std::norm(amps[i]);
    return sum;
}

double expectation(const QuantumState& state, const PhaseSeparator& separator) {
    return expectation(state, separator.diagonal(state.basis()));
}

double feasible_mass(const OsspInstance& instance, const QuantumState& state) {
    if (!(state.basis().instance() == instance)) {
        throw DomainError("state belongs to a different instance");
    }
    double mass = 0.0;
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        const auto p = std::norm(state.amplitudes()[i]);
        if (p == 0.0) continue;
        if (is_feasible(instance, BitString(instance.bits(), state.basis().mask(i)))) mass += p;
    }
    return mass;
}

}  // namespace osspq
