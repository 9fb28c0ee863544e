// Copyright 2026 The ghzsim Authors
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

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ghzsim/circuit.hpp"
#include "ghzsim/states.hpp"

namespace ghzsim {

/// Entanglement swapping over remote stationary qubits. Each remote memory j
/// shares (|up>_j|H>_j + |down>_j|V>_j)/sqrt2 with one photon held by the
/// analyzer node; the photons are fed one by one through the analyzer.
///
/// Register layout: remote spins A, B[, C], then photons a, b[, c], then QD1, QD2.
struct NetworkState {
    size_t num_pairs = 0;
    HybridState hybrid;

    size_t remote_slot(size_t pair) const {
        return static_cast<size_t>(hybrid.spectator_slot.at(pair));
    }
    bool fed(size_t photon) const {
        return hybrid.fates.at(photon) != PhotonFate::InCircuit;
    }
    size_t num_fed() const {
        size_t k = 0;
        for (size_t j = 0; j < num_pairs; j++) {
            k += fed(j);
        }
        return k;
    }
    double weight() const {
        return hybrid.weight();
    }
};

/// (|up>|H> + |down>|V>)/sqrt2 with the spin first.
inline QubitRegister hybrid_pair() {
    auto r = QubitRegister::zeros(2);
    r[0b00] = kInvSqrt2;
    r[0b11] = kInvSqrt2;
    return r;
}

inline NetworkState make_network(size_t num_pairs) {
    if (num_pairs != 2 && num_pairs != 3) {
        throw std::invalid_argument("make_network: only 2 or 3 hybrid pairs are supported");
    }
    const size_t p = num_pairs;
    auto pairs = QubitRegister::zeros(2 * p);
    const double amp = std::pow(kInvSqrt2, static_cast<double>(p));
    for (size_t bits = 0; bits < (size_t{1} << p); bits++) {
        // Spin bits equal photon bits pair by pair.
        pairs[(bits << p) | bits] = amp;
    }
    auto plus = QubitRegister::zeros(1);
    plus[0] = plus[1] = kInvSqrt2;

    NetworkState s;
    s.num_pairs = p;
    HybridState &h = s.hybrid;
    h.amplitudes = kron(kron(pairs, plus), plus);
    h.fates.assign(p, PhotonFate::InCircuit);
    for (size_t j = 0; j < p; j++) {
        h.spectator_slot.push_back(static_cast<int>(j));
        h.photon_slot.push_back(static_cast<int>(p + j));
    }
    h.qd_slot = {static_cast<int>(2 * p), static_cast<int>(2 * p + 1)};
    return s;
}

struct FeedResult {
    /// One branch per detector click (D1, D2, and the two D3 sub-branches).
    std::vector<NetworkState> branches;
    double lost_weight = 0;
};

/// Sends `photon` through the analyzer. Only monochromatic photons are
/// supported here; the remote spins are ideal memories.
inline FeedResult feed_photon(
    const NetworkState &state, size_t photon, const AnalyzerConfig &config, bool keep_measured = false) {
    if (photon >= state.num_pairs) {
        throw std::invalid_argument("feed_photon: no photon " + std::to_string(photon));
    }
    if (state.fed(photon)) {
        throw std::invalid_argument("feed_photon: photon " + std::to_string(photon) + " was already consumed");
    }
    const auto *omega = std::get_if<double>(&config.frequency);
    if (omega == nullptr) {
        throw std::invalid_argument("feed_photon: network scenarios need a fixed photon frequency");
    }
    config.validate(state.num_pairs);
    auto pass = pass_photon(
        state.hybrid, photon, config.reflections(*omega), {config.eta0, config.prune_below, keep_measured});
    FeedResult out;
    out.lost_weight = pass.lost_weight;
    for (auto &b : pass.branches) {
        out.branches.push_back({state.num_pairs, std::move(b)});
    }
    return out;
}

struct SwapOutcome {
    std::vector<PhotonFate> detectors;
    std::array<QdSign, 2> qd{};
    double probability = 0;
    /// Remote-state label predicted from the click record alone.
    GhzLabel predicted;
    /// Normalized conditional state of the swapped remote spins.
    QubitRegister remote_state;
    /// <predicted|rho_remote|predicted>
    double fidelity = 0;
    double purity = 0;

    OutcomeRecord record() const {
        return {detectors, qd, probability};
    }
};

struct SwapAttempt {
    bool aborted = false;
    std::string reason;
    std::vector<SwapOutcome> outcomes;
};

namespace detail {

/// Pure-state vector recovered from a rank-one density matrix (up to phase).
inline QubitRegister dominant_column(const DensityMatrix &rho, size_t num_qubits) {
    size_t best = 0;
    for (size_t i = 1; i < rho.dim; i++) {
        if (rho.at(i, i).real() > rho.at(best, best).real()) {
            best = i;
        }
    }
    auto out = QubitRegister::zeros(num_qubits);
    const double scale = 1 / std::sqrt(rho.at(best, best).real());
    for (size_t i = 0; i < rho.dim; i++) {
        out[i] = rho.at(i, best) * scale;
    }
    return out.normalize();
}

inline SwapAttempt swap_on(const NetworkState &state, size_t swapped) {
    SwapAttempt attempt;
    for (size_t j = 0; j < swapped; j++) {
        const auto f = state.hybrid.fates[j];
        if (f != PhotonFate::D1 && f != PhotonFate::D2) {
            attempt.aborted = true;
            attempt.reason = "photon " + std::to_string(j) + " was not detected conclusively (" + fate_name(f) + ")";
            return attempt;
        }
    }
    std::vector<size_t> remote;
    for (size_t j = 0; j < swapped; j++) {
        remote.push_back(j);
    }
    for (auto &qb : measure_qds(state.hybrid)) {
        const double w = qb.state.weight();
        if (!(w > 0)) {
            continue;
        }
        SwapOutcome o;
        o.detectors.assign(state.hybrid.fates.begin(), state.hybrid.fates.begin() + static_cast<long>(swapped));
        o.qd = qb.signs;
        o.probability = w;
        std::vector<size_t> keep;
        for (size_t j : remote) {
            keep.push_back(static_cast<size_t>(qb.state.spectator_slot[j]));
        }
        auto rho = reduced_density_matrix(qb.state.amplitudes, keep);
        o.remote_state = dominant_column(rho, swapped);
        o.purity = rho.purity();
        auto label = classify(o.record(), swapped);
        if (label) {
            o.predicted = *label;
            o.fidelity = rho.expectation_fidelity(ghz_state(swapped, *label));
        }
        attempt.outcomes.push_back(std::move(o));
    }
    return attempt;
}

}  // namespace detail

/// After photons a and b: read out the QDs and report the conditional state of
/// remote spins A and B for each QD result. Photon c is never sent.
inline SwapAttempt bell_swap(const NetworkState &state) {
    if (state.num_fed() != 2 || !state.fed(0) || !state.fed(1)) {
        throw std::invalid_argument("bell_swap: exactly photons a and b must have been fed");
    }
    return detail::swap_on(state, 2);
}

/// After photons a, b and c: read out the QDs and report the conditional GHZ
/// state of remote spins A, B, C.
inline SwapAttempt ghz_swap(const NetworkState &state) {
    if (state.num_pairs != 3 || state.num_fed() != 3) {
        throw std::invalid_argument("ghz_swap: all three photons must have been fed");
    }
    return detail::swap_on(state, 3);
}

/// Every terminal outcome of a swap scenario, enumerated exhaustively.
struct SwapReport {
    size_t num_pairs = 0;
    std::vector<SwapOutcome> outcomes;
    double success_probability = 0;
    double aborted_probability = 0;
    double lost_probability = 0;
};

/// num_pairs = 2 runs the Bell swap on pairs Aa and Bb; num_pairs = 3 runs the
/// GHZ swap on Aa, Bb and Cc.
inline SwapReport run_swap(size_t num_pairs, const AnalyzerConfig &config) {
    SwapReport report;
    report.num_pairs = num_pairs;
    std::vector<NetworkState> frontier{make_network(num_pairs)};
    for (size_t photon = 0; photon < num_pairs; photon++) {
        std::vector<NetworkState> next;
        for (const auto &s : frontier) {
            auto fed = feed_photon(s, photon, config);
            report.lost_probability += fed.lost_weight;
            for (auto &b : fed.branches) {
                next.push_back(std::move(b));
            }
        }
        frontier = std::move(next);
    }
    for (const auto &s : frontier) {
        auto attempt = num_pairs == 2 ? bell_swap(s) : ghz_swap(s);
        if (attempt.aborted) {
            report.aborted_probability += s.weight();
            continue;
        }
        for (auto &o : attempt.outcomes) {
            report.success_probability += o.probability;
            report.outcomes.push_back(std::move(o));
        }
    }
    return report;
}

}  // namespace ghzsim
