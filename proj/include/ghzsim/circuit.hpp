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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ghzsim/scattering.hpp"
#include "ghzsim/states.hpp"

namespace ghzsim {

enum class PhotonFate { InCircuit, D1, D2, D3, Lost };
enum class QdSign { Plus, Minus };
enum class QndDetector { QND1, QND2 };

inline char fate_char(PhotonFate f) {
    switch (f) {
        case PhotonFate::InCircuit:
            return '?';
        case PhotonFate::D1:
            return 'H';
        case PhotonFate::D2:
            return 'V';
        case PhotonFate::D3:
            return '3';
        case PhotonFate::Lost:
            return 'L';
    }
    return '?';
}

inline std::string fate_name(PhotonFate f) {
    switch (f) {
        case PhotonFate::InCircuit:
            return "InCircuit";
        case PhotonFate::D1:
            return "D1";
        case PhotonFate::D2:
            return "D2";
        case PhotonFate::D3:
            return "D3";
        case PhotonFate::Lost:
            return "Lost";
    }
    return "?";
}

inline char sign_char(QdSign s) {
    return s == QdSign::Plus ? '+' : '-';
}

/// Joint photon/QD state of one branch. Photons are addressed by their logical
/// index; `photon_slot` maps them to register qubits (-1 once measured out).
/// The squared norm of `amplitudes` is the probability of the branch.
struct HybridState {
    QubitRegister amplitudes;
    std::vector<PhotonFate> fates;
    std::vector<int> photon_slot;
    std::array<int, 2> qd_slot{-1, -1};
    /// Extra qubits carried along untouched (remote memories in a network).
    std::vector<int> spectator_slot;

    /// photons (x) |+>_1 |+>_2
    static HybridState prepare(const QubitRegister &photons) {
        const size_t n = photons.num_qubits();
        auto plus = QubitRegister::zeros(1);
        plus[0] = plus[1] = kInvSqrt2;
        HybridState s;
        s.amplitudes = kron(kron(photons, plus), plus);
        s.fates.assign(n, PhotonFate::InCircuit);
        for (size_t j = 0; j < n; j++) {
            s.photon_slot.push_back(static_cast<int>(j));
        }
        s.qd_slot = {static_cast<int>(n), static_cast<int>(n + 1)};
        return s;
    }

    size_t num_photons() const {
        return fates.size();
    }
    double weight() const {
        return amplitudes.norm_squared();
    }
    size_t slot(size_t photon) const {
        if (photon >= photon_slot.size() || photon_slot[photon] < 0) {
            throw std::invalid_argument("HybridState: photon " + std::to_string(photon) + " has no qubit");
        }
        return static_cast<size_t>(photon_slot[photon]);
    }
    size_t qd(QndDetector d) const {
        return static_cast<size_t>(qd_slot[d == QndDetector::QND1 ? 0 : 1]);
    }

    /// Removes register qubit `q` (fixed to `value`) and renumbers the slots.
    void drop_qubit(size_t q, int value) {
        amplitudes = amplitudes.remove_qubit(q, value);
        auto shift = [q](int &s) {
            if (s == static_cast<int>(q)) {
                s = -1;
            } else if (s > static_cast<int>(q)) {
                s--;
            }
        };
        std::for_each(photon_slot.begin(), photon_slot.end(), shift);
        std::for_each(qd_slot.begin(), qd_slot.end(), shift);
        std::for_each(spectator_slot.begin(), spectator_slot.end(), shift);
    }
};

struct ScatterOutcome {
    /// Photon and QD flipped; photon continues through the circuit.
    HybridState flipped;
    /// Photon and QD unchanged; photon heads to D3.
    HybridState error;
    /// Squared norm leaked out of the cavity.
    double lost_weight = 0;
};

/// Scattering of one photon, already routed to `detector`'s arm (V for QND1, H
/// for QND2), off a QD-cavity unit with reflection amplitudes `refl`.
///
/// Branch amplitudes are (r1 - r0)/2 for the flip (photon X, QD Z in the up/down
/// basis, i.e. |+> <-> |->) and (r1 + r0)/2 for the unchanged component. They are
/// left unnormalized so branch weights are probabilities; the remainder is loss.
inline ScatterOutcome qnd_scatter(
    const HybridState &state, size_t photon, QndDetector detector, const ReflectionPair &refl) {
    if (photon >= state.num_photons() || state.fates[photon] != PhotonFate::InCircuit) {
        throw std::invalid_argument("qnd_scatter: photon " + std::to_string(photon) + " is not in the circuit");
    }
    const size_t p = state.slot(photon);
    const int wrong_pol = detector == QndDetector::QND1 ? 0 : 1;
    const double w = state.weight();
    if (state.amplitudes.weight_of(p, wrong_pol) > 1e-12 * std::max(w, 1e-300)) {
        throw std::invalid_argument("qnd_scatter: photon is not routed to this detector's arm");
    }
    const Amplitude a = refl.flip_amplitude();
    const Amplitude b = refl.error_amplitude();

    ScatterOutcome out{state, state, 0};
    out.flipped.amplitudes.apply_x(p).apply_z(state.qd(detector)).scale(a);
    out.error.amplitudes.scale(b);
    out.error.fates[photon] = PhotonFate::D3;
    out.lost_weight = std::max(0.0, w * (1 - std::norm(a) - std::norm(b)));
    return out;
}

/// Branches of one photon's trip HWP -> PBS -> QND -> PBS -> HWP -> PBS -> D1/D2,
/// with the unflipped component routed to D3.
struct PhotonPass {
    std::vector<HybridState> branches;
    double lost_weight = 0;
};

struct PassOptions {
    double eta0 = 1.0;
    /// Branches lighter than this are dropped and counted as lost.
    double prune_below = 1e-15;
    /// Keep measured photons in the register (projected) instead of removing them.
    bool keep_measured = false;
};

inline void finish_measurement(HybridState &s, size_t photon, int value, PhotonFate fate, bool keep) {
    const size_t p = s.slot(photon);
    s.fates[photon] = fate;
    if (keep) {
        s.amplitudes.project(p, value);
    } else {
        s.drop_qubit(p, value);
    }
}

inline PhotonPass pass_photon(
    const HybridState &state, size_t photon, const std::array<ReflectionPair, 2> &refl, const PassOptions &opts = {}) {
    if (photon >= state.num_photons() || state.fates[photon] != PhotonFate::InCircuit) {
        throw std::invalid_argument("pass_photon: photon " + std::to_string(photon) + " is not in the circuit");
    }
    const size_t p = state.slot(photon);
    HybridState s = state;
    s.amplitudes.apply_hadamard(p);

    HybridState to_qnd1 = s;
    to_qnd1.amplitudes.project(p, 1);
    HybridState to_qnd2 = std::move(s);
    to_qnd2.amplitudes.project(p, 0);

    auto arm1 = qnd_scatter(to_qnd1, photon, QndDetector::QND1, refl[0]);
    auto arm2 = qnd_scatter(to_qnd2, photon, QndDetector::QND2, refl[1]);

    PhotonPass out;
    out.lost_weight = arm1.lost_weight + arm2.lost_weight;

    // Flipped components recombine at the first PBS and go through the second HWP.
    HybridState merged = std::move(arm1.flipped);
    merged.amplitudes += arm2.flipped.amplitudes;
    merged.amplitudes.apply_hadamard(p);
    const double click = std::sqrt(opts.eta0);
    out.lost_weight += (1 - opts.eta0) * merged.weight();

    auto keep_branch = [&](HybridState &&b) {
        const double w = b.weight();
        if (w < opts.prune_below) {
            out.lost_weight += w;
        } else {
            out.branches.push_back(std::move(b));
        }
    };

    HybridState d1 = merged;
    d1.amplitudes.project(p, 0).scale(click);
    finish_measurement(d1, photon, 0, PhotonFate::D1, opts.keep_measured);
    keep_branch(std::move(d1));

    HybridState d2 = std::move(merged);
    d2.amplitudes.project(p, 1).scale(click);
    finish_measurement(d2, photon, 1, PhotonFate::D2, opts.keep_measured);
    keep_branch(std::move(d2));

    // D3 does not resolve polarization; the two arms are orthogonal so keeping
    // them as separate branches is equivalent to tracing the photon out.
    finish_measurement(arm1.error, photon, 1, PhotonFate::D3, opts.keep_measured);
    keep_branch(std::move(arm1.error));
    finish_measurement(arm2.error, photon, 0, PhotonFate::D3, opts.keep_measured);
    keep_branch(std::move(arm2.error));
    return out;
}

/// Projective +/- readout of both QDs. Returns four branches in the order
/// ++, +-, -+, --; the QD qubits are removed (or kept in the |0>/|1> image of
/// |+>/|-> when keep_measured).
struct QdBranch {
    std::array<QdSign, 2> signs;
    HybridState state;
};

inline std::vector<QdBranch> measure_qds(const HybridState &state, bool keep_measured = false) {
    std::vector<QdBranch> out;
    for (QdSign s1 : {QdSign::Plus, QdSign::Minus}) {
        for (QdSign s2 : {QdSign::Plus, QdSign::Minus}) {
            HybridState b = state;
            const size_t q1 = b.qd(QndDetector::QND1);
            const size_t q2 = b.qd(QndDetector::QND2);
            b.amplitudes.apply_hadamard(q1).apply_hadamard(q2);
            const int v1 = s1 == QdSign::Minus;
            const int v2 = s2 == QdSign::Minus;
            if (keep_measured) {
                b.amplitudes.project(q1, v1).project(q2, v2);
            } else {
                // Remove the later qubit first so the earlier index stays valid.
                if (q1 > q2) {
                    b.drop_qubit(q1, v1);
                    b.drop_qubit(b.qd(QndDetector::QND2), v2);
                } else {
                    b.drop_qubit(q2, v2);
                    b.drop_qubit(b.qd(QndDetector::QND1), v1);
                }
            }
            out.push_back({{s1, s2}, std::move(b)});
        }
    }
    return out;
}

/// Per-photon detector results plus the QD readout (absent when a photon was
/// lost and the run was aborted).
struct OutcomeRecord {
    std::vector<PhotonFate> detectors;
    std::optional<std::array<QdSign, 2>> qd_readout;
    double probability = 0;

    bool conclusive() const {
        return qd_readout.has_value() && std::all_of(detectors.begin(), detectors.end(), [](PhotonFate f) {
                   return f == PhotonFate::D1 || f == PhotonFate::D2;
               });
    }

    /// e.g. "HVV|+-", "H3L|"
    std::string key() const {
        std::string s;
        for (auto f : detectors) {
            s.push_back(fate_char(f));
        }
        s.push_back('|');
        if (qd_readout) {
            s.push_back(sign_char((*qd_readout)[0]));
            s.push_back(sign_char((*qd_readout)[1]));
        }
        return s;
    }
};

enum class AnalyzerMode { Ideal, Realistic };
enum class Enumeration { Exhaustive, MonteCarlo };

struct AnalyzerConfig {
    AnalyzerMode mode = AnalyzerMode::Ideal;
    /// Parameters of QND1 and QND2; ignored in ideal mode.
    std::array<CavityQDParams, 2> scattering{};
    /// Fixed photon frequency (µeV) or a Gaussian pulse averaged by quadrature.
    std::variant<double, PulseSpectrum> frequency = 0.0;
    double eta0 = 1.0;
    Enumeration enumeration = Enumeration::Exhaustive;
    uint64_t seed = 1;
    uint64_t shots = 100000;
    /// Gauss–Hermite nodes used for pulse averaging in exhaustive mode.
    size_t quadrature_nodes = 64;
    /// Order in which photons enter the circuit; empty means 0, 1, ..., n-1.
    std::vector<size_t> feed_order;
    double prune_below = 1e-15;

    void validate(size_t num_photons) const {
        if (!(eta0 >= 0 && eta0 <= 1)) {
            throw std::invalid_argument("AnalyzerConfig: eta0 must lie in [0, 1]");
        }
        if (mode == AnalyzerMode::Realistic) {
            scattering[0].validate();
            scattering[1].validate();
        }
        if (const auto *spec = std::get_if<PulseSpectrum>(&frequency)) {
            spec->validate();
        } else if (!std::isfinite(std::get<double>(frequency))) {
            throw std::invalid_argument("AnalyzerConfig: non-finite photon frequency");
        }
        if (enumeration == Enumeration::MonteCarlo && shots == 0) {
            throw std::invalid_argument("AnalyzerConfig: Monte-Carlo needs at least one shot");
        }
        if (!feed_order.empty()) {
            auto sorted = feed_order;
            std::sort(sorted.begin(), sorted.end());
            for (size_t j = 0; j < sorted.size(); j++) {
                if (sorted[j] != j) {
                    throw std::invalid_argument("AnalyzerConfig: feed_order is not a permutation");
                }
            }
            if (sorted.size() != num_photons) {
                throw std::invalid_argument("AnalyzerConfig: feed_order length does not match photon count");
            }
        }
    }

    std::vector<size_t> order(size_t n) const {
        if (!feed_order.empty()) {
            return feed_order;
        }
        std::vector<size_t> o(n);
        std::iota(o.begin(), o.end(), 0);
        return o;
    }

    std::array<ReflectionPair, 2> reflections(double omega) const {
        if (mode == AnalyzerMode::Ideal) {
            return {ReflectionPair::ideal(), ReflectionPair::ideal()};
        }
        return {reflection_coeffs(scattering[0], omega), reflection_coeffs(scattering[1], omega)};
    }
};

/// Outcome distribution of one analyzer run, merged over identical records and
/// sorted by record key.
struct AnalyzerResult {
    size_t num_photons = 0;
    std::vector<OutcomeRecord> records;

    double total_probability() const {
        double t = 0;
        for (const auto &r : records) {
            t += r.probability;
        }
        return t;
    }
    double conclusive_probability() const {
        double t = 0;
        for (const auto &r : records) {
            if (r.conclusive()) {
                t += r.probability;
            }
        }
        return t;
    }
};

namespace detail {

struct RecordLess {
    bool operator()(const OutcomeRecord &a, const OutcomeRecord &b) const {
        return a.key() < b.key();
    }
};

class RecordAccumulator {
   public:
    explicit RecordAccumulator(size_t n) : n_(n) {
    }
    void add(std::vector<PhotonFate> detectors, std::optional<std::array<QdSign, 2>> qd, double p) {
        OutcomeRecord r{std::move(detectors), qd, 0};
        std::string k = r.key();
        auto it = records_.find(k);
        if (it == records_.end()) {
            r.probability = p;
            records_.emplace(std::move(k), std::move(r));
        } else {
            it->second.probability += p;
        }
    }
    /// A photon was lost: the run stops and every photon not yet detected is
    /// reported as Lost.
    void add_lost(std::vector<PhotonFate> detectors, double p) {
        if (!(p > 0)) {
            return;
        }
        for (auto &f : detectors) {
            if (f == PhotonFate::InCircuit) {
                f = PhotonFate::Lost;
            }
        }
        add(std::move(detectors), std::nullopt, p);
    }
    void merge(const RecordAccumulator &other, double scale) {
        for (const auto &[k, r] : other.records_) {
            add(r.detectors, r.qd_readout, scale * r.probability);
        }
    }
    AnalyzerResult result() const {
        AnalyzerResult out;
        out.num_photons = n_;
        for (const auto &[k, r] : records_) {
            out.records.push_back(r);
        }
        return out;
    }

   private:
    size_t n_;
    std::map<std::string, OutcomeRecord> records_;
};

inline void check_input(const QubitRegister &input) {
    if (input.num_qubits() < 2) {
        throw std::invalid_argument("run_analyzer: need at least 2 photons");
    }
    if (!input.is_normalized(1e-10)) {
        throw std::invalid_argument("run_analyzer: input state is not normalized");
    }
}

/// Depth-first enumeration at a fixed frequency; the leaf visitor receives each
/// terminal branch after the QD readout.
template <typename Leaf, typename LostFn>
void enumerate_branches(
    const HybridState &state, const std::vector<size_t> &order, size_t step, const std::array<ReflectionPair, 2> &refl,
    const PassOptions &opts, Leaf &&leaf, LostFn &&lost) {
    if (step == order.size()) {
        for (auto &qb : measure_qds(state, opts.keep_measured)) {
            leaf(qb);
        }
        return;
    }
    auto pass = pass_photon(state, order[step], refl, opts);
    auto fates = state.fates;
    fates[order[step]] = PhotonFate::Lost;
    lost(fates, pass.lost_weight);
    for (const auto &b : pass.branches) {
        enumerate_branches(b, order, step + 1, refl, opts, leaf, lost);
    }
}

inline RecordAccumulator run_exhaustive_at(
    const QubitRegister &input, const AnalyzerConfig &config, double omega) {
    const size_t n = input.num_qubits();
    RecordAccumulator acc(n);
    PassOptions opts{config.eta0, config.prune_below, false};
    enumerate_branches(
        HybridState::prepare(input), config.order(n), 0, config.reflections(omega), opts,
        [&](const QdBranch &qb) {
            const double w = qb.state.weight();
            if (w > 0) {
                acc.add(qb.state.fates, qb.signs, w);
            }
        },
        [&](const std::vector<PhotonFate> &fates, double w) { acc.add_lost(fates, w); });
    return acc;
}

/// Uniform double in [0, 1) from the top 53 bits; identical on every platform.
inline double uniform01(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double standard_normal(std::mt19937_64 &rng) {
    double u1 = uniform01(rng);
    while (u1 <= 0) {
        u1 = uniform01(rng);
    }
    const double u2 = uniform01(rng);
    return std::sqrt(-2 * std::log(u1)) * std::cos(2 * std::numbers::pi * u2);
}

inline AnalyzerResult run_monte_carlo(const QubitRegister &input, const AnalyzerConfig &config) {
    const size_t n = input.num_qubits();
    const auto order = config.order(n);
    const PassOptions opts{config.eta0, 0.0, false};
    std::mt19937_64 rng(config.seed);
    RecordAccumulator acc(n);
    const double unit = 1.0 / static_cast<double>(config.shots);

    for (uint64_t shot = 0; shot < config.shots; shot++) {
        double omega = 0;
        if (const auto *spec = std::get_if<PulseSpectrum>(&config.frequency)) {
            // f(omega) is a normal density with standard deviation sigma / sqrt2.
            omega = spec->omega_c + spec->sigma * kInvSqrt2 * standard_normal(rng);
        } else {
            omega = std::get<double>(config.frequency);
        }
        const auto refl = config.reflections(omega);

        HybridState state = HybridState::prepare(input);
        bool aborted = false;
        for (size_t photon : order) {
            auto pass = pass_photon(state, photon, refl, opts);
            double total = pass.lost_weight;
            for (const auto &b : pass.branches) {
                total += b.weight();
            }
            double u = uniform01(rng) * total;
            const HybridState *chosen = nullptr;
            for (const auto &b : pass.branches) {
                u -= b.weight();
                if (u < 0) {
                    chosen = &b;
                    break;
                }
            }
            if (chosen == nullptr) {
                auto fates = state.fates;
                fates[photon] = PhotonFate::Lost;
                acc.add_lost(std::move(fates), unit);
                aborted = true;
                break;
            }
            state = *chosen;
            state.amplitudes.normalize();
        }
        if (aborted) {
            continue;
        }
        auto qds = measure_qds(state);
        double u = uniform01(rng);
        const QdBranch *pick = &qds.back();
        for (const auto &qb : qds) {
            u -= qb.state.weight();
            if (u < 0) {
                pick = &qb;
                break;
            }
        }
        acc.add(pick->state.fates, pick->signs, unit);
    }
    return acc.result();
}

}  // namespace detail

/// Simulates the analyzer on an n-photon input with both QDs prepared in |+>.
/// Photons are fed one at a time in `config.order`; after the last photon the
/// QDs are read out in the +/- basis.
inline AnalyzerResult run_analyzer(const QubitRegister &input, const AnalyzerConfig &config) {
    detail::check_input(input);
    config.validate(input.num_qubits());
    if (config.enumeration == Enumeration::MonteCarlo) {
        return detail::run_monte_carlo(input, config);
    }
    if (const auto *spec = std::get_if<PulseSpectrum>(&config.frequency)) {
        if (config.mode == AnalyzerMode::Ideal) {
            return detail::run_exhaustive_at(input, config, spec->omega_c).result();
        }
        const auto &rule = cached_gauss_hermite_rule(config.quadrature_nodes);
        detail::RecordAccumulator acc(input.num_qubits());
        for (size_t k = 0; k < rule.size(); k++) {
            const double omega = spec->omega_c + spec->sigma * rule.nodes[k];
            acc.merge(detail::run_exhaustive_at(input, config, omega), rule.weights[k] / std::sqrt(std::numbers::pi));
        }
        return acc.result();
    }
    return detail::run_exhaustive_at(input, config, std::get<double>(config.frequency)).result();
}

/// GHZ label heralded by a record, or nullopt for an inconclusive record.
///
/// Polarization bits come from the detectors (D1 = H = 0, D2 = V = 1) relative
/// to the last photon; the phase bit comes from the QD pair, whose admissible
/// values depend on the parity of n.
inline std::optional<GhzLabel> classify(const OutcomeRecord &record, size_t n) {
    if (record.detectors.size() != n) {
        throw std::invalid_argument(
            "classify: record has " + std::to_string(record.detectors.size()) + " photons, expected " +
            std::to_string(n));
    }
    if (!record.conclusive()) {
        return std::nullopt;
    }
    std::vector<uint8_t> bits(n);
    const uint8_t last = record.detectors[n - 1] == PhotonFate::D2;
    for (size_t j = 0; j + 1 < n; j++) {
        bits[j] = static_cast<uint8_t>((record.detectors[j] == PhotonFate::D2) ^ last);
    }
    const auto [q1, q2] = *record.qd_readout;
    if (n % 2 == 0) {
        if (q1 != q2) {
            return std::nullopt;
        }
        bits[n - 1] = q1 == QdSign::Minus;
    } else {
        if (q1 == q2) {
            return std::nullopt;
        }
        bits[n - 1] = q1 == QdSign::Minus;
    }
    return GhzLabel(std::move(bits));
}

/// Distribution over heralded labels ("inconclusive" collects the rest).
struct ClassificationSummary {
    std::map<std::string, double> distribution;
    double conclusive_probability = 0;
    double inconclusive_probability = 0;
    /// P(heralded label == truth | conclusive); only set when a truth is given.
    std::optional<double> conditional_fidelity;
};

inline ClassificationSummary summarize(const AnalyzerResult &result, const std::optional<GhzLabel> &truth = {}) {
    ClassificationSummary s;
    double correct = 0;
    for (const auto &r : result.records) {
        auto label = classify(r, result.num_photons);
        if (label) {
            s.distribution[label->str()] += r.probability;
            s.conclusive_probability += r.probability;
            if (truth && *label == *truth) {
                correct += r.probability;
            }
        } else {
            s.distribution["inconclusive"] += r.probability;
            s.inconclusive_probability += r.probability;
        }
    }
    if (truth && s.conclusive_probability > 0) {
        s.conditional_fidelity = correct / s.conclusive_probability;
    }
    return s;
}

struct BellAnalysis {
    /// Indexed by BellIndex.
    std::array<double, 4> probabilities{};
    double inconclusive = 0;
    AnalyzerResult raw;
};

inline BellAnalysis analyze_bell(const QubitRegister &input, const AnalyzerConfig &config) {
    if (input.num_qubits() != 2) {
        throw std::invalid_argument("analyze_bell: input must have exactly 2 photons");
    }
    BellAnalysis out;
    out.raw = run_analyzer(input, config);
    for (const auto &r : out.raw.records) {
        if (auto label = classify(r, 2)) {
            out.probabilities[static_cast<size_t>(bell_from_label(*label))] += r.probability;
        } else {
            out.inconclusive += r.probability;
        }
    }
    return out;
}

/// Ideal, detection-free passage of all photons through HWP -> QND -> HWP in the
/// block pattern (every photon clears one element before any enters the next).
/// Returns the joint photons (x) QD1 (x) QD2 state after each of the three stages.
struct CoherentStages {
    QubitRegister after_first_hwp;
    QubitRegister after_qnd;
    QubitRegister after_second_hwp;
};

inline CoherentStages coherent_analyzer_stages(const QubitRegister &photons) {
    const size_t n = photons.num_qubits();
    HybridState s = HybridState::prepare(photons);
    CoherentStages out;
    for (size_t j = 0; j < n; j++) {
        s.amplitudes.apply_hadamard(j);
    }
    out.after_first_hwp = s.amplitudes;
    for (size_t j = 0; j < n; j++) {
        HybridState v = s;
        v.amplitudes.project(j, 1);
        HybridState h = std::move(s);
        h.amplitudes.project(j, 0);
        auto a1 = qnd_scatter(v, j, QndDetector::QND1, ReflectionPair::ideal());
        auto a2 = qnd_scatter(h, j, QndDetector::QND2, ReflectionPair::ideal());
        s = std::move(a1.flipped);
        s.amplitudes += a2.flipped.amplitudes;
    }
    out.after_qnd = s.amplitudes;
    for (size_t j = 0; j < n; j++) {
        s.amplitudes.apply_hadamard(j);
    }
    out.after_second_hwp = s.amplitudes;
    return out;
}

}  // namespace ghzsim
