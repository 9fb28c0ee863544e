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

#include <string>
#include <vector>

#include "ghzsim/circuit.hpp"
#include "ghzsim/cli/config.hpp"
#include "ghzsim/cli/report.hpp"
#include "ghzsim/cli/sweep.hpp"
#include "ghzsim/network.hpp"
#include "ghzsim/scattering.hpp"
#include "ghzsim/states.hpp"

namespace ghzsim::cli {

inline constexpr const char *kStateGrammar = "GHZ:<bits> (2 to 10 bits, e.g. GHZ:010) or BELL:{phi+,phi-,psi+,psi-}";
inline constexpr size_t kMaxAnalyzePhotons = 10;

struct StateSpec {
    std::string text;
    QubitRegister state;
    GhzLabel label;
    bool bell = false;
};

inline StateSpec parse_state_spec(const std::string &text) {
    auto fail = [&]() -> StateSpec {
        throw std::invalid_argument("invalid state '" + text + "'; expected " + kStateGrammar);
    };
    StateSpec out;
    out.text = text;
    if (text.starts_with("GHZ:")) {
        const std::string bits = text.substr(4);
        if (bits.size() < 2 || bits.size() > kMaxAnalyzePhotons ||
            bits.find_first_not_of("01") != std::string::npos) {
            return fail();
        }
        out.label = GhzLabel::parse(bits);
        out.state = ghz_state(bits.size(), out.label);
        return out;
    }
    if (text.starts_with("BELL:")) {
        BellIndex b;
        try {
            b = parse_bell_name(text.substr(5));
        } catch (const std::invalid_argument &) {
            return fail();
        }
        out.bell = true;
        out.label = bell_label(b);
        out.state = bell_state(b);
        return out;
    }
    return fail();
}

inline AnalyzerMode parse_mode(const std::string &s) {
    if (s == "ideal") {
        return AnalyzerMode::Ideal;
    }
    if (s == "realistic") {
        return AnalyzerMode::Realistic;
    }
    throw std::invalid_argument("mode must be 'ideal' or 'realistic', got '" + s + "'");
}

inline CavityQDParams cavity_params(const Settings &s) {
    CavityQDParams p;
    p.g = s.number("cavity.g");
    p.kappa = s.number("cavity.kappa");
    p.kappa_s = s.number("cavity.kappa_s");
    p.gamma = s.number("cavity.gamma");
    p.omega_c = s.number("cavity.omega_c");
    p.omega_x = s.number("cavity.omega_x");
    p.validate();
    return p;
}

inline PulseSpectrum pulse_spectrum(const Settings &s) {
    PulseSpectrum spec;
    spec.omega_c = s.number("pulse.omega_c");
    spec.sigma = s.number("pulse.sigma");
    spec.validate();
    return spec;
}

inline QuadratureOptions quadrature_options(const Settings &s) {
    QuadratureOptions q;
    q.nodes = static_cast<size_t>(s.integer("quadrature.nodes"));
    q.tolerance = s.number("quadrature.tolerance");
    return q;
}

inline double detector_efficiency(const Settings &s) {
    const double eta0 = s.number("detector.eta0");
    if (!(eta0 >= 0 && eta0 <= 1)) {
        throw std::invalid_argument("detector.eta0 must lie in [0, 1]");
    }
    return eta0;
}

inline size_t photon_count(const std::string &key, double v) {
    if (!(v >= 1) || v != std::floor(v) || v > 1000) {
        throw std::invalid_argument(key + ": photon numbers must be integers between 1 and 1000");
    }
    return static_cast<size_t>(v);
}

inline RunReport begin_report(const std::string &command, const Settings &s) {
    RunReport r;
    r.metadata.emplace_back("version", kVersion);
    r.metadata.emplace_back("command", command);
    for (const auto &[k, v] : s.all()) {
        r.metadata.emplace_back(k, v);
    }
    return r;
}

inline RunReport cmd_reflection(const Settings &s) {
    const auto p = cavity_params(s);
    SweepAxis axis{"omega", s.number("reflection.omega_min"), s.number("reflection.omega_max"),
                   static_cast<size_t>(s.integer("reflection.steps")), AxisScale::Linear};
    auto r = begin_report("reflection", s);
    r.columns = {"omega_ueV", "re_r0", "im_r0", "re_r1", "im_r1", "eta1", "p2"};
    for (double w : axis.values()) {
        const auto refl = reflection_coeffs(p, w);
        r.add_row({w, refl.r0.real(), refl.r0.imag(), refl.r1.real(), refl.r1.imag(), eta1(refl), error_prob(refl)});
    }
    return r;
}

inline RunReport cmd_efficiency_map(const Settings &s) {
    const auto base = cavity_params(s);
    const auto spec = pulse_spectrum(s);
    const auto opts = quadrature_options(s);
    const double eta0 = detector_efficiency(s);
    const size_t n = photon_count("efficiency_map.n", static_cast<double>(s.integer("efficiency_map.n")));
    SweepGrid grid;
    grid.axes.push_back({"g_over_ks", s.number("efficiency_map.g_min"), s.number("efficiency_map.g_max"),
                         static_cast<size_t>(s.integer("efficiency_map.g_steps")),
                         parse_axis_scale(s.str("efficiency_map.g_scale"))});
    grid.axes.push_back({"k_over_ks", s.number("efficiency_map.k_min"), s.number("efficiency_map.k_max"),
                         static_cast<size_t>(s.integer("efficiency_map.k_steps")),
                         parse_axis_scale(s.str("efficiency_map.k_scale"))});
    const auto points = grid.points();
    auto values = parallel_map<double>(points.size(), [&](size_t i) {
        CavityQDParams p = base;
        p.g = points[i][0] * base.kappa_s;
        p.kappa = points[i][1] * base.kappa_s;
        return average_efficiency(p, spec, n, eta0, opts);
    });
    auto r = begin_report("efficiency-map", s);
    r.columns = {"g_over_ks", "k_over_ks", "eta_n_s"};
    for (size_t i = 0; i < points.size(); i++) {
        r.add_row({points[i][0], points[i][1], values[i]});
    }
    return r;
}

inline RunReport cmd_table1(const Settings &s) {
    const auto p = cavity_params(s);
    const auto spec = pulse_spectrum(s);
    const auto opts = quadrature_options(s);
    const double eta0 = detector_efficiency(s);
    const double t2_prime = s.number("table1.t2_prime_ns");
    const double t2_doubleprime = s.number("table1.t2_doubleprime_ns");
    std::vector<size_t> ns;
    for (double v : s.numbers("table1.n")) {
        ns.push_back(photon_count("table1.n", v));
    }
    auto rows = parallel_map<std::vector<double>>(ns.size(), [&](size_t i) {
        const size_t n = ns[i];
        return std::vector<double>{static_cast<double>(n), fidelity_fn(n, t2_prime, spec),
                                   fidelity_fn(n, t2_doubleprime, spec), average_efficiency(p, spec, n, eta0, opts)};
    });
    auto r = begin_report("table1", s);
    r.columns = {"n", "F_prime", "F_doubleprime", "eta_n_s"};
    for (auto &row : rows) {
        r.add_row(std::move(row));
    }
    return r;
}

inline std::string detector_string(const std::vector<PhotonFate> &d) {
    std::string out;
    for (auto f : d) {
        out.push_back(fate_char(f));
    }
    return out;
}

inline std::string qd_string(const std::optional<std::array<QdSign, 2>> &qd) {
    if (!qd) {
        return "";
    }
    return {sign_char((*qd)[0]), sign_char((*qd)[1])};
}

inline std::string label_name(const GhzLabel &label, bool bell) {
    return bell ? bell_name(bell_from_label(label)) : label.str();
}

inline RunReport cmd_analyze(const Settings &s) {
    const auto input = parse_state_spec(s.str("analyze.state"));
    AnalyzerConfig cfg;
    cfg.mode = parse_mode(s.str("analyze.mode"));
    const auto p = cavity_params(s);
    cfg.scattering = {p, p};
    const std::string &frequency = s.str("analyze.frequency");
    if (frequency == "fixed") {
        cfg.frequency = s.number("analyze.omega");
    } else if (frequency == "pulse") {
        cfg.frequency = pulse_spectrum(s);
    } else {
        throw std::invalid_argument("analyze.frequency must be 'fixed' or 'pulse', got '" + frequency + "'");
    }
    cfg.eta0 = detector_efficiency(s);
    const std::string &enumeration = s.str("analyze.enumeration");
    if (enumeration == "exhaustive") {
        cfg.enumeration = Enumeration::Exhaustive;
    } else if (enumeration == "monte-carlo") {
        cfg.enumeration = Enumeration::MonteCarlo;
    } else {
        throw std::invalid_argument(
            "analyze.enumeration must be 'exhaustive' or 'monte-carlo', got '" + enumeration + "'");
    }
    cfg.seed = s.integer("run.seed");
    cfg.shots = s.integer("run.shots");
    cfg.quadrature_nodes = static_cast<size_t>(s.integer("quadrature.nodes"));

    const auto result = run_analyzer(input.state, cfg);
    const auto summary = summarize(result, input.label);

    nlohmann::ordered_json doc;
    doc["input"] = input.text;
    doc["num_photons"] = result.num_photons;
    nlohmann::ordered_json outcomes = nlohmann::ordered_json::array();
    for (const auto &rec : result.records) {
        nlohmann::ordered_json o;
        o["detectors"] = detector_string(rec.detectors);
        o["qd"] = qd_string(rec.qd_readout);
        o["probability"] = rec.probability;
        auto label = classify(rec, result.num_photons);
        o["label"] = label ? label_name(*label, input.bell) : "inconclusive";
        outcomes.push_back(std::move(o));
    }
    doc["outcomes"] = std::move(outcomes);
    nlohmann::ordered_json classes = nlohmann::ordered_json::object();
    for (const auto &[k, v] : summary.distribution) {
        classes[k == "inconclusive" ? k : label_name(GhzLabel::parse(k), input.bell)] = v;
    }
    doc["classification"] = std::move(classes);
    doc["conclusive_probability"] = summary.conclusive_probability;
    doc["total_probability"] = result.total_probability();
    if (summary.conditional_fidelity) {
        doc["conditional_fidelity"] = *summary.conditional_fidelity;
    } else {
        doc["conditional_fidelity"] = nullptr;
    }

    auto r = begin_report("analyze", s);
    r.document = std::move(doc);
    return r;
}

inline RunReport cmd_swap(const Settings &s) {
    const auto pairs = s.integer("swap.pairs");
    if (pairs != 2 && pairs != 3) {
        throw std::invalid_argument("swap.pairs must be 2 or 3");
    }
    AnalyzerConfig cfg;
    cfg.mode = parse_mode(s.str("swap.mode"));
    const auto p = cavity_params(s);
    cfg.scattering = {p, p};
    cfg.frequency = s.number("swap.omega");
    cfg.eta0 = detector_efficiency(s);

    const auto report = run_swap(static_cast<size_t>(pairs), cfg);
    nlohmann::ordered_json doc;
    doc["pairs"] = pairs;
    nlohmann::ordered_json outcomes = nlohmann::ordered_json::array();
    for (const auto &o : report.outcomes) {
        nlohmann::ordered_json j;
        j["detectors"] = detector_string(o.detectors);
        j["qd"] = qd_string(o.qd);
        j["label"] = o.predicted.size() ? label_name(o.predicted, pairs == 2) : "inconclusive";
        j["probability"] = o.probability;
        j["fidelity"] = o.fidelity;
        j["purity"] = o.purity;
        outcomes.push_back(std::move(j));
    }
    doc["outcomes"] = std::move(outcomes);
    doc["success_probability"] = report.success_probability;
    doc["aborted_probability"] = report.aborted_probability;
    doc["lost_probability"] = report.lost_probability;

    auto r = begin_report("swap", s);
    r.document = std::move(doc);
    return r;
}

}  // namespace ghzsim::cli
