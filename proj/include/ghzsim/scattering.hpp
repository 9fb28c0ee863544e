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
#include <cstdio>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ghzsim/quadrature.hpp"

namespace ghzsim {

/// Reduced Planck constant in the unit system used throughout (energies in
/// micro-electronvolts, times in nanoseconds).
inline constexpr double kHbarUeVNs = 0.6582119569;

/// Raised when a spectral average does not settle under node doubling.
class ConvergenceError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// One quantum-dot/cavity unit. All rates and frequencies in µeV.
///
/// omega_x defaults to omega_c: the trion line is tuned onto the cavity.
struct CavityQDParams {
    double g = 30;
    double kappa = 90;
    double kappa_s = 30;
    double gamma = 0.3;
    double omega_c = 0;
    double omega_x = 0;

    double kappa_total() const {
        return kappa + kappa_s;
    }

    /// Throws std::invalid_argument unless every field is finite, every rate
    /// is non-negative and kappa is strictly positive.
    void validate() const {
        for (double v : {g, kappa, kappa_s, gamma, omega_c, omega_x}) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("CavityQDParams: non-finite parameter");
            }
        }
        if (g < 0 || kappa_s < 0 || gamma < 0) {
            throw std::invalid_argument("CavityQDParams: rates must be non-negative");
        }
        if (!(kappa > 0)) {
            throw std::invalid_argument("CavityQDParams: kappa must be positive");
        }
    }

    bool operator==(const CavityQDParams &) const = default;
};

/// Gaussian single-photon spectrum centred on omega_c with width sigma (µeV).
struct PulseSpectrum {
    double omega_c = 0;
    double sigma = 0.3;

    void validate() const {
        if (!std::isfinite(omega_c) || !std::isfinite(sigma) || !(sigma > 0)) {
            throw std::invalid_argument("PulseSpectrum: sigma must be finite and positive");
        }
    }

    bool operator==(const PulseSpectrum &) const = default;
};

/// Reflection amplitudes for the uncoupled (r0) and coupled (r1) spin branch.
struct ReflectionPair {
    std::complex<double> r0;
    std::complex<double> r1;

    /// Amplitude of the polarization-and-spin flip branch.
    std::complex<double> flip_amplitude() const {
        return (r1 - r0) / 2.0;
    }
    /// Amplitude of the unchanged (error) branch.
    std::complex<double> error_amplitude() const {
        return (r1 + r0) / 2.0;
    }

    static ReflectionPair ideal() {
        return {-1.0, 1.0};
    }
};

inline ReflectionPair reflection_coeffs(const CavityQDParams &params, double omega) {
    params.validate();
    if (!std::isfinite(omega)) {
        throw std::invalid_argument("reflection_coeffs: non-finite frequency");
    }
    using namespace std::complex_literals;
    const std::complex<double> cavity = 1i * (params.omega_c - omega) + params.kappa / 2 + params.kappa_s / 2;
    const std::complex<double> f = 1i * (params.omega_x - omega) + params.gamma / 2;
    ReflectionPair out;
    out.r0 = 1.0 - params.kappa / cavity;
    out.r1 = 1.0 - params.kappa * f / (cavity * f + params.g * params.g);
    return out;
}

/// C = g^2 / (gamma (kappa + kappa_s)).
inline double cooperativity(const CavityQDParams &params) {
    params.validate();
    if (!(params.gamma > 0) || !(params.kappa_total() > 0)) {
        throw std::invalid_argument("cooperativity: requires gamma > 0 and kappa + kappa_s > 0");
    }
    return params.g * params.g / (params.gamma * params.kappa_total());
}

inline double eta1(const ReflectionPair &r) {
    return std::norm(r.flip_amplitude());
}
inline double eta1(const CavityQDParams &params, double omega) {
    return eta1(reflection_coeffs(params, omega));
}

inline double error_prob(const ReflectionPair &r) {
    return std::norm(r.error_amplitude());
}
inline double error_prob(const CavityQDParams &params, double omega) {
    return error_prob(reflection_coeffs(params, omega));
}

inline double spectral_density(const PulseSpectrum &spec, double omega) {
    spec.validate();
    const double x = (omega - spec.omega_c) / spec.sigma;
    return std::exp(-x * x) / (std::sqrt(std::numbers::pi) * spec.sigma);
}

/// Thread-safe cache of Gauss–Hermite rules keyed by node count.
inline const GaussHermiteRule &cached_gauss_hermite_rule(size_t n) {
    static std::mutex mu;
    static std::map<size_t, GaussHermiteRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.emplace(n, gauss_hermite_rule(n)).first;
    }
    return it->second;
}

/// Spectral average of g(omega) over a PulseSpectrum using `nodes` Gauss–Hermite
/// points (substitution x = (omega - omega_c)/sigma).
template <typename Fn>
double spectral_average(const PulseSpectrum &spec, size_t nodes, Fn &&g) {
    spec.validate();
    const auto &rule = cached_gauss_hermite_rule(nodes);
    return integrate(rule, [&](double x) { return g(spec.omega_c + spec.sigma * x); }) / std::sqrt(std::numbers::pi);
}

struct QuadratureOptions {
    size_t nodes = 64;
    double tolerance = 1e-8;
    size_t max_nodes = 1024;
};

struct QuadratureResult {
    double value = 0;
    /// |Q(2 nodes) - Q(nodes)| at the accepted node count.
    double doubling_delta = 0;
    size_t nodes = 0;
};

/// Pulse-averaged n-photon conclusive efficiency
///   integral d omega f(omega) eta0^n |(r1 - r0)/2|^(2n).
/// The node count starts at opts.nodes and doubles until two consecutive
/// estimates agree to opts.tolerance; the coarser of the two is reported.
inline QuadratureResult average_efficiency_detailed(
    const CavityQDParams &params, const PulseSpectrum &spec, int n, double eta0, const QuadratureOptions &opts = {}) {
    params.validate();
    spec.validate();
    if (n < 1) {
        throw std::invalid_argument("average_efficiency: photon count must be >= 1");
    }
    if (!(eta0 >= 0 && eta0 <= 1)) {
        throw std::invalid_argument("average_efficiency: eta0 must lie in [0, 1]");
    }
    auto integrand = [&](double omega) { return std::pow(eta1(params, omega), n); };
    const double prefactor = std::pow(eta0, n);

    size_t nodes = opts.nodes;
    double coarse = prefactor * spectral_average(spec, nodes, integrand);
    double delta = 0;
    while (true) {
        double fine = prefactor * spectral_average(spec, 2 * nodes, integrand);
        delta = std::abs(fine - coarse);
        if (delta <= opts.tolerance) {
            return {coarse, delta, nodes};
        }
        if (2 * nodes > opts.max_nodes) {
            char msg[160];
            std::snprintf(
                msg, sizeof(msg), "average_efficiency: node doubling delta %.3g exceeds tolerance %.3g at %zu nodes",
                delta, opts.tolerance, 2 * nodes);
            throw ConvergenceError(msg);
        }
        nodes *= 2;
        coarse = fine;
    }
}

inline double average_efficiency(
    const CavityQDParams &params, const PulseSpectrum &spec, int n, double eta0 = 1.0, const QuadratureOptions &opts = {}) {
    return average_efficiency_detailed(params, spec, n, eta0, opts).value;
}

/// Duration of one single-photon scattering event, t0 = hbar / sigma (ns).
inline double scattering_time_ns(const PulseSpectrum &spec) {
    spec.validate();
    return kHbarUeVNs / spec.sigma;
}

/// Dephasing-limited fidelity F_n = [1 + exp(-n t0 / T2)]^2 / 4, T2 in ns.
inline double fidelity_fn(int n, double t2_ns, const PulseSpectrum &spec) {
    if (n < 1) {
        throw std::invalid_argument("fidelity_fn: photon count must be >= 1");
    }
    if (!(t2_ns > 0)) {
        throw std::invalid_argument("fidelity_fn: T2 must be positive");
    }
    const double tn = n * scattering_time_ns(spec);
    const double coherence = std::isinf(t2_ns) ? 1.0 : std::exp(-tn / t2_ns);
    const double s = 1 + coherence;
    return s * s / 4;
}

}  // namespace ghzsim
