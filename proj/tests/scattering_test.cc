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

#include "ghzsim/scattering.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include "gtest/gtest.h"

using namespace ghzsim;

namespace {

// Spot parameters: g = kappa_s = 30, kappa = 3 kappa_s, gamma = 0.3 (µeV).
CavityQDParams fig4_params(double kappa_ratio = 3) {
    return CavityQDParams{.g = 30, .kappa = kappa_ratio * 30, .kappa_s = 30, .gamma = 0.3};
}

// Reference set: kappa = 9 kappa_s, sigma = 2 gamma.
CavityQDParams table1_params() {
    return fig4_params(9);
}

}  // namespace

// Expected values below were computed with tests/oracles/reflection_oracle.py
// (mpmath, 40 digits, direct evaluation and adaptive tanh-sinh quadrature).

TEST(reflection_coeffs, empty_lossless_cavity_on_resonance) {
    CavityQDParams p{.g = 0, .kappa = 90, .kappa_s = 0, .gamma = 0.3};
    auto r = reflection_coeffs(p, 0.0);
    EXPECT_NEAR(r.r0.real(), -1.0, 1e-15);
    EXPECT_NEAR(r.r0.imag(), 0.0, 1e-15);
}

TEST(reflection_coeffs, side_leakage_reduces_r0) {
    auto r = reflection_coeffs(fig4_params(3), 0.0);
    EXPECT_NEAR(r.r0.real(), -0.5, 1e-15);
    EXPECT_NEAR(r.r0.imag(), 0.0, 1e-15);
}

TEST(reflection_coeffs, matches_high_precision_oracle) {
    auto r = reflection_coeffs(fig4_params(3), 0.0);
    EXPECT_NEAR(r.r1.real(), 0.98514851485148514906, 1e-14);
    EXPECT_NEAR(r.r1.imag(), 0.0, 1e-15);

    auto d = reflection_coeffs(table1_params(), 0.25);
    EXPECT_NEAR(d.r0.real(), -0.79999500001388885031, 1e-14);
    EXPECT_NEAR(d.r0.imag(), -0.0029999916666898147505, 1e-14);
    EXPECT_NEAR(d.r1.real(), 0.95319429807421716863, 1e-14);
    EXPECT_NEAR(d.r1.imag(), 0.07127098688416388864, 1e-14);
}

TEST(reflection_coeffs, rejects_bad_input) {
    auto p = fig4_params();
    EXPECT_THROW(reflection_coeffs(p, std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
    EXPECT_THROW(reflection_coeffs(p, std::numeric_limits<double>::infinity()), std::invalid_argument);
    p.g = std::numeric_limits<double>::infinity();
    EXPECT_THROW(reflection_coeffs(p, 0.0), std::invalid_argument);
    p = fig4_params();
    p.kappa = 0;
    EXPECT_THROW(reflection_coeffs(p, 0.0), std::invalid_argument);
    p = fig4_params();
    p.gamma = -1;
    EXPECT_THROW(reflection_coeffs(p, 0.0), std::invalid_argument);
}

TEST(reflection_coeffs, magnitudes_bounded_and_loss_nonnegative) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> rate(0.0, 200.0);
    std::uniform_real_distribution<double> detune(-50.0, 50.0);
    for (int trial = 0; trial < 200; trial++) {
        CavityQDParams p{
            .g = rate(rng), .kappa = 0.1 + rate(rng), .kappa_s = rate(rng), .gamma = rate(rng) / 50,
            .omega_c = detune(rng) / 10, .omega_x = detune(rng) / 10};
        for (int k = -400; k <= 400; k++) {
            const double omega = k * 0.25;
            auto r = reflection_coeffs(p, omega);
            ASSERT_LE(std::abs(r.r0), 1 + 1e-12);
            ASSERT_LE(std::abs(r.r1), 1 + 1e-12);
            const double sum = eta1(r) + error_prob(r);
            ASSERT_GE(sum, -1e-15);
            ASSERT_LE(sum, 1 + 1e-12);
        }
    }
}

TEST(cooperativity, reference_values) {
    EXPECT_NEAR(cooperativity(fig4_params(3)), 25.0, 1e-12);
    EXPECT_NEAR(cooperativity(table1_params()), 10.0, 1e-12);
    EXPECT_NEAR(cooperativity(fig4_params(19)), 5.0, 1e-12);
    auto p = fig4_params();
    p.g = 0;
    EXPECT_EQ(cooperativity(p), 0.0);
}

TEST(cooperativity, rejects_zero_gamma) {
    auto p = fig4_params();
    p.gamma = 0;
    EXPECT_THROW(cooperativity(p), std::invalid_argument);
}

TEST(eta1, limits_and_oracle) {
    EXPECT_NEAR(eta1(ReflectionPair::ideal()), 1.0, 1e-15);
    CavityQDParams empty{.g = 0, .kappa = 90, .kappa_s = 0, .gamma = 0.3};
    EXPECT_NEAR(eta1(empty, 0.0), 0.0, 1e-15);
    EXPECT_NEAR(eta1(fig4_params(3), 0.0), 0.55141652779139300109, 1e-14);
}

TEST(error_prob, limits_and_oracle) {
    EXPECT_NEAR(error_prob(ReflectionPair::ideal()), 0.0, 1e-15);
    ReflectionPair same{{0.3, -0.4}, {0.3, -0.4}};
    EXPECT_NEAR(error_prob(same), std::norm(same.r1), 1e-15);
    EXPECT_NEAR(eta1(same), 0.0, 1e-15);
    EXPECT_NEAR(error_prob(fig4_params(3), 0.0), 0.058842270365650426561, 1e-14);
}

TEST(spectral_density, normalized_gaussian) {
    PulseSpectrum spec{.omega_c = 1.5, .sigma = 0.6};
    // Trapezoid rule over +-12 sigma (spectrally accurate for a Gaussian).
    const double h = spec.sigma / 200;
    double total = 0;
    for (int k = -2400; k <= 2400; k++) {
        total += spectral_density(spec, spec.omega_c + k * h);
    }
    EXPECT_NEAR(total * h, 1.0, 1e-10);
    const double peak = spectral_density(spec, spec.omega_c);
    EXPECT_NEAR(peak, 1 / (std::sqrt(std::numbers::pi) * spec.sigma), 1e-15);
    EXPECT_NEAR(spectral_density(spec, spec.omega_c + spec.sigma) / peak, std::exp(-1.0), 1e-15);
}

TEST(spectral_density, rejects_nonpositive_width) {
    EXPECT_THROW(spectral_density(PulseSpectrum{0, 0}, 0.0), std::invalid_argument);
    EXPECT_THROW(spectral_density(PulseSpectrum{0, -1}, 0.0), std::invalid_argument);
}

TEST(average_efficiency, published_spot_values) {
    PulseSpectrum narrow{.omega_c = 0, .sigma = 0.3};
    EXPECT_NEAR(average_efficiency(fig4_params(3), narrow, 2), 0.304, 0.006);
    EXPECT_NEAR(average_efficiency(fig4_params(19), narrow, 3) / 0.541, 1.0, 0.02);
    PulseSpectrum wide{.omega_c = 0, .sigma = 0.6};
    EXPECT_NEAR(average_efficiency(table1_params(), wide, 2) / 0.5893, 1.0, 0.02);
}

TEST(average_efficiency, matches_adaptive_quadrature_oracle) {
    PulseSpectrum narrow{.omega_c = 0, .sigma = 0.3};
    PulseSpectrum wide{.omega_c = 0, .sigma = 0.6};
    EXPECT_NEAR(average_efficiency(fig4_params(3), narrow, 2), 0.3039929977837607, 1e-10);
    EXPECT_NEAR(average_efficiency(fig4_params(3), narrow, 3), 0.1676082478622633, 1e-10);
    EXPECT_NEAR(average_efficiency(fig4_params(19), narrow, 2), 0.6642549627197219, 1e-10);
    EXPECT_NEAR(average_efficiency(fig4_params(19), narrow, 3), 0.5414103894193359, 1e-10);
    const std::array<std::pair<int, double>, 8> table = {{
        {2, 0.5892795564400503},
        {3, 0.4523825227676441},
        {4, 0.3473007731826225},
        {5, 0.2666373085148913},
        {6, 0.2047156621534597},
        {7, 0.1571795240030504},
        {8, 0.1206855786765416},
        {20, 0.005079502483821985},
    }};
    for (auto [n, want] : table) {
        EXPECT_NEAR(average_efficiency(table1_params(), wide, n), want, 1e-10) << n;
    }
}

TEST(average_efficiency, detector_efficiency_scales_as_power) {
    PulseSpectrum wide{.omega_c = 0, .sigma = 0.6};
    const double base = average_efficiency(table1_params(), wide, 4, 1.0);
    EXPECT_NEAR(average_efficiency(table1_params(), wide, 4, 0.9), base * std::pow(0.9, 4), 1e-14);
    EXPECT_EQ(average_efficiency(table1_params(), wide, 4, 0.0), 0.0);
}

TEST(average_efficiency, monotone_in_photon_number) {
    PulseSpectrum spec{.omega_c = 0, .sigma = 0.3};
    for (double ratio : {1.0, 3.0, 9.0, 19.0}) {
        double prev = 1.0;
        for (int n = 1; n <= 20; n++) {
            double e = average_efficiency(fig4_params(ratio), spec, n);
            EXPECT_LE(e, prev + 1e-15) << ratio << " " << n;
            prev = e;
        }
    }
}

TEST(average_efficiency, stable_under_node_doubling) {
    PulseSpectrum wide{.omega_c = 0, .sigma = 0.6};
    for (int n = 1; n <= 20; n++) {
        auto r = average_efficiency_detailed(table1_params(), wide, n, 1.0);
        EXPECT_EQ(r.nodes, 64u);
        EXPECT_LT(r.doubling_delta, 1e-8) << n;
    }
}

TEST(average_efficiency, reports_non_convergence) {
    // A spectrum far wider than the cavity line cannot settle with few nodes.
    PulseSpectrum huge{.omega_c = 0, .sigma = 300};
    QuadratureOptions opts{.nodes = 5, .tolerance = 1e-14, .max_nodes = 20};
    EXPECT_THROW(average_efficiency(fig4_params(3), huge, 2, 1.0, opts), ConvergenceError);
}

TEST(average_efficiency, rejects_bad_arguments) {
    PulseSpectrum spec{};
    EXPECT_THROW(average_efficiency(fig4_params(), spec, 0), std::invalid_argument);
    EXPECT_THROW(average_efficiency(fig4_params(), spec, 2, 1.5), std::invalid_argument);
}

TEST(fidelity_fn, reference_values) {
    PulseSpectrum wide{.omega_c = 0, .sigma = 0.6};
    EXPECT_NEAR(scattering_time_ns(wide), 1.097, 0.001);
    EXPECT_NEAR(fidelity_fn(2, 10.9, wide) / 0.826, 1.0, 0.01);
    EXPECT_NEAR(fidelity_fn(8, 2000, wide) / 0.9956, 1.0, 0.001);
    EXPECT_EQ(fidelity_fn(5, std::numeric_limits<double>::infinity(), wide), 1.0);
}

TEST(fidelity_fn, matches_two_spin_dephasing_oracle) {
    // Each QD starts in |+><+|; phase damping multiplies the off-diagonal
    // elements by lambda. Readout succeeds with <+|rho|+> per spin.
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> photons(1, 20);
    std::uniform_real_distribution<double> t2(0.5, 5000.0), sigma(0.05, 3.0);
    for (int trial = 0; trial < 100; trial++) {
        const int n = photons(rng);
        const double T2 = t2(rng);
        PulseSpectrum spec{.omega_c = 0, .sigma = sigma(rng)};
        const double lambda = std::exp(-n * (kHbarUeVNs / spec.sigma) / T2);
        using cd = std::complex<double>;
        std::array<cd, 4> rho = {0.5, 0.5 * lambda, 0.5 * lambda, 0.5};
        const double s = 1 / std::sqrt(2.0);
        cd p = 0;
        const std::array<double, 2> plus = {s, s};
        for (int r = 0; r < 2; r++)
            for (int c = 0; c < 2; c++)
                p += plus[r] * rho[r * 2 + c] * plus[c];
        const double oracle = p.real() * p.real();
        EXPECT_NEAR(fidelity_fn(n, T2, spec), oracle, 1e-12);
    }
}

TEST(fidelity_fn, rejects_bad_arguments) {
    PulseSpectrum spec{};
    EXPECT_THROW(fidelity_fn(0, 10, spec), std::invalid_argument);
    EXPECT_THROW(fidelity_fn(2, 0, spec), std::invalid_argument);
    EXPECT_THROW(fidelity_fn(2, 10, PulseSpectrum{0, 0}), std::invalid_argument);
}
