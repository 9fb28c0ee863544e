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
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ghzsim {

/// Nodes and weights of the Gauss–Hermite rule for the weight exp(-x^2).
/// Nodes are sorted ascending; the weights sum to sqrt(pi).
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    size_t size() const {
        return nodes.size();
    }
};

namespace detail {

/// Eigenvalues of the symmetric tridiagonal matrix with zero diagonal and the
/// given off-diagonal, by implicit QL with Wilkinson shifts.
inline std::vector<double> tridiagonal_eigenvalues(std::vector<double> offdiag) {
    const size_t n = offdiag.size() + 1;
    std::vector<double> d(n, 0.0);
    std::vector<double> e(n, 0.0);
    for (size_t i = 0; i + 1 < n; i++) {
        e[i] = offdiag[i];
    }
    for (size_t l = 0; l < n; l++) {
        int iter = 0;
        size_t m;
        do {
            for (m = l; m + 1 < n; m++) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-17 * dd) {
                    break;
                }
            }
            if (m != l) {
                if (++iter > 60) {
                    throw std::runtime_error("gauss_hermite_rule: eigenvalue iteration did not converge");
                }
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0;
                double c = 1.0;
                double p = 0.0;
                size_t i = m;
                bool underflow = false;
                while (i-- > l) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                }
                if (underflow) {
                    continue;
                }
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    return d;
}

}  // namespace detail

/// Builds an n-point rule. The Jacobi matrix eigenvalues seed a Newton polish on
/// the orthonormal Hermite recurrence, which also yields the weights.
inline GaussHermiteRule gauss_hermite_rule(size_t n) {
    if (n == 0) {
        throw std::invalid_argument("gauss_hermite_rule: need at least one node");
    }
    constexpr double kPiM4 = 0.7511255444649425;  // pi^(-1/4)
    constexpr double kBig = 1e100;
    const double dn = static_cast<double>(n);

    std::vector<double> offdiag(n - 1);
    for (size_t k = 1; k < n; k++) {
        offdiag[k - 1] = std::sqrt(static_cast<double>(k) / 2.0);
    }
    std::vector<double> x = n > 1 ? detail::tridiagonal_eigenvalues(offdiag) : std::vector<double>{0.0};
    std::sort(x.begin(), x.end());

    std::vector<double> w(n);
    for (size_t i = 0; i < n; i++) {
        double z = x[i];
        double log_pp = 0;
        for (int iter = 0; iter < 3; iter++) {
            // p1, p2 carry a common factor kBig^scale to stay finite for large z.
            double p1 = kPiM4;
            double p2 = 0;
            int scale = 0;
            for (size_t j = 0; j < n; j++) {
                const double p3 = p2;
                p2 = p1;
                const double dj = static_cast<double>(j);
                p1 = z * std::sqrt(2.0 / (dj + 1)) * p2 - std::sqrt(dj / (dj + 1)) * p3;
                if (std::abs(p1) > kBig) {
                    p1 /= kBig;
                    p2 /= kBig;
                    scale++;
                }
            }
            const double pp = std::sqrt(2 * dn) * p2;
            log_pp = std::log(std::abs(pp)) + scale * std::log(kBig);
            z -= p1 / pp;
        }
        x[i] = z;
        w[i] = 2.0 * std::exp(-2.0 * log_pp);
    }
    // Enforce exact symmetry.
    for (size_t i = 0; i < n / 2; i++) {
        const double z = 0.5 * (x[n - 1 - i] - x[i]);
        const double v = 0.5 * (w[i] + w[n - 1 - i]);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = v;
    }
    if (n % 2 == 1) {
        x[n / 2] = 0;
    }
    return GaussHermiteRule{std::move(x), std::move(w)};
}

/// Sum of weights[i] * f(nodes[i]); approximates the integral of exp(-x^2) f(x).
template <typename Fn>
double integrate(const GaussHermiteRule &rule, Fn &&f) {
    double total = 0;
    for (size_t i = 0; i < rule.size(); i++) {
        total += rule.weights[i] * f(rule.nodes[i]);
    }
    return total;
}

}  // namespace ghzsim
