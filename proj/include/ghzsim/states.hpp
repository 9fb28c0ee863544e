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
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ghzsim {

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

using Amplitude = std::complex<double>;

/// Dense state vector over `num_qubits` two-level systems.
///
/// Basis convention: |H>=|0>, |V>=|1> for photons and |up>=|0>, |down>=|1> for
/// spins. Qubit 0 is the most significant bit of the basis index. Amplitudes
/// are not required to be normalized; branch bookkeeping in the analyzer relies
/// on unnormalized vectors whose squared norm is a probability.
class QubitRegister {
   public:
    QubitRegister() = default;

    /// |0...0> on `num_qubits` qubits.
    explicit QubitRegister(size_t num_qubits) : num_qubits_(num_qubits), amplitudes_(dim_for(num_qubits)) {
        amplitudes_[0] = 1;
    }

    QubitRegister(size_t num_qubits, std::vector<Amplitude> amplitudes)
        : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
        if (amplitudes_.size() != dim_for(num_qubits)) {
            throw std::invalid_argument(
                "QubitRegister: expected " + std::to_string(dim_for(num_qubits)) + " amplitudes, got " +
                std::to_string(amplitudes_.size()));
        }
    }

    static QubitRegister zeros(size_t num_qubits) {
        return QubitRegister(num_qubits, std::vector<Amplitude>(dim_for(num_qubits)));
    }

    static QubitRegister basis_state(size_t num_qubits, size_t index) {
        auto reg = zeros(num_qubits);
        reg.amplitudes_.at(index) = 1;
        return reg;
    }

    /// Basis state from a bit string such as "0110" (leftmost character is qubit 0).
    static QubitRegister from_bits(std::string_view bits) {
        size_t index = 0;
        for (char c : bits) {
            if (c != '0' && c != '1') {
                throw std::invalid_argument("QubitRegister::from_bits: expected only '0' and '1'");
            }
            index = (index << 1) | static_cast<size_t>(c == '1');
        }
        return basis_state(bits.size(), index);
    }

    static size_t dim_for(size_t num_qubits) {
        if (num_qubits > 30) {
            throw std::invalid_argument("QubitRegister: too many qubits for a dense vector");
        }
        return size_t{1} << num_qubits;
    }

    size_t num_qubits() const {
        return num_qubits_;
    }
    size_t dim() const {
        return amplitudes_.size();
    }
    std::span<const Amplitude> amplitudes() const {
        return amplitudes_;
    }
    std::span<Amplitude> amplitudes() {
        return amplitudes_;
    }
    const Amplitude &operator[](size_t index) const {
        return amplitudes_[index];
    }
    Amplitude &operator[](size_t index) {
        return amplitudes_[index];
    }

    /// Bit mask selecting `qubit` in a basis index.
    size_t mask(size_t qubit) const {
        check_qubit(qubit);
        return size_t{1} << (num_qubits_ - 1 - qubit);
    }
    int bit(size_t index, size_t qubit) const {
        return (index & mask(qubit)) ? 1 : 0;
    }

    double norm_squared() const {
        double total = 0;
        for (const auto &a : amplitudes_) {
            total += std::norm(a);
        }
        return total;
    }

    bool is_normalized(double tol = 1e-12) const {
        return std::abs(norm_squared() - 1) <= tol;
    }

    QubitRegister &scale(Amplitude factor) {
        for (auto &a : amplitudes_) {
            a *= factor;
        }
        return *this;
    }

    QubitRegister &normalize() {
        double n = norm_squared();
        if (!(n > 0)) {
            throw std::domain_error("QubitRegister::normalize: zero vector");
        }
        return scale(1 / std::sqrt(n));
    }

    QubitRegister &operator+=(const QubitRegister &other) {
        if (other.num_qubits_ != num_qubits_) {
            throw std::invalid_argument("QubitRegister: size mismatch in addition");
        }
        for (size_t i = 0; i < amplitudes_.size(); i++) {
            amplitudes_[i] += other.amplitudes_[i];
        }
        return *this;
    }

    /// Applies the 2x2 matrix {{m00, m01}, {m10, m11}} to `qubit`.
    QubitRegister &apply_matrix(size_t qubit, const std::array<Amplitude, 4> &m) {
        const size_t bitmask = mask(qubit);
        for (size_t i = 0; i < amplitudes_.size(); i++) {
            if (i & bitmask) {
                continue;
            }
            const Amplitude a0 = amplitudes_[i];
            const Amplitude a1 = amplitudes_[i | bitmask];
            amplitudes_[i] = m[0] * a0 + m[1] * a1;
            amplitudes_[i | bitmask] = m[2] * a0 + m[3] * a1;
        }
        return *this;
    }

    QubitRegister &apply_x(size_t qubit) {
        const size_t bitmask = mask(qubit);
        for (size_t i = 0; i < amplitudes_.size(); i++) {
            if (!(i & bitmask)) {
                std::swap(amplitudes_[i], amplitudes_[i | bitmask]);
            }
        }
        return *this;
    }

    QubitRegister &apply_z(size_t qubit) {
        const size_t bitmask = mask(qubit);
        for (size_t i = 0; i < amplitudes_.size(); i++) {
            if (i & bitmask) {
                amplitudes_[i] = -amplitudes_[i];
            }
        }
        return *this;
    }

    /// sigma_y = -i(|0><1| - |1><0|).
    QubitRegister &apply_y(size_t qubit) {
        using namespace std::complex_literals;
        return apply_matrix(qubit, {0.0, -1i, 1i, 0.0});
    }

    /// |0> -> (|0>+|1>)/sqrt2, |1> -> (|0>-|1>)/sqrt2.
    QubitRegister &apply_hadamard(size_t qubit) {
        const double s = kInvSqrt2;
        return apply_matrix(qubit, {s, s, s, -s});
    }

    /// Zeroes every amplitude whose `qubit` differs from `value`.
    QubitRegister &project(size_t qubit, int value) {
        const size_t bitmask = mask(qubit);
        for (size_t i = 0; i < amplitudes_.size(); i++) {
            if (((i & bitmask) != 0) != (value != 0)) {
                amplitudes_[i] = 0;
            }
        }
        return *this;
    }

    /// Squared norm of the component with `qubit` equal to `value`.
    double weight_of(size_t qubit, int value) const {
        const size_t bitmask = mask(qubit);
        double total = 0;
        for (size_t i = 0; i < amplitudes_.size(); i++) {
            if (((i & bitmask) != 0) == (value != 0)) {
                total += std::norm(amplitudes_[i]);
            }
        }
        return total;
    }

    /// Slice of the vector with `qubit` fixed to `value`; the qubit is removed.
    QubitRegister remove_qubit(size_t qubit, int value) const {
        check_qubit(qubit);
        const size_t low_bits = num_qubits_ - 1 - qubit;
        const size_t low_mask = (size_t{1} << low_bits) - 1;
        auto out = zeros(num_qubits_ - 1);
        for (size_t j = 0; j < out.dim(); j++) {
            const size_t high = (j & ~low_mask) << 1;
            const size_t i = high | (static_cast<size_t>(value != 0) << low_bits) | (j & low_mask);
            out.amplitudes_[j] = amplitudes_[i];
        }
        return out;
    }

    /// Tensors a basis qubit |value> in at position `qubit` (0..num_qubits).
    QubitRegister insert_qubit(size_t qubit, int value) const {
        if (qubit > num_qubits_) {
            throw std::out_of_range("QubitRegister::insert_qubit: position out of range");
        }
        auto out = zeros(num_qubits_ + 1);
        const size_t low_bits = num_qubits_ - qubit;
        const size_t low_mask = (size_t{1} << low_bits) - 1;
        for (size_t j = 0; j < dim(); j++) {
            const size_t high = (j & ~low_mask) << 1;
            const size_t i = high | (static_cast<size_t>(value != 0) << low_bits) | (j & low_mask);
            out.amplitudes_[i] = amplitudes_[j];
        }
        return out;
    }

   private:
    void check_qubit(size_t qubit) const {
        if (qubit >= num_qubits_) {
            throw std::out_of_range(
                "QubitRegister: qubit " + std::to_string(qubit) + " out of range for " + std::to_string(num_qubits_) +
                " qubits");
        }
    }

    size_t num_qubits_ = 0;
    std::vector<Amplitude> amplitudes_;
};

/// <a|b>
inline Amplitude inner(const QubitRegister &a, const QubitRegister &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("inner: register size mismatch");
    }
    Amplitude total = 0;
    for (size_t i = 0; i < a.dim(); i++) {
        total += std::conj(a[i]) * b[i];
    }
    return total;
}

/// a (x) b, with a occupying the leading qubits.
inline QubitRegister kron(const QubitRegister &a, const QubitRegister &b) {
    auto out = QubitRegister::zeros(a.num_qubits() + b.num_qubits());
    for (size_t i = 0; i < a.dim(); i++) {
        for (size_t j = 0; j < b.dim(); j++) {
            out[i * b.dim() + j] = a[i] * b[j];
        }
    }
    return out;
}

/// |<a|b>|^2 / (<a|a><b|b>); phase-insensitive overlap of two nonzero vectors.
inline double overlap_fidelity(const QubitRegister &a, const QubitRegister &b) {
    const double na = a.norm_squared();
    const double nb = b.norm_squared();
    if (!(na > 0) || !(nb > 0)) {
        throw std::domain_error("overlap_fidelity: zero vector");
    }
    return std::norm(inner(a, b)) / (na * nb);
}

/// max_i |a_i - b_i|
inline double max_abs_diff(const QubitRegister &a, const QubitRegister &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("max_abs_diff: register size mismatch");
    }
    double worst = 0;
    for (size_t i = 0; i < a.dim(); i++) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

/// Distance between a and b after removing the best global phase from b.
inline double distance_up_to_phase(const QubitRegister &a, const QubitRegister &b) {
    const Amplitude ov = inner(b, a);
    const Amplitude phase = std::abs(ov) > 0 ? ov / std::abs(ov) : Amplitude{1};
    QubitRegister rotated = b;
    rotated.scale(phase);
    return max_abs_diff(a, rotated);
}

/// Row-major square complex matrix.
struct DensityMatrix {
    size_t dim = 0;
    std::vector<Amplitude> entries;

    Amplitude &at(size_t r, size_t c) {
        return entries[r * dim + c];
    }
    const Amplitude &at(size_t r, size_t c) const {
        return entries[r * dim + c];
    }
    double trace() const {
        double t = 0;
        for (size_t i = 0; i < dim; i++) {
            t += at(i, i).real();
        }
        return t;
    }
    /// tr(rho^2) / tr(rho)^2
    double purity() const {
        double p = 0;
        for (size_t r = 0; r < dim; r++) {
            for (size_t c = 0; c < dim; c++) {
                p += std::norm(at(r, c));
            }
        }
        const double t = trace();
        return p / (t * t);
    }
    /// <psi|rho|psi> / (tr(rho) <psi|psi>)
    double expectation_fidelity(const QubitRegister &psi) const {
        if (psi.dim() != dim) {
            throw std::invalid_argument("DensityMatrix: dimension mismatch");
        }
        Amplitude total = 0;
        for (size_t r = 0; r < dim; r++) {
            for (size_t c = 0; c < dim; c++) {
                total += std::conj(psi[r]) * at(r, c) * psi[c];
            }
        }
        return total.real() / (trace() * psi.norm_squared());
    }
};

/// Reduced density matrix on `keep` (in the given order); all other qubits are
/// traced out. Not normalized: the trace equals the register's squared norm.
inline DensityMatrix reduced_density_matrix(const QubitRegister &reg, std::span<const size_t> keep) {
    const size_t k = keep.size();
    DensityMatrix rho{size_t{1} << k, {}};
    rho.entries.assign(rho.dim * rho.dim, 0);

    size_t keep_mask = 0;
    for (size_t q : keep) {
        keep_mask |= reg.mask(q);
    }
    auto sub_index = [&](size_t i) {
        size_t s = 0;
        for (size_t q : keep) {
            s = (s << 1) | static_cast<size_t>(reg.bit(i, q));
        }
        return s;
    };
    // Group basis indices by the traced-out bits, then accumulate outer products.
    for (size_t i = 0; i < reg.dim(); i++) {
        if (reg[i] == Amplitude{0}) {
            continue;
        }
        const size_t env = i & ~keep_mask;
        const size_t si = sub_index(i);
        for (size_t sj = 0; sj < rho.dim; sj++) {
            size_t j = env;
            for (size_t b = 0; b < k; b++) {
                if ((sj >> (k - 1 - b)) & 1) {
                    j |= reg.mask(keep[b]);
                }
            }
            rho.at(si, sj) += reg[i] * std::conj(reg[j]);
        }
    }
    return rho;
}

/// Bit string (i_1, ..., i_n) naming a GHZ basis state. The last bit selects
/// the relative phase, the others the polarization pattern.
struct GhzLabel {
    std::vector<uint8_t> bits;

    GhzLabel() = default;
    explicit GhzLabel(std::vector<uint8_t> b) : bits(std::move(b)) {
        for (auto v : bits) {
            if (v > 1) {
                throw std::invalid_argument("GhzLabel: bits must be 0 or 1");
            }
        }
    }

    static GhzLabel parse(std::string_view text) {
        std::vector<uint8_t> b;
        for (char c : text) {
            if (c != '0' && c != '1') {
                throw std::invalid_argument("GhzLabel: expected a bit string, got '" + std::string(text) + "'");
            }
            b.push_back(static_cast<uint8_t>(c - '0'));
        }
        return GhzLabel(std::move(b));
    }

    /// All 2^n labels in lexicographic order.
    static std::vector<GhzLabel> all(size_t n) {
        std::vector<GhzLabel> out;
        for (size_t k = 0; k < (size_t{1} << n); k++) {
            std::vector<uint8_t> b(n);
            for (size_t j = 0; j < n; j++) {
                b[j] = static_cast<uint8_t>((k >> (n - 1 - j)) & 1);
            }
            out.emplace_back(std::move(b));
        }
        return out;
    }

    size_t size() const {
        return bits.size();
    }
    uint8_t phase_bit() const {
        return bits.back();
    }
    std::string str() const {
        std::string s;
        for (auto v : bits) {
            s.push_back(static_cast<char>('0' + v));
        }
        return s;
    }

    auto operator<=>(const GhzLabel &) const = default;
};

/// Eigenvalues (+1/-1) of S_1 = X...X and S_k = Z_{k-1} Z_k, k = 2..n.
struct Syndrome {
    std::vector<int> eigenvalues;

    auto operator<=>(const Syndrome &) const = default;
};

/// (X^{i_1} ... X^{i_{n-1}} Z^{i_n}) (|H...H> + |V...V>)/sqrt2.
inline QubitRegister ghz_state(size_t n, const GhzLabel &label) {
    if (n < 2) {
        throw std::invalid_argument("ghz_state: need at least 2 photons");
    }
    if (label.size() != n) {
        throw std::invalid_argument(
            "ghz_state: label '" + label.str() + "' does not have " + std::to_string(n) + " bits");
    }
    auto reg = QubitRegister::zeros(n);
    const double s = kInvSqrt2;
    reg[0] = s;
    reg[reg.dim() - 1] = s;
    if (label.bits[n - 1]) {
        reg.apply_z(n - 1);
    }
    for (size_t j = 0; j + 1 < n; j++) {
        if (label.bits[j]) {
            reg.apply_x(j);
        }
    }
    return reg;
}

enum class BellIndex { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline constexpr std::array<BellIndex, 4> kAllBellIndices = {
    BellIndex::PhiPlus, BellIndex::PhiMinus, BellIndex::PsiPlus, BellIndex::PsiMinus};

inline std::string bell_name(BellIndex b) {
    switch (b) {
        case BellIndex::PhiPlus:
            return "phi+";
        case BellIndex::PhiMinus:
            return "phi-";
        case BellIndex::PsiPlus:
            return "psi+";
        case BellIndex::PsiMinus:
            return "psi-";
    }
    throw std::invalid_argument("bell_name: bad index");
}

inline BellIndex parse_bell_name(std::string_view name) {
    for (auto b : kAllBellIndices) {
        if (bell_name(b) == name) {
            return b;
        }
    }
    throw std::invalid_argument("unknown Bell state '" + std::string(name) + "' (expected phi+, phi-, psi+, psi-)");
}

/// Two-photon GHZ label of a Bell state: phi+ = 00, phi- = 01, psi+ = 10, psi- = 11.
inline GhzLabel bell_label(BellIndex b) {
    switch (b) {
        case BellIndex::PhiPlus:
            return GhzLabel({0, 0});
        case BellIndex::PhiMinus:
            return GhzLabel({0, 1});
        case BellIndex::PsiPlus:
            return GhzLabel({1, 0});
        case BellIndex::PsiMinus:
            return GhzLabel({1, 1});
    }
    throw std::invalid_argument("bell_label: bad index");
}

inline BellIndex bell_from_label(const GhzLabel &label) {
    if (label.size() != 2) {
        throw std::invalid_argument("bell_from_label: label must have 2 bits");
    }
    return static_cast<BellIndex>(label.bits[0] * 2 + label.bits[1]);
}

/// phi+- = (|HH> +- |VV>)/sqrt2, psi+- = (|HV> +- |VH>)/sqrt2.
inline QubitRegister bell_state(BellIndex b) {
    auto reg = QubitRegister::zeros(2);
    const double s = kInvSqrt2;
    switch (b) {
        case BellIndex::PhiPlus:
            reg[0b00] = s;
            reg[0b11] = s;
            break;
        case BellIndex::PhiMinus:
            reg[0b00] = s;
            reg[0b11] = -s;
            break;
        case BellIndex::PsiPlus:
            reg[0b01] = s;
            reg[0b10] = s;
            break;
        case BellIndex::PsiMinus:
            reg[0b01] = s;
            reg[0b10] = -s;
            break;
    }
    return reg;
}

enum class PauliAxis { X, Y, Z };

inline QubitRegister apply_pauli(QubitRegister reg, size_t qubit, PauliAxis axis) {
    switch (axis) {
        case PauliAxis::X:
            reg.apply_x(qubit);
            break;
        case PauliAxis::Y:
            reg.apply_y(qubit);
            break;
        case PauliAxis::Z:
            reg.apply_z(qubit);
            break;
    }
    return reg;
}

inline QubitRegister apply_hadamard(QubitRegister reg, size_t qubit) {
    reg.apply_hadamard(qubit);
    return reg;
}

inline QubitRegister apply_hadamard_all(QubitRegister reg) {
    for (size_t q = 0; q < reg.num_qubits(); q++) {
        reg.apply_hadamard(q);
    }
    return reg;
}

/// Expectation values <S_1>, ..., <S_n> of the GHZ stabilizer generators.
inline std::vector<double> stabilizer_expectations(const QubitRegister &reg) {
    const size_t n = reg.num_qubits();
    if (n < 2) {
        throw std::invalid_argument("stabilizer_expectations: need at least 2 qubits");
    }
    std::vector<double> out(n, 0.0);
    const size_t all = reg.dim() - 1;
    Amplitude s1 = 0;
    for (size_t i = 0; i < reg.dim(); i++) {
        s1 += std::conj(reg[i]) * reg[i ^ all];
    }
    out[0] = s1.real();
    for (size_t k = 1; k < n; k++) {
        double total = 0;
        for (size_t i = 0; i < reg.dim(); i++) {
            const int parity = reg.bit(i, k - 1) ^ reg.bit(i, k);
            total += (parity ? -1.0 : 1.0) * std::norm(reg[i]);
        }
        out[k] = total;
    }
    return out;
}

/// Syndrome of a normalized GHZ basis state. Throws std::domain_error when the
/// input is not a joint eigenstate of all generators.
inline Syndrome stabilizer_syndrome(const QubitRegister &reg, double tol = 1e-9) {
    if (!reg.is_normalized(tol)) {
        throw std::invalid_argument("stabilizer_syndrome: register is not normalized");
    }
    Syndrome out;
    const auto expectations = stabilizer_expectations(reg);
    for (size_t k = 0; k < expectations.size(); k++) {
        const double e = expectations[k];
        if (std::abs(e) < 1 - tol) {
            throw std::domain_error(
                "stabilizer_syndrome: not an eigenstate of S_" + std::to_string(k + 1) + " (<S> = " +
                std::to_string(e) + ")");
        }
        out.eigenvalues.push_back(e > 0 ? 1 : -1);
    }
    return out;
}

/// Inverse of the syndrome map on GHZ basis states.
inline GhzLabel label_from_syndrome(const Syndrome &syndrome) {
    const size_t n = syndrome.eigenvalues.size();
    if (n < 2) {
        throw std::invalid_argument("label_from_syndrome: need at least 2 eigenvalues");
    }
    // First GHZ component is |i_1 ... i_{n-1} 0>: S_n fixes i_{n-1}, then walk left.
    std::vector<uint8_t> bits(n, 0);
    bits[n - 1] = syndrome.eigenvalues[0] < 0;
    uint8_t next = 0;
    for (size_t k = n; k >= 2; k--) {
        const uint8_t flip = syndrome.eigenvalues[k - 1] < 0;
        bits[k - 2] = next ^ flip;
        next = bits[k - 2];
    }
    return GhzLabel(std::move(bits));
}

}  // namespace ghzsim
