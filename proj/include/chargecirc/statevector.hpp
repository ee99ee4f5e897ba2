// Copyright 2026 The chargecirc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Dense statevector of a spin-1/2 chain and the kernels acting on it.
 *
 * Site convention: spin i (1-based, left to right) is bit i-1 of the basis
 * index. Bit value 0 is |0> with sigma_z = +1, bit value 1 is |1> with
 * sigma_z = -1.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "chargecirc/charge_gate.hpp"

namespace chargecirc {

enum class SiteSign : std::uint8_t { plus, minus };

class Statevector {
  public:
    static constexpr int kMaxSpins = 28;

    /// |0...0> on `num_spins` spins.
    explicit Statevector(int num_spins);
    Statevector(int num_spins, std::vector<cplx> amplitudes);

    [[nodiscard]] int num_spins() const noexcept { return num_spins_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return amps_.size(); }

    [[nodiscard]] std::span<const cplx> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::span<cplx> amplitudes() noexcept { return amps_; }

    [[nodiscard]] cplx operator[](std::size_t i) const noexcept { return amps_[i]; }
    cplx &operator[](std::size_t i) noexcept { return amps_[i]; }

    [[nodiscard]] double norm() const noexcept;

    void scale(cplx factor) noexcept;

    /// Divides by the current norm; no-op on the zero vector.
    void normalize() noexcept;

  private:
    int num_spins_;
    std::vector<cplx> amps_;
};

/// Product state with spin i in |+> or |-> according to signs[i-1].
/// Throws std::invalid_argument unless signs has even, nonzero length.
Statevector init_product_x(std::span<const SiteSign> signs);

/// Product state with spins n-m+1 .. n+m in |0> and every other spin in the
/// sigma_x eigenstate given by `signs` (2n = signs.size()).
Statevector init_zero_block(std::span<const SiteSign> signs, int m);

/// <a|b>, conjugate-linear in a.
cplx inner_product(const Statevector &a, const Statevector &b);

/// Applies `gate` to spins (left_site, left_site + 1) in place.
void apply_two_site_gate(Statevector &state, const ChargeGate &gate, int left_site);

/// Squared norm of the component with every listed site in |0>.
double zero_weight(const Statevector &state, std::span<const int> sites);

struct ZeroProjection {
    double in_weight;
    /// Unnormalized P|psi>.
    Statevector projected;

    /// ||(1 - P)|psi>||, assuming the source state had unit norm.
    [[nodiscard]] double leakage() const noexcept;
};

ZeroProjection project_zero_at(const Statevector &state, std::span<const int> sites);

double sigma_z_expectation(const Statevector &state, int site);

/// Probability weight of each Hamming-weight sector, index k = number of
/// spins in |1>.
std::vector<double> charge_sector_weights(const Statevector &state);

} // namespace chargecirc
