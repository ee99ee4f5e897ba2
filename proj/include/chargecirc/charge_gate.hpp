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
#pragma once

#include <array>
#include <complex>

namespace chargecirc {

using cplx = std::complex<double>;

/**
 * Two-site gate that conserves the number of |1> spins.
 *
 * In the ordered basis {|00>, |01>, |10>, |11>} (left spin first) the gate is
 *
 *     phase0  0    0    0
 *     0       b00  b01  0
 *     0       b10  b11  0
 *     0       0    0    phase1
 *
 * so the embedded 4x4 matrix commutes with the total sigma_z of the pair by
 * construction.
 */
struct ChargeGate {
    cplx phase0{1.0, 0.0};
    /// Row-major 2x2 block acting on (|01>, |10>).
    std::array<cplx, 4> block{cplx{1.0, 0.0}, cplx{}, cplx{}, cplx{1.0, 0.0}};
    cplx phase1{1.0, 0.0};

    static constexpr ChargeGate identity() noexcept { return {}; }

    [[nodiscard]] constexpr cplx b00() const noexcept { return block[0]; }
    [[nodiscard]] constexpr cplx b01() const noexcept { return block[1]; }
    [[nodiscard]] constexpr cplx b10() const noexcept { return block[2]; }
    [[nodiscard]] constexpr cplx b11() const noexcept { return block[3]; }

    [[nodiscard]] ChargeGate adjoint() const noexcept {
        return {std::conj(phase0), {std::conj(block[0]), std::conj(block[2]), std::conj(block[1]), std::conj(block[3])},
                std::conj(phase1)};
    }

    /// Row-major embedded 4x4 matrix in the {|00>, |01>, |10>, |11>} basis.
    [[nodiscard]] std::array<cplx, 16> embedded() const noexcept;

    /// Max deviation of |phase0|, |phase1| from 1 and of block^dagger block
    /// from the identity.
    [[nodiscard]] double unitarity_error() const noexcept;

    friend bool operator==(const ChargeGate &, const ChargeGate &) = default;
};

} // namespace chargecirc
