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
#include "chargecirc/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "chargecirc/errors.hpp"

namespace chargecirc {

namespace {

void check_num_spins(int num_spins) {
    detail::require(num_spins >= 1 && num_spins <= Statevector::kMaxSpins,
                     "num_spins must lie in [1, " + std::to_string(Statevector::kMaxSpins) + "], got " +
                         std::to_string(num_spins));
}

void check_site(const Statevector &state, int site) {
    detail::require(site >= 1 && site <= state.num_spins(),
                    "site " + std::to_string(site) + " outside [1, " + std::to_string(state.num_spins()) + "]");
}

std::uint64_t sites_mask(const Statevector &state, std::span<const int> sites) {
    std::uint64_t mask = 0;
    for (int s : sites) {
        check_site(state, s);
        mask |= std::uint64_t{1} << (s - 1);
    }
    return mask;
}

void check_signs(std::span<const SiteSign> signs) {
    detail::require(!signs.empty() && signs.size() % 2 == 0,
                    "sign sequence must have even, nonzero length; got " + std::to_string(signs.size()));
    check_num_spins(static_cast<int>(signs.size()));
}

std::uint64_t minus_mask(std::span<const SiteSign> signs) {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] == SiteSign::minus) {
            mask |= std::uint64_t{1} << i;
        }
    }
    return mask;
}

} // namespace

Statevector::Statevector(int num_spins) : num_spins_(num_spins) {
    check_num_spins(num_spins);
    amps_.assign(std::size_t{1} << num_spins, cplx{});
    amps_[0] = 1.0;
}

Statevector::Statevector(int num_spins, std::vector<cplx> amplitudes)
    : num_spins_(num_spins), amps_(std::move(amplitudes)) {
    check_num_spins(num_spins);
    detail::require(amps_.size() == (std::size_t{1} << num_spins), "amplitude count must be 2^num_spins");
}

double Statevector::norm() const noexcept {
    double acc = 0.0;
    for (const cplx &a : amps_) {
        acc += std::norm(a);
    }
    return std::sqrt(acc);
}

void Statevector::scale(cplx factor) noexcept {
    for (cplx &a : amps_) {
        a *= factor;
    }
}

void Statevector::normalize() noexcept {
    const double nrm = norm();
    if (nrm > 0.0) {
        scale(1.0 / nrm);
    }
}

Statevector init_product_x(std::span<const SiteSign> signs) {
    check_signs(signs);
    const int num_spins = static_cast<int>(signs.size());
    const std::uint64_t minus = minus_mask(signs);
    // 2^{-n} is exact in binary.
    const double magnitude = std::ldexp(1.0, -num_spins / 2);
    std::vector<cplx> amps(std::size_t{1} << num_spins);
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        amps[b] = (std::popcount(b & minus) % 2 == 0) ? magnitude : -magnitude;
    }
    return Statevector(num_spins, std::move(amps));
}

Statevector init_zero_block(std::span<const SiteSign> signs, int m) {
    check_signs(signs);
    const int num_spins = static_cast<int>(signs.size());
    const int n = num_spins / 2;
    detail::require(m >= 1 && m <= n, "zero block half-width m must lie in [1, " + std::to_string(n) + "]");

    // Spins n-m+1 .. n+m occupy bits n-m .. n+m-1.
    const std::uint64_t block = ((std::uint64_t{1} << (2 * m)) - 1) << (n - m);
    const std::uint64_t minus = minus_mask(signs) & ~block;
    const double magnitude = std::ldexp(1.0, -(n - m));
    std::vector<cplx> amps(std::size_t{1} << num_spins);
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        if ((b & block) != 0) {
            continue;
        }
        amps[b] = (std::popcount(b & minus) % 2 == 0) ? magnitude : -magnitude;
    }
    return Statevector(num_spins, std::move(amps));
}

cplx inner_product(const Statevector &a, const Statevector &b) {
    detail::require(a.num_spins() == b.num_spins(), "inner_product: spin counts differ");
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    cplx acc{};
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += std::conj(x[i]) * y[i];
    }
    return acc;
}

void apply_two_site_gate(Statevector &state, const ChargeGate &gate, int left_site) {
    detail::require(left_site >= 1 && left_site < state.num_spins(),
                    "left_site " + std::to_string(left_site) + " outside [1, " +
                        std::to_string(state.num_spins() - 1) + "]");
    const std::size_t lo = std::size_t{1} << (left_site - 1); // left spin
    const std::size_t hi = lo << 1;                           // right spin
    const std::size_t stride = lo << 2;
    auto amps = state.amplitudes();
    const std::size_t dim = amps.size();

    const cplx p0 = gate.phase0;
    const cplx p1 = gate.phase1;
    const cplx b00 = gate.b00(), b01 = gate.b01(), b10 = gate.b10(), b11 = gate.b11();

    for (std::size_t base = 0; base < dim; base += stride) {
        for (std::size_t j = 0; j < lo; ++j) {
            const std::size_t i00 = base + j;
            const std::size_t i01 = i00 | hi; // left 0, right 1
            const std::size_t i10 = i00 | lo; // left 1, right 0
            const std::size_t i11 = i00 | lo | hi;
            const cplx a01 = amps[i01];
            const cplx a10 = amps[i10];
            amps[i00] *= p0;
            amps[i01] = b00 * a01 + b01 * a10;
            amps[i10] = b10 * a01 + b11 * a10;
            amps[i11] *= p1;
        }
    }
}

double zero_weight(const Statevector &state, std::span<const int> sites) {
    const std::uint64_t mask = sites_mask(state, sites);
    const auto amps = state.amplitudes();
    double acc = 0.0;
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        if ((b & mask) == 0) {
            acc += std::norm(amps[b]);
        }
    }
    return acc;
}

double ZeroProjection::leakage() const noexcept { return std::sqrt(std::max(0.0, 1.0 - in_weight)); }

ZeroProjection project_zero_at(const Statevector &state, std::span<const int> sites) {
    const std::uint64_t mask = sites_mask(state, sites);
    std::vector<cplx> kept(state.dimension());
    const auto amps = state.amplitudes();
    double acc = 0.0;
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        if ((b & mask) == 0) {
            kept[b] = amps[b];
            acc += std::norm(amps[b]);
        }
    }
    return {acc, Statevector(state.num_spins(), std::move(kept))};
}

double sigma_z_expectation(const Statevector &state, int site) {
    check_site(state, site);
    const std::uint64_t bit = std::uint64_t{1} << (site - 1);
    const auto amps = state.amplitudes();
    double acc = 0.0;
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        const double w = std::norm(amps[b]);
        acc += (b & bit) ? -w : w;
    }
    return acc;
}

std::vector<double> charge_sector_weights(const Statevector &state) {
    std::vector<double> weights(static_cast<std::size_t>(state.num_spins()) + 1, 0.0);
    const auto amps = state.amplitudes();
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        weights[static_cast<std::size_t>(std::popcount(b))] += std::norm(amps[b]);
    }
    return weights;
}

} // namespace chargecirc
