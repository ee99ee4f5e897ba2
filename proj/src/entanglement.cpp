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
#include "chargecirc/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include <lapacke.h>

#include "chargecirc/errors.hpp"

namespace chargecirc {

EntanglementSpectrum make_spectrum(std::vector<double> coefficients, int cut) {
    std::sort(coefficients.begin(), coefficients.end(), std::greater<>());
    detail::require(!coefficients.empty() && coefficients.front() > 0.0, "spectrum needs a positive coefficient");
    EntanglementSpectrum spec;
    spec.cut = cut;
    const double floor = coefficients.front() * kSchmidtCutoff;
    for (double c : coefficients) {
        if (c > floor) {
            spec.coefficients.push_back(c);
        } else {
            spec.truncated_weight += c * c;
        }
    }
    return spec;
}

EntanglementSpectrum schmidt_spectrum(const Statevector &state, int cut) {
    detail::require(cut >= 1 && cut < state.num_spins(),
                    "cut " + std::to_string(cut) + " outside [1, " + std::to_string(state.num_spins() - 1) + "]");
    // Index a + 2^cut * b is exactly the column-major layout of the
    // (A, B) amplitude matrix with leading dimension 2^cut.
    const lapack_int rows = lapack_int{1} << cut;
    const lapack_int cols = lapack_int{1} << (state.num_spins() - cut);
    std::vector<cplx> work(state.amplitudes().begin(), state.amplitudes().end());
    std::vector<double> sv(static_cast<std::size_t>(std::min(rows, cols)));
    const lapack_int info =
        LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', rows, cols, reinterpret_cast<lapack_complex_double *>(work.data()),
                       rows, sv.data(), nullptr, 1, nullptr, 1);
    if (info != 0) {
        throw std::runtime_error("zgesdd failed with info = " + std::to_string(info));
    }
    return make_spectrum(std::move(sv), cut);
}

double renyi_entropy(const EntanglementSpectrum &spec, double alpha) {
    if (std::isinf(alpha) && alpha > 0) {
        return min_entropy(spec);
    }
    detail::require(alpha > 0.0 && alpha != 1.0, "Renyi index must lie in (0,1) or (1,inf)");
    // log-sum-exp over alpha * ln(lambda^2)
    const double top = 2.0 * alpha * std::log(spec.largest());
    double acc = 0.0;
    for (double c : spec.coefficients) {
        acc += std::exp(2.0 * alpha * std::log(c) - top);
    }
    const double value = (top + std::log(acc)) / (1.0 - alpha);
    return std::max(0.0, value);
}

double von_neumann_entropy(const EntanglementSpectrum &spec) {
    double s = 0.0;
    for (double c : spec.coefficients) {
        const double p = c * c;
        s -= p * std::log(p);
    }
    return std::max(0.0, s);
}

double min_entropy(const EntanglementSpectrum &spec) { return std::max(0.0, -2.0 * std::log(spec.largest())); }

double best_rank_D_overlap(const EntanglementSpectrum &spec, int D) {
    detail::require(D >= 1, "rank D must be >= 1");
    double acc = 0.0;
    const std::size_t upto = std::min<std::size_t>(static_cast<std::size_t>(D), spec.coefficients.size());
    for (std::size_t i = 0; i < upto; ++i) {
        acc += spec.coefficients[i] * spec.coefficients[i];
    }
    return std::min(1.0, std::sqrt(acc));
}

} // namespace chargecirc
