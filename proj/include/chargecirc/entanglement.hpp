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

#include <limits>
#include <vector>

#include "chargecirc/statevector.hpp"

namespace chargecirc {

/// Schmidt values are dropped below this fraction of the largest one.
inline constexpr double kSchmidtCutoff = 1e-12;

/// Sentinel for the min-entropy channel in alpha lists.
inline constexpr double kAlphaInfinity = std::numeric_limits<double>::infinity();

struct EntanglementSpectrum {
    /// Descending, strictly positive Schmidt coefficients.
    std::vector<double> coefficients;
    /// Spins 1..cut form subsystem A.
    int cut = 0;
    /// Sum of squares of the truncated coefficients.
    double truncated_weight = 0.0;

    [[nodiscard]] double largest() const { return coefficients.front(); }
    [[nodiscard]] std::size_t rank() const noexcept { return coefficients.size(); }
};

/// Singular values of the 2^cut x 2^(N-cut) amplitude matrix.
EntanglementSpectrum schmidt_spectrum(const Statevector &state, int cut);

/// Spectrum from explicit coefficients (sorted, normalized by the caller).
EntanglementSpectrum make_spectrum(std::vector<double> coefficients, int cut = 0);

/// (1/(1-alpha)) ln sum lambda_i^(2 alpha), natural log. alpha = +inf is
/// routed to min_entropy; alpha = 1 and alpha <= 0 are rejected.
double renyi_entropy(const EntanglementSpectrum &spec, double alpha);

double von_neumann_entropy(const EntanglementSpectrum &spec);

/// -ln(lambda_1^2).
double min_entropy(const EntanglementSpectrum &spec);

/// Largest overlap of the state with any Schmidt-rank-D state,
/// sqrt(sum_{i<=D} lambda_i^2).
double best_rank_D_overlap(const EntanglementSpectrum &spec, int D);

} // namespace chargecirc
