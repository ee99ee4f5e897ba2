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

#include <span>

namespace chargecirc {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    /// Sum of squared residuals.
    double ssr = 0.0;
    int points = 0;

    [[nodiscard]] double rms() const;
};

/// Ordinary least squares y = slope * x + intercept. Needs >= 2 points with
/// distinct x; throws FitUnavailable otherwise.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Slope of ln y against ln x.
LineFit fit_log_log(std::span<const double> x, std::span<const double> y);

/// Linear-interpolated quantile of an unsorted sample, q in [0, 1].
double quantile(std::span<const double> sample, double q);

} // namespace chargecirc
