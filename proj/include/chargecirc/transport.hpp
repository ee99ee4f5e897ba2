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
 * Charge transport diagnostics.
 *
 * Two independent probes of the transport exponent: leakage of charge into
 * the two cut spins from a zero block of half-width m, and the spreading of
 * an initial domain wall.
 */
#pragma once

#include <span>
#include <vector>

#include "chargecirc/circuit.hpp"
#include "chargecirc/statevector.hpp"

namespace chargecirc {

/// <sigma_z^i> for i = 1..2n.
std::vector<double> charge_profile(const Statevector &state);

/// |1...1 0...0> with the left half in |1>.
Statevector domain_wall_state(int num_spins);

/// ||(1 - P) psi|| with P projecting spins n, n+1 onto |00>.
double cut_leakage(const Statevector &state);

struct LeakagePoint {
    int m;
    int t;
    double leakage;
};

struct LeakageCurve {
    std::vector<LeakagePoint> entries;
};

/// For each m, evolves the zero-block state built from `signs` under the
/// circuit and records the cut leakage at each requested t.
LeakageCurve measure_leakage(const CircuitSpec &spec, std::span<const SiteSign> signs,
                             std::span<const int> m_values, std::span<const int> t_values);

/// Arithmetic mean of leakage over curves sampled on the same (m, t) grid.
LeakageCurve average_leakage(std::span<const LeakageCurve> curves);

struct LeakageFitOptions {
    double min_leakage = 1e-8;
    double max_leakage = 0.5;
    int min_points = 8;
    double z_min = 0.1;
    double z_max = 0.9;
    double z_step = 0.1;
};

struct CollapseScore {
    double z;
    double ssr;
    double slope;
    double intercept;
};

struct TransportFit {
    double exponent_z = 0.0;
    /// c in ln(leakage) ~ ln(A) - c m^2 / t.
    double diffusion_coefficient_c = 0.0;
    double log_prefactor = 0.0;
    /// RMS residual of the c fit.
    double goodness = 0.0;
    int points = 0;
    int m_lo = 0, m_hi = 0, t_lo = 0, t_hi = 0;
    std::vector<CollapseScore> collapse;
};

/**
 * Fits ln(leakage) against -m^2/t for c, and selects the exponent z whose
 * collapse variable ln(m) - z ln(t) best explains ln(-ln leakage) linearly.
 * Only entries strictly inside (min_leakage, max_leakage) are used; throws
 * FitUnavailable with fewer than min_points of them.
 */
TransportFit fit_diffusive_leakage(const LeakageCurve &curve, const LeakageFitOptions &options = {});

struct SpreadPoint {
    int t;
    double variance;
};

/**
 * Evolves the domain wall and returns, per requested t, the second moment
 * about the cut of |q_i| with q_i = (<sigma_z^i(t)> - <sigma_z^i(0)>)/2,
 * normalized by sum |q_i|. Zero transferred charge gives variance 0.
 */
std::vector<SpreadPoint> domain_wall_spread(const CircuitSpec &spec, std::span<const int> t_values);

/// Second moment of |q_i| about the cut for a given profile pair.
double profile_spread(std::span<const double> initial, std::span<const double> current);

} // namespace chargecirc
