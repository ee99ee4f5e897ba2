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
 * Numerical instantiation of the min-entropy bound for random sigma_x product
 * states under charge-conserving circuits.
 *
 * Notation used throughout:
 *   psi_init   random sigma_x product state
 *   psi_0      psi_init with the 2m spins around the cut replaced by |0>
 *   U          the circuit, V the circuit with every cut gate replaced by its
 *              <00|.|00> scalar (V never entangles the halves)
 *   Delta_t    U(t,0) psi_0 - V(t,0) psi_0
 *   p(t)       t^p_degree
 */
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chargecirc/circuit.hpp"
#include "chargecirc/entanglement.hpp"
#include "chargecirc/statevector.hpp"

namespace chargecirc {

/// One named inequality lhs <= rhs (+ tolerance already folded into rhs).
struct InequalityCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool applicable = true;
    bool holds = true;
};

/// Zero-block half-width ceil(K sqrt(t ln t)), clamped to [1, n].
int scheduled_m(int t, double K, int n);

/// t^p_degree.
double p_of_t(int t, int p_degree);

struct ProofTrace {
    int m = 0;
    int t = 0;
    double delta_norm = 0.0;
    /// ||(1-P) U(s,0) psi_0|| for s = 0 .. t-1.
    std::vector<double> per_layer_leakage;
    /// Leakage of U-evolved psi_0 right before the cut gate of layer s+1.
    /// Identical to per_layer_leakage when n is odd.
    std::vector<double> cut_gate_leakage;
    /// ||(U_{s+1} - V_{s+1}) U(s,0) psi_0||, the exact per-layer defect.
    std::vector<double> defect_increments;
    /// ||(1-P) U(t,0) psi_0||.
    double final_leakage = 0.0;
    double overlap_U = 0.0;
    double overlap_V = 0.0;
    /// |<Delta_t| U(t,0) psi_init>|.
    double delta_overlap = 0.0;
    double lambda1_measured = 0.0;
    /// 2^-m (1 - ||Delta_t|| p(t)); the bound is vacuous when <= 0.
    double lambda1_bound = 0.0;
    double p_of_t = 1.0;
    /// delta_overlap <= 2^-m ||Delta_t|| p(t).
    bool s_prime_member = false;
    EntanglementSpectrum spectrum;
    /// Trace invariants, evaluated by run_proof_trace.
    std::vector<InequalityCheck> invariants;

    [[nodiscard]] bool vacuous() const noexcept { return lambda1_bound <= 0.0; }
    [[nodiscard]] double s_prime_threshold() const;
    [[nodiscard]] bool invariants_hold() const;
};

/// Builds psi_init and psi_0 from `signs` and runs the trace at time t.
ProofTrace run_proof_trace(const CircuitSpec &spec, std::span<const SiteSign> signs, int m, int t, int p_degree);

/// Same, reusing an already evolved U(t,0) psi_init.
ProofTrace run_proof_trace(const CircuitSpec &spec, std::span<const SiteSign> signs, int m, int t, int p_degree,
                           const Statevector &evolved_init);

/**
 * The inequality chain from the overlap identity to the entropy bound:
 *   (a) overlap_V >= 2^-m - |<Delta|U psi_init>|
 *   (b) s_prime members: |<Delta|U psi_init>| <= 2^-m ||Delta|| p(t)
 *   (c) lambda_1 >= overlap_V
 *   (d) R_alpha <= alpha/(alpha-1) * (-2 ln lambda_1), per alpha
 *   (e) s_prime members with non-vacuous threshold:
 *       R_alpha <= alpha/(alpha-1) * (-2 ln lambda1_bound) + 1e-6
 *   (f) min-entropy equals -2 ln lambda_1
 */
std::vector<InequalityCheck> verify_overlap_chain(const ProofTrace &trace, std::span<const double> alphas);

struct EnsembleReport {
    int ensemble_size = 0;
    bool exhaustive = false;
    double delta_norm = 0.0;
    /// 2^-m ||Delta_t|| p(t).
    double threshold = 0.0;
    double fraction_below = 0.0;
    /// 1 - 1/p(t).
    double markov_bound = 0.0;
    /// 3 sigma binomial error of fraction_below, zero when exhaustive.
    double sampling_error = 0.0;
    /// Mean over members of |<Delta_t|U psi_init>|.
    double mean_abs_overlap = 0.0;
    /// 2^-m ||Delta_t||.
    double mean_bound = 0.0;
    /// Sum over members of |<Delta_t|U psi_init>|^2, bounded by ||Delta_t||^2.
    double sum_sq_overlap = 0.0;

    [[nodiscard]] bool markov_holds() const noexcept {
        return fraction_below >= markov_bound - sampling_error;
    }
};

/**
 * Fixes the signs outside the zero block (entries inside it are ignored),
 * varies the 2m inner signs over S and measures |<Delta_t|U psi_init>|.
 * S is enumerated when 2m <= 12 and sampled uniformly otherwise.
 */
EnsembleReport ensemble_s_prime(const CircuitSpec &spec, std::span<const SiteSign> out_signs, int m, int t,
                                int p_degree, int sample_size, std::uint64_t sample_seed = 0);

struct BoundRow {
    int t = 0;
    int m = 0;
    double alpha = 2.0;
    double measured = 0.0;
    /// alpha/(alpha-1) * (-2 ln overlap_V); valid for every trace.
    double overlap_bound = 0.0;
    /// alpha/(alpha-1) * (-2 ln lambda1_bound); empty when vacuous.
    std::optional<double> threshold_bound;
    bool s_prime_member = false;
    bool violation = false;
};

/// Runs traces on the m = scheduled_m(t, K, n) schedule and compares the
/// resulting bounds with the measured Renyi entropies.
std::vector<BoundRow> bound_vs_measurement(const CircuitSpec &spec, std::span<const SiteSign> signs,
                                           std::span<const int> t_values, double K, int p_degree,
                                           std::span<const double> alphas);

/// alpha/(alpha-1), with 1 for alpha = +inf.
double sandwich_factor(double alpha);

} // namespace chargecirc
