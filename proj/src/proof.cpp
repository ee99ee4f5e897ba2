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
#include "chargecirc/proof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chargecirc/errors.hpp"
#include "chargecirc/random.hpp"
#include "chargecirc/transport.hpp"

namespace chargecirc {

namespace {

constexpr double kIdentityTol = 1e-10;
constexpr double kChainTol = 1e-9;
constexpr double kBoundTol = 1e-6;

InequalityCheck leq(std::string name, double lhs, double rhs, bool applicable = true) {
    InequalityCheck c{std::move(name), lhs, rhs, applicable, true};
    c.holds = !applicable || lhs <= rhs;
    return c;
}

double norm_of_difference(const Statevector &a, const Statevector &b) {
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += std::norm(x[i] - y[i]);
    }
    return std::sqrt(acc);
}

/// <a - b | c>
cplx difference_overlap(const Statevector &a, const Statevector &b, const Statevector &c) {
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    const auto z = c.amplitudes();
    cplx acc{};
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += std::conj(x[i] - y[i]) * z[i];
    }
    return acc;
}

void check_trace_args(const CircuitSpec &spec, std::span<const SiteSign> signs, int m, int t, int p_degree) {
    detail::require(static_cast<int>(signs.size()) == spec.num_spins(), "sign count must equal num_spins");
    detail::require(m >= 1 && m <= spec.num_spins() / 2, "m must lie in [1, n]");
    detail::require(t >= 1 && t <= spec.depth(), "t must lie in [1, depth]");
    detail::require(p_degree >= 0, "p_degree must be >= 0");
}

/// Evolves psi_0 under U and V to time t, filling the per-layer fields of
/// `trace`. Returns (U psi_0, V psi_0).
std::pair<Statevector, Statevector> evolve_pair(const CircuitSpec &spec, std::span<const SiteSign> signs, int m,
                                                int t, ProofTrace &trace) {
    Statevector u = init_zero_block(signs, m);
    Statevector v = u;
    const int cut = spec.cut_bond();
    for (int s = 0; s < t; ++s) {
        trace.per_layer_leakage.push_back(cut_leakage(u));
        apply_layer_stage(u, spec, s + 1, LayerStage::before_cut, false);
        apply_layer_stage(v, spec, s + 1, LayerStage::before_cut, true);
        trace.cut_gate_leakage.push_back(cut_leakage(u));

        // (G - g) x with x the state right before the cut gate.
        const ChargeGate &g = spec.gate(s + 1, cut);
        Statevector gx = u;
        apply_two_site_gate(gx, g, cut);
        Statevector scalar_x = u;
        scalar_x.scale(g.phase0);
        trace.defect_increments.push_back(norm_of_difference(gx, scalar_x));

        apply_layer_stage(u, spec, s + 1, LayerStage::after_cut, false);
        apply_layer_stage(v, spec, s + 1, LayerStage::after_cut, true);
    }
    return {std::move(u), std::move(v)};
}

} // namespace

int scheduled_m(int t, double K, int n) {
    detail::require(t >= 1, "schedule needs t >= 1");
    const double raw = std::ceil(K * std::sqrt(t * std::log(static_cast<double>(t))));
    return std::clamp(static_cast<int>(raw), 1, n);
}

double p_of_t(int t, int p_degree) { return std::pow(static_cast<double>(t), p_degree); }

double sandwich_factor(double alpha) { return std::isinf(alpha) ? 1.0 : alpha / (alpha - 1.0); }

double ProofTrace::s_prime_threshold() const { return std::ldexp(delta_norm, -m) * p_of_t; }

bool ProofTrace::invariants_hold() const {
    return std::all_of(invariants.begin(), invariants.end(), [](const InequalityCheck &c) { return c.holds; });
}

ProofTrace run_proof_trace(const CircuitSpec &spec, std::span<const SiteSign> signs, int m, int t, int p_degree) {
    check_trace_args(spec, signs, m, t, p_degree);
    Statevector evolved = init_product_x(signs);
    evolve(evolved, spec, 0, t);
    return run_proof_trace(spec, signs, m, t, p_degree, evolved);
}

ProofTrace run_proof_trace(const CircuitSpec &spec, std::span<const SiteSign> signs, int m, int t, int p_degree,
                           const Statevector &evolved_init) {
    check_trace_args(spec, signs, m, t, p_degree);
    detail::require(evolved_init.num_spins() == spec.num_spins(), "evolved state has wrong spin count");

    ProofTrace trace;
    trace.m = m;
    trace.t = t;
    trace.p_of_t = p_of_t(t, p_degree);

    auto [u, v] = evolve_pair(spec, signs, m, t, trace);
    trace.final_leakage = cut_leakage(u);
    trace.delta_norm = norm_of_difference(u, v);
    trace.overlap_U = std::abs(inner_product(u, evolved_init));
    trace.delta_overlap = std::abs(difference_overlap(u, v, evolved_init));
    v.normalize();
    trace.overlap_V = std::abs(inner_product(v, evolved_init));

    trace.spectrum = schmidt_spectrum(evolved_init, spec.num_spins() / 2);
    trace.lambda1_measured = trace.spectrum.largest();

    const double two_m = std::ldexp(1.0, -m);
    trace.lambda1_bound = two_m * (1.0 - trace.delta_norm * trace.p_of_t);
    trace.s_prime_member = trace.delta_overlap <= trace.s_prime_threshold();

    double leak_sum = 0.0;
    double increment_sum = 0.0;
    bool increments_ok = true;
    for (std::size_t s = 0; s < trace.cut_gate_leakage.size(); ++s) {
        leak_sum += trace.cut_gate_leakage[s];
        increment_sum += trace.defect_increments[s];
        increments_ok = increments_ok && trace.defect_increments[s] <= 2.0 * trace.cut_gate_leakage[s] + 1e-12;
    }
    trace.invariants.push_back(leq("unitarity anchor |overlap_U - 2^-m|", std::abs(trace.overlap_U - two_m),
                                   kIdentityTol));
    trace.invariants.push_back(leq("defect <= sum of per-layer defects", trace.delta_norm, increment_sum + kChainTol));
    InequalityCheck per_layer{"per-layer defect <= 2 * cut leakage", 0.0, 0.0, true, increments_ok};
    trace.invariants.push_back(per_layer);
    trace.invariants.push_back(
        leq("defect <= 2 * accumulated cut leakage", trace.delta_norm, 2.0 * leak_sum + kChainTol));
    trace.invariants.push_back(
        leq("Eckart-Young D=1: overlap_V <= lambda_1", trace.overlap_V, trace.lambda1_measured + kChainTol));
    return trace;
}

std::vector<InequalityCheck> verify_overlap_chain(const ProofTrace &trace, std::span<const double> alphas) {
    std::vector<InequalityCheck> out;
    const double two_m = std::ldexp(1.0, -trace.m);
    out.push_back(leq("(a) 2^-m - |<Delta|U psi_init>| <= overlap_V", two_m - trace.delta_overlap,
                      trace.overlap_V + kChainTol));
    out.push_back(leq("(b) |<Delta|U psi_init>| <= 2^-m ||Delta|| p(t)", trace.delta_overlap,
                      trace.s_prime_threshold(), trace.s_prime_member));
    out.push_back(leq("(c) overlap_V <= lambda_1", trace.overlap_V, trace.lambda1_measured + kChainTol));

    const double r_inf = min_entropy(trace.spectrum);
    const double min_entropy_from_lambda = -2.0 * std::log(trace.lambda1_measured);
    const bool bound_applies = trace.s_prime_member && !trace.vacuous();
    const double final_rinf = bound_applies ? -2.0 * std::log(trace.lambda1_bound) : 0.0;
    for (double alpha : alphas) {
        const double r = renyi_entropy(trace.spectrum, alpha);
        const double f = sandwich_factor(alpha);
        const std::string a = std::isinf(alpha) ? "inf" : std::to_string(alpha);
        out.push_back(leq("(d) R_" + a + " <= a/(a-1) (-2 ln lambda_1)", r, f * std::max(0.0, min_entropy_from_lambda) + kChainTol));
        out.push_back(leq("(e) R_" + a + " <= a/(a-1) (-2 ln lambda1_bound)", r, f * final_rinf + kBoundTol,
                          bound_applies));
    }
    InequalityCheck eq{"(f) |R_inf + 2 ln lambda_1|", std::abs(r_inf - std::max(0.0, min_entropy_from_lambda)), kIdentityTol};
    eq.holds = eq.lhs <= eq.rhs;
    out.push_back(eq);
    return out;
}

EnsembleReport ensemble_s_prime(const CircuitSpec &spec, std::span<const SiteSign> out_signs, int m, int t,
                                int p_degree, int sample_size, std::uint64_t sample_seed) {
    check_trace_args(spec, out_signs, m, t, p_degree);
    const int n = spec.num_spins() / 2;
    const int width = 2 * m;
    const bool exhaustive = width <= 12;
    const std::uint64_t full = std::uint64_t{1} << width;
    if (!exhaustive) {
        detail::require(sample_size >= 1, "sample_size must be >= 1");
    }

    ProofTrace scratch;
    auto [u, v] = evolve_pair(spec, out_signs, m, t, scratch);
    // w = U^dagger Delta_t, so <Delta|U psi> = <w|psi>.
    Statevector w = u;
    {
        auto wa = w.amplitudes();
        const auto va = v.amplitudes();
        for (std::size_t i = 0; i < wa.size(); ++i) {
            wa[i] -= va[i];
        }
    }
    EnsembleReport report;
    report.exhaustive = exhaustive;
    report.delta_norm = w.norm();
    evolve_adjoint(w, spec, 0, t);

    const double p = p_of_t(t, p_degree);
    const double two_m = std::ldexp(1.0, -m);
    report.threshold = two_m * report.delta_norm * p;
    report.markov_bound = 1.0 - 1.0 / p;
    report.mean_bound = two_m * report.delta_norm;

    std::vector<SiteSign> signs(out_signs.begin(), out_signs.end());
    CounterStream stream(derive_key({sample_seed, static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(t)}));
    const std::uint64_t members = exhaustive ? full : static_cast<std::uint64_t>(sample_size);
    int below = 0;
    double sum_abs = 0.0;
    for (std::uint64_t k = 0; k < members; ++k) {
        const std::uint64_t pattern = exhaustive ? k : (stream.next_u64() & (full - 1));
        for (int j = 0; j < width; ++j) {
            signs[static_cast<std::size_t>(n - m + j)] = ((pattern >> j) & 1U) ? SiteSign::minus : SiteSign::plus;
        }
        const double ov = std::abs(inner_product(w, init_product_x(signs)));
        sum_abs += ov;
        report.sum_sq_overlap += ov * ov;
        below += ov <= report.threshold ? 1 : 0;
    }
    report.ensemble_size = static_cast<int>(members);
    report.mean_abs_overlap = sum_abs / static_cast<double>(members);
    report.fraction_below = static_cast<double>(below) / static_cast<double>(members);
    if (!exhaustive) {
        const double f = report.fraction_below;
        report.sampling_error = 3.0 * std::sqrt(std::max(f * (1.0 - f), 1e-12) / static_cast<double>(members));
    }
    return report;
}

std::vector<BoundRow> bound_vs_measurement(const CircuitSpec &spec, std::span<const SiteSign> signs,
                                           std::span<const int> t_values, double K, int p_degree,
                                           std::span<const double> alphas) {
    std::vector<int> ts(t_values.begin(), t_values.end());
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    const int n = spec.num_spins() / 2;

    std::vector<BoundRow> rows;
    Statevector evolved = init_product_x(signs);
    int now = 0;
    for (int t : ts) {
        detail::require(t >= 1 && t <= spec.depth(), "t must lie in [1, depth]");
        evolve(evolved, spec, now, t);
        now = t;
        const int m = scheduled_m(t, K, n);
        const ProofTrace trace = run_proof_trace(spec, signs, m, t, p_degree, evolved);
        for (double alpha : alphas) {
            BoundRow row;
            row.t = t;
            row.m = m;
            row.alpha = alpha;
            row.measured = renyi_entropy(trace.spectrum, alpha);
            row.overlap_bound = sandwich_factor(alpha) * (-2.0 * std::log(trace.overlap_V));
            row.s_prime_member = trace.s_prime_member;
            if (!trace.vacuous()) {
                row.threshold_bound = sandwich_factor(alpha) * (-2.0 * std::log(trace.lambda1_bound));
            }
            row.violation = row.measured > row.overlap_bound + kBoundTol;
            if (row.s_prime_member && row.threshold_bound) {
                row.violation = row.violation || row.measured > *row.threshold_bound + kBoundTol;
            }
            rows.push_back(row);
        }
    }
    return rows;
}

} // namespace chargecirc
