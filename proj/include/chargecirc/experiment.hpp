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
 * Ensemble runs, result files and growth-exponent fits.
 */
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "chargecirc/entanglement.hpp"
#include "chargecirc/proof.hpp"
#include "chargecirc/transport.hpp"

namespace chargecirc {

class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum ExitCode : int {
    kExitSuccess = 0,
    kExitInvalidConfig = 2,
    kExitInvariantViolation = 3,
    kExitIoFailure = 4,
    kExitNoData = 5,
};

enum class RunMode { entropy, transport, proof, all };

struct RunConfig {
    int num_spins = 12;
    int depth = 20;
    int ensemble_size = 4;
    std::uint64_t master_seed = 1;
    /// Renyi indices; kAlphaInfinity selects the min-entropy.
    std::vector<double> alphas{2.0, 3.0, kAlphaInfinity};
    int measure_every = 1;
    RunMode mode = RunMode::entropy;
    /// K in m(t) = ceil(K sqrt(t ln t)).
    double m_const = 2.0;
    int p_degree = 2;
    int workers = 1;
    std::string output_path = "run.csv";
    /// Fit ln of the mean entropy (false) or the mean of ln entropy (true).
    bool log_then_mean = false;
    /// Domain-wall slope window.
    int spread_t_lo = 4;
    int spread_t_hi = 40;
    int bootstrap_samples = 200;
    /// Test hook: every gate is the identity.
    bool identity_circuit = false;

    [[nodiscard]] bool wants_transport() const noexcept { return mode == RunMode::transport || mode == RunMode::all; }
    [[nodiscard]] bool wants_proof() const noexcept { return mode == RunMode::proof || mode == RunMode::all; }
};

/// Throws ConfigError on any out-of-range field.
void validate(const RunConfig &config);

/// Builds a config from key=value pairs (keys are the long CLI flag names
/// without dashes). Unknown keys are rejected.
RunConfig config_from_pairs(const std::map<std::string, std::string> &pairs);

/// Reads a flat key=value file; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::filesystem::path &path);

std::vector<double> parse_alphas(const std::string &text);
std::string alpha_column(double alpha);
RunMode parse_mode(const std::string &text);
std::string mode_name(RunMode mode);

struct ProofFields {
    double delta_norm = 0.0;
    double overlap_v = 0.0;
    /// Bound on R_inf, -2 ln(2^-m (1 - ||Delta|| p(t))); empty when vacuous.
    std::optional<double> bound;
    bool s_prime = false;
};

struct RunRecord {
    std::uint64_t seed = 0;
    int realization = 0;
    int t = 0;
    double vn = 0.0;
    /// Aligned with RunConfig::alphas.
    std::vector<double> renyi;
    double lambda1 = 1.0;
    std::optional<int> m;
    std::optional<double> leakage;
    std::optional<ProofFields> proof;
};

/// Seed of realization r, derived from the master seed.
std::uint64_t realization_seed(std::uint64_t master_seed, int realization);

/// Random sigma_x signs for a realization.
std::vector<SiteSign> realization_signs(std::uint64_t seed, int num_spins);

struct GrowthFit {
    std::string observable;
    double exponent = 0.0;
    double prefactor = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    int t_lo = 0;
    int t_hi = 0;
    int points = 0;
    double saturation_cutoff = 0.0;
};

struct GrowthFitOptions {
    bool log_then_mean = false;
    int bootstrap_samples = 200;
    std::uint64_t bootstrap_seed = 0;
    int min_points = 6;
};

/// Observable: "vn" or "renyi"; for "renyi" `alpha_index` selects the column.
/// Fits ln(mean entropy) against ln t over the leading window where the mean
/// stays at or below half of n ln 2. Throws FitUnavailable with fewer than
/// min_points points.
GrowthFit fit_growth(std::span<const RunRecord> records, const std::string &observable, std::size_t alpha_index,
                     double alpha, int num_spins, const GrowthFitOptions &options = {});

/// Curve value at t of the diffusive bound on R_alpha implied by a leakage
/// fit: with leakage <= A exp(-c m^2/t), the zero-block half-width
/// m*(t) = sqrt(t ln(4 A t p(t)) / c) makes the threshold at least 2^-m*/2,
/// giving R_alpha <= alpha/(alpha-1) * 2 (m* + 1) ln 2.
double diffusive_bound_curve(const TransportFit &fit, int t, int p_degree, double alpha);

struct ViolationCounts {
    int sandwich = 0;
    int ceiling = 0;
    int unitarity = 0;
    int trace_invariants = 0;
    int bound_chain = 0;

    [[nodiscard]] int total() const noexcept { return sandwich + ceiling + unitarity + trace_invariants + bound_chain; }
};

struct TransportSummary {
    std::vector<SpreadPoint> mean_spread;
    std::optional<double> spread_slope;
    LeakageCurve mean_leakage;
    std::optional<TransportFit> leakage_fit;
};

struct RunSummary {
    RunConfig config;
    std::size_t record_count = 0;
    std::vector<GrowthFit> fits;
    std::vector<std::string> fit_failures;
    ViolationCounts violations;
    std::optional<TransportSummary> transport;
    /// (t, mean R_alpha, bound) for the first finite alpha, when transport
    /// data allowed a leakage fit.
    std::vector<std::array<double, 3>> bound_curve;
    int bound_curve_crossings = 0;

    [[nodiscard]] int exit_code() const noexcept;
};

struct RunResult {
    std::vector<RunRecord> records;
    RunSummary summary;
};

/// Runs every realization and returns records ordered by (realization, t).
/// Pure: writes nothing.
RunResult simulate(const RunConfig &config);

/// Runs `simulate` and writes the CSV and its sibling JSON summary.
RunResult run_experiment(const RunConfig &config);

/// Derived from output_path: `<stem>.summary.json` in the same directory.
std::filesystem::path summary_path(const std::filesystem::path &csv_path);

void write_csv(std::ostream &out, const RunConfig &config, std::span<const RunRecord> records);
void write_summary_json(std::ostream &out, const RunSummary &summary);

/// Human-readable report; returns the process exit code.
int emit_summary(std::ostream &out, const RunSummary &summary);

/// Builds fits and violation counts from records (plus transport data when
/// provided).
RunSummary summarize(const RunConfig &config, std::span<const RunRecord> records,
                     std::optional<TransportSummary> transport);

} // namespace chargecirc
