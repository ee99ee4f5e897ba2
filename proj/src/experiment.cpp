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
#include "chargecirc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "chargecirc/errors.hpp"
#include "chargecirc/fit.hpp"
#include "chargecirc/random.hpp"

namespace chargecirc {

namespace {

constexpr std::uint64_t kRealizationTag = 0x7265616c697a6174ULL;
constexpr std::uint64_t kSignsTag = 0x7369676e73ULL;
constexpr std::uint64_t kBootstrapTag = 0x626f6f74ULL;
constexpr double kSandwichTol = 1e-9;
constexpr double kIdentityTol = 1e-10;
constexpr double kBoundTol = 1e-6;

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

template <class T> T parse_number(const std::string &key, const std::string &text) {
    T value{};
    const std::string s = trim(text);
    auto res = std::from_chars(s.data(), s.data() + s.size(), value);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw ConfigError("invalid value '" + text + "' for " + key);
    }
    return value;
}

bool parse_bool(const std::string &key, const std::string &text) {
    const std::string s = trim(text);
    if (s == "1" || s == "true" || s == "yes" || s == "on") {
        return true;
    }
    if (s == "0" || s == "false" || s == "no" || s == "off") {
        return false;
    }
    throw ConfigError("invalid boolean '" + text + "' for " + key);
}

void put_double(std::ostream &out, double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    out.write(buf, res.ptr - buf);
}

std::vector<int> measured_times(const RunConfig &config) {
    std::vector<int> ts;
    for (int t = config.measure_every; t <= config.depth; t += config.measure_every) {
        ts.push_back(t);
    }
    return ts;
}

} // namespace

// ---------------------------------------------------------------------------
// Configuration

std::vector<double> parse_alphas(const std::string &text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string s = trim(item);
        if (s.empty()) {
            continue;
        }
        if (s == "inf" || s == "infinity" || s == "Inf") {
            out.push_back(kAlphaInfinity);
        } else {
            out.push_back(parse_number<double>("alphas", s));
        }
    }
    return out;
}

std::string alpha_column(double alpha) {
    if (std::isinf(alpha)) {
        return "rinf";
    }
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), alpha);
    return "r" + std::string(buf, res.ptr);
}

RunMode parse_mode(const std::string &text) {
    const std::string s = trim(text);
    if (s == "entropy") {
        return RunMode::entropy;
    }
    if (s == "transport") {
        return RunMode::transport;
    }
    if (s == "proof") {
        return RunMode::proof;
    }
    if (s == "all") {
        return RunMode::all;
    }
    throw ConfigError("unknown mode '" + text + "'");
}

std::string mode_name(RunMode mode) {
    switch (mode) {
    case RunMode::entropy:
        return "entropy";
    case RunMode::transport:
        return "transport";
    case RunMode::proof:
        return "proof";
    case RunMode::all:
        return "all";
    }
    return "entropy";
}

void validate(const RunConfig &c) {
    auto fail = [](const std::string &what) { throw ConfigError(what); };
    if (c.num_spins < 4 || c.num_spins > Statevector::kMaxSpins || c.num_spins % 2 != 0) {
        fail("spins must be even in [4, 28]");
    }
    if (c.depth < 1) {
        fail("depth must be >= 1");
    }
    if (c.ensemble_size < 1) {
        fail("ensemble must be >= 1");
    }
    if (c.alphas.empty()) {
        fail("alphas must not be empty");
    }
    for (double a : c.alphas) {
        if (!(a > 1.0)) {
            fail("every alpha must be > 1 (use inf for the min-entropy)");
        }
    }
    if (c.measure_every < 1) {
        fail("measure-every must be >= 1");
    }
    if (!(c.m_const > 0.0)) {
        fail("m-const must be > 0");
    }
    if (c.p_degree < 1) {
        fail("p-degree must be >= 1");
    }
    if (c.workers < 1) {
        fail("workers must be >= 1");
    }
    if (c.output_path.empty()) {
        fail("out must not be empty");
    }
    if (c.bootstrap_samples < 0) {
        fail("bootstrap must be >= 0");
    }
    if (c.spread_t_lo < 1 || c.spread_t_hi < c.spread_t_lo) {
        fail("spread window must satisfy 1 <= lo <= hi");
    }
}

RunConfig config_from_pairs(const std::map<std::string, std::string> &pairs) {
    RunConfig c;
    for (const auto &[key, value] : pairs) {
        if (key == "spins") {
            c.num_spins = parse_number<int>(key, value);
        } else if (key == "depth") {
            c.depth = parse_number<int>(key, value);
        } else if (key == "ensemble") {
            c.ensemble_size = parse_number<int>(key, value);
        } else if (key == "seed") {
            c.master_seed = parse_number<std::uint64_t>(key, value);
        } else if (key == "alphas") {
            c.alphas = parse_alphas(value);
        } else if (key == "mode") {
            c.mode = parse_mode(value);
        } else if (key == "measure-every") {
            c.measure_every = parse_number<int>(key, value);
        } else if (key == "m-const") {
            c.m_const = parse_number<double>(key, value);
        } else if (key == "p-degree") {
            c.p_degree = parse_number<int>(key, value);
        } else if (key == "workers") {
            c.workers = parse_number<int>(key, value);
        } else if (key == "out") {
            c.output_path = trim(value);
        } else if (key == "log-then-mean") {
            c.log_then_mean = parse_bool(key, value);
        } else if (key == "spread-t-lo") {
            c.spread_t_lo = parse_number<int>(key, value);
        } else if (key == "spread-t-hi") {
            c.spread_t_hi = parse_number<int>(key, value);
        } else if (key == "bootstrap") {
            c.bootstrap_samples = parse_number<int>(key, value);
        } else if (key == "identity-circuit") {
            c.identity_circuit = parse_bool(key, value);
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    validate(c);
    return c;
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file " + path.string());
    }
    std::map<std::string, std::string> pairs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
        if (body.empty()) {
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
        }
        pairs[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
    }
    return pairs;
}

// ---------------------------------------------------------------------------
// Seeding

std::uint64_t realization_seed(std::uint64_t master_seed, int realization) {
    return derive_key({master_seed, kRealizationTag, static_cast<std::uint64_t>(realization)});
}

std::vector<SiteSign> realization_signs(std::uint64_t seed, int num_spins) {
    CounterStream stream(derive_key({seed, kSignsTag}));
    std::vector<SiteSign> signs(static_cast<std::size_t>(num_spins));
    for (auto &s : signs) {
        s = (stream.next_u64() >> 63) ? SiteSign::minus : SiteSign::plus;
    }
    return signs;
}

// ---------------------------------------------------------------------------
// Growth fits

GrowthFit fit_growth(std::span<const RunRecord> records, const std::string &observable, std::size_t alpha_index,
                     double alpha, int num_spins, const GrowthFitOptions &options) {
    const bool is_vn = observable == "vn";
    detail::require(is_vn || observable == "renyi", "observable must be 'vn' or 'renyi'");
    auto value_of = [&](const RunRecord &r) { return is_vn ? r.vn : r.renyi.at(alpha_index); };

    // realization -> t -> value
    std::map<int, std::map<int, double>> table;
    for (const auto &r : records) {
        if (r.t > 0) {
            table[r.realization][r.t] = value_of(r);
        }
    }
    std::vector<int> reals;
    for (const auto &[k, _] : table) {
        reals.push_back(k);
    }
    std::map<int, std::pair<double, int>> sums;
    for (const auto &[_, row] : table) {
        for (const auto &[t, v] : row) {
            sums[t].first += v;
            sums[t].second += 1;
        }
    }

    GrowthFit fit;
    fit.observable = is_vn ? "vn" : alpha_column(alpha);
    fit.saturation_cutoff = 0.5 * (num_spins / 2) * std::numbers::ln2;

    std::vector<int> window;
    for (const auto &[t, acc] : sums) {
        const double mean = acc.first / acc.second;
        if (mean > fit.saturation_cutoff) {
            break;
        }
        if (mean > 0.0) {
            window.push_back(t);
        }
    }
    if (static_cast<int>(window.size()) < options.min_points) {
        throw FitUnavailable(fit.observable + ": pre-saturation window has " + std::to_string(window.size()) +
                             " points, needs " + std::to_string(options.min_points));
    }

    auto fit_sample = [&](const std::vector<int> &chosen) -> std::optional<LineFit> {
        std::vector<double> x, y;
        for (int t : window) {
            double acc = 0.0;
            int count = 0;
            for (int r : chosen) {
                const auto &row = table.at(r);
                auto it = row.find(t);
                if (it == row.end()) {
                    continue;
                }
                if (options.log_then_mean) {
                    if (it->second <= 0.0) {
                        return std::nullopt;
                    }
                    acc += std::log(it->second);
                } else {
                    acc += it->second;
                }
                ++count;
            }
            if (count == 0) {
                return std::nullopt;
            }
            const double mean = acc / count;
            if (!options.log_then_mean && mean <= 0.0) {
                return std::nullopt;
            }
            x.push_back(std::log(static_cast<double>(t)));
            y.push_back(options.log_then_mean ? mean : std::log(mean));
        }
        return fit_line(x, y);
    };

    const auto central = fit_sample(reals);
    if (!central) {
        throw FitUnavailable(fit.observable + ": non-positive entropies in the window");
    }
    fit.exponent = central->slope;
    fit.prefactor = std::exp(central->intercept);
    fit.t_lo = window.front();
    fit.t_hi = window.back();
    fit.points = static_cast<int>(window.size());

    std::vector<double> slopes;
    for (int b = 0; b < options.bootstrap_samples; ++b) {
        CounterStream stream(derive_key({options.bootstrap_seed, kBootstrapTag, static_cast<std::uint64_t>(b)}));
        std::vector<int> chosen(reals.size());
        for (auto &c : chosen) {
            c = reals[static_cast<std::size_t>(stream.next_u64() % reals.size())];
        }
        if (auto f = fit_sample(chosen)) {
            slopes.push_back(f->slope);
        }
    }
    if (slopes.empty()) {
        fit.ci_lo = fit.ci_hi = fit.exponent;
    } else {
        fit.ci_lo = quantile(slopes, 0.025);
        fit.ci_hi = quantile(slopes, 0.975);
    }
    return fit;
}

double diffusive_bound_curve(const TransportFit &fit, int t, int p_degree, double alpha) {
    detail::require(t >= 1, "bound curve needs t >= 1");
    detail::require(fit.diffusion_coefficient_c > 0.0, "bound curve needs a positive diffusion constant");
    const double arg = std::log(4.0 * t * p_of_t(t, p_degree)) + fit.log_prefactor;
    const double m_star = std::sqrt(std::max(0.0, t * arg / fit.diffusion_coefficient_c));
    return sandwich_factor(alpha) * 2.0 * (m_star + 1.0) * std::numbers::ln2;
}

// ---------------------------------------------------------------------------
// Simulation

namespace {

struct RealizationOutput {
    std::vector<RunRecord> records;
    int unitarity = 0;
    int trace_invariants = 0;
    std::vector<SpreadPoint> spread;
    LeakageCurve leakage;
};

RealizationOutput run_realization(const RunConfig &config, int r) {
    RealizationOutput out;
    const std::uint64_t seed = realization_seed(config.master_seed, r);
    const CircuitSpec spec = config.identity_circuit ? CircuitSpec::identity(config.num_spins, config.depth)
                                                     : CircuitSpec::random(config.num_spins, config.depth, seed);
    const std::vector<SiteSign> signs = realization_signs(seed, config.num_spins);
    const int n = config.num_spins / 2;
    const std::vector<int> ts = measured_times(config);

    Statevector psi = init_product_x(signs);
    int now = 0;
    std::optional<Statevector> zero_block;
    int zero_block_m = 0;
    int zero_block_t = 0;

    for (int t : ts) {
        evolve(psi, spec, now, t);
        now = t;
        const EntanglementSpectrum spectrum = schmidt_spectrum(psi, n);

        RunRecord rec;
        rec.seed = seed;
        rec.realization = r;
        rec.t = t;
        rec.vn = von_neumann_entropy(spectrum);
        for (double a : config.alphas) {
            rec.renyi.push_back(renyi_entropy(spectrum, a));
        }
        rec.lambda1 = spectrum.largest();

        if (config.wants_transport() || config.wants_proof()) {
            const int m = scheduled_m(t, config.m_const, n);
            rec.m = m;
            if (config.wants_transport()) {
                if (!zero_block || zero_block_m != m) {
                    zero_block = init_zero_block(signs, m);
                    zero_block_m = m;
                    zero_block_t = 0;
                }
                evolve(*zero_block, spec, zero_block_t, t);
                zero_block_t = t;
                rec.leakage = cut_leakage(*zero_block);
            }
            if (config.wants_proof()) {
                const ProofTrace trace = run_proof_trace(spec, signs, m, t, config.p_degree, psi);
                if (!rec.leakage) {
                    rec.leakage = trace.final_leakage;
                }
                ProofFields pf;
                pf.delta_norm = trace.delta_norm;
                pf.overlap_v = trace.overlap_V;
                pf.s_prime = trace.s_prime_member;
                if (!trace.vacuous()) {
                    pf.bound = -2.0 * std::log(trace.lambda1_bound);
                }
                rec.proof = pf;
                for (const auto &c : trace.invariants) {
                    if (!c.holds) {
                        if (c.name.rfind("unitarity", 0) == 0) {
                            ++out.unitarity;
                        } else {
                            ++out.trace_invariants;
                        }
                    }
                }
                for (const auto &c : verify_overlap_chain(trace, config.alphas)) {
                    out.trace_invariants += c.holds ? 0 : 1;
                }
            }
        }
        out.records.push_back(std::move(rec));
    }

    if (config.wants_transport()) {
        out.spread = domain_wall_spread(spec, ts);
        std::vector<int> ms(static_cast<std::size_t>(n));
        for (int m = 1; m <= n; ++m) {
            ms[static_cast<std::size_t>(m - 1)] = m;
        }
        out.leakage = measure_leakage(spec, signs, ms, ts);
    }
    return out;
}

} // namespace

RunResult simulate(const RunConfig &config) {
    validate(config);
    std::vector<RealizationOutput> outputs(static_cast<std::size_t>(config.ensemble_size));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (int r = next++; r < config.ensemble_size; r = next++) {
            try {
                outputs[static_cast<std::size_t>(r)] = run_realization(config, r);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    const int nthreads = std::min(config.workers, config.ensemble_size);
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int i = 0; i < nthreads; ++i) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    RunResult result;
    int unitarity = 0, trace_invariants = 0;
    for (auto &o : outputs) {
        result.records.insert(result.records.end(), o.records.begin(), o.records.end());
        unitarity += o.unitarity;
        trace_invariants += o.trace_invariants;
    }

    std::optional<TransportSummary> transport;
    if (config.wants_transport()) {
        TransportSummary ts;
        std::map<int, double> spread_acc;
        std::vector<LeakageCurve> curves;
        for (const auto &o : outputs) {
            for (const auto &p : o.spread) {
                spread_acc[p.t] += p.variance;
            }
            curves.push_back(o.leakage);
        }
        std::vector<double> st, sv;
        for (const auto &[t, v] : spread_acc) {
            const double mean = v / config.ensemble_size;
            ts.mean_spread.push_back({t, mean});
            if (t >= config.spread_t_lo && t <= config.spread_t_hi && mean > 0.0) {
                st.push_back(t);
                sv.push_back(mean);
            }
        }
        try {
            ts.spread_slope = fit_log_log(st, sv).slope;
        } catch (const FitUnavailable &) {
        }
        if (!curves.empty() && !curves.front().entries.empty()) {
            ts.mean_leakage = average_leakage(curves);
            try {
                ts.leakage_fit = fit_diffusive_leakage(ts.mean_leakage);
            } catch (const FitUnavailable &) {
            }
        }
        transport = std::move(ts);
    }

    result.summary = summarize(config, result.records, std::move(transport));
    result.summary.violations.unitarity += unitarity;
    result.summary.violations.trace_invariants += trace_invariants;
    return result;
}

RunSummary summarize(const RunConfig &config, std::span<const RunRecord> records,
                     std::optional<TransportSummary> transport) {
    RunSummary s;
    s.config = config;
    s.record_count = records.size();
    s.transport = std::move(transport);
    const double ceiling = (config.num_spins / 2) * std::numbers::ln2 + kSandwichTol;

    for (const auto &r : records) {
        const double rinf = std::max(0.0, -2.0 * std::log(r.lambda1));
        s.violations.ceiling += r.vn > ceiling ? 1 : 0;
        for (std::size_t i = 0; i < config.alphas.size() && i < r.renyi.size(); ++i) {
            const double a = config.alphas[i];
            const double ra = r.renyi[i];
            s.violations.ceiling += ra > ceiling ? 1 : 0;
            if (std::isinf(a)) {
                s.violations.sandwich += std::abs(ra - rinf) > kIdentityTol ? 1 : 0;
            } else {
                const bool ok = rinf <= ra + kSandwichTol && ra <= sandwich_factor(a) * rinf + kSandwichTol;
                s.violations.sandwich += ok ? 0 : 1;
            }
            if (r.proof && r.proof->s_prime && r.proof->bound) {
                s.violations.bound_chain += ra > sandwich_factor(a) * *r.proof->bound + kBoundTol ? 1 : 0;
            }
        }
        if (r.proof) {
            s.violations.bound_chain += r.proof->overlap_v > r.lambda1 + kSandwichTol ? 1 : 0;
        }
    }

    GrowthFitOptions opts;
    opts.log_then_mean = config.log_then_mean;
    opts.bootstrap_samples = config.bootstrap_samples;
    opts.bootstrap_seed = config.master_seed;
    if (!records.empty()) {
        auto attempt = [&](const std::string &obs, std::size_t idx, double alpha) {
            try {
                s.fits.push_back(fit_growth(records, obs, idx, alpha, config.num_spins, opts));
            } catch (const FitUnavailable &e) {
                s.fit_failures.emplace_back(e.what());
            }
        };
        attempt("vn", 0, 1.0);
        for (std::size_t i = 0; i < config.alphas.size(); ++i) {
            attempt("renyi", i, config.alphas[i]);
        }
    }

    if (s.transport && s.transport->leakage_fit && s.transport->leakage_fit->diffusion_coefficient_c > 0.0) {
        std::size_t idx = config.alphas.size();
        for (std::size_t i = 0; i < config.alphas.size(); ++i) {
            if (!std::isinf(config.alphas[i])) {
                idx = i;
                break;
            }
        }
        if (idx < config.alphas.size()) {
            std::map<int, std::pair<double, int>> acc;
            for (const auto &r : records) {
                acc[r.t].first += r.renyi[idx];
                acc[r.t].second += 1;
            }
            for (const auto &[t, a] : acc) {
                const double mean = a.first / a.second;
                const double bound =
                    diffusive_bound_curve(*s.transport->leakage_fit, t, config.p_degree, config.alphas[idx]);
                s.bound_curve.push_back({static_cast<double>(t), mean, bound});
                s.bound_curve_crossings += mean > bound ? 1 : 0;
            }
        }
    }
    return s;
}

int RunSummary::exit_code() const noexcept {
    if (record_count == 0) {
        return kExitNoData;
    }
    if (violations.total() > 0 || bound_curve_crossings > 0) {
        return kExitInvariantViolation;
    }
    return kExitSuccess;
}

// ---------------------------------------------------------------------------
// Output

std::filesystem::path summary_path(const std::filesystem::path &csv_path) {
    auto p = csv_path;
    p.replace_filename(csv_path.stem().string() + ".summary.json");
    return p;
}

void write_csv(std::ostream &out, const RunConfig &config, std::span<const RunRecord> records) {
    const bool extended = config.mode != RunMode::entropy;
    out << "seed,realization,t,vn";
    for (double a : config.alphas) {
        out << ',' << alpha_column(a);
    }
    out << ",lambda1";
    if (extended) {
        out << ",m,leakage,delta_norm,overlap_v,bound,s_prime";
    }
    out << '\n';
    for (const auto &r : records) {
        out << r.seed << ',' << r.realization << ',' << r.t << ',';
        put_double(out, r.vn);
        for (double v : r.renyi) {
            out << ',';
            put_double(out, v);
        }
        out << ',';
        put_double(out, r.lambda1);
        if (extended) {
            out << ',';
            if (r.m) {
                out << *r.m;
            }
            out << ',';
            if (r.leakage) {
                put_double(out, *r.leakage);
            }
            out << ',';
            if (r.proof) {
                put_double(out, r.proof->delta_norm);
                out << ',';
                put_double(out, r.proof->overlap_v);
                out << ',';
                if (r.proof->bound) {
                    put_double(out, *r.proof->bound);
                }
                out << ',' << (r.proof->s_prime ? 1 : 0);
            } else {
                out << ",,,";
            }
        }
        out << '\n';
    }
}

void write_summary_json(std::ostream &out, const RunSummary &s) {
    using nlohmann::json;
    json j;
    j["schema_version"] = 1;
    json cfg;
    cfg["spins"] = s.config.num_spins;
    cfg["depth"] = s.config.depth;
    cfg["ensemble"] = s.config.ensemble_size;
    cfg["seed"] = s.config.master_seed;
    std::vector<std::string> alphas;
    for (double a : s.config.alphas) {
        alphas.push_back(alpha_column(a));
    }
    cfg["alphas"] = alphas;
    cfg["mode"] = mode_name(s.config.mode);
    cfg["measure_every"] = s.config.measure_every;
    cfg["m_const"] = s.config.m_const;
    cfg["p_degree"] = s.config.p_degree;
    cfg["log_then_mean"] = s.config.log_then_mean;
    j["config"] = cfg;
    j["records"] = s.record_count;

    json fits = json::array();
    for (const auto &f : s.fits) {
        fits.push_back({{"observable", f.observable},
                        {"exponent", f.exponent},
                        {"prefactor", f.prefactor},
                        {"ci", {f.ci_lo, f.ci_hi}},
                        {"window", {f.t_lo, f.t_hi}},
                        {"points", f.points},
                        {"saturation_cutoff", f.saturation_cutoff}});
    }
    j["fits"] = fits;
    j["fit_failures"] = s.fit_failures;
    j["violations"] = {{"sandwich", s.violations.sandwich},
                       {"ceiling", s.violations.ceiling},
                       {"unitarity", s.violations.unitarity},
                       {"trace_invariants", s.violations.trace_invariants},
                       {"bound_chain", s.violations.bound_chain},
                       {"total", s.violations.total()}};
    if (s.transport) {
        json t;
        json spread = json::array();
        for (const auto &p : s.transport->mean_spread) {
            spread.push_back({p.t, p.variance});
        }
        t["mean_spread"] = spread;
        t["spread_slope"] = s.transport->spread_slope ? json(*s.transport->spread_slope) : json(nullptr);
        if (s.transport->leakage_fit) {
            const auto &f = *s.transport->leakage_fit;
            t["leakage_fit"] = {{"z", f.exponent_z},       {"c", f.diffusion_coefficient_c},
                                {"log_prefactor", f.log_prefactor}, {"goodness", f.goodness},
                                {"points", f.points},      {"m_window", {f.m_lo, f.m_hi}},
                                {"t_window", {f.t_lo, f.t_hi}}};
        } else {
            t["leakage_fit"] = nullptr;
        }
        j["transport"] = t;
    }
    json curve = json::array();
    for (const auto &row : s.bound_curve) {
        curve.push_back({row[0], row[1], row[2]});
    }
    j["bound_curve"] = curve;
    j["bound_curve_crossings"] = s.bound_curve_crossings;
    j["exit_code"] = s.exit_code();
    out << j.dump(2) << '\n';
}

int emit_summary(std::ostream &out, const RunSummary &s) {
    if (s.record_count == 0) {
        out << "no data: the run produced no records\n";
        return s.exit_code();
    }
    out << "records: " << s.record_count << " (" << s.config.ensemble_size << " realizations, 2n = "
        << s.config.num_spins << ", mode " << mode_name(s.config.mode) << ")\n";
    for (const auto &f : s.fits) {
        out << "growth " << f.observable << ": exponent " << f.exponent << " [" << f.ci_lo << ", " << f.ci_hi
            << "] over t in [" << f.t_lo << ", " << f.t_hi << "]\n";
    }
    for (const auto &msg : s.fit_failures) {
        out << "fit unavailable: " << msg << '\n';
    }
    if (s.transport) {
        if (s.transport->spread_slope) {
            out << "domain-wall variance slope: " << *s.transport->spread_slope << '\n';
        }
        if (s.transport->leakage_fit) {
            out << "leakage collapse z: " << s.transport->leakage_fit->exponent_z
                << ", c = " << s.transport->leakage_fit->diffusion_coefficient_c << '\n';
        }
    }
    if (!s.bound_curve.empty()) {
        out << "sqrt(t ln t) bound curve (t, mean R, bound):\n";
        for (const auto &row : s.bound_curve) {
            out << "  " << row[0] << ' ' << row[1] << ' ' << row[2] << '\n';
        }
        out << "bound curve crossings: " << s.bound_curve_crossings << '\n';
    }
    const auto &v = s.violations;
    out << "violations: sandwich " << v.sandwich << ", ceiling " << v.ceiling << ", unitarity " << v.unitarity
        << ", trace " << v.trace_invariants << ", bound chain " << v.bound_chain << '\n';
    if (s.config.wants_proof() && v.total() == 0) {
        out << "all inequalities hold\n";
    }
    return s.exit_code();
}

RunResult run_experiment(const RunConfig &config) {
    RunResult result = simulate(config);
    const std::filesystem::path csv(config.output_path);
    {
        std::ofstream out(csv, std::ios::binary);
        if (!out) {
            throw IoError("cannot open " + csv.string() + " for writing");
        }
        write_csv(out, config, result.records);
        if (!out) {
            throw IoError("failed writing " + csv.string());
        }
    }
    const auto json_path = summary_path(csv);
    std::ofstream js(json_path, std::ios::binary);
    if (!js) {
        throw IoError("cannot open " + json_path.string() + " for writing");
    }
    write_summary_json(js, result.summary);
    if (!js) {
        throw IoError("failed writing " + json_path.string());
    }
    return result;
}

} // namespace chargecirc
