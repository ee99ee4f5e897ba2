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
#include "chargecirc/transport.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "chargecirc/errors.hpp"
#include "chargecirc/fit.hpp"

namespace chargecirc {

std::vector<double> charge_profile(const Statevector &state) {
    const int N = state.num_spins();
    std::vector<double> ones(static_cast<std::size_t>(N), 0.0);
    const auto amps = state.amplitudes();
    double total = 0.0;
    for (std::uint64_t b = 0; b < amps.size(); ++b) {
        const double w = std::norm(amps[b]);
        total += w;
        for (std::uint64_t rest = b; rest != 0; rest &= rest - 1) {
            ones[static_cast<std::size_t>(std::countr_zero(rest))] += w;
        }
    }
    std::vector<double> profile(ones.size());
    for (std::size_t i = 0; i < ones.size(); ++i) {
        profile[i] = total - 2.0 * ones[i];
    }
    return profile;
}

Statevector domain_wall_state(int num_spins) {
    detail::require(num_spins >= 2 && num_spins % 2 == 0, "domain wall needs an even number of spins");
    Statevector s(num_spins);
    s[0] = 0.0;
    s[(std::size_t{1} << (num_spins / 2)) - 1] = 1.0;
    return s;
}

double cut_leakage(const Statevector &state) {
    const int n = state.num_spins() / 2;
    const int sites[2] = {n, n + 1};
    return std::sqrt(std::max(0.0, 1.0 - zero_weight(state, sites)));
}

LeakageCurve measure_leakage(const CircuitSpec &spec, std::span<const SiteSign> signs,
                             std::span<const int> m_values, std::span<const int> t_values) {
    detail::require(static_cast<int>(signs.size()) == spec.num_spins(), "sign count must equal num_spins");
    const int n = spec.num_spins() / 2;
    for (int m : m_values) {
        detail::require(m >= 1 && m <= n, "m " + std::to_string(m) + " outside [1, n]");
    }
    std::vector<int> ts(t_values.begin(), t_values.end());
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (int t : ts) {
        detail::require(t >= 0 && t <= spec.depth(), "t " + std::to_string(t) + " outside [0, depth]");
    }

    LeakageCurve curve;
    for (int m : m_values) {
        Statevector psi = init_zero_block(signs, m);
        int now = 0;
        for (int t : ts) {
            if (t > now) {
                evolve(psi, spec, now, t);
                now = t;
            }
            curve.entries.push_back({m, t, cut_leakage(psi)});
        }
    }
    return curve;
}

LeakageCurve average_leakage(std::span<const LeakageCurve> curves) {
    detail::require(!curves.empty(), "average_leakage needs at least one curve");
    std::map<std::pair<int, int>, std::pair<double, int>> acc;
    for (const auto &c : curves) {
        for (const auto &e : c.entries) {
            auto &slot = acc[{e.m, e.t}];
            slot.first += e.leakage;
            slot.second += 1;
        }
    }
    LeakageCurve mean;
    for (const auto &[key, val] : acc) {
        detail::require(val.second == static_cast<int>(curves.size()), "curves sampled on different grids");
        mean.entries.push_back({key.first, key.second, val.first / val.second});
    }
    return mean;
}

TransportFit fit_diffusive_leakage(const LeakageCurve &curve, const LeakageFitOptions &options) {
    std::vector<LeakagePoint> used;
    for (const auto &e : curve.entries) {
        if (e.t > 0 && e.leakage > options.min_leakage && e.leakage < options.max_leakage) {
            used.push_back(e);
        }
    }
    if (static_cast<int>(used.size()) < options.min_points) {
        throw FitUnavailable("leakage fit has " + std::to_string(used.size()) + " usable points, needs " +
                             std::to_string(options.min_points));
    }

    TransportFit fit;
    fit.points = static_cast<int>(used.size());
    fit.m_lo = fit.m_hi = used.front().m;
    fit.t_lo = fit.t_hi = used.front().t;
    std::vector<double> x, y, lnm, lnt, lnneg;
    for (const auto &e : used) {
        fit.m_lo = std::min(fit.m_lo, e.m);
        fit.m_hi = std::max(fit.m_hi, e.m);
        fit.t_lo = std::min(fit.t_lo, e.t);
        fit.t_hi = std::max(fit.t_hi, e.t);
        const double m = e.m, t = e.t;
        x.push_back(-m * m / t);
        y.push_back(std::log(e.leakage));
        lnm.push_back(std::log(m));
        lnt.push_back(std::log(t));
        lnneg.push_back(std::log(-std::log(e.leakage)));
    }
    const LineFit cfit = fit_line(x, y);
    fit.diffusion_coefficient_c = cfit.slope;
    fit.log_prefactor = cfit.intercept;
    fit.goodness = cfit.rms();

    double best = std::numeric_limits<double>::infinity();
    const int steps = static_cast<int>(std::lround((options.z_max - options.z_min) / options.z_step));
    for (int k = 0; k <= steps; ++k) {
        const double z = options.z_min + k * options.z_step;
        std::vector<double> u(lnm.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            u[i] = lnm[i] - z * lnt[i];
        }
        CollapseScore score{z, std::numeric_limits<double>::infinity(), 0.0, 0.0};
        try {
            const LineFit f = fit_line(u, lnneg);
            score.ssr = f.ssr;
            score.slope = f.slope;
            score.intercept = f.intercept;
        } catch (const FitUnavailable &) {
        }
        fit.collapse.push_back(score);
        if (score.ssr < best) {
            best = score.ssr;
            fit.exponent_z = z;
        }
    }
    return fit;
}

double profile_spread(std::span<const double> initial, std::span<const double> current) {
    detail::require(initial.size() == current.size() && initial.size() % 2 == 0, "profile sizes differ");
    const double center = static_cast<double>(initial.size()) / 2.0 + 0.5;
    double moment = 0.0, mass = 0.0;
    for (std::size_t i = 0; i < initial.size(); ++i) {
        const double q = std::abs(current[i] - initial[i]) / 2.0;
        const double x = static_cast<double>(i + 1) - center;
        moment += q * x * x;
        mass += q;
    }
    return mass > 1e-300 ? moment / mass : 0.0;
}

std::vector<SpreadPoint> domain_wall_spread(const CircuitSpec &spec, std::span<const int> t_values) {
    std::vector<int> ts(t_values.begin(), t_values.end());
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (int t : ts) {
        detail::require(t >= 0 && t <= spec.depth(), "t " + std::to_string(t) + " outside [0, depth]");
    }
    Statevector psi = domain_wall_state(spec.num_spins());
    const std::vector<double> initial = charge_profile(psi);
    std::vector<SpreadPoint> out;
    int now = 0;
    for (int t : ts) {
        if (t > now) {
            evolve(psi, spec, now, t);
            now = t;
        }
        out.push_back({t, profile_spread(initial, charge_profile(psi))});
    }
    return out;
}

} // namespace chargecirc
