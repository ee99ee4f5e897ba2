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
#include "chargecirc/circuit.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "chargecirc/errors.hpp"

namespace chargecirc {

std::array<cplx, 16> ChargeGate::embedded() const noexcept {
    std::array<cplx, 16> m{};
    m[0] = phase0;
    m[5] = block[0];
    m[6] = block[1];
    m[9] = block[2];
    m[10] = block[3];
    m[15] = phase1;
    return m;
}

double ChargeGate::unitarity_error() const noexcept {
    double err = std::max(std::abs(std::abs(phase0) - 1.0), std::abs(std::abs(phase1) - 1.0));
    // block^dagger block
    const cplx g00 = std::norm(block[0]) + std::norm(block[2]);
    const cplx g11 = std::norm(block[1]) + std::norm(block[3]);
    const cplx g01 = std::conj(block[0]) * block[1] + std::conj(block[2]) * block[3];
    err = std::max(err, std::abs(g00 - 1.0));
    err = std::max(err, std::abs(g11 - 1.0));
    err = std::max(err, std::abs(g01));
    return err;
}

ChargeGate sample_haar_gate(CounterStream &stream) {
    ChargeGate g;
    g.phase0 = std::polar(1.0, 2.0 * std::numbers::pi * stream.uniform());
    g.phase1 = std::polar(1.0, 2.0 * std::numbers::pi * stream.uniform());

    // Gram-Schmidt on the columns of a Ginibre matrix. This is QR with a
    // positive real diagonal in R, which is the phase fix that makes Q
    // exactly Haar distributed.
    const cplx z00 = stream.complex_normal();
    const cplx z10 = stream.complex_normal();
    const cplx z01 = stream.complex_normal();
    const cplx z11 = stream.complex_normal();

    const double r0 = std::sqrt(std::norm(z00) + std::norm(z10));
    const cplx q00 = z00 / r0;
    const cplx q10 = z10 / r0;
    const cplx proj = std::conj(q00) * z01 + std::conj(q10) * z11;
    cplx v01 = z01 - proj * q00;
    cplx v11 = z11 - proj * q10;
    const double r1 = std::sqrt(std::norm(v01) + std::norm(v11));
    v01 /= r1;
    v11 /= r1;

    g.block = {q00, v01, q10, v11};
    return g;
}

CircuitSpec::CircuitSpec(int num_spins, int depth, std::uint64_t seed, std::vector<ChargeGate> gates)
    : num_spins_(num_spins), depth_(depth), seed_(seed), gates_(std::move(gates)) {
    detail::require(num_spins >= 4 && num_spins % 2 == 0 && num_spins <= Statevector::kMaxSpins,
                    "circuit num_spins must be even in [4, 28], got " + std::to_string(num_spins));
    detail::require(depth >= 1, "circuit depth must be >= 1, got " + std::to_string(depth));
    detail::require(gates_.size() == static_cast<std::size_t>(depth) * static_cast<std::size_t>(num_spins - 1),
                    "gate table size must be depth * (num_spins - 1)");
}

CircuitSpec CircuitSpec::random(int num_spins, int depth, std::uint64_t master_seed) {
    detail::require(num_spins >= 4 && num_spins % 2 == 0 && num_spins <= Statevector::kMaxSpins,
                    "circuit num_spins must be even in [4, 28], got " + std::to_string(num_spins));
    detail::require(depth >= 1, "circuit depth must be >= 1, got " + std::to_string(depth));
    std::vector<ChargeGate> gates;
    gates.reserve(static_cast<std::size_t>(depth) * static_cast<std::size_t>(num_spins - 1));
    for (int t = 1; t <= depth; ++t) {
        for (int bond = 1; bond < num_spins; ++bond) {
            CounterStream stream(derive_key({master_seed, static_cast<std::uint64_t>(t),
                                             static_cast<std::uint64_t>(bond)}));
            gates.push_back(sample_haar_gate(stream));
        }
    }
    return {num_spins, depth, master_seed, std::move(gates)};
}

CircuitSpec CircuitSpec::identity(int num_spins, int depth) {
    detail::require(depth >= 1, "circuit depth must be >= 1");
    detail::require(num_spins >= 4, "circuit num_spins must be >= 4");
    std::vector<ChargeGate> gates(static_cast<std::size_t>(depth) * static_cast<std::size_t>(num_spins - 1));
    return {num_spins, depth, 0, std::move(gates)};
}

CircuitSpec CircuitSpec::from_gates(int num_spins, int depth, std::vector<ChargeGate> gates,
                                    std::uint64_t master_seed) {
    return {num_spins, depth, master_seed, std::move(gates)};
}

const ChargeGate &CircuitSpec::gate(int t, int bond) const {
    detail::require(t >= 1 && t <= depth_, "layer " + std::to_string(t) + " outside [1, depth]");
    detail::require(bond >= 1 && bond < num_spins_, "bond " + std::to_string(bond) + " outside [1, 2n-1]");
    return gates_[static_cast<std::size_t>(t - 1) * static_cast<std::size_t>(num_spins_ - 1) +
                  static_cast<std::size_t>(bond - 1)];
}

void CircuitSpec::set_gate(int t, int bond, const ChargeGate &g) {
    (void)gate(t, bond);
    gates_[static_cast<std::size_t>(t - 1) * static_cast<std::size_t>(num_spins_ - 1) +
           static_cast<std::size_t>(bond - 1)] = g;
}

CircuitSpec build_circuit(int num_spins, int depth, std::uint64_t master_seed) {
    return CircuitSpec::random(num_spins, depth, master_seed);
}

namespace {

void check_layer_args(const Statevector &state, const CircuitSpec &spec, int t) {
    detail::require(state.num_spins() == spec.num_spins(), "state and circuit have different spin counts");
    detail::require(t >= 1 && t <= spec.depth(),
                    "layer " + std::to_string(t) + " outside [1, " + std::to_string(spec.depth()) + "]");
}

void apply_sublayer(Statevector &state, const CircuitSpec &spec, int t, int first_bond, int skip_bond) {
    for (int bond = first_bond; bond < spec.num_spins(); bond += 2) {
        if (bond != skip_bond) {
            apply_two_site_gate(state, spec.gate(t, bond), bond);
        }
    }
}

} // namespace

void apply_layer_stage(Statevector &state, const CircuitSpec &spec, int t, LayerStage stage, bool modified) {
    check_layer_args(state, spec, t);
    const int cut = spec.cut_bond();
    const bool cut_in_odd = cut % 2 == 1;

    if (stage == LayerStage::before_cut) {
        if (!cut_in_odd) {
            apply_sublayer(state, spec, t, 1, -1);
        }
        return;
    }

    const ChargeGate &cut_gate = spec.gate(t, cut);
    if (modified) {
        state.scale(cut_gate.phase0);
    } else {
        apply_two_site_gate(state, cut_gate, cut);
    }
    if (cut_in_odd) {
        apply_sublayer(state, spec, t, 1, cut);
        apply_sublayer(state, spec, t, 2, -1);
    } else {
        apply_sublayer(state, spec, t, 2, cut);
    }
}

void apply_layer(Statevector &state, const CircuitSpec &spec, int t) {
    apply_layer_stage(state, spec, t, LayerStage::before_cut, false);
    apply_layer_stage(state, spec, t, LayerStage::after_cut, false);
}

void apply_modified_layer(Statevector &state, const CircuitSpec &spec, int t) {
    apply_layer_stage(state, spec, t, LayerStage::before_cut, true);
    apply_layer_stage(state, spec, t, LayerStage::after_cut, true);
}

void evolve(Statevector &state, const CircuitSpec &spec, int t_from, int t_to, bool modified) {
    detail::require(t_from >= 0 && t_from <= t_to && t_to <= spec.depth(),
                    "evolve requires 0 <= t_from <= t_to <= depth");
    for (int t = t_from + 1; t <= t_to; ++t) {
        if (modified) {
            apply_modified_layer(state, spec, t);
        } else {
            apply_layer(state, spec, t);
        }
    }
}

void evolve_adjoint(Statevector &state, const CircuitSpec &spec, int t_from, int t_to) {
    detail::require(t_from >= 0 && t_from <= t_to && t_to <= spec.depth(),
                    "evolve_adjoint requires 0 <= t_from <= t_to <= depth");
    detail::require(state.num_spins() == spec.num_spins(), "state and circuit have different spin counts");
    for (int t = t_to; t > t_from; --t) {
        for (int bond = 2; bond < spec.num_spins(); bond += 2) {
            apply_two_site_gate(state, spec.gate(t, bond).adjoint(), bond);
        }
        for (int bond = 1; bond < spec.num_spins(); bond += 2) {
            apply_two_site_gate(state, spec.gate(t, bond).adjoint(), bond);
        }
    }
}

namespace {

void put_double(std::ostream &out, double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    out.write(buf, res.ptr - buf);
}

double parse_double(std::string_view field) {
    double v = 0.0;
    auto res = std::from_chars(field.data(), field.data() + field.size(), v);
    detail::require(res.ec == std::errc{} && res.ptr == field.data() + field.size(),
                    "malformed number '" + std::string(field) + "'");
    return v;
}

constexpr int kTableColumns = 14;

} // namespace

void write_circuit_table(std::ostream &out, const CircuitSpec &spec) {
    out << "layer,bond,phase0_re,phase0_im,b00_re,b00_im,b01_re,b01_im,b10_re,b10_im,b11_re,b11_im,"
           "phase1_re,phase1_im\n";
    for (int t = 1; t <= spec.depth(); ++t) {
        for (int bond = 1; bond <= spec.num_bonds(); ++bond) {
            const ChargeGate &g = spec.gate(t, bond);
            out << t << ',' << bond;
            auto put = [&](cplx z) {
                out << ',';
                put_double(out, z.real());
                out << ',';
                put_double(out, z.imag());
            };
            put(g.phase0);
            for (const cplx &b : g.block) {
                put(b);
            }
            put(g.phase1);
            out << '\n';
        }
    }
}

CircuitSpec read_circuit_table(std::istream &in, int num_spins) {
    std::string line;
    detail::require(static_cast<bool>(std::getline(in, line)), "empty circuit table");
    std::vector<std::vector<double>> rows;
    int depth = 0;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string_view> fields;
        std::string_view rest(line);
        for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos;) {
            fields.push_back(rest.substr(0, pos));
            rest.remove_prefix(pos + 1);
        }
        fields.push_back(rest);
        detail::require(fields.size() == kTableColumns, "circuit table row must have 14 columns");
        std::vector<double> row;
        for (auto f : fields) {
            row.push_back(parse_double(f));
        }
        depth = std::max(depth, static_cast<int>(row[0]));
        rows.push_back(std::move(row));
    }
    detail::require(depth >= 1, "circuit table has no gates");
    const std::size_t bonds = static_cast<std::size_t>(num_spins - 1);
    detail::require(rows.size() == static_cast<std::size_t>(depth) * bonds, "circuit table is incomplete");

    std::vector<ChargeGate> gates(rows.size());
    std::vector<bool> seen(rows.size(), false);
    for (const auto &r : rows) {
        const int t = static_cast<int>(r[0]);
        const int bond = static_cast<int>(r[1]);
        detail::require(t >= 1 && bond >= 1 && bond <= num_spins - 1, "circuit table index out of range");
        const std::size_t idx = static_cast<std::size_t>(t - 1) * bonds + static_cast<std::size_t>(bond - 1);
        detail::require(!seen[idx], "duplicate gate in circuit table");
        seen[idx] = true;
        ChargeGate g;
        g.phase0 = {r[2], r[3]};
        for (int k = 0; k < 4; ++k) {
            g.block[static_cast<std::size_t>(k)] = {r[4 + 2 * k], r[5 + 2 * k]};
        }
        g.phase1 = {r[12], r[13]};
        gates[idx] = g;
    }
    return CircuitSpec::from_gates(num_spins, depth, std::move(gates));
}

} // namespace chargecirc
