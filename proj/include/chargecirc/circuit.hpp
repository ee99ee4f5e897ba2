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
 * Brick-wall circuits of charge-conserving two-site gates.
 *
 * Layer t applies the odd-bond sublayer (bonds 1, 3, ..., 2n-1) first and the
 * even-bond sublayer (bonds 2, 4, ..., 2n-2) second. Bond b couples spins b
 * and b+1. The chain is open: there is no bond between spins 2n and 1.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "chargecirc/charge_gate.hpp"
#include "chargecirc/random.hpp"
#include "chargecirc/statevector.hpp"

namespace chargecirc {

/// Random phases on |00> and |11> and a Haar-distributed 2x2 block.
ChargeGate sample_haar_gate(CounterStream &stream);

class CircuitSpec {
  public:
    /// Haar-random circuit; gate (t, bond) is drawn from the stream keyed by
    /// (master_seed, t, bond).
    static CircuitSpec random(int num_spins, int depth, std::uint64_t master_seed);

    /// Every gate is the identity.
    static CircuitSpec identity(int num_spins, int depth);

    /// Explicit gate table, layer-major: gates[(t-1)*(2n-1) + (bond-1)].
    static CircuitSpec from_gates(int num_spins, int depth, std::vector<ChargeGate> gates,
                                  std::uint64_t master_seed = 0);

    [[nodiscard]] int num_spins() const noexcept { return num_spins_; }
    [[nodiscard]] int depth() const noexcept { return depth_; }
    [[nodiscard]] int num_bonds() const noexcept { return num_spins_ - 1; }
    [[nodiscard]] std::uint64_t master_seed() const noexcept { return seed_; }

    /// Bond crossing the middle cut, i.e. spins (n, n+1).
    [[nodiscard]] int cut_bond() const noexcept { return num_spins_ / 2; }

    [[nodiscard]] const ChargeGate &gate(int t, int bond) const;

    /// Replaces one gate; used by tests to plant specific circuits.
    void set_gate(int t, int bond, const ChargeGate &gate);

    [[nodiscard]] const std::vector<ChargeGate> &gates() const noexcept { return gates_; }

  private:
    CircuitSpec(int num_spins, int depth, std::uint64_t seed, std::vector<ChargeGate> gates);

    int num_spins_;
    int depth_;
    std::uint64_t seed_;
    std::vector<ChargeGate> gates_;
};

/// Equivalent to CircuitSpec::random; kept as a free function for symmetry
/// with the other circuit operations.
CircuitSpec build_circuit(int num_spins, int depth, std::uint64_t master_seed);

void apply_layer(Statevector &state, const CircuitSpec &spec, int t);

/**
 * Layer t with the cut-crossing gate replaced by the scalar <00|U|00>, which
 * for a ChargeGate is its phase0. The result never entangles the two halves.
 * Supports both parities of n: for odd n the cut gate sits in the odd
 * sublayer, for even n in the even sublayer.
 */
void apply_modified_layer(Statevector &state, const CircuitSpec &spec, int t);

/// Applies layers t_from+1 .. t_to.
void evolve(Statevector &state, const CircuitSpec &spec, int t_from, int t_to, bool modified = false);

/// Applies U(t_to, t_from)^dagger, i.e. undoes layers t_to .. t_from+1.
void evolve_adjoint(Statevector &state, const CircuitSpec &spec, int t_from, int t_to);

/// Sublayer-level hook: applies layer t but stops right before the
/// cut-crossing gate (`stage == before_cut`) or applies only the remainder
/// (`stage == after_cut`, cut gate included unless `modified`).
enum class LayerStage { before_cut, after_cut };
void apply_layer_stage(Statevector &state, const CircuitSpec &spec, int t, LayerStage stage, bool modified);

/// Writes `layer,bond,phase0_re,...,phase1_im` rows with shortest round-trip
/// decimals.
void write_circuit_table(std::ostream &out, const CircuitSpec &spec);

/// Parses a table written by write_circuit_table. The table must list every
/// (layer, bond) exactly once.
CircuitSpec read_circuit_table(std::istream &in, int num_spins);

} // namespace chargecirc
