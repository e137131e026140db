// Copyright 2026 The qampenc developers
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
 * Dense statevector simulator used as the brute-force oracle.
 *
 * Qubit 0 is the least significant bit of the basis-state index; this
 * convention is used everywhere in the library.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace qampenc {

enum class GateKind { X, H, Z, RY, Phase, Swap };

/**
 * One gate. `controls` may be empty; a gate with k >= 1 controls on kind X
 * is a CX/MCX, on RY a CRY, on Phase a CPHASE, on Z a CZ. When
 * `classical_condition` is present and false the gate is the identity.
 * `work` optionally names ancilla qubits available to decompose a
 * multi-controlled X; it does not affect the gate's own unitary.
 */
struct GateSpec {
  GateKind kind = GateKind::X;
  std::vector<int> targets;
  std::vector<int> controls;
  double angle = 0.0;  // radians; RY and Phase only
  std::optional<bool> classical_condition;
  std::vector<int> work;
};

GateSpec make_x(int target);
GateSpec make_cx(int control, int target);
GateSpec make_mcx(std::vector<int> controls, int target,
                  std::vector<int> work = {});
GateSpec make_h(int target);
GateSpec make_ry(double angle, int target, std::vector<int> controls = {});
GateSpec make_phase(double angle, int target, std::vector<int> controls = {});
GateSpec make_z(int target, std::vector<int> controls = {});
GateSpec make_swap(int a, int b);

/** Dense 2^q statevector, initialized to |0...0>. */
class DenseState {
 public:
  static constexpr int kMaxQubits = 26;

  explicit DenseState(int qubits);
  DenseState(int qubits, std::vector<std::complex<double>> amplitudes);

  int qubits() const { return qubits_; }
  std::size_t dimension() const { return amps_.size(); }
  std::vector<std::complex<double>> &amplitudes() { return amps_; }
  const std::vector<std::complex<double>> &amplitudes() const { return amps_; }

  double norm_squared() const;
  /** Multiply every amplitude by a scalar (used for the Grover global sign). */
  void scale(std::complex<double> factor);

 private:
  int qubits_;
  std::vector<std::complex<double>> amps_;
};

/** Apply one gate in place. Throws BadIndexError for out-of-range qubits. */
void apply_gate(DenseState &state, const GateSpec &gate);
void apply_circuit(DenseState &state, const std::vector<GateSpec> &gates);

/** Born probability of reading `value` on `qubit`. */
double probability_of(const DenseState &state, int qubit, int value);

/**
 * Project onto qubit==value and renormalize. Throws ImpossibleOutcomeError
 * when the branch probability is below 1e-14.
 */
DenseState post_select(const DenseState &state, int qubit, int value);

/** |<a|b>|^2 over normalized copies; 1 iff equal up to global phase. */
double fidelity(const std::vector<std::complex<double>> &a,
                const std::vector<std::complex<double>> &b);
double fidelity(const DenseState &a, const DenseState &b);

/**
 * Decompose a multi-controlled X (arity >= 3) into Toffoli gates following
 * the balanced-tree scheme: pairwise ANDs of the controls are computed into
 * work qubits, the root Toffoli hits the target, and the tree is
 * uncomputed. Requires gate.work to hold at least controls-2 clean qubits.
 * Gates of arity <= 2 pass through unchanged.
 */
std::vector<GateSpec> expand_mcx(const GateSpec &gate);
std::vector<GateSpec> expand_circuit(const std::vector<GateSpec> &gates);

/** Exact inverse circuit (reversed order, angles negated). */
std::vector<GateSpec> inverse_circuit(const std::vector<GateSpec> &gates);

/**
 * Circuit dump: one gate per line,
 *   KIND targets=... controls=... angle=... [cond=0|1] [work=...]
 * with angles printed to 17 significant digits. KIND uses the controlled
 * names (CX, MCX, CRY, CPHASE, CZ) when controls are present.
 */
std::string dump_circuit(const std::vector<GateSpec> &gates);
std::vector<GateSpec> parse_circuit(const std::string &text);

/** Statevector dump: JSON array of [re, im] pairs. */
std::string dump_statevector_json(
    const std::vector<std::complex<double>> &amps);
std::vector<std::complex<double>> parse_statevector_json(
    const std::string &text);

}  // namespace qampenc
