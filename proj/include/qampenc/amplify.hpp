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
 * Amplitude amplification on the reduced SYS (x) FLAG space, plus the
 * gate-level S0 construction and a full-circuit runner for small
 * instances.
 */

#pragma once

#include <complex>
#include <vector>

#include "qampenc/encoder.hpp"
#include "qampenc/simcore.hpp"

namespace qampenc {

struct AASchedule {
  double rho = 0.0;
  double theta_a = 0.0;  // arcsin(sqrt(rho)), radians
  long m = 0;            // floor(pi / (4 theta_a))
  double predicted_success = 0.0;  // sin^2((2m+1) theta_a)
};

/** Iteration schedule for a given density. Throws BadDensityError unless
 * 0 < rho <= 1. */
AASchedule schedule(double rho);

/**
 * One Grover step Q = -E S0 E^dag S on the reduced space: the oracle is Z
 * on FLAG, the diffusion is the reflection about psi. `psi` must be the
 * normalized initial encoded state.
 */
std::vector<std::complex<double>> grover_step(
    const std::vector<std::complex<double>> &state,
    const std::vector<std::complex<double>> &psi);

/**
 * Gate sequence for S0 on qubits [0, q): flips the sign of |0...0> and
 * fixes every other basis state. Uses qubit q as the one clean ancilla of
 * the MCX sandwich; run it on a (q+1)-qubit state.
 */
std::vector<GateSpec> build_s0_circuit(int q);

struct AmplifiedResult {
  std::vector<std::complex<double>> sys_state;  // post-selected SYS, length N
  double achieved_success = 0.0;
  long m = 0;
  double rho = 0.0;
  double predicted_success = 0.0;
  double fidelity_vs_target = 0.0;  // vs the plan's psi_G
};

/**
 * Encode, run the scheduled number of Grover iterations on the reduced
 * space, and post-select FLAG = 1.
 */
AmplifiedResult run_amplified_encoding(const EncodingPlan &plan);

/**
 * Full gate-level amplitude amplification within the dense-oracle cap:
 * every iteration applies Z on FLAG, the inverted plan, S0 on SYS+FLAG
 * (with its ancilla), the plan again, and the leading minus sign of Q.
 * Returns the reduced state after m iterations.
 */
std::vector<std::complex<double>> run_amplified_dense(const EncodingPlan &plan,
                                                      long m);

/** JSON {m, rho, predicted_success, achieved_success, fidelity_vs_target}. */
std::string amplified_result_json(const AmplifiedResult &result);

}  // namespace qampenc
