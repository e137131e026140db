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
 * Quantum Fourier transform circuit and the encode-then-QFT end-to-end
 * check against the classical DFT.
 *
 * Convention (pinned for both the circuit and the oracle):
 *   F_k = (1/sqrt(N)) sum_j exp(+2 pi i j k / N) w_j
 * with qubit 0 the least significant index bit.
 */

#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qampenc/preprocess.hpp"
#include "qampenc/simcore.hpp"

namespace qampenc {

/**
 * QFT circuit on n qubits: per qubit one H plus controlled phases with
 * decreasing angle 2pi/2^s, then the final qubit-order swaps. Gate count
 * n(n+1)/2 plus floor(n/2) swaps. `cutoff` > 0 drops rotations with
 * s > cutoff (the approximate O(n log n) variant); 0 keeps all.
 */
std::vector<GateSpec> build_qft(int n, int cutoff = 0);

/** Direct O(N^2) unitary DFT under the pinned convention. */
std::vector<std::complex<double>> classical_dft(
    const std::vector<std::complex<double>> &w);

struct QftReport {
  int n = 0;
  double fidelity_vs_dft = 0.0;
  double rho = 0.0;
  long m = 0;
  long encoder_depth = 0;
  long qft_depth = 0;
};

/**
 * Encode v, apply the QFT to the post-selected SYS state, and compare with
 * the classical DFT of the same encoded target.
 */
QftReport run_qft_check(const InputVector &v, int M, int L);

std::string qft_report_json(const QftReport &report);

}  // namespace qampenc
