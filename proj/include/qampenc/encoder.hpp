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
 * The encoding circuit: plan construction for given (B, M), the structured
 * branch simulator that executes it exactly, and the dense gate-by-gate
 * oracle for small instances.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qampenc/preprocess.hpp"
#include "qampenc/simcore.hpp"

namespace qampenc {

/**
 * Qubit numbering for an encoding plan.
 *
 * Declared registers, in order: SYS (n qubits), Index I_0..I_{M-1} (n
 * each), ParityCompression C_0..C_{M-1} (1 each), CTRL (L), FLAG (1).
 * Work qubits follow: n-1 Toffoli ancillas per index register, then the
 * extra CTRL copies used by the fan-in tree (L qubits per copy; copy 0 is
 * the CTRL register itself).
 */
struct RegisterLayout {
  int n = 0;
  std::size_t N = 0;
  int M = 0;
  int L = 0;
  int R = 0;  // chunk count

  int sys(int b) const { return b; }
  int index(int j, int b) const { return n + j * n + b; }
  int parity(int j) const { return n * (1 + M) + j; }
  int ctrl(int l) const { return n * (1 + M) + M + l; }
  int flag() const { return n * (1 + M) + M + L; }

  int declared_qubits() const { return n * (1 + M) + M + L + 1; }
  int toffoli_work_per_register() const { return n > 1 ? n - 1 : 0; }
  int fanin_copies() const { return M > 2 ? (M + 1) / 2 - 1 : 0; }
  int work_qubits() const {
    return M * toffoli_work_per_register() + fanin_copies() * L;
  }
  int total_qubits() const { return declared_qubits() + work_qubits(); }

  int toffoli_work(int j, int t) const {
    return declared_qubits() + j * toffoli_work_per_register() + t;
  }
  /** Fan-in slot c holds an L-qubit CTRL image; slot 0 is CTRL itself. */
  int fanin_slot(int c, int l) const {
    return c == 0 ? ctrl(l)
                  : declared_qubits() + M * toffoli_work_per_register() +
                        (c - 1) * L + l;
  }
};

struct PlanSegment {
  std::string label;
  std::vector<GateSpec> gates;
};

/**
 * Register layout plus the full gate sequence, segmented into
 * initial / (ladder) / per-chunk blocks / final.
 */
struct EncodingPlan {
  RegisterLayout layout;
  std::vector<PlanSegment> segments;
  bool has_phases = false;
  bool has_ladder = false;

  std::vector<GateSpec> all_gates() const;
  std::size_t gate_count() const;
};

/**
 * Build the encoder circuit for B with parallelization parameter M.
 * When `phases` is given, a controlled-PHASE ladder with angles 2pi 2^-l
 * follows the RY ladder inside each chunk. Throws BadParallelismError
 * unless 1 <= M <= N.
 */
EncodingPlan build_plan(const BinaryAngleMatrix &B, int M,
                        const BinaryAngleMatrix *phases = nullptr);

/**
 * Appendix-style compressed plan: an unconditional RY ladder encodes the
 * most frequent angle, and only the S entries that differ from it get
 * controlled corrections, using min(M, S) index registers. Shifted values
 * outside [-1, 1] saturate, which bounds the fidelity loss by 2^-(L-2).
 */
EncodingPlan mode_shift_plan(const AngleVector &theta_hat, int M, int L);

/** One branch of the structured simulator: SYS index k, the classical
 * contents of every other register, and the FLAG amplitude pair. */
struct Branch {
  std::uint64_t key = 0;
  std::vector<std::uint64_t> bits;
  std::complex<double> a0{1.0, 0.0};
  std::complex<double> a1{0.0, 0.0};
  std::complex<double> phase{1.0, 0.0};

  bool bit(int qubit) const {
    return (bits[qubit >> 6] >> (qubit & 63)) & 1;
  }
  void flip(int qubit) { bits[qubit >> 6] ^= std::uint64_t{1} << (qubit & 63); }
};

struct BranchState {
  int qubits = 0;
  int flag_qubit = 0;
  double global_scale = 1.0;
  std::vector<Branch> branches;
};

struct Checkpoint {
  std::string label;
  BranchState state;
};

/** Reduced SYS (x) FLAG output of the encoder. */
struct ReducedOutput {
  double rho = 0.0;
  /** 2^(n+1) amplitudes; index (f << n) | k, FLAG as the top qubit. */
  std::vector<std::complex<double>> psi_full;
  std::vector<std::complex<double>> psi_G;  // normalized FLAG=1 block
  std::vector<std::complex<double>> psi_B;  // normalized FLAG=0 block
};

/**
 * Exact structured simulation of a plan. Every circuit segment maps
 * computational-basis ancilla contents to computational-basis contents,
 * with only FLAG in superposition, so the state is N product-form
 * branches. Throws UncomputeLeakError if the final segment leaves any
 * ancilla bit set.
 *
 * With `checkpoints` non-null, a snapshot is captured after every segment;
 * for single-chunk plans the snapshots additionally carry the psi0..psi8
 * labels of the standard state-evolution checkpoints.
 */
ReducedOutput run_branch_sim(const EncodingPlan &plan,
                             std::vector<Checkpoint> *checkpoints = nullptr,
                             int threads = 1);

/**
 * Dense gate-by-gate execution of the same plan, multi-controlled X gates
 * expanded into Toffoli trees. Throws TooLargeError above 26 total qubits.
 */
DenseState run_dense_plan(const EncodingPlan &plan);

struct DenseReduction {
  std::vector<std::complex<double>> psi_full;  // same indexing as above
  double ancilla_leak = 0.0;  // probability of any ancilla reading 1
};

DenseReduction reduce_dense(const DenseState &state,
                            const RegisterLayout &layout);

/** ReducedOutput from a full reduced SYS(x)FLAG amplitude vector. */
ReducedOutput make_reduced_output(std::vector<std::complex<double>> psi_full,
                                  int n);

/** Encode a complex vector via its modulus/phase split. */
ReducedOutput encode_complex(const ComplexSplit &split, int M);

/** JSON {rho, psi_G, psi_B}. */
std::string reduced_output_json(const ReducedOutput &out);

}  // namespace qampenc
