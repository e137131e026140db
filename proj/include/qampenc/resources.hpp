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
 * Qubit, gate-count, depth and runtime-model accounting.
 *
 * The layer model is normative for this library: initial and final steps
 * cost an H/X layer plus a ceil(log2 max(M,2)) fan-out tree; each chunk
 * costs one LoadIndex layer, c_T = 3 layers per log2-level of the Toffoli
 * tree, 2 + ceil(log2 max(M,2)) layers for the fan-in (pair loads plus the
 * compression tree), L rotation layers, and the mirrored uncompute.
 */

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qampenc/encoder.hpp"

namespace qampenc {

struct ResourceEstimate {
  long qubits_declared = 0;
  long qubits_work = 0;
  std::map<std::string, long> gate_counts;
  long encoder_depth = 0;
  long aa_iterations = 0;
  long total_depth = 0;
  double tau_model = 0.0;  // n / sqrt(rho), dimensionless
  std::size_t N = 0;
  int n = 0, M = 0, L = 0, R = 0;
  double rho = 1.0;
};

/** Depth of the encoder under the layer model. */
long model_encoder_depth(int n, int M, int L, int R, bool has_ladder = false,
                         bool has_phases = false);

/** Per-iteration overhead of the amplification step (S plus S0 layers). */
long model_aa_overhead(int n);

/** Resource estimate for a built plan at a given density. */
ResourceEstimate estimate(const EncodingPlan &plan, double rho);

/**
 * Greedy layering of the plan's gate list (multi-controlled X expanded
 * into its Toffoli tree) under the disjoint-qubit rule.
 */
long measured_depth(const EncodingPlan &plan);
long measured_depth(const std::vector<GateSpec> &gates);

struct ScalingRow {
  std::size_t N = 0;
  int M = 0;
  long encoder_depth = 0;
  double ratio = 0.0;  // depth / ((N/M) log2(M+1))
};

std::vector<ScalingRow> scaling_table(const std::vector<int> &n_list,
                                      const std::vector<int> &M_list, int L);

/** Estimate for a mode-shift compressed instance with S distinct entries. */
ResourceEstimate sparse_estimate(std::size_t S, int n, int M, int L,
                                 double rho);

/** CSV row per estimate with the documented column order. */
std::string resources_csv_header();
std::string resources_csv_row(const ResourceEstimate &estimate);

}  // namespace qampenc
