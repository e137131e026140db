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

#include "qampenc/resources.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qampenc/amplify.hpp"
#include "qampenc/errors.hpp"

namespace qampenc {

namespace {

long ceil_log2(long x) {
  long v = std::max<long>(x, 2);
  long bits = 0;
  while ((1L << bits) < v) ++bits;
  return bits;
}

constexpr long kToffoliLayerFactor = 3;  // c_T

std::string gate_count_key(const GateSpec &g) {
  switch (g.kind) {
    case GateKind::X:
      if (g.controls.size() == 1) return "CX";
      if (g.controls.size() >= 2) return "MCX";
      return "X";
    case GateKind::H:
      return "H";
    case GateKind::Z:
      return g.controls.empty() ? "Z" : "CZ";
    case GateKind::RY:
      return g.controls.empty() ? "RY" : "CRY";
    case GateKind::Phase:
      return g.controls.empty() ? "PHASE" : "CPHASE";
    case GateKind::Swap:
      return "SWAP";
  }
  return "?";
}

}  // namespace

long model_encoder_depth(int n, int M, int L, int R, bool has_ladder,
                         bool has_phases) {
  if (M == 0) {
    // Degenerate mode-shift plan: only the H layer and the ladder.
    return 1 + (has_ladder ? L : 0);
  }
  const long fanout = ceil_log2(M);
  const long toffoli = kToffoliLayerFactor * ceil_log2(n);
  const long mtc = 2 + fanout;
  const long initial = 2 + fanout;       // H layer + X layer + tree
  const long final_step = 1 + fanout;    // X layer + tree
  long chunk = 1 + toffoli + mtc + L + (1 + toffoli + mtc);
  if (has_phases) chunk += 2 * mtc + (L - 1);
  long depth = initial + static_cast<long>(R) * chunk + final_step;
  if (has_ladder) depth += L;
  return depth;
}

long model_aa_overhead(int n) {
  // Z on FLAG plus S0: two X layers, two Toffoli trees over n controls,
  // and the sandwiched CZ.
  return 1 + 2 + 2 * kToffoliLayerFactor * ceil_log2(n) + 1;
}

ResourceEstimate estimate(const EncodingPlan &plan, double rho) {
  if (!(rho > 0.0) || rho > 1.0) {
    throw BadDensityError("rho must lie in (0, 1]");
  }
  const RegisterLayout &layout = plan.layout;
  ResourceEstimate est;
  est.N = layout.N;
  est.n = layout.n;
  est.M = layout.M;
  est.L = layout.L;
  est.R = layout.R;
  est.rho = rho;
  est.qubits_declared = layout.declared_qubits();
  est.qubits_work = layout.work_qubits();
  for (const auto &seg : plan.segments) {
    for (const auto &g : seg.gates) ++est.gate_counts[gate_count_key(g)];
  }
  est.encoder_depth = model_encoder_depth(layout.n, layout.M, layout.L,
                                          layout.R, plan.has_ladder,
                                          plan.has_phases);
  const AASchedule sched = schedule(rho);
  est.aa_iterations = sched.m;
  est.total_depth = (2 * sched.m + 1) * est.encoder_depth +
                    sched.m * model_aa_overhead(layout.n);
  est.tau_model = layout.n / std::sqrt(rho);
  return est;
}

long measured_depth(const std::vector<GateSpec> &gates) {
  int max_qubit = 0;
  for (const auto &g : gates) {
    for (int q : g.targets) max_qubit = std::max(max_qubit, q);
    for (int q : g.controls) max_qubit = std::max(max_qubit, q);
    for (int q : g.work) max_qubit = std::max(max_qubit, q);
  }
  std::vector<long> layer(max_qubit + 1, 0);
  long depth = 0;
  for (const auto &g : gates) {
    if (g.classical_condition.has_value() && !*g.classical_condition) continue;
    long at = 0;
    auto touch = [&](int q) { at = std::max(at, layer[q]); };
    for (int q : g.targets) touch(q);
    for (int q : g.controls) touch(q);
    ++at;
    for (int q : g.targets) layer[q] = at;
    for (int q : g.controls) layer[q] = at;
    depth = std::max(depth, at);
  }
  return depth;
}

long measured_depth(const EncodingPlan &plan) {
  return measured_depth(expand_circuit(plan.all_gates()));
}

std::vector<ScalingRow> scaling_table(const std::vector<int> &n_list,
                                      const std::vector<int> &M_list, int L) {
  if (n_list.empty() || M_list.empty()) {
    throw BadShapeError("scaling_table: empty grid");
  }
  std::vector<ScalingRow> rows;
  for (int n : n_list) {
    const std::size_t N = std::size_t{1} << n;
    for (int M : M_list) {
      if (M < 1 || static_cast<std::size_t>(M) > N) continue;
      const int R = static_cast<int>((N + M - 1) / M);
      ScalingRow row;
      row.N = N;
      row.M = M;
      row.encoder_depth = model_encoder_depth(n, M, L, R);
      row.ratio = static_cast<double>(row.encoder_depth) /
                  ((static_cast<double>(N) / M) * std::log2(M + 1.0));
      rows.push_back(row);
    }
  }
  return rows;
}

ResourceEstimate sparse_estimate(std::size_t S, int n, int M, int L,
                                 double rho) {
  if (!(rho > 0.0) || rho > 1.0) {
    throw BadDensityError("rho must lie in (0, 1]");
  }
  const std::size_t N = std::size_t{1} << n;
  if (S > N) throw BadShapeError("S exceeds N");
  const int M_eff =
      S == 0 ? 0 : static_cast<int>(std::min<std::size_t>(M, S));
  const int R =
      S == 0 ? 0 : static_cast<int>((S + M_eff - 1) / static_cast<std::size_t>(M_eff));

  RegisterLayout layout;
  layout.n = n;
  layout.N = N;
  layout.M = M_eff;
  layout.L = L;
  layout.R = R;

  ResourceEstimate est;
  est.N = N;
  est.n = n;
  est.M = M_eff;
  est.L = L;
  est.R = R;
  est.rho = rho;
  est.qubits_declared = layout.declared_qubits();
  est.qubits_work = layout.work_qubits();
  est.encoder_depth = model_encoder_depth(n, M_eff, L, R, /*has_ladder=*/true);
  const AASchedule sched = schedule(rho);
  est.aa_iterations = sched.m;
  est.total_depth = (2 * sched.m + 1) * est.encoder_depth +
                    sched.m * model_aa_overhead(n);
  est.tau_model = n / std::sqrt(rho);
  return est;
}

std::string resources_csv_header() {
  return "N,M,L,rho,qubits_declared,qubits_work,depth,m,total_depth,"
         "tau_model";
}

std::string resources_csv_row(const ResourceEstimate &est) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%zu,%d,%d,%.17g,%ld,%ld,%ld,%ld,%ld,%.17g",
                est.N, est.M, est.L, est.rho, est.qubits_declared,
                est.qubits_work, est.encoder_depth, est.aa_iterations,
                est.total_depth, est.tau_model);
  return buf;
}

}  // namespace qampenc
