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

#include "qampenc/amplify.hpp"

#include <cmath>
#include <numbers>

#include <json.hpp>

#include "qampenc/errors.hpp"

namespace qampenc {

namespace {
constexpr double kPi = std::numbers::pi;
}

AASchedule schedule(double rho) {
  if (!(rho > 0.0) || rho > 1.0) {
    throw BadDensityError("rho must lie in (0, 1], got " +
                          std::to_string(rho));
  }
  AASchedule s;
  s.rho = rho;
  s.theta_a = std::asin(std::sqrt(rho));
  s.m = static_cast<long>(std::floor(kPi / (4.0 * s.theta_a)));
  const double amp = std::sin((2.0 * s.m + 1.0) * s.theta_a);
  s.predicted_success = amp * amp;
  return s;
}

std::vector<std::complex<double>> grover_step(
    const std::vector<std::complex<double>> &state,
    const std::vector<std::complex<double>> &psi) {
  if (state.size() != psi.size() || state.empty() || state.size() % 2 != 0) {
    throw BadShapeError("grover_step: state and psi must have equal even "
                        "dimension");
  }
  double norm = 0.0;
  for (const auto &a : psi) norm += std::norm(a);
  if (std::abs(norm - 1.0) > 1e-9) {
    throw BadStateError("grover_step: psi is not normalized");
  }

  const std::size_t N = state.size() / 2;  // FLAG is the top qubit
  // S: Z on FLAG.
  std::vector<std::complex<double>> v = state;
  for (std::size_t k = 0; k < N; ++k) v[N + k] = -v[N + k];
  // -E S0 E^dag = 2|psi><psi| - I.
  std::complex<double> overlap{0.0, 0.0};
  for (std::size_t i = 0; i < v.size(); ++i) {
    overlap += std::conj(psi[i]) * v[i];
  }
  std::vector<std::complex<double>> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = 2.0 * overlap * psi[i] - v[i];
  }
  return out;
}

std::vector<GateSpec> build_s0_circuit(int q) {
  if (q < 2) throw BadIndexError("S0 needs at least 2 qubits");
  const int ancilla = q;
  std::vector<GateSpec> gates;
  for (int i = 0; i < q; ++i) gates.push_back(make_x(i));
  std::vector<int> controls;
  for (int i = 0; i < q - 1; ++i) controls.push_back(i);
  // Work qubits for the Toffoli tree live above the ancilla.
  std::vector<int> work;
  for (int t = 0; t + 2 < static_cast<int>(controls.size()); ++t) {
    work.push_back(ancilla + 1 + t);
  }
  gates.push_back(make_mcx(controls, ancilla, work));
  gates.push_back(make_z(q - 1, {ancilla}));
  gates.push_back(make_mcx(controls, ancilla, work));
  for (int i = 0; i < q; ++i) gates.push_back(make_x(i));
  return gates;
}

AmplifiedResult run_amplified_encoding(const EncodingPlan &plan) {
  const ReducedOutput encoded = run_branch_sim(plan);
  const AASchedule sched = schedule(encoded.rho);
  const std::size_t N = plan.layout.N;

  std::vector<std::complex<double>> state = encoded.psi_full;
  for (long i = 0; i < sched.m; ++i) {
    state = grover_step(state, encoded.psi_full);
  }

  AmplifiedResult result;
  result.m = sched.m;
  result.rho = encoded.rho;
  result.predicted_success = sched.predicted_success;
  double p1 = 0.0;
  for (std::size_t k = 0; k < N; ++k) p1 += std::norm(state[N + k]);
  result.achieved_success = p1;
  result.sys_state.resize(N);
  const double inv = p1 > 0 ? 1.0 / std::sqrt(p1) : 0.0;
  for (std::size_t k = 0; k < N; ++k) result.sys_state[k] = state[N + k] * inv;
  result.fidelity_vs_target = fidelity(result.sys_state, encoded.psi_G);
  return result;
}

std::vector<std::complex<double>> run_amplified_dense(const EncodingPlan &plan,
                                                      long m) {
  // One extra qubit for the S0 ancilla; the plan's Toffoli work pool sits
  // below it, so the S0 MCX borrows qubits above (allocate them too).
  const int n = plan.layout.n;
  const int s0_work = n + 1 > 3 ? n + 1 - 2 : 0;
  const int q = plan.layout.total_qubits() + 1 + s0_work;
  if (q > DenseState::kMaxQubits) {
    throw TooLargeError("dense AA needs " + std::to_string(q) + " qubits");
  }

  const std::vector<GateSpec> encode_gates = [&] {
    std::vector<GateSpec> gates;
    for (const auto &g : plan.all_gates()) {
      for (const auto &e : expand_mcx(g)) gates.push_back(e);
    }
    return gates;
  }();
  const std::vector<GateSpec> decode_gates = inverse_circuit(encode_gates);

  // S0 acts on SYS qubits and FLAG; remap its local indices (0..n) onto
  // (sys..., flag) with the ancilla at plan.total and work above it.
  const int flag = plan.layout.flag();
  const int ancilla = plan.layout.total_qubits();
  auto remap = [&](int local) {
    if (local < n) return local;          // SYS
    if (local == n) return flag;          // the reflected register's last qubit
    if (local == n + 1) return ancilla;   // S0 ancilla
    return ancilla + (local - n - 1);     // tree work qubits
  };
  std::vector<GateSpec> s0_gates;
  for (GateSpec g : build_s0_circuit(n + 1)) {
    for (int &t : g.targets) t = remap(t);
    for (int &c : g.controls) c = remap(c);
    for (int &w : g.work) w = remap(w);
    for (const auto &e : expand_mcx(g)) s0_gates.push_back(e);
  }

  DenseState state(q);
  apply_circuit(state, encode_gates);
  for (long i = 0; i < m; ++i) {
    apply_gate(state, make_z(flag));
    apply_circuit(state, decode_gates);
    apply_circuit(state, s0_gates);
    apply_circuit(state, encode_gates);
    state.scale(-1.0);  // the leading minus of Q
  }

  DenseReduction red = reduce_dense(state, plan.layout);
  if (red.ancilla_leak > 1e-9) {
    throw UncomputeLeakError("dense AA left ancilla population " +
                             std::to_string(red.ancilla_leak));
  }
  return red.psi_full;
}

std::string amplified_result_json(const AmplifiedResult &result) {
  nlohmann::json j;
  j["m"] = result.m;
  j["rho"] = result.rho;
  j["predicted_success"] = result.predicted_success;
  j["achieved_success"] = result.achieved_success;
  j["fidelity_vs_target"] = result.fidelity_vs_target;
  return j.dump();
}

}  // namespace qampenc
