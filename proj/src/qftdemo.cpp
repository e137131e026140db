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

#include "qampenc/qftdemo.hpp"

#include <cmath>
#include <numbers>

#include <json.hpp>

#include "qampenc/amplify.hpp"
#include "qampenc/encoder.hpp"
#include "qampenc/errors.hpp"
#include "qampenc/resources.hpp"

namespace qampenc {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::vector<GateSpec> build_qft(int n, int cutoff) {
  if (n < 1) throw BadShapeError("QFT needs n >= 1");
  std::vector<GateSpec> gates;
  for (int i = n - 1; i >= 0; --i) {
    gates.push_back(make_h(i));
    for (int s = 2; s <= i + 1; ++s) {
      if (cutoff > 0 && s > cutoff) break;
      const double angle = 2.0 * kPi / static_cast<double>(1L << s);
      gates.push_back(make_phase(angle, i, {i - s + 1}));
    }
  }
  for (int i = 0; i < n / 2; ++i) {
    gates.push_back(make_swap(i, n - 1 - i));
  }
  return gates;
}

std::vector<std::complex<double>> classical_dft(
    const std::vector<std::complex<double>> &w) {
  const std::size_t N = w.size();
  if (N == 0 || (N & (N - 1)) != 0) {
    throw BadShapeError("DFT length must be a power of two");
  }
  std::vector<std::complex<double>> out(N);
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(N));
  for (std::size_t k = 0; k < N; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < N; ++j) {
      const double angle = 2.0 * kPi * static_cast<double>(j * k % N) /
                           static_cast<double>(N);
      acc += w[j] * std::polar(1.0, angle);
    }
    out[k] = acc * inv_sqrt;
  }
  return out;
}

QftReport run_qft_check(const InputVector &v, int M, int L) {
  ReducedOutput encoded;
  EncodingPlan plan = [&] {
    if (v.is_real) {
      const PreprocessResult pre = preprocess(v, L);
      return build_plan(pre.B, M);
    }
    const ComplexSplit split = split_complex(v, L);
    return build_plan(split.B_R, M, &split.B_phi);
  }();
  encoded = run_branch_sim(plan);

  const int n = plan.layout.n;
  DenseState sys(n, encoded.psi_G);
  const std::vector<GateSpec> qft = build_qft(n);
  apply_circuit(sys, qft);

  const std::vector<std::complex<double>> target = classical_dft(encoded.psi_G);

  QftReport report;
  report.n = n;
  report.fidelity_vs_dft = fidelity(sys.amplitudes(), target);
  report.rho = encoded.rho;
  report.m = schedule(encoded.rho).m;
  report.encoder_depth = model_encoder_depth(n, plan.layout.M, plan.layout.L,
                                             plan.layout.R, plan.has_ladder,
                                             plan.has_phases);
  report.qft_depth = measured_depth(qft);
  return report;
}

std::string qft_report_json(const QftReport &report) {
  nlohmann::json j;
  j["n"] = report.n;
  j["fidelity_vs_dft"] = report.fidelity_vs_dft;
  j["rho"] = report.rho;
  j["m"] = report.m;
  j["encoder_depth"] = report.encoder_depth;
  j["qft_depth"] = report.qft_depth;
  return j.dump();
}

}  // namespace qampenc
