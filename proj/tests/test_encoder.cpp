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

#include "qampenc/encoder.hpp"

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "qampenc/errors.hpp"
#include "qampenc/randstats.hpp"

using namespace qampenc;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<std::complex<double>> real_vec(std::vector<double> v) {
  std::vector<std::complex<double>> out;
  for (double x : v) out.emplace_back(x, 0.0);
  return out;
}

InputVector golden_vector() {
  return normalize(real_vec({1, 2, -1, 2, -1, 2, 1, 2}));
}

InputVector random_unit(std::size_t N, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<double> v(N);
  double a, b;
  for (std::size_t i = 0; i < N; i += 2) {
    rng.next_gaussian_pair(a, b);
    v[i] = a;
    if (i + 1 < N) v[i + 1] = b;
  }
  return normalize(real_vec(v));
}

/** Independent oracle: expected flag pair per branch from frozen bits. */
double expected_c(long scaled, int L) {
  const double t = static_cast<double>(scaled) / (1L << (L - 1));
  const double s = std::sin(std::abs(t) * kPi / 2.0);
  return t < 0 ? -s : s;
}

const Checkpoint &find_checkpoint(const std::vector<Checkpoint> &checkpoints,
                                  const std::string &label) {
  for (const auto &cp : checkpoints) {
    if (cp.label == label) return cp;
  }
  REQUIRE_MESSAGE(false, "missing checkpoint " << label);
  static Checkpoint dummy;
  return dummy;
}

}  // namespace

TEST_CASE("build_plan layout and chunk structure") {
  const PreprocessResult pre = preprocess(golden_vector(), 6);

  SUBCASE("M=N: one chunk, 42 declared qubits") {
    const EncodingPlan plan = build_plan(pre.B, 8);
    CHECK(plan.layout.R == 1);
    CHECK(plan.layout.declared_qubits() == 42);
  }
  SUBCASE("M=1: N chunks, 14 declared qubits") {
    const EncodingPlan plan = build_plan(pre.B, 1);
    CHECK(plan.layout.R == 8);
    CHECK(plan.layout.declared_qubits() == 14);
  }
  SUBCASE("final mirrors initial without the H layer") {
    const EncodingPlan plan = build_plan(pre.B, 8);
    std::vector<GateSpec> fwd;  // initial minus H
    std::vector<GateSpec> bwd;  // final
    for (const auto &seg : plan.segments) {
      if (seg.label == "initial.xor" || seg.label == "initial.x") {
        fwd.insert(fwd.end(), seg.gates.begin(), seg.gates.end());
      }
      if (seg.label == "final.x" || seg.label == "final.xor") {
        bwd.insert(bwd.end(), seg.gates.begin(), seg.gates.end());
      }
    }
    REQUIRE(fwd.size() == bwd.size());
    for (std::size_t i = 0; i < fwd.size(); ++i) {
      const GateSpec &a = fwd[i];
      const GateSpec &b = bwd[fwd.size() - 1 - i];
      CHECK(a.kind == b.kind);
      CHECK(a.targets == b.targets);
      CHECK(a.controls == b.controls);
    }
  }
  SUBCASE("bad parallelism") {
    CHECK_THROWS_AS(build_plan(pre.B, 0), BadParallelismError);
    CHECK_THROWS_AS(build_plan(pre.B, 9), BadParallelismError);
  }
}

TEST_CASE("branch sim: golden vector checkpoints and reduced output") {
  const PreprocessResult pre = preprocess(golden_vector(), 6);
  const EncodingPlan plan = build_plan(pre.B, 8);
  std::vector<Checkpoint> checkpoints;
  const ReducedOutput out = run_branch_sim(plan, &checkpoints);

  // rho equals the density of the quantized amplitudes (frozen oracle value)
  CHECK(out.rho == doctest::Approx(0.620425310437349).epsilon(1e-12));

  // flags are (1,0) through psi5
  for (const char *label : {"psi1", "psi2", "psi3", "psi4", "psi5"}) {
    const Checkpoint &cp = find_checkpoint(checkpoints, label);
    for (const auto &b : cp.state.branches) {
      CHECK(b.a0 == std::complex<double>{1.0, 0.0});
      CHECK(b.a1 == std::complex<double>{0.0, 0.0});
    }
  }

  // psi4: C_j = delta_{k,j}
  {
    const Checkpoint &cp = find_checkpoint(checkpoints, "psi4");
    for (const auto &b : cp.state.branches) {
      for (int j = 0; j < plan.layout.M; ++j) {
        const bool expected = static_cast<std::uint64_t>(j) == b.key;
        CHECK(b.bit(plan.layout.parity(j)) == expected);
      }
    }
  }

  // psi6: flag pair ((-1)^sign sqrt(1-c^2), c), exact
  {
    const Checkpoint &cp = find_checkpoint(checkpoints, "psi6");
    for (const auto &b : cp.state.branches) {
      const long scaled = pre.B.row_scaled(b.key);
      const double c = expected_c(scaled, 6);
      const double sign = pre.B.bit(b.key, 0) ? -1.0 : 1.0;
      CHECK(b.a1.real() == doctest::Approx(c).epsilon(1e-12));
      CHECK(b.a0.real() ==
            doctest::Approx(sign * std::sqrt(1 - c * c)).epsilon(1e-12));
    }
  }

  // psi8: every ancilla bit cleared
  {
    const Checkpoint &cp = find_checkpoint(checkpoints, "psi8");
    for (const auto &b : cp.state.branches) {
      for (int q = plan.layout.n; q < plan.layout.total_qubits(); ++q) {
        if (q == plan.layout.flag()) continue;
        CHECK(b.bit(q) == false);
      }
    }
  }

  // psi_G proportional to the reconstructed amplitudes, signs included
  const std::vector<double> c = reconstructed_amplitudes(pre.B);
  std::vector<std::complex<double>> target;
  for (double x : c) target.emplace_back(x, 0.0);
  CHECK(fidelity(out.psi_G, target) >= 1.0 - 1e-12);
  const double expected_signs[] = {1, 1, -1, 1, -1, 1, 1, 1};
  for (std::size_t k = 0; k < 8; ++k) {
    CHECK(out.psi_G[k].real() * expected_signs[k] > 0.0);
  }
}

TEST_CASE("branch sim: uniform and basis vectors") {
  SUBCASE("uniform vector: psi_G uniform, rho = sin^2(pi/2 * 31/32)") {
    const InputVector v = normalize(real_vec(std::vector<double>(8, 1.0)));
    const PreprocessResult pre = preprocess(v, 6);
    const EncodingPlan plan = build_plan(pre.B, 8);
    const ReducedOutput out = run_branch_sim(plan);
    const double c31 = std::sin(kPi / 2.0 * 31.0 / 32.0);
    CHECK(out.rho == doctest::Approx(c31 * c31).epsilon(1e-12));
    for (const auto &amp : out.psi_G) {
      CHECK(amp.real() == doctest::Approx(1.0 / std::sqrt(8.0)).epsilon(1e-12));
    }
  }
  SUBCASE("basis vector e0: psi_G = |0>, rho = c0^2/N") {
    std::vector<double> e0(8, 0.0);
    e0[0] = 1.0;
    const PreprocessResult pre = preprocess(normalize(real_vec(e0)), 6);
    const EncodingPlan plan = build_plan(pre.B, 8);
    const ReducedOutput out = run_branch_sim(plan);
    const double c31 = std::sin(kPi / 2.0 * 31.0 / 32.0);
    CHECK(out.rho == doctest::Approx(c31 * c31 / 8.0).epsilon(1e-12));
    CHECK(std::norm(out.psi_G[0]) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("M-independence: output identical across schedules") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const InputVector v = random_unit(16, seed);
    const PreprocessResult pre = preprocess(v, 5);
    const ReducedOutput a = run_branch_sim(build_plan(pre.B, 1));
    const ReducedOutput b = run_branch_sim(build_plan(pre.B, 16));
    const ReducedOutput c = run_branch_sim(build_plan(pre.B, 3));  // M ∤ N
    CHECK(a.rho == b.rho);
    CHECK(a.rho == c.rho);
    CHECK(fidelity(a.psi_G, b.psi_G) >= 1.0 - 1e-12);
    CHECK(fidelity(a.psi_B, b.psi_B) >= 1.0 - 1e-12);
    CHECK(fidelity(a.psi_full, c.psi_full) >= 1.0 - 1e-12);
  }
}

TEST_CASE("FLAG probability equals density of reconstructed amplitudes") {
  for (std::uint64_t seed : {10ULL, 11ULL}) {
    for (int M : {1, 2, 8}) {
      const InputVector v = random_unit(8, seed);
      const PreprocessResult pre = preprocess(v, 6);
      const ReducedOutput out = run_branch_sim(build_plan(pre.B, M));
      CHECK(std::abs(out.rho - density(reconstructed_amplitudes(pre.B))) <=
            1e-10);
    }
  }
}

TEST_CASE("threaded branch sim matches serial bit for bit") {
  const InputVector v = random_unit(128, 1234);
  const PreprocessResult pre = preprocess(v, 6);
  const EncodingPlan plan = build_plan(pre.B, 16);
  const ReducedOutput serial = run_branch_sim(plan, nullptr, 1);
  const ReducedOutput threaded = run_branch_sim(plan, nullptr, 4);
  REQUIRE(serial.psi_full.size() == threaded.psi_full.size());
  for (std::size_t i = 0; i < serial.psi_full.size(); ++i) {
    CHECK(serial.psi_full[i] == threaded.psi_full[i]);
  }
}

TEST_CASE("dense oracle equals branch simulator") {
  struct Instance {
    std::size_t N;
    int M, L;
    std::uint64_t seed;
  };
  const Instance instances[] = {
      {4, 1, 4, 100}, {4, 2, 4, 101}, {2, 2, 3, 102},
      {2, 1, 4, 103}, {8, 1, 4, 104}, {8, 2, 4, 105},
  };
  for (const auto &inst : instances) {
    CAPTURE(inst.N);
    CAPTURE(inst.M);
    const InputVector v = random_unit(inst.N, inst.seed);
    const PreprocessResult pre = preprocess(v, inst.L);
    const EncodingPlan plan = build_plan(pre.B, inst.M);
    const ReducedOutput branch = run_branch_sim(plan);
    const DenseState dense = run_dense_plan(plan);
    const DenseReduction red = reduce_dense(dense, plan.layout);
    CHECK(red.ancilla_leak <= 1e-10);
    CHECK(fidelity(red.psi_full, branch.psi_full) >= 1.0 - 1e-9);
  }
}

TEST_CASE("dense oracle: (0.6, 0.8) flag probability equals density") {
  const InputVector v = normalize(real_vec({0.6, 0.8}));
  const PreprocessResult pre = preprocess(v, 3);
  const EncodingPlan plan = build_plan(pre.B, 2);
  const DenseState dense = run_dense_plan(plan);
  const double p1 = probability_of(dense, plan.layout.flag(), 1);
  CHECK(p1 == doctest::Approx(density(reconstructed_amplitudes(pre.B)))
                  .epsilon(1e-10));
}

TEST_CASE("uncompute leak raises on a corrupted plan") {
  const PreprocessResult pre = preprocess(golden_vector(), 4);
  EncodingPlan plan = build_plan(pre.B, 8);
  // strip the final segments so ancillas stay dirty
  plan.segments.pop_back();
  plan.segments.pop_back();
  CHECK_THROWS_AS(run_branch_sim(plan), UncomputeLeakError);
}

TEST_CASE("mode_shift_plan") {
  SUBCASE("uniform vector: zero chunks, ladder only") {
    const InputVector v = normalize(real_vec(std::vector<double>(8, 1.0)));
    const PreprocessResult pre = preprocess(v, 6);
    const EncodingPlan plan = mode_shift_plan(dequantize(pre.B), 4, 6);
    CHECK(plan.layout.M == 0);
    CHECK(plan.layout.R == 0);
    CHECK(plan.has_ladder);
    const ReducedOutput out = run_branch_sim(plan);
    const ReducedOutput full = run_branch_sim(build_plan(pre.B, 8));
    CHECK(fidelity(out.psi_full, full.psi_full) >= 1.0 - 1e-12);
  }

  SUBCASE("sparse (a,0,...,0,b): two index registers") {
    const InputVector v = normalize(real_vec({3, 0, 0, 0, 0, 0, 0, 4}));
    const PreprocessResult pre = preprocess(v, 6);
    const EncodingPlan plan = mode_shift_plan(dequantize(pre.B), 8, 6);
    CHECK(plan.layout.M == 2);
    CHECK(plan.layout.R == 1);
    const ReducedOutput out = run_branch_sim(plan);
    const ReducedOutput full = run_branch_sim(build_plan(pre.B, 8));
    // zero shift values are exactly representable here
    CHECK(fidelity(out.psi_full, full.psi_full) >= 1.0 - 1e-12);
  }

  SUBCASE("golden vector: S=4, saturated corrections, bounded fidelity") {
    const PreprocessResult pre = preprocess(golden_vector(), 6);
    const EncodingPlan plan = mode_shift_plan(dequantize(pre.B), 4, 6);
    CHECK(plan.layout.M == 4);
    const ReducedOutput shifted = run_branch_sim(plan);
    const ReducedOutput full = run_branch_sim(build_plan(pre.B, 8));
    const double fid = fidelity(shifted.psi_G, full.psi_G);
    CHECK(fid >= 1.0 - std::pow(2.0, -4));  // 2^-(L-2)
  }
}

TEST_CASE("encode_complex") {
  SUBCASE("real positive input matches the real path") {
    const InputVector v = normalize(real_vec({0.5, 0.5, 0.5, 0.5}));
    const ComplexSplit split = split_complex(v, 6);
    const ReducedOutput complex_out = encode_complex(split, 4);
    const ReducedOutput real_out =
        run_branch_sim(build_plan(preprocess(v, 6).B, 4));
    CHECK(fidelity(complex_out.psi_G, real_out.psi_G) >= 1.0 - 1e-12);
  }

  SUBCASE("(1,-1)/sqrt(2): exact half-turn phase") {
    const InputVector v = normalize(real_vec({1, -1}));
    const ReducedOutput out = encode_complex(split_complex(v, 6), 2);
    std::vector<std::complex<double>> target = {{1, 0}, {-1, 0}};
    CHECK(fidelity(out.psi_G, target) >= 0.999);
  }

  SUBCASE("(i,1)/sqrt(2): dense-oracle cross check") {
    const InputVector v = normalize({{0, 1}, {1, 0}});
    const ComplexSplit split = split_complex(v, 4);
    const EncodingPlan plan = build_plan(split.B_R, 2, &split.B_phi);
    const ReducedOutput branch = run_branch_sim(plan);
    const DenseReduction red = reduce_dense(run_dense_plan(plan), plan.layout);
    CHECK(red.ancilla_leak <= 1e-10);
    CHECK(fidelity(red.psi_full, branch.psi_full) >= 1.0 - 1e-9);

    std::vector<std::complex<double>> target = {{0, 1}, {1, 0}};
    CHECK(fidelity(branch.psi_G, target) >= 0.999);
  }

  SUBCASE("per-entry phase error bounded by 2pi 2^-(L-1)") {
    SplitMix64 rng(555);
    std::vector<std::complex<double>> v(8);
    double a, b;
    for (auto &c : v) {
      rng.next_gaussian_pair(a, b);
      c = {a, b};
    }
    const InputVector unit = normalize(v);
    const int L = 7;
    const ComplexSplit split = split_complex(unit, L);
    const ReducedOutput out = encode_complex(split, 8);
    // compare phases of psi_G entries against the split targets
    const double bound = 2.0 * kPi * std::pow(2.0, -(L - 1));
    std::complex<double> rot{1.0, 0.0};
    for (const auto &c : unit.values) {
      if (std::abs(c) > 0.0) {
        rot = std::polar(1.0, -std::arg(c));
        break;
      }
    }
    for (std::size_t k = 0; k < 8; ++k) {
      const std::complex<double> target = unit.values[k] * rot;
      if (std::abs(target) < 1e-12) continue;
      double diff = std::arg(out.psi_G[k]) - std::arg(target);
      while (diff > kPi) diff -= 2 * kPi;
      while (diff < -kPi) diff += 2 * kPi;
      CHECK(std::abs(diff) <= bound + 1e-12);
    }
  }
}

TEST_CASE("reduced output json shape") {
  const PreprocessResult pre = preprocess(golden_vector(), 4);
  const ReducedOutput out = run_branch_sim(build_plan(pre.B, 8));
  const std::string json = reduced_output_json(out);
  CHECK(json.find("\"rho\"") != std::string::npos);
  CHECK(json.find("\"psi_G\"") != std::string::npos);
  CHECK(json.find("\"psi_B\"") != std::string::npos);
}
