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

#include <doctest.h>

#include "qampenc/errors.hpp"
#include "qampenc/randstats.hpp"
#include "qampenc/simcore.hpp"

using namespace qampenc;

namespace {

std::vector<std::complex<double>> qft_column(int n, std::uint64_t basis) {
  DenseState state(n);
  state.amplitudes()[0] = {0, 0};
  state.amplitudes()[basis] = {1, 0};
  apply_circuit(state, build_qft(n));
  return state.amplitudes();
}

}  // namespace

TEST_CASE("classical_dft oracle basics") {
  // delta -> uniform
  const auto uniform = classical_dft({{1, 0}, {0, 0}, {0, 0}, {0, 0}});
  for (const auto &a : uniform) {
    CHECK(a.real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(a.imag() == doctest::Approx(0.0).epsilon(1e-12));
  }
  // uniform -> delta
  const auto delta = classical_dft({{0.5, 0}, {0.5, 0}, {0.5, 0}, {0.5, 0}});
  CHECK(std::abs(delta[0] - std::complex<double>{1, 0}) <= 1e-12);
  for (int k = 1; k < 4; ++k) CHECK(std::abs(delta[k]) <= 1e-12);

  // hand-evaluated 4-point case
  const double s = 1.0 / std::sqrt(2.0);
  const auto line = classical_dft({{s, 0}, {0, 0}, {-s, 0}, {0, 0}});
  CHECK(std::abs(line[0]) <= 1e-12);
  CHECK(std::abs(line[1] - std::complex<double>{s, 0}) <= 1e-12);
  CHECK(std::abs(line[2]) <= 1e-12);
  CHECK(std::abs(line[3] - std::complex<double>{s, 0}) <= 1e-12);

  CHECK_THROWS_AS(classical_dft({{1, 0}, {0, 0}, {0, 0}}), BadShapeError);
}

TEST_CASE("build_qft structure") {
  CHECK(build_qft(1).size() == 1);  // single H
  const auto qft5 = build_qft(5);
  int h = 0, phase = 0, swap = 0;
  for (const auto &g : qft5) {
    if (g.kind == GateKind::H) ++h;
    if (g.kind == GateKind::Phase) ++phase;
    if (g.kind == GateKind::Swap) ++swap;
  }
  CHECK(h == 5);
  CHECK(phase == 10);
  CHECK(h + phase == 5 * 6 / 2);  // n(n+1)/2
  CHECK(swap == 2);

  CHECK_THROWS_AS(build_qft(0), BadShapeError);
}

TEST_CASE("QFT on |0...0> gives the uniform superposition") {
  for (int n : {1, 2, 3, 6}) {
    DenseState state(n);
    apply_circuit(state, build_qft(n));
    const double u = 1.0 / std::sqrt(static_cast<double>(1 << n));
    for (const auto &a : state.amplitudes()) {
      CHECK(a.real() == doctest::Approx(u).epsilon(1e-10));
      CHECK(std::abs(a.imag()) <= 1e-10);
    }
  }
}

TEST_CASE("QFT circuit equals the DFT matrix on all basis states") {
  for (int n = 1; n <= 8; ++n) {
    const std::size_t N = std::size_t{1} << n;
    bool all_match = true;
    for (std::uint64_t basis = 0; basis < N; ++basis) {
      std::vector<std::complex<double>> delta(N, {0, 0});
      delta[basis] = {1, 0};
      const auto expected = classical_dft(delta);
      const auto got = qft_column(n, basis);
      for (std::size_t k = 0; k < N; ++k) {
        if (std::abs(expected[k] - got[k]) > 1e-10) all_match = false;
      }
    }
    CHECK(all_match);
  }
}

TEST_CASE("QFT followed by its inverse is the identity") {
  SplitMix64 rng(8);
  const int n = 6;
  std::vector<std::complex<double>> amps(1 << n);
  double a, b, norm = 0.0;
  for (auto &amp : amps) {
    rng.next_gaussian_pair(a, b);
    amp = {a, b};
    norm += std::norm(amp);
  }
  for (auto &amp : amps) amp /= std::sqrt(norm);

  DenseState state(n, amps);
  const auto qft = build_qft(n);
  apply_circuit(state, qft);
  apply_circuit(state, inverse_circuit(qft));
  CHECK(fidelity(state.amplitudes(), amps) >= 1.0 - 1e-10);
}

TEST_CASE("approximate QFT with rotation cutoff") {
  const auto exact = build_qft(8);
  const auto approx = build_qft(8, 4);
  CHECK(approx.size() < exact.size());

  // still close to the DFT at moderate cutoff
  DenseState state(8);
  apply_circuit(state, approx);
  std::vector<std::complex<double>> delta(256, {0, 0});
  delta[0] = {1, 0};
  CHECK(fidelity(state.amplitudes(), classical_dft(delta)) >= 0.99);
}

TEST_CASE("run_qft_check end to end") {
  SUBCASE("golden vector") {
    const InputVector v =
        normalize({{1, 0}, {2, 0}, {-1, 0}, {2, 0}, {-1, 0}, {2, 0}, {1, 0}, {2, 0}});
    const QftReport report = run_qft_check(v, 8, 6);
    CHECK(report.n == 3);
    CHECK(report.fidelity_vs_dft >= 1.0 - 1e-9);
    CHECK(report.rho == doctest::Approx(0.620425310437349).epsilon(1e-12));
    CHECK(report.qft_depth > 0);
  }
  SUBCASE("basis vector: uniform output") {
    std::vector<std::complex<double>> e0(8, {0, 0});
    e0[0] = {1, 0};
    const QftReport report = run_qft_check(normalize(e0), 4, 6);
    CHECK(report.fidelity_vs_dft >= 1.0 - 1e-9);
  }
  SUBCASE("complex (1,-1)/sqrt(2)") {
    const QftReport report = run_qft_check(normalize({{1, 0}, {-1, 0}}), 2, 6);
    CHECK(report.fidelity_vs_dft >= 1.0 - 1e-9);
  }
  SUBCASE("random complex vectors") {
    SplitMix64 rng(606);
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<std::complex<double>> v(16);
      double a, b;
      for (auto &c : v) {
        rng.next_gaussian_pair(a, b);
        c = {a, b};
      }
      const QftReport report = run_qft_check(normalize(v), 16, 7);
      CHECK(report.fidelity_vs_dft >= 1.0 - 1e-9);
    }
  }
}

TEST_CASE("qft report json") {
  const QftReport report = run_qft_check(normalize({{1, 0}, {0, 0}}), 2, 4);
  const std::string json = qft_report_json(report);
  for (const char *key : {"\"n\"", "\"fidelity_vs_dft\"", "\"rho\"", "\"m\"",
                          "\"encoder_depth\"", "\"qft_depth\""}) {
    CHECK(json.find(key) != std::string::npos);
  }
}
