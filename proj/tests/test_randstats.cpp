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

#include "qampenc/randstats.hpp"

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "qampenc/errors.hpp"

using namespace qampenc;

namespace {

constexpr double kPi = std::numbers::pi;

/**
 * Quadrature oracle for N=2: the share u = x1^2/(x1^2+x2^2) of a
 * two-dimensional Gaussian is Beta(1/2,1/2), so
 * E[max(u, 1-u)] = 2 int_{1/2}^{1} u / (pi sqrt(u(1-u))) du.
 * Simpson integration after the substitution u = sin^2(phi), which removes
 * the endpoint singularity: integrand becomes (4/pi) sin^2(phi) on
 * [pi/4, pi/2].
 */
double quadrature_mean_ratio_n2(int intervals) {
  const double lo = kPi / 4.0, hi = kPi / 2.0;
  const double h = (hi - lo) / intervals;
  auto f = [](double phi) {
    const double s = std::sin(phi);
    return (4.0 / kPi) * s * s;
  };
  double sum = f(lo) + f(hi);
  for (int i = 1; i < intervals; ++i) {
    sum += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

}  // namespace

TEST_CASE("quadrature oracle reproduces the closed form 1/2 + 1/pi") {
  const double oracle = quadrature_mean_ratio_n2(2000);
  CHECK(oracle == doctest::Approx(0.5 + 1.0 / kPi).epsilon(1e-10));
}

TEST_CASE("sample_ratio_stats: N=2 mean against the quadrature oracle") {
  const SampleStats stats = sample_ratio_stats(2, 200000, 12345);
  const double oracle = quadrature_mean_ratio_n2(2000);
  CHECK(std::abs(stats.mean_ratio - oracle) <= 0.002);
}

TEST_CASE("ratio bounds hold samplewise") {
  // N=2: ratio in [0.5, 1]; general N: [1/N, 1]
  for (std::size_t N : {2, 8, 64}) {
    const SampleStats stats = sample_ratio_stats(N, 500, 99);
    CHECK(stats.mean_ratio >= 1.0 / static_cast<double>(N));
    CHECK(stats.mean_ratio <= 1.0);
  }
  // spot-check individual draws at N=2 via a tiny run with variance bound:
  const SampleStats two = sample_ratio_stats(2, 2000, 7);
  CHECK(two.mean_ratio >= 0.5);
  CHECK(two.var_ratio <= 0.25 * 0.25);  // range is [0.5, 1]
}

TEST_CASE("determinism: fixed seed reproduces bit-identical stats") {
  const SampleStats a = sample_ratio_stats(16, 5000, 42);
  const SampleStats b = sample_ratio_stats(16, 5000, 42);
  CHECK(a.mean_ratio == b.mean_ratio);
  CHECK(a.var_ratio == b.var_ratio);
  CHECK(a.mean_tau == b.mean_tau);

  const SampleStats c = sample_ratio_stats(16, 5000, 43);
  CHECK(a.mean_ratio != c.mean_ratio);

  // threading does not change the result
  const SampleStats d = sample_ratio_stats(16, 5000, 42, 4);
  CHECK(a.mean_ratio == d.mean_ratio);
  CHECK(a.var_ratio == d.var_ratio);
}

TEST_CASE("uniformity witness: coordinate means vanish") {
  const std::size_t N = 8;
  const long count = 20000;
  std::vector<double> coord_sum(N, 0.0);
  for (long s = 0; s < count; ++s) {
    SplitMix64 rng = sample_stream(2024, static_cast<std::uint64_t>(s));
    double a, b;
    for (std::size_t i = 0; i < N; i += 2) {
      rng.next_gaussian_pair(a, b);
      coord_sum[i] += a;
      coord_sum[i + 1] += b;
    }
  }
  const double bound = 4.0 / std::sqrt(static_cast<double>(count));
  for (double s : coord_sum) {
    CHECK(std::abs(s / count) <= bound);
  }
}

TEST_CASE("predicted_mean and predicted_var") {
  CHECK(predicted_mean(4096) == doctest::Approx(0.004061409261).epsilon(1e-9));
  // doubling N adds 2 ln 2 to predicted_mean * N
  for (std::size_t N : {64, 256, 1024}) {
    const double lhs = predicted_mean(2 * N) * (2 * N);
    const double rhs = predicted_mean(N) * N + 2.0 * std::log(2.0);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
  CHECK(predicted_var(64) == doctest::Approx(std::log(64.0) / 4096.0));
}

TEST_CASE("scaling_report trends at desk scale") {
  const std::vector<std::size_t> N_list = {64, 256, 1024};
  const auto rows = scaling_report(N_list, 4000, 99, 2);
  REQUIRE(rows.size() == 3);

  double prev_mean = 1.0;
  for (const auto &row : rows) {
    // anchored to the asymptote within the documented wide band
    CHECK(row.mean_over_predicted >= 0.6);
    CHECK(row.mean_over_predicted <= 1.1);
    CHECK(row.stats.mean_ratio < prev_mean);
    prev_mean = row.stats.mean_ratio;
  }
  // mean_tau increases with N
  CHECK(rows[0].stats.mean_tau < rows[1].stats.mean_tau);
  CHECK(rows[1].stats.mean_tau < rows[2].stats.mean_tau);
  // variance decays
  CHECK(rows[2].stats.var_ratio < rows[0].stats.var_ratio);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(sample_ratio_stats(1, 100, 1), BadShapeError);
  CHECK_THROWS_AS(sample_ratio_stats(8, 1, 1), BadShapeError);
}

TEST_CASE("csv row shape") {
  const auto rows = scaling_report({64}, 100, 5);
  const std::string row = sphere_stats_csv_row(rows[0]);
  CHECK(row.substr(0, 3) == "64,");
  const std::string header = sphere_stats_csv_header();
  CHECK(std::count(row.begin(), row.end(), ',') ==
        std::count(header.begin(), header.end(), ','));
}
