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
 * Monte Carlo statistics of ||x||_inf^2 / ||x||_2^2 over Gaussian samples.
 *
 * Sampling uses SplitMix64 streams: the state for sample i is seeded with
 * seed + (i+1) * golden-gamma, so every sample is an independent counter
 * position and parallel runs reproduce bit-identically. Gaussians come
 * from the Marsaglia polar method.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qampenc {

/** SplitMix64: the mixing core of SplittableRandom. */
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /** Uniform double in (0, 1). */
  double next_double();
  /** Pair of standard normals via the polar method. */
  void next_gaussian_pair(double &a, double &b);

 private:
  std::uint64_t state_;
};

/** Deterministic per-sample stream derived from (seed, sample index). */
SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t index);

struct SampleStats {
  std::size_t N = 0;
  long count = 0;
  double mean_ratio = 0.0;
  double var_ratio = 0.0;
  double mean_tau = 0.0;  // mean of n * sqrt(N * ratio)
  std::uint64_t seed = 0;
};

/**
 * Draw `count` standard-normal N-vectors and report the sample mean and
 * (unbiased) variance of max_i x_i^2 / sum x_i^2, plus the derived tau.
 */
SampleStats sample_ratio_stats(std::size_t N, long count, std::uint64_t seed,
                               int threads = 1);

/** Asymptotic mean 2 ln(N) / N of the ratio over the uniform sphere. */
double predicted_mean(std::size_t N);
/** Order-of-magnitude variance reference ln(N) / N^2. */
double predicted_var(std::size_t N);

struct ScalingReportRow {
  std::size_t N = 0;
  int n = 0;
  SampleStats stats;
  double predicted = 0.0;
  double mean_over_predicted = 0.0;
  double n_pow_1_5 = 0.0;
  double tau_over_n15 = 0.0;
};

std::vector<ScalingReportRow> scaling_report(
    const std::vector<std::size_t> &N_list, long count, std::uint64_t seed,
    int threads = 1);

std::string sphere_stats_csv_header();
std::string sphere_stats_csv_row(const ScalingReportRow &row);

}  // namespace qampenc
