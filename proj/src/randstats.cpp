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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>

#include "qampenc/errors.hpp"

namespace qampenc {

namespace {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/** Pairwise summation in a fixed order; stable and thread-count agnostic. */
double pairwise_sum(const std::vector<double> &v, std::size_t lo,
                    std::size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

double pairwise_sum(const std::vector<double> &v) {
  return pairwise_sum(v, 0, v.size());
}

}  // namespace

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += kGoldenGamma);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::next_double() {
  // 53 random bits into (0, 1); never returns exactly 0.
  const std::uint64_t bits = next() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

void SplitMix64::next_gaussian_pair(double &a, double &b) {
  while (true) {
    const double u = 2.0 * next_double() - 1.0;
    const double v = 2.0 * next_double() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      const double f = std::sqrt(-2.0 * std::log(s) / s);
      a = u * f;
      b = v * f;
      return;
    }
  }
}

SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(seed + (index + 1) * kGoldenGamma);
}

SampleStats sample_ratio_stats(std::size_t N, long count, std::uint64_t seed,
                               int threads) {
  if (N < 2) throw BadShapeError("need N >= 2");
  if (count < 2) throw BadShapeError("need count >= 2");

  std::vector<double> ratios(static_cast<std::size_t>(count));
  auto worker = [&](long lo, long hi) {
    for (long s = lo; s < hi; ++s) {
      SplitMix64 rng = sample_stream(seed, static_cast<std::uint64_t>(s));
      double sum_sq = 0.0;
      double max_sq = 0.0;
      double a = 0.0, b = 0.0;
      for (std::size_t i = 0; i < N; i += 2) {
        rng.next_gaussian_pair(a, b);
        sum_sq += a * a;
        max_sq = std::max(max_sq, a * a);
        if (i + 1 < N) {
          sum_sq += b * b;
          max_sq = std::max(max_sq, b * b);
        }
      }
      ratios[static_cast<std::size_t>(s)] = max_sq / sum_sq;
    }
  };

  if (threads <= 1) {
    worker(0, count);
  } else {
    const int workers = std::min<long>(threads, count);
    std::vector<std::thread> pool;
    const long step = (count + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const long lo = w * step;
      const long hi = std::min<long>(count, lo + step);
      if (lo >= hi) break;
      pool.emplace_back(worker, lo, hi);
    }
    for (auto &t : pool) t.join();
  }

  SampleStats stats;
  stats.N = N;
  stats.count = count;
  stats.seed = seed;
  stats.mean_ratio = pairwise_sum(ratios) / static_cast<double>(count);

  std::vector<double> sq(ratios.size());
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    const double d = ratios[i] - stats.mean_ratio;
    sq[i] = d * d;
  }
  stats.var_ratio = pairwise_sum(sq) / static_cast<double>(count - 1);

  const double n = std::log2(static_cast<double>(N));
  std::vector<double> taus(ratios.size());
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    taus[i] = n * std::sqrt(static_cast<double>(N) * ratios[i]);
  }
  stats.mean_tau = pairwise_sum(taus) / static_cast<double>(count);
  return stats;
}

double predicted_mean(std::size_t N) {
  return 2.0 * std::log(static_cast<double>(N)) / static_cast<double>(N);
}

double predicted_var(std::size_t N) {
  return std::log(static_cast<double>(N)) /
         (static_cast<double>(N) * static_cast<double>(N));
}

std::vector<ScalingReportRow> scaling_report(
    const std::vector<std::size_t> &N_list, long count, std::uint64_t seed,
    int threads) {
  std::vector<ScalingReportRow> rows;
  for (std::size_t N : N_list) {
    ScalingReportRow row;
    row.N = N;
    row.n = static_cast<int>(std::lround(std::log2(static_cast<double>(N))));
    row.stats = sample_ratio_stats(N, count, seed, threads);
    row.predicted = predicted_mean(N);
    row.mean_over_predicted = row.stats.mean_ratio / row.predicted;
    row.n_pow_1_5 = std::pow(static_cast<double>(row.n), 1.5);
    row.tau_over_n15 = row.stats.mean_tau / row.n_pow_1_5;
    rows.push_back(row);
  }
  return rows;
}

std::string sphere_stats_csv_header() {
  return "N,count,seed,mean_ratio,var_ratio,predicted_mean,mean_tau,"
         "n_pow_1_5";
}

std::string sphere_stats_csv_row(const ScalingReportRow &row) {
  char buf[320];
  std::snprintf(buf, sizeof(buf), "%zu,%ld,%llu,%.17g,%.17g,%.17g,%.17g,%.17g",
                row.N, row.stats.count,
                static_cast<unsigned long long>(row.stats.seed),
                row.stats.mean_ratio, row.stats.var_ratio, row.predicted,
                row.stats.mean_tau, row.n_pow_1_5);
  return buf;
}

}  // namespace qampenc
