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

#include "qampenc/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "qampenc/errors.hpp"

namespace qampenc {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

std::size_t next_power_of_two(std::size_t x) {
  std::size_t p = 1;
  while (p < x) p <<= 1;
  return p;
}

double max_modulus(const std::vector<std::complex<double>> &values) {
  double m = 0.0;
  for (const auto &v : values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

int InputVector::qubits() const {
  int n = 0;
  while ((std::size_t{1} << n) < values.size()) ++n;
  return n;
}

InputVector normalize(std::vector<std::complex<double>> values) {
  if (values.empty()) throw ZeroVectorError();
  double norm_sq = 0.0;
  bool real = true;
  for (const auto &v : values) {
    norm_sq += std::norm(v);
    if (v.imag() != 0.0) real = false;
  }
  if (norm_sq == 0.0) throw ZeroVectorError();

  InputVector out;
  out.is_real = real;
  const std::size_t n_padded = is_power_of_two(values.size())
                                   ? values.size()
                                   : next_power_of_two(values.size());
  out.padding = n_padded - values.size();
  const double inv_norm = 1.0 / std::sqrt(norm_sq);
  out.values.reserve(n_padded);
  for (const auto &v : values) out.values.push_back(v * inv_norm);
  out.values.resize(n_padded, {0.0, 0.0});
  return out;
}

AngleVector compute_theta(const InputVector &v) {
  if (!v.is_real) throw UseComplexSplitError();
  const double max_abs = max_modulus(v.values);
  if (max_abs == 0.0) throw ZeroVectorError();

  AngleVector theta;
  theta.thetas.reserve(v.size());
  for (const auto &c : v.values) {
    const double x = c.real();
    if (std::abs(x) == max_abs) {
      theta.thetas.push_back(x > 0 ? 1.0 : -1.0);
    } else {
      theta.thetas.push_back(std::asin(x / max_abs) / (kPi / 2.0));
    }
  }
  return theta;
}

BinaryAngleMatrix::BinaryAngleMatrix(std::size_t rows, int bits_per_angle)
    : rows_(rows), L_(bits_per_angle), bits_(rows * bits_per_angle, 0) {
  if (bits_per_angle < 2) throw PrecisionTooLowError(bits_per_angle);
}

long BinaryAngleMatrix::row_scaled(std::size_t row) const {
  long mag = 0;
  for (int j = 1; j < L_; ++j) {
    mag = (mag << 1) | bit(row, j);
  }
  return bit(row, 0) ? -mag : mag;
}

void BinaryAngleMatrix::set_row_scaled(std::size_t row, long q) {
  set_bit(row, 0, q < 0 ? 1 : 0);
  unsigned long mag = static_cast<unsigned long>(q < 0 ? -q : q);
  for (int j = L_ - 1; j >= 1; --j) {
    set_bit(row, j, static_cast<int>(mag & 1));
    mag >>= 1;
  }
}

std::string BinaryAngleMatrix::row_string(std::size_t row) const {
  std::string s(static_cast<std::size_t>(L_), '0');
  for (int j = 0; j < L_; ++j) s[j] = bit(row, j) ? '1' : '0';
  return s;
}

BinaryAngleMatrix quantize_theta(const AngleVector &theta, int L) {
  if (L < 2) throw PrecisionTooLowError(L);
  BinaryAngleMatrix B(theta.size(), L);
  const double scale = static_cast<double>(1L << (L - 1));
  const long q_max = (1L << (L - 1)) - 1;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    long q = static_cast<long>(std::ceil(theta.thetas[i] * scale));
    q = std::clamp(q, -q_max, q_max);
    B.set_row_scaled(i, q);
  }
  return B;
}

AngleVector dequantize(const BinaryAngleMatrix &B) {
  AngleVector theta;
  theta.thetas.reserve(B.rows());
  const double scale = static_cast<double>(1L << (B.bits_per_angle() - 1));
  for (std::size_t i = 0; i < B.rows(); ++i) {
    theta.thetas.push_back(static_cast<double>(B.row_scaled(i)) / scale);
  }
  return theta;
}

std::vector<double> reconstructed_amplitudes(const BinaryAngleMatrix &B) {
  std::vector<double> c;
  c.reserve(B.rows());
  for (double t : dequantize(B).thetas) {
    const double s = std::sin(std::abs(t) * kPi / 2.0);
    c.push_back(t < 0 ? -s : s);
  }
  return c;
}

double density(const std::vector<double> &amplitudes) {
  double max_abs = 0.0;
  for (double a : amplitudes) max_abs = std::max(max_abs, std::abs(a));
  if (max_abs == 0.0 || amplitudes.empty()) throw ZeroVectorError();
  double sum = 0.0;
  for (double a : amplitudes) {
    const double r = a / max_abs;
    sum += r * r;
  }
  return sum / static_cast<double>(amplitudes.size());
}

double density(const std::vector<std::complex<double>> &amplitudes) {
  std::vector<double> moduli;
  moduli.reserve(amplitudes.size());
  for (const auto &a : amplitudes) moduli.push_back(std::abs(a));
  return density(moduli);
}

ModeShift compress_mode_shift(const AngleVector &theta_hat) {
  // The quantized values are exact binary rationals, so keying a map on the
  // doubles themselves is deterministic.
  std::map<double, std::size_t> freq;
  for (double t : theta_hat.thetas) ++freq[t];
  double mode = 0.0;
  std::size_t best = 0;
  for (const auto &[value, count] : freq) {
    if (count > best) {  // ties: smallest value wins (map is ordered)
      best = count;
      mode = value;
    }
  }
  ModeShift result;
  result.mode = mode;
  result.shifted.thetas.reserve(theta_hat.size());
  for (double t : theta_hat.thetas) {
    const double d = t - mode;
    result.shifted.thetas.push_back(d);
    if (d != 0.0) ++result.S;
  }
  return result;
}

PreprocessResult preprocess(const InputVector &v, int L) {
  AngleVector theta = compute_theta(v);
  BinaryAngleMatrix B = quantize_theta(theta, L);
  std::vector<double> c = reconstructed_amplitudes(B);

  double norm_sq = 0.0;
  for (double x : c) norm_sq += x * x;
  std::vector<double> w = c;
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (double &x : w) x *= inv;

  PreprocessResult result{std::move(B),
                          std::move(w),
                          density(v.values),
                          density(c),
                          max_modulus(v.values),
                          0,
                          v.padding,
                          std::move(theta)};
  result.S = compress_mode_shift(dequantize(result.B)).S;
  return result;
}

ComplexSplit split_complex(const InputVector &v, int L) {
  const std::size_t n = v.size();
  double max_mod = max_modulus(v.values);
  if (max_mod == 0.0) throw ZeroVectorError();

  // Rotate the first nonzero entry to phase zero.
  std::complex<double> rot{1.0, 0.0};
  for (const auto &c : v.values) {
    if (std::abs(c) > 0.0) {
      rot = std::polar(1.0, -std::arg(c));
      break;
    }
  }

  ComplexSplit split{AngleVector{}, {}, BinaryAngleMatrix(n, L),
                     BinaryAngleMatrix(n, L)};
  split.theta_R.thetas.reserve(n);
  split.phase_fractions.reserve(n);
  for (const auto &c0 : v.values) {
    const std::complex<double> c = c0 * rot;
    const double r = std::abs(c);
    if (r == max_mod) {
      split.theta_R.thetas.push_back(1.0);
    } else {
      split.theta_R.thetas.push_back(std::asin(r / max_mod) / (kPi / 2.0));
    }
    double frac = 0.0;
    if (r > 0.0) {
      frac = std::arg(c) / (2.0 * kPi);
      frac -= std::floor(frac);  // into [0, 1)
      if (frac >= 1.0) frac = 0.0;
    }
    split.phase_fractions.push_back(frac);
  }
  split.phase_fractions[0] = 0.0;

  split.B_R = quantize_theta(split.theta_R, L);

  // Phases: nearest grid point with wrap-around, no sign bit.
  const double scale = static_cast<double>(1L << (L - 1));
  for (std::size_t i = 0; i < n; ++i) {
    long q = std::lround(split.phase_fractions[i] * scale);
    q &= (1L << (L - 1)) - 1;  // wrap 1.0 back to 0
    split.B_phi.set_row_scaled(i, q);
  }
  return split;
}

std::vector<double> dequantize_phase_fractions(const BinaryAngleMatrix &B_phi) {
  std::vector<double> fractions;
  fractions.reserve(B_phi.rows());
  const double scale =
      static_cast<double>(1L << (B_phi.bits_per_angle() - 1));
  for (std::size_t i = 0; i < B_phi.rows(); ++i) {
    fractions.push_back(static_cast<double>(B_phi.row_scaled(i)) / scale);
  }
  return fractions;
}

}  // namespace qampenc
