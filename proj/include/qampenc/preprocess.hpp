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
 * Classical pre-processing: normalization, angle computation, L-bit
 * quantization into the binary angle matrix B, data density, complex
 * modulus/phase splitting and mode-shift compression.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace qampenc {

/**
 * A unit-norm input vector of length N = 2^n (zero-padded if needed).
 *
 * Invariants: the 2-norm is 1 within 1e-12 and the length is a power of
 * two. `padding` records how many zeros were appended so downstream
 * consumers can truncate outputs back to the original length.
 */
struct InputVector {
  std::vector<std::complex<double>> values;
  bool is_real = true;
  std::size_t padding = 0;

  std::size_t size() const { return values.size(); }
  int qubits() const;
};

/**
 * Normalize to unit 2-norm and zero-pad to the next power of two.
 *
 * Throws ZeroVectorError when every entry is zero.
 */
InputVector normalize(std::vector<std::complex<double>> values);

/** Angles in units of quarter turns: theta_i = (2/pi) asin(v_i / ||v||_inf). */
struct AngleVector {
  std::vector<double> thetas;

  std::size_t size() const { return thetas.size(); }
};

/**
 * Angle vector of a real unit vector. Entries whose modulus equals the max
 * norm map to +-1 exactly. Throws UseComplexSplitError for complex input.
 */
AngleVector compute_theta(const InputVector &v);

/**
 * The N x L bit matrix B. Column 0 holds the sign bit, columns 1..L-1 the
 * fraction bits of weight 2^-1 .. 2^-(L-1); row i decodes to
 * (-1)^B(i,0) * sum_j 2^-j B(i,j).
 */
class BinaryAngleMatrix {
 public:
  BinaryAngleMatrix(std::size_t rows, int bits_per_angle);

  std::size_t rows() const { return rows_; }
  int bits_per_angle() const { return L_; }

  int bit(std::size_t row, int col) const { return bits_[row * L_ + col]; }
  void set_bit(std::size_t row, int col, int value) {
    bits_[row * L_ + col] = static_cast<std::uint8_t>(value & 1);
  }

  /** Signed integer q with row value q * 2^-(L-1); |q| <= 2^(L-1) - 1. */
  long row_scaled(std::size_t row) const;
  void set_row_scaled(std::size_t row, long q);

  /** Row as "010110" style bit string, sign bit first. */
  std::string row_string(std::size_t row) const;

  bool operator==(const BinaryAngleMatrix &other) const = default;

 private:
  std::size_t rows_;
  int L_;
  std::vector<std::uint8_t> bits_;
};

/**
 * Quantize each angle onto the 2^-(L-1) grid.
 *
 * The scaled angle theta * 2^(L-1) is rounded toward +infinity and the
 * result saturates at +-(2^(L-1) - 1), so theta = +-1 encodes as all
 * fraction bits set. This rounding direction is what reproduces the
 * worked B matrix for the (1,2,-1,2,-1,2,1,2)/sqrt(20) example bit for
 * bit. The sign bit is set iff the rounded value is negative.
 *
 * Throws PrecisionTooLowError for L < 2.
 */
BinaryAngleMatrix quantize_theta(const AngleVector &theta, int L);

/** Exact rational reconstruction of the quantized angles. */
AngleVector dequantize(const BinaryAngleMatrix &B);

/**
 * Amplitude ratios c_k = sign * sin((pi/2) |theta_hat_k|) realized by the
 * rotation ladder for each row of B.
 */
std::vector<double> reconstructed_amplitudes(const BinaryAngleMatrix &B);

/**
 * Data density rho = (1/N) sum_i (a_i / ||a||_inf)^2, in [1/N, 1].
 * Throws ZeroVectorError when all entries are zero.
 */
double density(const std::vector<double> &amplitudes);
double density(const std::vector<std::complex<double>> &amplitudes);

/** Result of compress_mode_shift. */
struct ModeShift {
  double mode = 0.0;
  AngleVector shifted;
  std::size_t S = 0;  // entries distinct from the mode
};

/**
 * Shift the (quantized) angle vector by its most frequent value.
 * Ties between equally frequent values resolve to the smallest value.
 */
ModeShift compress_mode_shift(const AngleVector &theta_hat);

/** Everything the encoder needs, bundled. */
struct PreprocessResult {
  BinaryAngleMatrix B;
  std::vector<double> w;  // unit-norm reconstructed amplitudes
  double rho_exact = 0.0;
  double rho_circuit = 0.0;
  double max_abs = 0.0;
  std::size_t S = 0;
  std::size_t padding = 0;
  AngleVector theta;
};

/** Full real-vector pre-processing pipeline for a normalized input. */
PreprocessResult preprocess(const InputVector &v, int L);

/**
 * Modulus/phase decomposition of a complex unit vector.
 *
 * Phases are stored as unsigned fractions of a full turn in [0, 1); the
 * first nonzero entry is rotated to phase 0 by a global phase. B_R carries
 * no set sign bits. B_phi fraction bits quantize the turn fraction on the
 * same 2^-(L-1) grid, rounding to nearest with wrap-around (the domain is
 * periodic, so there is no saturation).
 */
struct ComplexSplit {
  AngleVector theta_R;
  std::vector<double> phase_fractions;
  BinaryAngleMatrix B_R;
  BinaryAngleMatrix B_phi;
};

ComplexSplit split_complex(const InputVector &v, int L);

/** Turn fractions in [0,1) encoded by B_phi rows (sign column always 0). */
std::vector<double> dequantize_phase_fractions(const BinaryAngleMatrix &B_phi);

}  // namespace qampenc
