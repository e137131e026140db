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

#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace qampenc {

/**
 * Read a vector from CSV text: one value per line, either `re` or `re,im`.
 * Blank lines and lines starting with '#' are skipped.
 */
std::vector<std::complex<double>> read_vector_csv(std::istream &in);

/**
 * Read a vector from the raw binary format: a one-line JSON header
 * {"n": <count>, "complex": <bool>} followed by little-endian float64
 * payload (interleaved re,im pairs when complex).
 */
std::vector<std::complex<double>> read_vector_raw(std::istream &in);

/** Dispatch on file extension: .csv -> CSV, anything else -> raw. */
std::vector<std::complex<double>> read_vector_file(const std::string &path);

void write_vector_raw(std::ostream &out,
                      const std::vector<std::complex<double>> &values,
                      bool is_complex);

}  // namespace qampenc
