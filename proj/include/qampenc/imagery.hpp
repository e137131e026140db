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
 * Image-sector data-density analysis: PGM ingestion, per-sector density
 * grids, and the density-vs-size scaling curve.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace qampenc {

struct GrayImage {
  int width = 0;
  int height = 0;
  int maxval = 255;
  std::vector<std::uint16_t> pixels;  // row-major

  std::uint16_t at(int row, int col) const {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }
};

/**
 * Parse a P2 (ASCII) or P5 (binary) PGM stream. Header comments are
 * allowed; maxval up to 65535 with big-endian 2-byte samples above 255.
 * Throws ParseError (with the byte offset for truncated payloads).
 */
GrayImage load_pgm(const std::string &bytes);
GrayImage load_pgm_file(const std::string &path);

std::string write_pgm(const GrayImage &img, bool binary = true);

struct DensityGrid {
  int n_s = 0;
  /** Row-major n_s x n_s densities; NaN marks all-zero (undefined) sectors. */
  std::vector<double> rho;
  /** (rows, cols) of each sector, same order. */
  std::vector<std::pair<int, int>> sector_dims;
  double mean_rho = 0.0;  // over defined sectors
  int undefined_count = 0;

  double at(int r, int c) const { return rho[static_cast<std::size_t>(r) * n_s + c]; }
};

/**
 * Near-equal n_s x n_s partition (the first height%n_s rows and width%n_s
 * cols of sectors are one pixel larger); each sector flattened row-major
 * and scored with the data density. Throws BadGridError when n_s is
 * outside [1, min(width, height)].
 */
DensityGrid sector_density(const GrayImage &img, int n_s);

struct CurveRow {
  std::size_t sector_size = 0;  // flattened length (W*H / n_s^2)
  int n_s = 0;
  double mean_rho = 0.0;
  double c_log = 0.0;   // a / ln(x), anchored at the largest sector size
  double c_sqrt = 0.0;  // b / sqrt(x), same anchor
};

std::vector<CurveRow> density_scaling_curve(const GrayImage &img,
                                            const std::vector<int> &n_s_list);

std::string heatmap_csv(const DensityGrid &grid);
std::string curve_csv(const std::vector<CurveRow> &rows);

}  // namespace qampenc
