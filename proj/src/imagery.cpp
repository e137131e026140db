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

#include "qampenc/imagery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "qampenc/errors.hpp"

namespace qampenc {

namespace {

/** Next header token, skipping whitespace and '#' comments. */
std::string next_token(const std::string &bytes, std::size_t &pos) {
  while (pos < bytes.size()) {
    const char c = bytes[pos];
    if (c == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
    } else {
      break;
    }
  }
  if (pos >= bytes.size()) {
    throw ParseError("PGM header truncated at byte " + std::to_string(pos));
  }
  const std::size_t start = pos;
  while (pos < bytes.size() &&
         !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    ++pos;
  }
  return bytes.substr(start, pos - start);
}

int parse_header_int(const std::string &bytes, std::size_t &pos,
                     const char *what) {
  const std::size_t at = pos;
  const std::string tok = next_token(bytes, pos);
  try {
    return std::stoi(tok);
  } catch (const std::exception &) {
    throw ParseError(std::string("PGM: bad ") + what + " at byte " +
                     std::to_string(at));
  }
}

}  // namespace

GrayImage load_pgm(const std::string &bytes) {
  std::size_t pos = 0;
  const std::string magic = next_token(bytes, pos);
  if (magic != "P2" && magic != "P5") {
    throw ParseError("unsupported PNM magic '" + magic +
                     "' (only P2/P5 grayscale)");
  }
  GrayImage img;
  img.width = parse_header_int(bytes, pos, "width");
  img.height = parse_header_int(bytes, pos, "height");
  img.maxval = parse_header_int(bytes, pos, "maxval");
  if (img.width <= 0 || img.height <= 0) {
    throw ParseError("PGM: non-positive dimensions");
  }
  if (img.maxval <= 0 || img.maxval > 65535) {
    throw ParseError("PGM: maxval out of range [1, 65535]");
  }
  const std::size_t count =
      static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
  img.pixels.reserve(count);

  if (magic == "P2") {
    for (std::size_t i = 0; i < count; ++i) {
      const int v = parse_header_int(bytes, pos, "sample");
      if (v < 0 || v > img.maxval) {
        throw ParseError("PGM: sample " + std::to_string(v) +
                         " exceeds maxval");
      }
      img.pixels.push_back(static_cast<std::uint16_t>(v));
    }
  } else {
    // exactly one whitespace byte after maxval, then raw samples
    if (pos >= bytes.size() ||
        !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
      throw ParseError("PGM: missing delimiter after maxval at byte " +
                       std::to_string(pos));
    }
    ++pos;
    const int bytes_per = img.maxval > 255 ? 2 : 1;
    const std::size_t need = count * bytes_per;
    if (bytes.size() - pos < need) {
      throw ParseError("PGM: payload truncated at byte " +
                       std::to_string(bytes.size()) + " (need " +
                       std::to_string(pos + need) + ")");
    }
    for (std::size_t i = 0; i < count; ++i) {
      std::uint16_t v;
      if (bytes_per == 1) {
        v = static_cast<std::uint8_t>(bytes[pos + i]);
      } else {
        // big-endian per the format
        v = static_cast<std::uint16_t>(
            (static_cast<std::uint8_t>(bytes[pos + 2 * i]) << 8) |
            static_cast<std::uint8_t>(bytes[pos + 2 * i + 1]));
      }
      if (v > img.maxval) {
        throw ParseError("PGM: sample exceeds maxval at index " +
                         std::to_string(i));
      }
      img.pixels.push_back(v);
    }
  }
  return img;
}

GrayImage load_pgm_file(const std::string &path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open image: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return load_pgm(ss.str());
}

std::string write_pgm(const GrayImage &img, bool binary) {
  std::ostringstream out;
  out << (binary ? "P5" : "P2") << "\n"
      << img.width << " " << img.height << "\n"
      << img.maxval << "\n";
  if (binary) {
    const bool wide = img.maxval > 255;
    for (std::uint16_t v : img.pixels) {
      if (wide) out.put(static_cast<char>(v >> 8));
      out.put(static_cast<char>(v & 0xFF));
    }
  } else {
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
      out << img.pixels[i]
          << ((i + 1) % img.width == 0 ? '\n' : ' ');
    }
  }
  return out.str();
}

DensityGrid sector_density(const GrayImage &img, int n_s) {
  if (n_s < 1 || n_s > std::min(img.width, img.height)) {
    throw BadGridError("grid size " + std::to_string(n_s) +
                       " outside [1, " +
                       std::to_string(std::min(img.width, img.height)) + "]");
  }
  DensityGrid grid;
  grid.n_s = n_s;
  grid.rho.reserve(static_cast<std::size_t>(n_s) * n_s);
  grid.sector_dims.reserve(static_cast<std::size_t>(n_s) * n_s);

  const int row_base = img.height / n_s, row_rem = img.height % n_s;
  const int col_base = img.width / n_s, col_rem = img.width % n_s;

  double sum = 0.0;
  int defined = 0;
  int r0 = 0;
  for (int sr = 0; sr < n_s; ++sr) {
    const int rows = row_base + (sr < row_rem ? 1 : 0);
    int c0 = 0;
    for (int sc = 0; sc < n_s; ++sc) {
      const int cols = col_base + (sc < col_rem ? 1 : 0);
      // Density is scale-free, so normalization of the flattened sector
      // drops out; work on the raw values.
      double max_sq = 0.0;
      double sum_sq = 0.0;
      for (int r = r0; r < r0 + rows; ++r) {
        for (int c = c0; c < c0 + cols; ++c) {
          const double v = img.at(r, c);
          sum_sq += v * v;
          max_sq = std::max(max_sq, v * v);
        }
      }
      grid.sector_dims.emplace_back(rows, cols);
      if (max_sq == 0.0) {
        grid.rho.push_back(std::numeric_limits<double>::quiet_NaN());
        ++grid.undefined_count;
      } else {
        const double rho =
            sum_sq / (max_sq * static_cast<double>(rows) * cols);
        grid.rho.push_back(rho);
        sum += rho;
        ++defined;
      }
      c0 += cols;
    }
    r0 += rows;
  }
  grid.mean_rho = defined > 0 ? sum / defined : 0.0;
  return grid;
}

std::vector<CurveRow> density_scaling_curve(const GrayImage &img,
                                            const std::vector<int> &n_s_list) {
  std::vector<CurveRow> rows;
  for (int n_s : n_s_list) {
    CurveRow row;
    row.n_s = n_s;
    const DensityGrid grid = sector_density(img, n_s);
    row.mean_rho = grid.mean_rho;
    row.sector_size = (static_cast<std::size_t>(img.width) * img.height) /
                      (static_cast<std::size_t>(n_s) * n_s);
    rows.push_back(row);
  }
  if (!rows.empty()) {
    // Anchor the comparison laws at the largest sector size (first row of
    // an ascending n_s list).
    const double x0 = static_cast<double>(rows.front().sector_size);
    const double y0 = rows.front().mean_rho;
    const double a = y0 * std::log(x0);
    const double b = y0 * std::sqrt(x0);
    for (auto &row : rows) {
      const double x = static_cast<double>(row.sector_size);
      row.c_log = a / std::log(x);
      row.c_sqrt = b / std::sqrt(x);
    }
  }
  return rows;
}

std::string heatmap_csv(const DensityGrid &grid) {
  std::string out = "row,col,rho\n";
  char buf[96];
  for (int r = 0; r < grid.n_s; ++r) {
    for (int c = 0; c < grid.n_s; ++c) {
      const double rho = grid.at(r, c);
      if (std::isnan(rho)) {
        std::snprintf(buf, sizeof(buf), "%d,%d,undefined\n", r, c);
      } else {
        std::snprintf(buf, sizeof(buf), "%d,%d,%.17g\n", r, c, rho);
      }
      out += buf;
    }
  }
  return out;
}

std::string curve_csv(const std::vector<CurveRow> &rows) {
  std::string out = "sector_size,mean_rho,c_log,c_sqrt\n";
  char buf[160];
  for (const auto &row : rows) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g\n", row.sector_size,
                  row.mean_rho, row.c_log, row.c_sqrt);
    out += buf;
  }
  return out;
}

}  // namespace qampenc
