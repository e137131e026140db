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

#include "qampenc/preprocess_io.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "qampenc/errors.hpp"

namespace qampenc {

std::vector<std::complex<double>> read_vector_csv(std::istream &in) {
  std::vector<std::complex<double>> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // strip trailing CR from CRLF files
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(ls >> re)) {
      throw ParseError("CSV line " + std::to_string(lineno) +
                       ": expected a number");
    }
    if (ls >> comma) {
      if (comma != ',' || !(ls >> im)) {
        throw ParseError("CSV line " + std::to_string(lineno) +
                         ": expected `re` or `re,im`");
      }
    }
    values.emplace_back(re, im);
  }
  return values;
}

std::vector<std::complex<double>> read_vector_raw(std::istream &in) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError("missing raw header line");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(header);
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("bad raw header: ") + e.what());
  }
  if (!j.contains("n") || !j.contains("complex")) {
    throw ParseError("raw header must contain {\"n\": ..., \"complex\": ...}");
  }
  const std::size_t n = j["n"].get<std::size_t>();
  const bool is_complex = j["complex"].get<bool>();
  const std::size_t doubles = n * (is_complex ? 2 : 1);

  std::vector<double> payload(doubles);
  in.read(reinterpret_cast<char *>(payload.data()),
          static_cast<std::streamsize>(doubles * sizeof(double)));
  if (static_cast<std::size_t>(in.gcount()) != doubles * sizeof(double)) {
    throw ParseError("raw payload truncated: expected " +
                     std::to_string(doubles * sizeof(double)) + " bytes");
  }

  std::vector<std::complex<double>> values;
  values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (is_complex) {
      values.emplace_back(payload[2 * i], payload[2 * i + 1]);
    } else {
      values.emplace_back(payload[i], 0.0);
    }
  }
  return values;
}

std::vector<std::complex<double>> read_vector_file(const std::string &path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open input file: " + path);
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
    return read_vector_csv(f);
  }
  return read_vector_raw(f);
}

void write_vector_raw(std::ostream &out,
                      const std::vector<std::complex<double>> &values,
                      bool is_complex) {
  nlohmann::json header;
  header["n"] = values.size();
  header["complex"] = is_complex;
  out << header.dump() << "\n";
  for (const auto &v : values) {
    double re = v.real();
    out.write(reinterpret_cast<const char *>(&re), sizeof(double));
    if (is_complex) {
      double im = v.imag();
      out.write(reinterpret_cast<const char *>(&im), sizeof(double));
    }
  }
}

}  // namespace qampenc
