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

#include "qampenc/simcore.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "qampenc/errors.hpp"

namespace qampenc {

namespace {

std::uint64_t controls_mask(const GateSpec &gate) {
  std::uint64_t mask = 0;
  for (int c : gate.controls) mask |= std::uint64_t{1} << c;
  return mask;
}

void check_gate(const DenseState &state, const GateSpec &gate) {
  auto check = [&](int q) {
    if (q < 0 || q >= state.qubits()) {
      throw BadIndexError("qubit index " + std::to_string(q) +
                          " out of range [0, " +
                          std::to_string(state.qubits()) + ")");
    }
  };
  for (int q : gate.targets) check(q);
  for (int q : gate.controls) {
    check(q);
    for (int t : gate.targets) {
      if (t == q) {
        throw BadIndexError("control and target sets overlap on qubit " +
                            std::to_string(q));
      }
    }
  }
  const std::size_t expected = gate.kind == GateKind::Swap ? 2 : 1;
  if (gate.targets.size() != expected) {
    throw BadIndexError("gate expects " + std::to_string(expected) +
                        " target(s)");
  }
}

}  // namespace

GateSpec make_x(int target) { return {GateKind::X, {target}, {}, 0.0, {}, {}}; }

GateSpec make_cx(int control, int target) {
  return {GateKind::X, {target}, {control}, 0.0, {}, {}};
}

GateSpec make_mcx(std::vector<int> controls, int target,
                  std::vector<int> work) {
  return {GateKind::X, {target}, std::move(controls), 0.0, {},
          std::move(work)};
}

GateSpec make_h(int target) { return {GateKind::H, {target}, {}, 0.0, {}, {}}; }

GateSpec make_ry(double angle, int target, std::vector<int> controls) {
  return {GateKind::RY, {target}, std::move(controls), angle, {}, {}};
}

GateSpec make_phase(double angle, int target, std::vector<int> controls) {
  return {GateKind::Phase, {target}, std::move(controls), angle, {}, {}};
}

GateSpec make_z(int target, std::vector<int> controls) {
  return {GateKind::Z, {target}, std::move(controls), 0.0, {}, {}};
}

GateSpec make_swap(int a, int b) {
  return {GateKind::Swap, {a, b}, {}, 0.0, {}, {}};
}

DenseState::DenseState(int qubits) : qubits_(qubits) {
  if (qubits < 1) throw BadIndexError("need at least one qubit");
  if (qubits > kMaxQubits) {
    throw TooLargeError("dense simulation capped at " +
                        std::to_string(kMaxQubits) +
                        " qubits; use the branch simulator");
  }
  amps_.assign(std::size_t{1} << qubits, {0.0, 0.0});
  amps_[0] = {1.0, 0.0};
}

DenseState::DenseState(int qubits, std::vector<std::complex<double>> amplitudes)
    : DenseState(qubits) {
  if (amplitudes.size() != amps_.size()) {
    throw BadShapeError("amplitude count does not match qubit count");
  }
  amps_ = std::move(amplitudes);
}

double DenseState::norm_squared() const {
  double s = 0.0;
  for (const auto &a : amps_) s += std::norm(a);
  return s;
}

void DenseState::scale(std::complex<double> factor) {
  for (auto &a : amps_) a *= factor;
}

void apply_gate(DenseState &state, const GateSpec &gate) {
  if (gate.classical_condition.has_value() && !*gate.classical_condition) {
    return;
  }
  check_gate(state, gate);
  auto &amps = state.amplitudes();
  const std::uint64_t cmask = controls_mask(gate);
  const std::size_t dim = amps.size();

  switch (gate.kind) {
    case GateKind::X: {
      const std::uint64_t tbit = std::uint64_t{1} << gate.targets[0];
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & cmask) == cmask && (i & tbit) == 0) {
          std::swap(amps[i], amps[i | tbit]);
        }
      }
      break;
    }
    case GateKind::H: {
      const std::uint64_t tbit = std::uint64_t{1} << gate.targets[0];
      const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & cmask) == cmask && (i & tbit) == 0) {
          const auto a0 = amps[i];
          const auto a1 = amps[i | tbit];
          amps[i] = (a0 + a1) * inv_sqrt2;
          amps[i | tbit] = (a0 - a1) * inv_sqrt2;
        }
      }
      break;
    }
    case GateKind::Z: {
      const std::uint64_t tbit = std::uint64_t{1} << gate.targets[0];
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & cmask) == cmask && (i & tbit)) amps[i] = -amps[i];
      }
      break;
    }
    case GateKind::RY: {
      const std::uint64_t tbit = std::uint64_t{1} << gate.targets[0];
      const double c = std::cos(gate.angle / 2.0);
      const double s = std::sin(gate.angle / 2.0);
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & cmask) == cmask && (i & tbit) == 0) {
          const auto a0 = amps[i];
          const auto a1 = amps[i | tbit];
          amps[i] = c * a0 - s * a1;
          amps[i | tbit] = s * a0 + c * a1;
        }
      }
      break;
    }
    case GateKind::Phase: {
      const std::uint64_t tbit = std::uint64_t{1} << gate.targets[0];
      const std::complex<double> phase = std::polar(1.0, gate.angle);
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & cmask) == cmask && (i & tbit)) amps[i] *= phase;
      }
      break;
    }
    case GateKind::Swap: {
      const std::uint64_t abit = std::uint64_t{1} << gate.targets[0];
      const std::uint64_t bbit = std::uint64_t{1} << gate.targets[1];
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & cmask) == cmask && (i & abit) && (i & bbit) == 0) {
          std::swap(amps[i], amps[(i & ~abit) | bbit]);
        }
      }
      break;
    }
  }
}

void apply_circuit(DenseState &state, const std::vector<GateSpec> &gates) {
  for (const auto &g : gates) apply_gate(state, g);
}

double probability_of(const DenseState &state, int qubit, int value) {
  if (qubit < 0 || qubit >= state.qubits()) {
    throw BadIndexError("qubit index out of range");
  }
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  double p = 0.0;
  const auto &amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (((i & bit) != 0) == (value != 0)) p += std::norm(amps[i]);
  }
  return p;
}

DenseState post_select(const DenseState &state, int qubit, int value) {
  const double p = probability_of(state, qubit, value);
  if (p <= 1e-14) {
    throw ImpossibleOutcomeError("post-selected branch has probability " +
                                 std::to_string(p));
  }
  DenseState out(state.qubits());
  auto &amps = out.amplitudes();
  const auto &in = state.amplitudes();
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  const double inv = 1.0 / std::sqrt(p);
  for (std::size_t i = 0; i < in.size(); ++i) {
    const bool keep = ((i & bit) != 0) == (value != 0);
    amps[i] = keep ? in[i] * inv : std::complex<double>{0.0, 0.0};
  }
  return out;
}

double fidelity(const std::vector<std::complex<double>> &a,
                const std::vector<std::complex<double>> &b) {
  if (a.size() != b.size()) {
    throw BadShapeError("fidelity: dimension mismatch (" +
                        std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()) + ")");
  }
  double na = 0.0, nb = 0.0;
  std::complex<double> dot{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) {
    na += std::norm(a[i]);
    nb += std::norm(b[i]);
    dot += std::conj(a[i]) * b[i];
  }
  if (na == 0.0 || nb == 0.0) {
    throw BadShapeError("fidelity: zero-norm state");
  }
  return std::norm(dot) / (na * nb);
}

double fidelity(const DenseState &a, const DenseState &b) {
  return fidelity(a.amplitudes(), b.amplitudes());
}

std::vector<GateSpec> expand_mcx(const GateSpec &gate) {
  if (gate.kind != GateKind::X || gate.controls.size() <= 2) {
    return {gate};
  }
  const std::size_t arity = gate.controls.size();
  if (gate.work.size() + 2 < arity) {
    throw BadIndexError("MCX with " + std::to_string(arity) +
                        " controls needs at least " +
                        std::to_string(arity - 2) + " work qubits");
  }

  // Balanced AND tree: combine nodes pairwise into work qubits until two
  // remain, let the root Toffoli hit the real target, then uncompute.
  std::vector<GateSpec> compute;
  std::vector<int> nodes = gate.controls;
  std::size_t next_work = 0;
  while (nodes.size() > 2) {
    std::vector<int> parents;
    std::size_t i = 0;
    for (; i + 1 < nodes.size(); i += 2) {
      const int w = gate.work[next_work++];
      compute.push_back(make_mcx({nodes[i], nodes[i + 1]}, w));
      parents.push_back(w);
    }
    if (i < nodes.size()) parents.push_back(nodes[i]);
    nodes = std::move(parents);
  }

  std::vector<GateSpec> out = compute;
  out.push_back(make_mcx({nodes[0], nodes[1]}, gate.targets[0]));
  out.insert(out.end(), compute.rbegin(), compute.rend());
  if (gate.classical_condition.has_value()) {
    for (auto &g : out) g.classical_condition = gate.classical_condition;
  }
  return out;
}

std::vector<GateSpec> expand_circuit(const std::vector<GateSpec> &gates) {
  std::vector<GateSpec> out;
  out.reserve(gates.size());
  for (const auto &g : gates) {
    auto expanded = expand_mcx(g);
    out.insert(out.end(), expanded.begin(), expanded.end());
  }
  return out;
}

std::vector<GateSpec> inverse_circuit(const std::vector<GateSpec> &gates) {
  std::vector<GateSpec> out(gates.rbegin(), gates.rend());
  for (auto &g : out) {
    if (g.kind == GateKind::RY || g.kind == GateKind::Phase) {
      g.angle = -g.angle;
    }
  }
  return out;
}

namespace {

std::string kind_name(const GateSpec &gate) {
  switch (gate.kind) {
    case GateKind::X:
      if (gate.controls.size() == 1) return "CX";
      if (gate.controls.size() >= 2) return "MCX";
      return "X";
    case GateKind::H:
      return "H";
    case GateKind::Z:
      return gate.controls.empty() ? "Z" : "CZ";
    case GateKind::RY:
      return gate.controls.empty() ? "RY" : "CRY";
    case GateKind::Phase:
      return gate.controls.empty() ? "PHASE" : "CPHASE";
    case GateKind::Swap:
      return "SWAP";
  }
  return "?";
}

GateKind kind_from_name(const std::string &name) {
  if (name == "X" || name == "CX" || name == "MCX") return GateKind::X;
  if (name == "H") return GateKind::H;
  if (name == "Z" || name == "CZ") return GateKind::Z;
  if (name == "RY" || name == "CRY") return GateKind::RY;
  if (name == "PHASE" || name == "CPHASE") return GateKind::Phase;
  if (name == "SWAP") return GateKind::Swap;
  throw ParseError("unknown gate kind: " + name);
}

std::string join_ints(const std::vector<int> &v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

std::vector<int> split_ints(const std::string &s) {
  std::vector<int> v;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t next = s.find(',', pos);
    if (next == std::string::npos) next = s.size();
    v.push_back(std::stoi(s.substr(pos, next - pos)));
    pos = next + 1;
  }
  return v;
}

}  // namespace

std::string dump_circuit(const std::vector<GateSpec> &gates) {
  std::string out;
  char buf[64];
  for (const auto &g : gates) {
    out += kind_name(g);
    out += " targets=" + join_ints(g.targets);
    out += " controls=" + join_ints(g.controls);
    std::snprintf(buf, sizeof(buf), "%.17g", g.angle);
    out += std::string(" angle=") + buf;
    if (g.classical_condition.has_value()) {
      out += std::string(" cond=") + (*g.classical_condition ? "1" : "0");
    }
    if (!g.work.empty()) {
      out += " work=" + join_ints(g.work);
    }
    out += '\n';
  }
  return out;
}

std::vector<GateSpec> parse_circuit(const std::string &text) {
  std::vector<GateSpec> gates;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string name;
    ls >> name;
    GateSpec g;
    g.kind = kind_from_name(name);
    std::string field;
    while (ls >> field) {
      const std::size_t eq = field.find('=');
      if (eq == std::string::npos) throw ParseError("bad field: " + field);
      const std::string key = field.substr(0, eq);
      const std::string value = field.substr(eq + 1);
      if (key == "targets") {
        g.targets = split_ints(value);
      } else if (key == "controls") {
        g.controls = split_ints(value);
      } else if (key == "angle") {
        g.angle = std::stod(value);
      } else if (key == "cond") {
        g.classical_condition = (value == "1");
      } else if (key == "work") {
        g.work = split_ints(value);
      } else {
        throw ParseError("unknown field: " + key);
      }
    }
    gates.push_back(std::move(g));
  }
  return gates;
}

std::string dump_statevector_json(
    const std::vector<std::complex<double>> &amps) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto &a : amps) {
    j.push_back({a.real(), a.imag()});
  }
  return j.dump();
}

std::vector<std::complex<double>> parse_statevector_json(
    const std::string &text) {
  nlohmann::json j = nlohmann::json::parse(text);
  std::vector<std::complex<double>> amps;
  amps.reserve(j.size());
  for (const auto &pair : j) {
    amps.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
  }
  return amps;
}

}  // namespace qampenc
