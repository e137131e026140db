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

#include "qampenc/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include <json.hpp>

#include "qampenc/errors.hpp"

namespace qampenc {

namespace {

constexpr double kPi = std::numbers::pi;

int log2_exact(std::size_t N) {
  int n = 0;
  while ((std::size_t{1} << n) < N) ++n;
  if ((std::size_t{1} << n) != N) {
    throw BadShapeError("length " + std::to_string(N) +
                        " is not a power of two");
  }
  return n;
}

/** Rotation ladder angles phi_0 = 2pi, phi_l = pi 2^-l. */
double ladder_angle(int l) {
  return l == 0 ? 2.0 * kPi : kPi / static_cast<double>(1L << l);
}

/** Phase ladder angles 2pi 2^-l for the fraction columns l >= 1. */
double phase_ladder_angle(int l) {
  return 2.0 * kPi / static_cast<double>(1L << l);
}

class PlanBuilder {
 public:
  PlanBuilder(RegisterLayout layout) : layout_(layout) {}

  EncodingPlan build(const std::vector<std::size_t> &entries,
                     const BinaryAngleMatrix *rows,
                     const BinaryAngleMatrix *phases, const long *ladder_row) {
    EncodingPlan plan;
    plan.layout = layout_;
    plan.has_phases = phases != nullptr;
    plan.has_ladder = ladder_row != nullptr;

    emit_initial(plan);
    if (ladder_row != nullptr) emit_ladder(plan, *ladder_row);

    const int M = layout_.M;
    const int R = layout_.R;
    for (int i = 0; i < R; ++i) {
      const std::size_t begin = static_cast<std::size_t>(i) * M;
      const std::size_t end =
          std::min(begin + M, static_cast<std::size_t>(entries.size()));
      emit_chunk(plan, i, entries, begin, end, *rows, phases);
    }

    emit_final(plan);
    return plan;
  }

 private:
  using Gates = std::vector<GateSpec>;

  /**
   * Fan-out of SYS into the index registers as a doubling tree: registers
   * that already hold a copy of k serve as sources for later waves, so no
   * ancillas are needed and the depth is ceil(log2(M+1)). The copies are
   * made while the index registers are still zero; the X layer that turns
   * them into 1^n (+) k comes afterwards, which is the mirror image of the
   * textbook X-then-XOR order with the same end state.
   */
  Gates fanout_tree() const {
    Gates gates;
    const int M = layout_.M;
    // holder p = 0 is SYS, holder p >= 1 is I_{p-1}
    auto holder_qubit = [&](int p, int b) {
      return p == 0 ? layout_.sys(b) : layout_.index(p - 1, b);
    };
    for (int p = 1; p <= M; ++p) {
      int msb = 1;
      while (msb * 2 <= p) msb *= 2;
      const int src = p - msb;
      for (int b = 0; b < layout_.n; ++b) {
        gates.push_back(make_cx(holder_qubit(src, b), holder_qubit(p, b)));
      }
    }
    return gates;
  }

  Gates x_layer() const {
    Gates gates;
    for (int j = 0; j < layout_.M; ++j) {
      for (int b = 0; b < layout_.n; ++b) {
        gates.push_back(make_x(layout_.index(j, b)));
      }
    }
    return gates;
  }

  void emit_initial(EncodingPlan &plan) const {
    Gates h;
    for (int b = 0; b < layout_.n; ++b) h.push_back(make_h(layout_.sys(b)));
    plan.segments.push_back({"initial.h", std::move(h)});
    plan.segments.push_back({"initial.xor", fanout_tree()});
    plan.segments.push_back({"initial.x", x_layer()});
  }

  void emit_final(EncodingPlan &plan) const {
    plan.segments.push_back({"final.x", x_layer()});
    Gates tree = fanout_tree();
    std::reverse(tree.begin(), tree.end());
    plan.segments.push_back({"final.xor", std::move(tree)});
  }

  void emit_ladder(EncodingPlan &plan, long ladder_row) const {
    Gates gates;
    const int L = layout_.L;
    const bool negative = ladder_row < 0;
    const unsigned long mag = static_cast<unsigned long>(
        negative ? -ladder_row : ladder_row);
    if (negative) gates.push_back(make_ry(ladder_angle(0), layout_.flag()));
    for (int l = 1; l < L; ++l) {
      if ((mag >> (L - 1 - l)) & 1) {
        gates.push_back(make_ry(ladder_angle(l), layout_.flag()));
      }
    }
    plan.segments.push_back({"ladder", std::move(gates)});
  }

  Gates load_index(const std::vector<std::size_t> &entries, std::size_t begin,
                   std::size_t end) const {
    Gates gates;
    for (std::size_t e = begin; e < end; ++e) {
      const int j = static_cast<int>(e - begin);
      const std::size_t g = entries[e];
      for (int b = 0; b < layout_.n; ++b) {
        if ((g >> b) & 1) gates.push_back(make_x(layout_.index(j, b)));
      }
    }
    return gates;
  }

  Gates and_layer(std::size_t begin, std::size_t end) const {
    Gates gates;
    for (std::size_t e = begin; e < end; ++e) {
      const int j = static_cast<int>(e - begin);
      std::vector<int> controls;
      for (int b = 0; b < layout_.n; ++b) {
        controls.push_back(layout_.index(j, b));
      }
      std::vector<int> work;
      for (int t = 0; t < layout_.toffoli_work_per_register(); ++t) {
        work.push_back(layout_.toffoli_work(j, t));
      }
      gates.push_back(
          make_mcx(std::move(controls), layout_.parity(j), std::move(work)));
    }
    return gates;
  }

  /** Parity-controlled row loads onto the fan-in slots, then the
   * compression tree XORs every slot into CTRL (slot 0). */
  Gates mtc(const std::vector<std::size_t> &entries, std::size_t begin,
            std::size_t end, const BinaryAngleMatrix &rows) const {
    Gates gates;
    for (std::size_t e = begin; e < end; ++e) {
      const int j = static_cast<int>(e - begin);
      const std::size_t g = entries[e];
      const int slot = j / 2;
      for (int l = 0; l < layout_.L; ++l) {
        if (rows.bit(g, l)) {
          gates.push_back(
              make_cx(layout_.parity(j), layout_.fanin_slot(slot, l)));
        }
      }
    }
    const int slots =
        static_cast<int>((end - begin + 1) / 2);  // ceil(m/2), m >= 1
    for (int step = 1; step < slots; step *= 2) {
      for (int t = 0; t + step < slots; t += 2 * step) {
        for (int l = 0; l < layout_.L; ++l) {
          gates.push_back(make_cx(layout_.fanin_slot(t + step, l),
                                  layout_.fanin_slot(t, l)));
        }
      }
    }
    return gates;
  }

  Gates rotation_ladder() const {
    Gates gates;
    for (int l = 0; l < layout_.L; ++l) {
      gates.push_back(
          make_ry(ladder_angle(l), layout_.flag(), {layout_.ctrl(l)}));
    }
    return gates;
  }

  Gates phase_ladder() const {
    Gates gates;
    for (int l = 1; l < layout_.L; ++l) {
      gates.push_back(
          make_phase(phase_ladder_angle(l), layout_.flag(), {layout_.ctrl(l)}));
    }
    return gates;
  }

  static Gates reversed(Gates gates) {
    std::reverse(gates.begin(), gates.end());
    return gates;
  }

  void emit_chunk(EncodingPlan &plan, int i,
                  const std::vector<std::size_t> &entries, std::size_t begin,
                  std::size_t end, const BinaryAngleMatrix &rows,
                  const BinaryAngleMatrix *phases) const {
    const std::string prefix = "chunk" + std::to_string(i) + ".";
    auto seg = [&](const std::string &name, Gates gates) {
      plan.segments.push_back({prefix + name, std::move(gates)});
    };
    seg("load_index", load_index(entries, begin, end));
    seg("and", and_layer(begin, end));
    seg("mtc", mtc(entries, begin, end, rows));
    seg("rot", rotation_ladder());
    seg("mtc_dag", reversed(mtc(entries, begin, end, rows)));
    if (phases != nullptr) {
      seg("mtc_phi", mtc(entries, begin, end, *phases));
      seg("phase", phase_ladder());
      seg("mtc_phi_dag", reversed(mtc(entries, begin, end, *phases)));
    }
    seg("and_dag", reversed(and_layer(begin, end)));
    seg("load_index_dag", reversed(load_index(entries, begin, end)));
  }

  RegisterLayout layout_;
};

}  // namespace

std::vector<GateSpec> EncodingPlan::all_gates() const {
  std::vector<GateSpec> gates;
  gates.reserve(gate_count());
  for (const auto &seg : segments) {
    gates.insert(gates.end(), seg.gates.begin(), seg.gates.end());
  }
  return gates;
}

std::size_t EncodingPlan::gate_count() const {
  std::size_t count = 0;
  for (const auto &seg : segments) count += seg.gates.size();
  return count;
}

EncodingPlan build_plan(const BinaryAngleMatrix &B, int M,
                        const BinaryAngleMatrix *phases) {
  const std::size_t N = B.rows();
  if (M < 1 || static_cast<std::size_t>(M) > N) {
    throw BadParallelismError("M=" + std::to_string(M) +
                              " outside [1, N=" + std::to_string(N) + "]");
  }
  if (phases != nullptr && (phases->rows() != N ||
                            phases->bits_per_angle() != B.bits_per_angle())) {
    throw BadShapeError("phase matrix shape does not match B");
  }
  RegisterLayout layout;
  layout.n = log2_exact(N);
  layout.N = N;
  layout.M = M;
  layout.L = B.bits_per_angle();
  layout.R = static_cast<int>((N + M - 1) / static_cast<std::size_t>(M));

  std::vector<std::size_t> entries(N);
  for (std::size_t g = 0; g < N; ++g) entries[g] = g;
  return PlanBuilder(layout).build(entries, &B, phases, nullptr);
}

EncodingPlan mode_shift_plan(const AngleVector &theta_hat, int M, int L) {
  const std::size_t N = theta_hat.size();
  if (M < 1 || static_cast<std::size_t>(M) > N) {
    throw BadParallelismError("M=" + std::to_string(M) +
                              " outside [1, N=" + std::to_string(N) + "]");
  }
  const ModeShift shift = compress_mode_shift(theta_hat);

  std::vector<std::size_t> entries;
  for (std::size_t g = 0; g < N; ++g) {
    if (shift.shifted.thetas[g] != 0.0) entries.push_back(g);
  }
  const std::size_t S = entries.size();
  const int M_eff = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(M), std::max<std::size_t>(S, 1)));

  RegisterLayout layout;
  layout.n = log2_exact(N);
  layout.N = N;
  layout.M = S == 0 ? 0 : M_eff;
  layout.L = L;
  layout.R = S == 0 ? 0
                    : static_cast<int>((S + M_eff - 1) /
                                       static_cast<std::size_t>(M_eff));

  // Shifted values can fall outside [-1, 1]; quantize_theta saturates them.
  const BinaryAngleMatrix shifted_B = quantize_theta(shift.shifted, L);
  const long mode_scaled =
      static_cast<long>(std::lround(shift.mode * (1L << (L - 1))));

  return PlanBuilder(layout).build(entries, &shifted_B, nullptr, &mode_scaled);
}

namespace {

int bits_words(int qubits) { return (qubits + 63) / 64; }

struct BranchGateOps {
  static bool controls_set(const Branch &b, const GateSpec &g) {
    for (int c : g.controls) {
      if (!b.bit(c)) return false;
    }
    return true;
  }

  static void apply(Branch &b, const GateSpec &g, int flag_qubit, int n) {
    if (g.classical_condition.has_value() && !*g.classical_condition) return;
    if (!controls_set(b, g)) return;
    switch (g.kind) {
      case GateKind::X: {
        const int t = g.targets[0];
        if (t == flag_qubit) {
          std::swap(b.a0, b.a1);
        } else if (t < n) {
          throw InternalError("branch simulator cannot flip a SYS qubit");
        } else {
          b.flip(t);
        }
        break;
      }
      case GateKind::RY: {
        if (g.targets[0] != flag_qubit) {
          throw InternalError("branch simulator: RY must target FLAG");
        }
        const double c = std::cos(g.angle / 2.0);
        const double s = std::sin(g.angle / 2.0);
        const auto a0 = b.a0;
        const auto a1 = b.a1;
        b.a0 = c * a0 - s * a1;
        b.a1 = s * a0 + c * a1;
        break;
      }
      case GateKind::Phase: {
        const std::complex<double> ph = std::polar(1.0, g.angle);
        if (g.targets[0] == flag_qubit) {
          b.a1 *= ph;
        } else if (b.bit(g.targets[0])) {
          b.phase *= ph;
        }
        break;
      }
      case GateKind::Z: {
        if (g.targets[0] == flag_qubit) {
          b.a1 = -b.a1;
        } else if (b.bit(g.targets[0])) {
          b.phase = -b.phase;
        }
        break;
      }
      case GateKind::Swap: {
        const int a = g.targets[0];
        const int t = g.targets[1];
        if (a == flag_qubit || t == flag_qubit) {
          throw InternalError("branch simulator: SWAP with FLAG unsupported");
        }
        const bool ba = b.bit(a);
        const bool bt = b.bit(t);
        if (ba != bt) {
          b.flip(a);
          b.flip(t);
        }
        break;
      }
      case GateKind::H:
        throw InternalError(
            "branch simulator supports H only as the leading SYS layer");
    }
  }
};

void apply_segment(BranchState &state, const PlanSegment &seg, int n,
                   int threads) {
  auto run = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      for (const auto &g : seg.gates) {
        BranchGateOps::apply(state.branches[i], g, state.flag_qubit, n);
      }
    }
  };
  const std::size_t count = state.branches.size();
  if (threads <= 1 || count < 64) {
    run(0, count);
    return;
  }
  const int workers = std::min<int>(threads, static_cast<int>(count));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  const std::size_t step = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::size_t lo = w * step;
    const std::size_t hi = std::min(count, lo + step);
    if (lo >= hi) break;
    pool.emplace_back([&, w, lo, hi] {
      try {
        run(lo, hi);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto &t : pool) t.join();
  for (const auto &e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

/** psi-checkpoint label for single-chunk plans, empty if none. */
std::string psi_label(const EncodingPlan &plan, const std::string &segment) {
  if (plan.layout.R != 1 || plan.has_ladder) return {};
  if (segment == "initial.h") return "psi1";
  if (segment == "initial.x") return "psi2";
  if (segment == "chunk0.load_index") return "psi3";
  if (segment == "chunk0.and") return "psi4";
  if (segment == "chunk0.mtc") return "psi5";
  if (segment == "chunk0.rot") return "psi6";
  if (segment == "final.xor") return "psi8";
  return {};
}

}  // namespace

ReducedOutput make_reduced_output(std::vector<std::complex<double>> psi_full,
                                  int n) {
  const std::size_t N = std::size_t{1} << n;
  if (psi_full.size() != 2 * N) {
    throw BadShapeError("reduced state must have 2^(n+1) amplitudes");
  }
  ReducedOutput out;
  double good = 0.0, bad = 0.0;
  for (std::size_t k = 0; k < N; ++k) {
    bad += std::norm(psi_full[k]);
    good += std::norm(psi_full[N + k]);
  }
  out.rho = good;
  out.psi_G.resize(N);
  out.psi_B.resize(N);
  const double ig = good > 0 ? 1.0 / std::sqrt(good) : 0.0;
  const double ib = bad > 0 ? 1.0 / std::sqrt(bad) : 0.0;
  for (std::size_t k = 0; k < N; ++k) {
    out.psi_B[k] = psi_full[k] * ib;
    out.psi_G[k] = psi_full[N + k] * ig;
  }
  out.psi_full = std::move(psi_full);
  return out;
}

ReducedOutput run_branch_sim(const EncodingPlan &plan,
                             std::vector<Checkpoint> *checkpoints,
                             int threads) {
  const RegisterLayout &layout = plan.layout;
  const std::size_t N = layout.N;
  const int n = layout.n;
  const int words = bits_words(layout.total_qubits());

  // The plan must begin with the H layer that creates the N branches.
  if (plan.segments.empty() || plan.segments.front().label != "initial.h") {
    throw InternalError("plan does not start with the H layer");
  }

  BranchState state;
  state.qubits = layout.total_qubits();
  state.flag_qubit = layout.flag();
  state.global_scale = 1.0 / std::sqrt(static_cast<double>(N));
  state.branches.resize(N);
  for (std::size_t k = 0; k < N; ++k) {
    Branch &b = state.branches[k];
    b.key = k;
    b.bits.assign(words, 0);
    for (int q = 0; q < n; ++q) {
      if ((k >> q) & 1) b.flip(q);
    }
  }

  if (checkpoints != nullptr) {
    BranchState psi0;
    psi0.qubits = state.qubits;
    psi0.flag_qubit = state.flag_qubit;
    psi0.global_scale = 1.0;
    psi0.branches.resize(1);
    psi0.branches[0].bits.assign(words, 0);
    checkpoints->push_back({"psi0", std::move(psi0)});
  }

  for (const auto &seg : plan.segments) {
    if (seg.label != "initial.h") {
      apply_segment(state, seg, n, threads);
    }
    if (checkpoints != nullptr) {
      const std::string psi = psi_label(plan, seg.label);
      checkpoints->push_back({psi.empty() ? seg.label : psi, state});
      if (psi == "psi6") checkpoints->push_back({"psi7", state});
    }
  }

  // Uncompute invariant: every non-SYS bit must be clear in every branch.
  for (const auto &b : state.branches) {
    for (int q = n; q < layout.total_qubits(); ++q) {
      if (q != layout.flag() && b.bit(q)) {
        throw UncomputeLeakError("ancilla qubit " + std::to_string(q) +
                                 " left set in branch " +
                                 std::to_string(b.key));
      }
    }
  }

  std::vector<std::complex<double>> psi_full(2 * N);
  for (const auto &b : state.branches) {
    psi_full[b.key] = state.global_scale * b.phase * b.a0;
    psi_full[N + b.key] = state.global_scale * b.phase * b.a1;
  }
  return make_reduced_output(std::move(psi_full), n);
}

DenseState run_dense_plan(const EncodingPlan &plan) {
  const int q = plan.layout.total_qubits();
  if (q > DenseState::kMaxQubits) {
    throw TooLargeError("plan needs " + std::to_string(q) +
                        " qubits; dense oracle capped at " +
                        std::to_string(DenseState::kMaxQubits));
  }
  DenseState state(q);
  for (const auto &seg : plan.segments) {
    for (const auto &g : seg.gates) {
      for (const auto &e : expand_mcx(g)) apply_gate(state, e);
    }
  }
  return state;
}

DenseReduction reduce_dense(const DenseState &state,
                            const RegisterLayout &layout) {
  const int n = layout.n;
  const std::size_t N = layout.N;
  const std::uint64_t sys_mask = (std::uint64_t{1} << n) - 1;
  const std::uint64_t flag_bit = std::uint64_t{1} << layout.flag();

  DenseReduction red;
  red.psi_full.assign(2 * N, {0.0, 0.0});
  const auto &amps = state.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const std::uint64_t ancilla = i & ~(sys_mask | flag_bit);
    if (ancilla == 0) {
      const std::size_t k = i & sys_mask;
      const std::size_t f = (i & flag_bit) ? 1 : 0;
      red.psi_full[f * N + k] = amps[i];
    } else {
      red.ancilla_leak += std::norm(amps[i]);
    }
  }
  return red;
}

ReducedOutput encode_complex(const ComplexSplit &split, int M) {
  EncodingPlan plan = build_plan(split.B_R, M, &split.B_phi);
  return run_branch_sim(plan);
}

std::string reduced_output_json(const ReducedOutput &out) {
  nlohmann::json j;
  j["rho"] = out.rho;
  auto vec = [](const std::vector<std::complex<double>> &v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto &c : v) arr.push_back({c.real(), c.imag()});
    return arr;
  };
  j["psi_G"] = vec(out.psi_G);
  j["psi_B"] = vec(out.psi_B);
  return j.dump();
}

}  // namespace qampenc
