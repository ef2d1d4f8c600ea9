// Copyright 2026 The oneway Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oneway/compiler.hpp"

#include <algorithm>
#include <set>

#include "oneway/errors.hpp"
#include "oneway/choi.hpp"
#include "oneway/templates.hpp"

namespace oneway {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr int kSingleWidth = 4;
constexpr int kCnotWidth = 6;

/// σx^x σz^z with exponents that are parities of site outcomes.
struct SymbolicBits {
  Parity x;
  Parity z;
};

const GateTemplate& cached_hadamard() {
  static const GateTemplate t = hadamard_template();
  return t;
}
const GateTemplate& cached_phase() {
  static const GateTemplate t = phase_template();
  return t;
}
const GateTemplate& cached_wire(int width) {
  static const GateTemplate four = wire_template(kSingleWidth);
  static const GateTemplate six = wire_template(kCnotWidth);
  return width == kSingleWidth ? four : six;
}
const GateTemplate& cached_cnot(bool control_on_top) {
  static const GateTemplate top = bridged_cnot_template(true);
  static const GateTemplate bottom = bridged_cnot_template(false);
  return control_on_top ? top : bottom;
}

class Layout {
 public:
  Layout(std::size_t n, const CompileOptions& options) : options_(options), frame_(n) {
    for (std::size_t k = 0; k < n; ++k) {
      const Coord c{0, row(k)};
      sites_.insert(c);
      inputs_.push_back(c);
    }
    check_extent(0, n == 0 ? 0 : row(n - 1));
  }

  void add_gate(const Gate& gate) {
    std::visit(Overloaded{[&](const Cnot& c) {
                            for (const auto& step : distant_cnot(c.control, c.target)) add_adjacent_cnot(step);
                          },
                          [&](const Hadamard& h) { add_single(h.qubit, cached_hadamard()); },
                          [&](const PhaseS& s) { add_single(s.qubit, cached_phase()); },
                          [&](const Rotation& r) { add_rotation(r); }},
               gate);
  }

  MeasurementPattern finish() {
    MeasurementPattern p;
    p.graph = ClusterGraph::induced(std::vector<Coord>(sites_.begin(), sites_.end()));
    if (p.graph.edges().size() != edges_.size()) {
      throw CompileError("template footprints touch: the lattice has unplanned bonds");
    }
    p.assignments = std::move(assignments_);
    p.relabels = std::move(relabels_);
    p.inputs = inputs_;
    for (std::size_t k = 0; k < frame_.size(); ++k) p.outputs.push_back({x_, row(k)});
    const Coord anchor = p.assignments.empty() ? Coord{} : p.assignments.begin()->first;
    for (std::size_t k = 0; k < frame_.size(); ++k) {
      for (auto [parity, axis] : {std::pair{&frame_[k].x, FrameAxis::kX}, std::pair{&frame_[k].z, FrameAxis::kZ}}) {
        for (const auto& s : parity->sites) p.frame_rules.push_back({s, 1, static_cast<int>(k), axis});
        if (parity->constant) {
          p.frame_rules.push_back({anchor, 0, static_cast<int>(k), axis});
          p.frame_rules.push_back({anchor, 1, static_cast<int>(k), axis});
        }
      }
    }
    p.normalize_frame_rules();
    return p;
  }

 private:
  static int row(std::size_t k) { return 2 * static_cast<int>(k); }

  void check_extent(int x, int y) const {
    if (x + 1 > options_.max_grid || y + 1 > options_.max_grid) {
      throw CompileError("layout needs a " + std::to_string(x + 1) + "x" + std::to_string(y + 1) +
                         " grid, beyond max_grid " + std::to_string(options_.max_grid));
    }
  }

  Coord shift(const Coord& c, int dy) const { return {c.x + x_, c.y + dy}; }

  /// Copies the template's sites, bonds, bases and relabels into the layout.
  void stamp(const MeasurementPattern& t, int dy) {
    for (const auto& c : t.graph.sites()) {
      sites_.insert(shift(c, dy));
      check_extent(c.x + x_, c.y + dy);
    }
    for (const auto& [a, b] : t.graph.edges()) {
      if (!edges_.insert({shift(a, dy), shift(b, dy)}).second) {
        throw CompileError("bond placed twice at " + to_string(shift(a, dy)));
      }
    }
    for (const auto& [c, basis] : t.assignments) {
      BasisSpec moved = basis;
      if (auto* eq = std::get_if<Equatorial>(&moved)) {
        for (auto& d : eq->deps) d = shift(d, dy);
      }
      assignments_[shift(c, dy)] = moved;
    }
    for (const auto& [c, parity] : t.relabels) {
      Parity moved{{}, parity.constant};
      for (const auto& d : parity.sites) moved.toggle(shift(d, dy));
      relabels_[shift(c, dy)] = moved;
    }
  }

  /// XORs the template's own byproduct into the frame.
  void add_rules(const MeasurementPattern& t, int dy, const std::vector<std::size_t>& wires) {
    for (const auto& r : t.frame_rules) {
      auto& bits = frame_[wires.at(static_cast<std::size_t>(r.qubit))];
      Parity& target = r.axis == FrameAxis::kX ? bits.x : bits.z;
      target.toggle(shift(r.site, dy));
      if (r.outcome == 0) target.constant = !target.constant;
    }
  }

  /// Pushes the frame on `wires` through the template's Clifford.
  void conjugate(const CliffordMap& u, const std::vector<std::size_t>& wires) {
    std::vector<SymbolicBits> next(wires.size());
    for (std::size_t i = 0; i < wires.size(); ++i) {
      const SymbolicBits& old = frame_[wires[i]];
      const PauliString ix = u.conjugate(PauliString::single(wires.size(), i, 'X'));
      const PauliString iz = u.conjugate(PauliString::single(wires.size(), i, 'Z'));
      for (std::size_t j = 0; j < wires.size(); ++j) {
        if (ix.x(j)) next[j].x ^= old.x;
        if (ix.z(j)) next[j].z ^= old.x;
        if (iz.x(j)) next[j].x ^= old.z;
        if (iz.z(j)) next[j].z ^= old.z;
      }
    }
    for (std::size_t j = 0; j < wires.size(); ++j) frame_[wires[j]] = std::move(next[j]);
  }

  void pad_others(const std::vector<std::size_t>& busy, int width) {
    for (std::size_t k = 0; k < frame_.size(); ++k) {
      if (std::find(busy.begin(), busy.end(), k) != busy.end()) continue;
      const GateTemplate& w = cached_wire(width);
      stamp(w.pattern, row(k));
      add_rules(w.pattern, row(k), {k});
    }
  }

  void add_clifford(const GateTemplate& t, int dy, const std::vector<std::size_t>& wires) {
    stamp(t.pattern, dy);
    conjugate(*t.clifford, wires);
    add_rules(t.pattern, dy, wires);
    pad_others(wires, t.width);
    x_ += t.width;
  }

  void add_single(std::size_t q, const GateTemplate& t) { add_clifford(t, row(q), {q}); }

  void add_adjacent_cnot(const Cnot& c) {
    const bool on_top = c.control < c.target;
    const std::size_t upper = std::min(c.control, c.target);
    add_clifford(cached_cnot(on_top), row(upper), {c.control, c.target});
  }

  void add_rotation(const Rotation& r) {
    bool clifford_angles = true;
    for (double a : {r.angles.xi, r.angles.eta, r.angles.zeta}) clifford_angles &= pauli_quarter_turns(a) >= 0;
    if (options_.peephole && clifford_angles) {
      add_single(r.qubit, clifford_rotation_template(r.angles));
      return;
    }
    // The incoming byproduct is absorbed by flipping angle signs, so it
    // passes through the rotation unchanged.
    const GateTemplate t = rotation_template(r.angles);
    const int dy = row(r.qubit);
    stamp(t.pattern, dy);
    const SymbolicBits& in = frame_[r.qubit];
    auto adapt = [&](int x, const Parity& by) {
      auto& eq = std::get<Equatorial>(assignments_.at(shift({x, 0}, dy)));
      Parity deps{eq.deps, eq.offset != 0};
      deps ^= by;
      eq.deps = deps.sites;
      eq.offset = deps.constant ? 1 : 0;
    };
    adapt(1, in.z);
    adapt(2, in.x);
    adapt(3, in.z);
    add_rules(t.pattern, dy, {r.qubit});
    pad_others({r.qubit}, t.width);
    x_ += t.width;
  }

  CompileOptions options_;
  std::vector<SymbolicBits> frame_;
  std::set<Coord> sites_;
  std::set<std::pair<Coord, Coord>> edges_;
  std::map<Coord, BasisSpec> assignments_;
  std::map<Coord, Parity> relabels_;
  std::vector<Coord> inputs_;
  int x_ = 0;
};

}  // namespace

std::vector<Cnot> distant_cnot(std::size_t control, std::size_t target) {
  if (control == target) throw DimensionError("CNOT with control == target");
  std::vector<Cnot> swaps;
  const int step = control < target ? 1 : -1;
  std::size_t c = control;
  while (static_cast<long long>(target) - static_cast<long long>(c) != step) {
    const std::size_t next = c + step;
    swaps.push_back({c, next});
    swaps.push_back({next, c});
    swaps.push_back({c, next});
    c = next;
  }
  std::vector<Cnot> out = swaps;
  out.push_back({c, target});
  out.insert(out.end(), swaps.rbegin(), swaps.rend());
  return out;
}

CompileReport compile(const CircuitIR& circuit, const CompileOptions& options) {
  circuit.validate();
  Layout layout(circuit.num_logical, options);
  for (const auto& g : circuit.gates) layout.add_gate(g);
  CompileReport report;
  report.pattern = prune_pauli_dependencies(layout.finish());
  if (options.embed_rectangle) report.pattern = embed_in_rectangle(report.pattern);
  report.pattern.validate();
  report.schedule = measurement_rounds(report.pattern);
  report.depth = report.schedule.depth();
  report.site_count = report.pattern.graph.size();
  return report;
}

MeasurementPattern bit_reversal_pattern(std::size_t n, bool embed_rectangle) {
  if (n == 0) throw DimensionError("bit reversal needs at least one qubit");
  const int side = 2 * static_cast<int>(n) - 1;
  std::vector<Coord> sites;
  MeasurementPattern p;
  for (int y = 0; y < side; ++y) {
    for (int x = 0; x < side; ++x) {
      if (x == 0 && y % 2 == 1) continue;
      sites.push_back({x, y});
    }
  }
  p.graph = ClusterGraph::induced(sites);
  for (std::size_t k = 0; k < n; ++k) {
    p.inputs.push_back({0, 2 * static_cast<int>(k)});
    p.outputs.push_back({side - 1, 2 * static_cast<int>(k)});
  }
  for (const auto& c : sites) {
    if (c.x != side - 1 || c.y % 2 == 1) p.assignments[c] = PauliXBasis{};
  }
  if (n == 1) p.assignments.clear();
  p.frame_rules = derive_frame_rules(p, reversal_clifford(n)).rules;
  p.normalize_frame_rules();
  if (embed_rectangle) p = embed_in_rectangle(p);
  return p;
}

CliffordMap reversal_clifford(std::size_t n) {
  CliffordMap u = CliffordMap::identity(n);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const std::size_t j = n - 1 - k;
    u.cnot(k, j).cnot(j, k).cnot(k, j);
  }
  return u;
}

std::vector<int> interpret_readout(const std::vector<int>& z, const ByproductFrame& frame) {
  if (z.size() != frame.size()) {
    throw DimensionError("readout of " + std::to_string(z.size()) + " bits against a frame on " +
                         std::to_string(frame.size()) + " qubits");
  }
  std::vector<int> out(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) out[k] = (z[k] & 1) ^ (frame[k].x ? 1 : 0);
  return out;
}

}  // namespace oneway
