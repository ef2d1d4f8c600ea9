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

#include "oneway/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <set>
#include <sstream>

#include "oneway/errors.hpp"

namespace oneway {
namespace {

constexpr double kZeroProbability = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool basis_changing(const BasisSpec& basis) {
  const auto* eq = std::get_if<Equatorial>(&basis);
  return eq != nullptr && pauli_quarter_turns(eq->theta) < 0;
}

/// Must-precede relation used for execution: every dependency and relabel
/// source of a site is measured before it.
std::map<Coord, std::set<Coord>> ordering_predecessors(const MeasurementPattern& p) {
  std::map<Coord, std::set<Coord>> preds;
  for (const auto& [site, basis] : p.assignments) {
    auto& mine = preds[site];
    if (const auto* eq = std::get_if<Equatorial>(&basis)) mine.insert(eq->deps.begin(), eq->deps.end());
    if (auto it = p.relabels.find(site); it != p.relabels.end()) {
      mine.insert(it->second.sites.begin(), it->second.sites.end());
    }
  }
  return preds;
}

/// Kahn's algorithm; ties broken by the smallest (x, y). Throws on cycles.
std::vector<Coord> topological_order(const std::map<Coord, std::set<Coord>>& preds) {
  struct ColumnFirst {
    bool operator()(const Coord& a, const Coord& b) const {
      return std::tie(a.x, a.y) > std::tie(b.x, b.y);
    }
  };
  std::map<Coord, std::size_t> pending;
  std::map<Coord, std::vector<Coord>> succs;
  for (const auto& [site, ps] : preds) {
    pending[site] = ps.size();
    for (const auto& d : ps) succs[d].push_back(site);
  }
  std::priority_queue<Coord, std::vector<Coord>, ColumnFirst> ready;
  for (const auto& [site, count] : pending) {
    if (count == 0) ready.push(site);
  }
  std::vector<Coord> order;
  while (!ready.empty()) {
    const Coord c = ready.top();
    ready.pop();
    order.push_back(c);
    for (const auto& s : succs[c]) {
      if (--pending[s] == 0) ready.push(s);
    }
  }
  if (order.size() != preds.size()) {
    for (const auto& [site, count] : pending) {
      if (count != 0) throw PatternError("dependency cycle through site " + to_string(site));
    }
  }
  return order;
}

void check_measured(const MeasurementPattern& p, const Coord& c, const std::string& what) {
  if (!p.assignments.count(c)) {
    throw PatternError(what + " refers to unmeasured site " + to_string(c));
  }
}

}  // namespace

int OutcomeRecord::at(const Coord& site) const {
  auto it = values_.find(site);
  if (it == values_.end()) {
    throw SchedulingError("outcome of site " + to_string(site) + " is not available yet");
  }
  return it->second;
}

void Parity::toggle(const Coord& site) {
  auto it = std::lower_bound(sites.begin(), sites.end(), site);
  if (it != sites.end() && *it == site) {
    sites.erase(it);
  } else {
    sites.insert(it, site);
  }
}

Parity& Parity::operator^=(const Parity& other) {
  std::vector<Coord> merged;
  std::set_symmetric_difference(sites.begin(), sites.end(), other.sites.begin(), other.sites.end(),
                                std::back_inserter(merged));
  sites = std::move(merged);
  constant = constant != other.constant;
  return *this;
}

int Parity::evaluate(const OutcomeRecord& record) const {
  int v = constant ? 1 : 0;
  for (const auto& s : sites) v ^= record.at(s);
  return v;
}

Equatorial make_equatorial(double theta, std::vector<Coord> deps, int offset) {
  Parity p;
  for (const auto& d : deps) p.toggle(d);
  return Equatorial{theta, std::move(p.sites), offset & 1};
}

std::string basis_tag(const BasisSpec& basis) {
  return std::visit(Overloaded{[](const PauliXBasis&) { return std::string("X"); },
                               [](const PauliYBasis&) { return std::string("Y"); },
                               [](const PauliZRemoval&) { return std::string("Z"); },
                               [](const Equatorial&) { return std::string("EQ"); }},
                    basis);
}

bool is_pauli(const BasisSpec& basis) {
  if (const auto* eq = std::get_if<Equatorial>(&basis)) return pauli_quarter_turns(eq->theta) >= 0;
  return true;
}

double effective_angle(const Equatorial& spec, const OutcomeRecord& record) {
  int parity = spec.offset & 1;
  for (const auto& d : spec.deps) parity ^= record.at(d);
  return parity ? -spec.theta : spec.theta;
}

std::vector<Coord> MeasurementPattern::measured_sites() const {
  std::vector<Coord> out;
  out.reserve(assignments.size());
  for (const auto& [site, basis] : assignments) out.push_back(site);
  return out;
}

bool MeasurementPattern::all_pauli() const {
  return std::all_of(assignments.begin(), assignments.end(),
                     [](const auto& kv) { return is_pauli(kv.second); });
}

void MeasurementPattern::validate() const {
  std::set<Coord> outs;
  for (const auto& o : outputs) {
    if (!graph.contains(o)) throw PatternError("output " + to_string(o) + " is not a site");
    if (!outs.insert(o).second) throw PatternError("duplicate output " + to_string(o));
    if (assignments.count(o)) throw PatternError("output " + to_string(o) + " carries a basis");
  }
  std::set<Coord> ins;
  for (const auto& i : inputs) {
    if (!graph.contains(i)) throw PatternError("input " + to_string(i) + " is not a site");
    if (!ins.insert(i).second) throw PatternError("duplicate input " + to_string(i));
  }
  for (const auto& site : graph.sites()) {
    if (!assignments.count(site) && !outs.count(site)) {
      throw PatternError("site " + to_string(site) + " is neither measured nor an output");
    }
  }
  for (const auto& [site, basis] : assignments) {
    if (!graph.contains(site)) throw PatternError("basis on non-site " + to_string(site));
    if (const auto* eq = std::get_if<Equatorial>(&basis)) {
      for (const auto& d : eq->deps) check_measured(*this, d, "dependency of " + to_string(site));
    }
  }
  for (const auto& [site, parity] : relabels) {
    check_measured(*this, site, "relabel");
    for (const auto& d : parity.sites) check_measured(*this, d, "relabel of " + to_string(site));
  }
  for (const auto& r : frame_rules) {
    check_measured(*this, r.site, "frame rule");
    if (r.qubit < 0 || static_cast<std::size_t>(r.qubit) >= outputs.size()) {
      throw PatternError("frame rule targets logical qubit " + std::to_string(r.qubit));
    }
    if (r.outcome != 0 && r.outcome != 1) throw PatternError("frame rule outcome must be 0 or 1");
  }
  topological_order(ordering_predecessors(*this));
}

ByproductFrame MeasurementPattern::frame_for(const OutcomeRecord& record) const {
  ByproductFrame frame(outputs.size());
  for (const auto& r : frame_rules) {
    if (record.at(r.site) != r.outcome) continue;
    auto& bits = frame[static_cast<std::size_t>(r.qubit)];
    if (r.axis == FrameAxis::kX) {
      bits.x = !bits.x;
    } else {
      bits.z = !bits.z;
    }
  }
  return frame;
}

void MeasurementPattern::normalize_frame_rules() {
  std::sort(frame_rules.begin(), frame_rules.end());
  std::vector<FrameRule> kept;
  for (std::size_t i = 0; i < frame_rules.size();) {
    std::size_t j = i;
    while (j < frame_rules.size() && frame_rules[j] == frame_rules[i]) ++j;
    if ((j - i) % 2 == 1) kept.push_back(frame_rules[i]);
    i = j;
  }
  frame_rules = std::move(kept);
}

std::size_t DependencyDag::edge_count() const {
  std::size_t n = 0;
  for (const auto& [site, ps] : predecessors) n += ps.size();
  return n;
}

std::vector<std::pair<Coord, Coord>> DependencyDag::edges() const {
  std::vector<std::pair<Coord, Coord>> out;
  for (const auto& [site, ps] : predecessors) {
    for (const auto& d : ps) out.emplace_back(d, site);
  }
  std::sort(out.begin(), out.end());
  return out;
}

DependencyDag dependency_dag(const MeasurementPattern& pattern) {
  // Fails on cycles in the full ordering relation.
  topological_order(ordering_predecessors(pattern));

  std::map<Coord, std::set<Coord>> closure_cache;
  std::function<const std::set<Coord>&(const Coord&)> closure = [&](const Coord& d) -> const std::set<Coord>& {
    if (auto it = closure_cache.find(d); it != closure_cache.end()) return it->second;
    std::set<Coord> c{d};
    if (auto it = pattern.relabels.find(d); it != pattern.relabels.end()) {
      for (const auto& r : it->second.sites) {
        const auto& sub = closure(r);
        c.insert(sub.begin(), sub.end());
      }
    }
    return closure_cache[d] = std::move(c);
  };

  DependencyDag dag;
  for (const auto& [site, basis] : pattern.assignments) {
    dag.nodes.push_back(site);
    std::set<Coord> preds;
    if (basis_changing(basis)) {
      for (const auto& d : std::get<Equatorial>(basis).deps) {
        const auto& c = closure(d);
        preds.insert(c.begin(), c.end());
      }
    }
    dag.predecessors[site] = std::vector<Coord>(preds.begin(), preds.end());
  }
  return dag;
}

MeasurementPattern prune_pauli_dependencies(const MeasurementPattern& pattern) {
  MeasurementPattern out = pattern;
  for (auto& [site, basis] : out.assignments) {
    const auto* eq = std::get_if<Equatorial>(&basis);
    if (eq == nullptr) continue;
    const int k = pauli_quarter_turns(eq->theta);
    if (k < 0) continue;
    Parity flip;
    if (k % 2 == 0) {
      flip.constant = k == 2;  // B(π) is B(0) with its states swapped
    } else {
      flip.sites = eq->deps;
      flip.constant = (eq->offset != 0) != (k == 3);
    }
    if (!flip.empty()) {
      out.relabels[site] ^= flip;
      if (out.relabels[site].empty()) out.relabels.erase(site);
    }
    if (k % 2 == 0) {
      basis = PauliXBasis{};
    } else {
      basis = PauliYBasis{};
    }
  }
  return out;
}

Schedule measurement_rounds(const MeasurementPattern& pattern) {
  const DependencyDag dag = dependency_dag(pattern);
  std::map<Coord, std::set<Coord>> preds;
  for (const auto& [site, ps] : dag.predecessors) preds[site] = std::set<Coord>(ps.begin(), ps.end());
  std::map<Coord, int> round;
  for (const auto& site : topological_order(preds)) {
    int r = 0;
    for (const auto& d : preds[site]) r = std::max(r, round.at(d) + 1);
    round[site] = r;
  }
  Schedule schedule;
  for (const auto& [site, r] : round) {
    if (static_cast<std::size_t>(r) >= schedule.rounds.size()) schedule.rounds.resize(r + 1);
    schedule.rounds[r].push_back(site);
  }
  return schedule;
}

int logical_depth(const MeasurementPattern& pattern) { return measurement_rounds(pattern).depth(); }

double OutcomeSource::uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

int OutcomeSource::choose(const Coord& site, double prob_zero) {
  if (auto it = forced_.find(site); it != forced_.end()) return it->second;
  if (auto it = preferred_.find(site); it != preferred_.end()) {
    const double p = it->second == 0 ? prob_zero : 1.0 - prob_zero;
    return p > kZeroProbability ? it->second : 1 - it->second;
  }
  if (prob_zero < kZeroProbability) return 1;
  if (prob_zero > 1.0 - kZeroProbability) return 0;
  return uniform() < prob_zero ? 0 : 1;
}

ExecutionResult execute(const MeasurementPattern& pattern, Backend& backend,
                        std::span<const std::size_t> input_qubits, OutcomeSource& source,
                        const ExecuteOptions& options) {
  pattern.validate();
  if (input_qubits.size() != pattern.inputs.size()) {
    throw DimensionError("execute: " + std::to_string(input_qubits.size()) + " input qubits for " +
                         std::to_string(pattern.inputs.size()) + " pattern inputs");
  }
  for (const auto& [site, basis] : pattern.assignments) {
    if (const auto* eq = std::get_if<Equatorial>(&basis)) {
      if (!backend.supports(PhysicalBasis::equatorial(eq->theta))) {
        throw CapabilityError(std::string(backend_name(backend.kind())) +
                              " backend cannot measure site " + to_string(site) + " at angle " +
                              std::to_string(eq->theta));
      }
    }
  }

  const auto preds = ordering_predecessors(pattern);
  std::vector<Coord> order;
  if (options.order) {
    order = *options.order;
    std::set<Coord> seen;
    for (const auto& site : order) {
      auto it = preds.find(site);
      if (it == preds.end()) throw SchedulingError("order lists unmeasured site " + to_string(site));
      for (const auto& d : it->second) {
        if (!seen.count(d)) {
          throw SchedulingError("site " + to_string(site) + " ordered before its dependency " +
                                to_string(d));
        }
      }
      if (!seen.insert(site).second) throw SchedulingError("order repeats " + to_string(site));
    }
    if (seen.size() != preds.size()) throw SchedulingError("order does not cover every measured site");
  } else {
    order = topological_order(preds);
  }

  std::map<Coord, std::size_t> qubit_of;
  for (std::size_t k = 0; k < pattern.inputs.size(); ++k) qubit_of[pattern.inputs[k]] = input_qubits[k];
  for (const auto& [a, b] : pattern.graph.edges()) {
    if (qubit_of.count(a) && qubit_of.count(b)) backend.cz(qubit_of[a], qubit_of[b]);
  }
  std::set<Coord> measured;
  auto materialize = [&](const Coord& c) {
    if (qubit_of.count(c)) return;
    const std::size_t q = backend.allocate_plus();
    qubit_of[c] = q;
    for (const auto& n : pattern.graph.neighbors(c)) {
      auto it = qubit_of.find(n);
      if (it == qubit_of.end()) continue;
      if (measured.count(n)) {
        throw std::logic_error("neighbour " + to_string(n) + " measured before " + to_string(c) +
                               " was entangled");
      }
      backend.cz(q, it->second);
    }
  };

  ExecutionResult result;
  result.order = order;
  for (const auto& site : order) {
    materialize(site);
    for (const auto& n : pattern.graph.neighbors(site)) materialize(n);

    const BasisSpec& basis = pattern.assignments.at(site);
    PhysicalBasis physical = std::visit(
        Overloaded{[](const PauliXBasis&) { return PhysicalBasis::equatorial(0.0); },
                   [](const PauliYBasis&) { return PhysicalBasis::equatorial(std::numbers::pi / 2); },
                   [](const PauliZRemoval&) { return PhysicalBasis::z_basis(); },
                   [&](const Equatorial& eq) {
                     return PhysicalBasis::equatorial(effective_angle(eq, result.outcomes));
                   }},
        basis);
    int flip = 0;
    if (auto it = pattern.relabels.find(site); it != pattern.relabels.end()) {
      flip = it->second.evaluate(result.outcomes);
    }
    const OutcomeChooser chooser = [&](double p0) {
      return source.choose(site, flip ? 1.0 - p0 : p0) ^ flip;
    };
    MeasurementOutcome out;
    try {
      out = backend.measure(qubit_of.at(site), physical, chooser);
    } catch (const InconsistentForcing& e) {
      throw InconsistentForcing("site " + to_string(site) + ": " + e.what());
    }
    result.raw.set(site, out.s);
    result.outcomes.set(site, out.s ^ flip);
    measured.insert(site);
    backend.release(qubit_of.at(site));
  }
  for (const auto& o : pattern.outputs) materialize(o);
  for (const auto& o : pattern.outputs) result.output_qubits.push_back(qubit_of.at(o));
  result.frame = pattern.frame_for(result.outcomes);
  return result;
}

MeasurementPattern embed_in_rectangle(const MeasurementPattern& pattern) {
  if (!pattern.graph.is_induced()) {
    throw PatternError("embed_in_rectangle: cluster is not an induced lattice subgraph");
  }
  if (pattern.graph.size() == 0) return pattern;
  int xmin = std::numeric_limits<int>::max(), ymin = xmin;
  int xmax = std::numeric_limits<int>::min(), ymax = xmax;
  for (const auto& c : pattern.graph.sites()) {
    xmin = std::min(xmin, c.x);
    xmax = std::max(xmax, c.x);
    ymin = std::min(ymin, c.y);
    ymax = std::max(ymax, c.y);
  }
  MeasurementPattern out = pattern;
  std::vector<Coord> all;
  std::vector<Coord> added;
  for (int y = ymin; y <= ymax; ++y) {
    for (int x = xmin; x <= xmax; ++x) {
      all.push_back({x, y});
      if (!pattern.graph.contains({x, y})) added.push_back({x, y});
    }
  }
  out.graph = ClusterGraph::induced(all);
  std::map<Coord, int> output_index;
  for (std::size_t k = 0; k < pattern.outputs.size(); ++k) output_index[pattern.outputs[k]] = static_cast<int>(k);
  for (const auto& r : added) {
    out.assignments[r] = PauliZRemoval{};
    for (const auto& n : out.graph.neighbors(r)) {
      if (!pattern.graph.contains(n)) continue;
      if (auto it = pattern.assignments.find(n); it != pattern.assignments.end()) {
        if (std::holds_alternative<PauliZRemoval>(it->second)) continue;
        out.relabels[n].toggle(r);
        if (out.relabels[n].empty()) out.relabels.erase(n);
      } else {
        out.frame_rules.push_back(FrameRule{r, 1, output_index.at(n), FrameAxis::kZ});
      }
    }
  }
  out.normalize_frame_rules();
  return out;
}

}  // namespace oneway
