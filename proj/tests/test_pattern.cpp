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

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "oneway/circuit.hpp"
#include "oneway/compiler.hpp"
#include "oneway/errors.hpp"
#include "oneway/pattern_io.hpp"
#include "oneway/templates.hpp"
#include "oneway/verify.hpp"
#include "oracle.hpp"

using namespace oneway;
using std::numbers::pi;

namespace {

const Coord s1{0, 0}, s2{1, 0}, s3{2, 0}, s4{3, 0}, s5{4, 0};

MeasurementPattern rotation_chain(double xi, double eta, double zeta) {
  return rotation_template(EulerAngles(xi, eta, zeta)).pattern;
}

oracle::Vec to_eigen(const StateVector& s) {
  oracle::Vec v(static_cast<Eigen::Index>(s.amplitudes().size()));
  for (std::size_t i = 0; i < s.amplitudes().size(); ++i) v(static_cast<Eigen::Index>(i)) = s.amplitude(i);
  return v;
}

StateVector from_eigen(const oracle::Vec& v) {
  return StateVector::from_amplitudes(std::vector<Complex>(v.data(), v.data() + v.size()));
}

OutcomeRecord record(std::initializer_list<std::pair<Coord, int>> values) {
  OutcomeRecord r;
  for (const auto& [c, s] : values) r.set(c, s);
  return r;
}

/// A random linear extension of the execution order constraints, kept close
/// to the sweep front so the dense backend stays small.
std::vector<Coord> random_order(const MeasurementPattern& p, std::mt19937_64& rng) {
  std::map<Coord, std::set<Coord>> preds;
  for (const auto& [site, basis] : p.assignments) {
    auto& mine = preds[site];
    if (const auto* eq = std::get_if<Equatorial>(&basis)) mine.insert(eq->deps.begin(), eq->deps.end());
    if (auto it = p.relabels.find(site); it != p.relabels.end()) mine.insert(it->second.sites.begin(), it->second.sites.end());
  }
  std::vector<Coord> order;
  std::set<Coord> done;
  while (order.size() < preds.size()) {
    std::vector<Coord> ready;
    for (const auto& [site, ps] : preds) {
      if (done.count(site)) continue;
      if (std::all_of(ps.begin(), ps.end(), [&](const Coord& d) { return done.count(d) != 0; })) ready.push_back(site);
    }
    int front = ready.front().x;
    for (const auto& c : ready) front = std::min(front, c.x);
    std::erase_if(ready, [&](const Coord& c) { return c.x > front + 1; });
    const Coord pick = ready[rng() % ready.size()];
    order.push_back(pick);
    done.insert(pick);
  }
  return order;
}

}  // namespace

TEST(effective_angle, examples) {
  const Equatorial even = make_equatorial(0.4, {s1, s3}, 0);
  EXPECT_DOUBLE_EQ(effective_angle(even, record({{s1, 1}, {s3, 1}})), 0.4);
  const Equatorial site2 = make_equatorial(0.9, {s1}, 1);
  EXPECT_DOUBLE_EQ(effective_angle(site2, record({{s1, 0}})), -0.9);
  EXPECT_DOUBLE_EQ(effective_angle(site2, record({{s1, 1}})), 0.9);
  EXPECT_THROW(effective_angle(site2, record({})), SchedulingError);
}

TEST(make_equatorial, repeated_deps_cancel) {
  EXPECT_TRUE(make_equatorial(0.1, {s1, s2, s1}, 0).deps == std::vector<Coord>{s2});
}

TEST(dependency_dag, all_pauli_x_has_no_edges) {
  EXPECT_EQ(dependency_dag(bit_reversal_pattern(3)).edge_count(), 0u);
}

TEST(dependency_dag, rotation_chain_edges) {
  const DependencyDag dag = dependency_dag(rotation_chain(0.3, 1.1, -0.7));
  const std::vector<std::pair<Coord, Coord>> expected{{s1, s2}, {s2, s3}, {s1, s4}, {s3, s4}};
  auto got = dag.edges();
  auto want = expected;
  std::sort(want.begin(), want.end());
  EXPECT_EQ(got, want);
}

TEST(dependency_dag, single_site_is_empty) {
  MeasurementPattern p;
  p.graph = ClusterGraph::induced({{0, 0}, {1, 0}});
  p.inputs = {{0, 0}};
  p.outputs = {{1, 0}};
  p.assignments[{0, 0}] = make_equatorial(0.3, {}, 0);
  EXPECT_EQ(dependency_dag(p).edge_count(), 0u);
  EXPECT_EQ(logical_depth(p), 1);
}

TEST(dependency_dag, cycle_is_rejected) {
  MeasurementPattern p = rotation_chain(0.3, 1.1, -0.7);
  std::get<Equatorial>(p.assignments[s1]).deps = {s4};
  std::get<Equatorial>(p.assignments[s1]).theta = 0.2;
  EXPECT_THROW(dependency_dag(p), PatternError);
  EXPECT_THROW(p.validate(), PatternError);
}

TEST(prune, quarter_turn_becomes_y_with_relabel) {
  MeasurementPattern p = rotation_chain(0.3, 1.1, -0.7);
  p.assignments[s2] = make_equatorial(pi / 2, {s1}, 0);
  const MeasurementPattern q = prune_pauli_dependencies(p);
  EXPECT_TRUE(std::holds_alternative<PauliYBasis>(q.assignments.at(s2)));
  ASSERT_TRUE(q.relabels.count(s2));
  EXPECT_EQ(q.relabels.at(s2), (Parity{{s1}, false}));
}

TEST(prune, negative_quarter_turn_adds_constant) {
  MeasurementPattern p = rotation_chain(0.3, 1.1, -0.7);
  p.assignments[s2] = make_equatorial(-pi / 2, {s1}, 0);
  const MeasurementPattern q = prune_pauli_dependencies(p);
  EXPECT_EQ(q.relabels.at(s2), (Parity{{s1}, true}));
}

TEST(prune, half_turns_become_x) {
  MeasurementPattern p = rotation_chain(0.0, pi, -0.7);
  const MeasurementPattern q = prune_pauli_dependencies(p);
  EXPECT_TRUE(std::holds_alternative<PauliXBasis>(q.assignments.at(s2)));
  EXPECT_FALSE(q.relabels.count(s2));
  EXPECT_TRUE(std::holds_alternative<PauliXBasis>(q.assignments.at(s3)));
  EXPECT_EQ(q.relabels.at(s3), (Parity{{}, true}));
}

TEST(prune, generic_angle_unchanged) {
  const MeasurementPattern p = rotation_chain(0.3, 1.1, -0.7);
  const MeasurementPattern q = prune_pauli_dependencies(p);
  EXPECT_EQ(q.assignments.at(s2), p.assignments.at(s2));
  EXPECT_EQ(q.assignments.at(s4), p.assignments.at(s4));
}

TEST(prune, hadamard_template_has_no_edges) {
  const MeasurementPattern p = prune_pauli_dependencies(rotation_chain(pi / 2, pi / 2, pi / 2));
  EXPECT_EQ(dependency_dag(p).edge_count(), 0u);
  EXPECT_EQ(logical_depth(p), 1);
}

TEST(logical_depth, generic_rotation_is_four) {
  EXPECT_EQ(logical_depth(rotation_chain(0.3, 1.1, -0.7)), 4);
  const Schedule s = measurement_rounds(rotation_chain(0.3, 1.1, -0.7));
  ASSERT_EQ(s.depth(), 4);
  EXPECT_EQ(s.rounds[0], std::vector<Coord>{s1});
  EXPECT_EQ(s.rounds[3], std::vector<Coord>{s4});
}

TEST(logical_depth, empty_pattern_is_zero) {
  MeasurementPattern p;
  EXPECT_EQ(logical_depth(p), 0);
}

TEST(execute, one_bond_wire_against_oracle) {
  // Input on a, |+⟩ on b, CZ, measure a in σx: b holds X^s H |ψ⟩.
  MeasurementPattern p;
  p.graph = ClusterGraph::induced({{0, 0}, {1, 0}});
  p.inputs = {{0, 0}};
  p.outputs = {{1, 0}};
  p.assignments[{0, 0}] = PauliXBasis{};
  p.frame_rules = {{{0, 0}, 1, 0, FrameAxis::kX}};
  std::mt19937_64 rng(1);
  for (int s = 0; s < 2; ++s) {
    const oracle::Vec psi = oracle::random_state(1, rng);
    OutcomeSource src;
    src.force({0, 0}, s);
    DenseBackend b;
    b.load(from_eigen(psi));
    const std::vector<std::size_t> in{0};
    const ExecutionResult r = execute(p, b, in, src);
    const std::vector<std::size_t> outq = r.output_qubits;
    const oracle::Vec got = to_eigen(b.state().extract(outq));
    const oracle::Vec want = oracle::measure_out(oracle::cluster_with_input(psi, 1, 2, {{0, 1}}),
                                                 {{0, oracle::equatorial(0.0, s)}});
    EXPECT_LT(oracle::infidelity(got, want), 1e-12);
    EXPECT_LT(oracle::infidelity(want, (s ? oracle::pauli('X') : oracle::pauli('I')) * oracle::hadamard() * psi), 1e-12);
    EXPECT_EQ(r.frame[0].x, s == 1);
  }
}

TEST(execute, rotation_chain_all_branches_against_oracle) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(-pi, pi);
  for (int trial = 0; trial < 10; ++trial) {
    const double xi = angle(rng), eta = angle(rng), zeta = angle(rng);
    const MeasurementPattern p = rotation_chain(xi, eta, zeta);
    const oracle::Vec psi = oracle::random_state(1, rng);
    for (int b = 0; b < 16; ++b) {
      const int o1 = b & 1, o2 = (b >> 1) & 1, o3 = (b >> 2) & 1, o4 = (b >> 3) & 1;
      OutcomeSource src;
      src.force(s1, o1);
      src.force(s2, o2);
      src.force(s3, o3);
      src.force(s4, o4);
      DenseBackend backend;
      backend.load(from_eigen(psi));
      const std::vector<std::size_t> in{0};
      const ExecutionResult r = execute(p, backend, in, src);
      const oracle::Vec got = to_eigen(backend.state().extract(r.output_qubits));
      // Adaptive angles written out directly.
      const double phi2 = ((o1 + 1) % 2 ? -1 : 1) * xi;
      const double phi3 = ((o2 + 1) % 2 ? -1 : 1) * eta;
      const double phi4 = ((o1 + o3 + 1) % 2 ? -1 : 1) * zeta;
      const oracle::Vec chain = oracle::cluster_with_input(psi, 1, 5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
      const oracle::Vec want = oracle::measure_out(chain, {{0, oracle::equatorial(0.0, o1)},
                                                          {1, oracle::equatorial(phi2, o2)},
                                                          {2, oracle::equatorial(phi3, o3)},
                                                          {3, oracle::equatorial(phi4, o4)}});
      EXPECT_LT(oracle::infidelity(got, want), 1e-10);
      const oracle::Mat byproduct = ((o2 + o4) % 2 ? oracle::pauli('X') : oracle::pauli('I')) *
                                    ((o1 + o3) % 2 ? oracle::pauli('Z') : oracle::pauli('I'));
      EXPECT_LT(oracle::infidelity(want, byproduct * oracle::euler(xi, eta, zeta) * psi), 1e-10);
      EXPECT_EQ(r.frame[0], (FrameBits{(o2 + o4) % 2 == 1, (o1 + o3) % 2 == 1}));
    }
  }
}

TEST(execute, zero_measurements_is_identity) {
  MeasurementPattern p;
  p.graph = ClusterGraph::induced({{0, 0}});
  p.inputs = {{0, 0}};
  p.outputs = {{0, 0}};
  std::mt19937_64 rng(3);
  const StateVector psi = random_state(1, rng);
  OutcomeSource src;
  const StateVector out = run_dense(p, psi, src);
  EXPECT_LT(infidelity(out, psi), 1e-14);
}

TEST(execute, tableau_rejects_generic_angles_up_front) {
  TableauBackend b;
  const std::vector<std::size_t> in{b.allocate_plus()};
  OutcomeSource src;
  EXPECT_THROW(execute(rotation_chain(0.3, 1.1, -0.7), b, in, src), CapabilityError);
}

TEST(execute, forcing_an_impossible_outcome_names_the_site) {
  // A pattern whose second site is deterministic: measure (0,0) in σz, then
  // the neighbour of a |0⟩ site measured in σx is fixed by the input |+⟩.
  MeasurementPattern p;
  p.graph = ClusterGraph::induced({{0, 0}, {1, 0}});
  p.outputs = {};
  p.assignments[{0, 0}] = PauliZRemoval{};
  p.assignments[{1, 0}] = PauliXBasis{};
  p.relabels[{1, 0}] = Parity{{{0, 0}}, false};
  OutcomeSource src;
  src.force({1, 0}, 1);
  DenseBackend b;
  try {
    execute(p, b, {}, src);
    FAIL() << "expected InconsistentForcing";
  } catch (const InconsistentForcing& e) {
    EXPECT_NE(std::string(e.what()).find("(1,0)"), std::string::npos) << e.what();
  }
}

TEST(execute, order_must_respect_dependencies) {
  const MeasurementPattern p = rotation_chain(0.3, 1.1, -0.7);
  ExecuteOptions o;
  o.order = std::vector<Coord>{s2, s1, s3, s4};
  DenseBackend b;
  b.load(StateVector(1));
  OutcomeSource src;
  const std::vector<std::size_t> in{0};
  EXPECT_THROW(execute(p, b, in, src, o), SchedulingError);
}

TEST(execute, round_parallel_equivalence) {
  std::mt19937_64 rng(21);
  CircuitIR c;
  c.num_logical = 2;
  c.gates = {Hadamard{0}, Cnot{0, 1}, Rotation{1, EulerAngles(0.4, -1.2, 0.8)}, PhaseS{0}, Cnot{1, 0}};
  const MeasurementPattern p = compile(c).pattern;
  const StateVector psi = random_state(2, rng);
  for (int trial = 0; trial < 5; ++trial) {
    std::map<Coord, int> forced;
    for (const auto& s : p.measured_sites()) forced[s] = static_cast<int>(rng() & 1);
    StateVector first;
    for (int order_trial = 0; order_trial < 4; ++order_trial) {
      OutcomeSource src;
      for (const auto& [s, v] : forced) src.force(s, v);
      ExecuteOptions o;
      if (order_trial > 0) o.order = random_order(p, rng);
      const StateVector out = run_dense(p, psi, src, o);
      if (order_trial == 0) {
        first = out;
      } else {
        EXPECT_LT(infidelity(first, out), 1e-12);
      }
    }
  }
}

TEST(execute, z_removal_neutrality) {
  std::mt19937_64 rng(5);
  CircuitIR c;
  c.num_logical = 2;
  c.gates = {Hadamard{1}, Cnot{1, 0}, Rotation{0, EulerAngles(0.2, 0.9, -0.4)}};
  const CompileReport plain = compile(c);
  CompileOptions opt;
  opt.embed_rectangle = true;
  const CompileReport boxed = compile(c, opt);
  EXPECT_GT(boxed.site_count, plain.site_count);
  const StateVector psi = random_state(2, rng);
  const StateVector want = simulate_circuit(c, psi);
  for (int trial = 0; trial < 5; ++trial) {
    OutcomeSource a(rng()), b(rng());
    EXPECT_LT(infidelity(run_dense(plain.pattern, psi, a), want), 1e-10);
    EXPECT_LT(infidelity(run_dense(boxed.pattern, psi, b), want), 1e-10);
  }
}

TEST(execute, pruned_and_unpruned_agree) {
  std::mt19937_64 rng(6);
  for (const auto& angles : {EulerAngles(pi / 2, pi / 2, pi / 2), EulerAngles(0, pi / 2, 0),
                             EulerAngles(-pi / 2, pi, pi / 2)}) {
    const MeasurementPattern raw = rotation_chain(angles.xi, angles.eta, angles.zeta);
    const MeasurementPattern pruned = prune_pauli_dependencies(raw);
    EXPECT_TRUE(pruned.all_pauli());
    const StateVector psi = random_state(1, rng);
    for (int b = 0; b < 16; ++b) {
      OutcomeSource x, y;
      for (int k = 0; k < 4; ++k) {
        x.force({k, 0}, (b >> k) & 1);
        y.force({k, 0}, (b >> k) & 1);
      }
      EXPECT_LT(infidelity(run_dense(raw, psi, x), run_dense(pruned, psi, y)), 1e-10);
    }
  }
}

TEST(execute, outcomes_are_unbiased) {
  const MeasurementPattern p = bit_reversal_pattern(2);
  OutcomeSource src(99);
  std::map<Coord, int> zeros;
  const int runs = 2000;
  for (int r = 0; r < runs; ++r) {
    TableauBackend b;
    std::vector<std::size_t> in{b.allocate_plus(), b.allocate_plus()};
    const ExecutionResult res = execute(p, b, in, src);
    for (const auto& [site, s] : res.outcomes.entries()) zeros[site] += s == 0;
  }
  const double sigma = std::sqrt(0.25 / runs);
  for (const auto& [site, z] : zeros) EXPECT_NEAR(static_cast<double>(z) / runs, 0.5, 4 * sigma) << to_string(site);
}

TEST(outcome_source, deterministic_under_seed) {
  OutcomeSource a(5), b(5);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.choose({i, 0}, 0.5), b.choose({i, 0}, 0.5));
  OutcomeSource c;
  c.prefer({0, 0}, 1);
  EXPECT_EQ(c.choose({0, 0}, 1.0), 0);
  EXPECT_EQ(c.choose({0, 0}, 0.5), 1);
}

TEST(pattern_validate, structural_errors) {
  MeasurementPattern p = rotation_chain(0.3, 1.1, -0.7);
  EXPECT_NO_THROW(p.validate());
  MeasurementPattern bad = p;
  bad.assignments[s5] = PauliXBasis{};
  EXPECT_THROW(bad.validate(), PatternError);
  bad = p;
  bad.assignments.erase(s3);
  EXPECT_THROW(bad.validate(), PatternError);
  bad = p;
  bad.frame_rules.push_back({s1, 1, 3, FrameAxis::kX});
  EXPECT_THROW(bad.validate(), PatternError);
  bad = p;
  std::get<Equatorial>(bad.assignments[s2]).deps = {{9, 9}};
  EXPECT_THROW(bad.validate(), PatternError);
}

TEST(embed_in_rectangle, fills_bounding_box) {
  const MeasurementPattern p = bit_reversal_pattern(2);
  const MeasurementPattern q = embed_in_rectangle(p);
  EXPECT_EQ(q.graph.size(), 9u);
  EXPECT_TRUE(std::holds_alternative<PauliZRemoval>(q.assignments.at({0, 1})));
  EXPECT_EQ(q.relabels.at({1, 1}), (Parity{{{0, 1}}, false}));
  EXPECT_EQ(logical_depth(q), 1);
}

TEST(pattern_io, round_trip_is_byte_stable) {
  CircuitIR c;
  c.num_logical = 3;
  c.gates = {Hadamard{0}, Cnot{0, 2}, Rotation{1, EulerAngles(0.1, 1.0 / 3.0, -2.5)}, PhaseS{2}};
  for (bool embed : {false, true}) {
    CompileOptions o;
    o.embed_rectangle = embed;
    const MeasurementPattern p = compile(c, o).pattern;
    const std::string text = write_pattern(p);
    const MeasurementPattern q = read_pattern(text);
    EXPECT_EQ(q, p);
    EXPECT_EQ(write_pattern(q), text);
    EXPECT_EQ(logical_depth(q), logical_depth(p));
  }
}

TEST(pattern_io, sites_sorted_by_row_then_column) {
  const std::string text = write_pattern(bit_reversal_pattern(2));
  EXPECT_NE(text.find("site 1 0 - X\nsite 2 0 out:0 -\nsite 1 1 - X\n"), std::string::npos) << text;
  EXPECT_EQ(text.rfind("oneway-pattern 1\ngrid 0 0 2 2\n", 0), 0u);
}

TEST(pattern_io, parse_errors_carry_line_numbers) {
  const std::string good = write_pattern(rotation_chain(0.3, 1.1, -0.7));
  auto expect_line = [](const std::string& text, int line) {
    try {
      read_pattern(text);
      FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), line) << e.what();
    }
  };
  expect_line("oneway-pattern 2\n", 1);
  std::string bad = good;
  bad.replace(bad.find("site 1 0 - EQ"), 13, "site 1 0 - QQ");
  expect_line(bad, 5);
  expect_line("oneway-pattern 1\ngrid 0 0 0 0\nsites 1\n", 4);
}
