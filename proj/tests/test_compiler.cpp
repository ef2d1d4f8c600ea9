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

#include <gtest/gtest.h>

#include <climits>
#include <numbers>
#include <random>

#include "oneway/choi.hpp"
#include "oneway/circuit.hpp"
#include "oneway/errors.hpp"
#include "oneway/templates.hpp"
#include "oneway/verify.hpp"
#include "oracle.hpp"

using namespace oneway;
using std::numbers::pi;

namespace {

VerifyOptions options(BackendKind kind, std::uint64_t seed, std::size_t trials = 5) {
  VerifyOptions o;
  o.backend = kind;
  o.seed = seed;
  o.trials = trials;
  return o;
}

Eigen::MatrixXcd circuit_matrix(const CircuitIR& c) {
  const std::size_t dim = std::size_t{1} << c.num_logical;
  Eigen::MatrixXcd u(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    std::vector<Complex> amps(dim, 0.0);
    amps[col] = 1.0;
    const StateVector out = simulate_circuit(c, StateVector::from_amplitudes(amps));
    for (std::size_t row = 0; row < dim; ++row) u(row, col) = out.amplitude(row);
  }
  return u;
}

/// Prepares |bits⟩ (bit k on logical qubit k), runs the pattern on the
/// tableau and returns the corrected σz readout.
std::vector<int> run_basis(const MeasurementPattern& p, const std::vector<int>& bits, std::uint64_t seed) {
  TableauBackend b;
  std::vector<std::size_t> in;
  for (int bit : bits) {
    in.push_back(b.allocate_plus());
    b.h(in.back());
    if (bit) b.x(in.back());
  }
  OutcomeSource src(seed);
  const ExecutionResult r = execute(p, b, in, src);
  std::vector<int> z;
  for (std::size_t k = 0; k < r.output_qubits.size(); ++k) {
    z.push_back(b.measure(r.output_qubits[k], PhysicalBasis::z_basis(), [&](double p0) {
                   return src.choose({-1000, static_cast<int>(k)}, p0);
                 }).s);
  }
  return interpret_readout(z, r.frame);
}

struct Extent {
  int w = 0, h = 0;
  int width() const { return w; }
  int height() const { return h; }
};

Extent extent(const ClusterGraph& g) {
  int x0 = INT_MAX, y0 = INT_MAX, x1 = INT_MIN, y1 = INT_MIN;
  for (const Coord& c : g.sites()) {
    x0 = std::min(x0, c.x), x1 = std::max(x1, c.x);
    y0 = std::min(y0, c.y), y1 = std::max(y1, c.y);
  }
  return {x1 - x0 + 1, y1 - y0 + 1};
}

}  // namespace

TEST(compile, clifford_circuits_have_depth_one) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const CircuitIR c = random_clifford_circuit(n, 4 + trial % 9, rng);
    const CompileReport r = compile(c);
    EXPECT_EQ(r.depth, 1) << write_circuit(c);
    EXPECT_EQ(logical_depth(r.pattern), 1);
    EXPECT_TRUE(r.pattern.all_pauli());
    const VerifyReport v = verify_choi(r.pattern, circuit_clifford(c), options(BackendKind::kTableau, trial));
    EXPECT_TRUE(v.passed) << v.detail << "\n" << write_circuit(c);
  }
}

TEST(compile, empty_circuit) {
  CircuitIR c;
  c.num_logical = 2;
  const CompileReport r = compile(c);
  EXPECT_EQ(r.depth, 0);
  EXPECT_EQ(r.pattern.inputs, r.pattern.outputs);
  EXPECT_EQ(r.site_count, 2u);
}

TEST(compile, single_hadamard) {
  const CompileReport r = compile(parse_circuit("H 0\n"));
  EXPECT_EQ(r.depth, 1);
  EXPECT_EQ(r.site_count, 5u);
  EXPECT_EQ(r.schedule.depth(), 1);
}

TEST(compile, generic_rotation_has_depth_four) {
  const CompileReport r = compile(parse_circuit("ROT 0 0.3 1.1 -0.7\n"));
  EXPECT_EQ(r.depth, 4);
  EXPECT_EQ(r.schedule.rounds.size(), 4u);
  // Rotations on separate wires run in parallel.
  EXPECT_EQ(compile(parse_circuit("ROT 0 0.3 1.1 -0.7\nROT 1 0.2 0.5 0.9\nROT 2 1 2 3\n")).depth, 4);
}

TEST(compile, mixed_circuits_match_dense_reference) {
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> a(-pi, pi);
  for (int trial = 0; trial < 6; ++trial) {
    CircuitIR c = random_clifford_circuit(2 + trial % 2, 5, rng);
    for (int k = 0; k < 2; ++k) {
      c.gates.insert(c.gates.begin() + static_cast<long>(rng() % (c.gates.size() + 1)),
                     Rotation{rng() % c.num_logical, EulerAngles(a(rng), a(rng), a(rng))});
    }
    const CompileReport r = compile(c);
    const VerifyReport v = verify_dense(r.pattern, circuit_matrix(c), options(BackendKind::kDense, trial, 3));
    EXPECT_TRUE(v.passed) << v.detail << "\n" << write_circuit(c);
    EXPECT_LT(v.worst_infidelity, 1e-10);
  }
}

TEST(distant_cnot, equals_direct_cnot) {
  std::mt19937_64 rng(33);
  for (auto [c, t] : std::vector<std::pair<std::size_t, std::size_t>>{{0, 3}, {3, 0}, {1, 2}, {0, 2}, {2, 0}}) {
    const auto chain = distant_cnot(c, t);
    CircuitIR net;
    net.num_logical = 4;
    for (const auto& g : chain) {
      EXPECT_EQ(std::max(g.control, g.target) - std::min(g.control, g.target), 1u);
      net.gates.push_back(g);
    }
    CircuitIR direct;
    direct.num_logical = 4;
    direct.gates = {Cnot{c, t}};
    const StateVector psi = random_state(4, rng);
    EXPECT_LT(infidelity(simulate_circuit(net, psi), simulate_circuit(direct, psi)), 1e-12) << c << "->" << t;
  }
  EXPECT_EQ(distant_cnot(1, 2), (std::vector<Cnot>{{1, 2}}));
}

TEST(bit_reversal, two_qubits_is_swap_on_dense) {
  const MeasurementPattern p = bit_reversal_pattern(2);
  EXPECT_EQ(p.graph.size(), 8u);  // 3×3 less the blank left-column square
  EXPECT_EQ(logical_depth(p), 1);
  // Swap written out on the basis: |ab⟩ -> |ba⟩.
  Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = swap(1, 2) = swap(2, 1) = 1.0;
  for (bool embed : {false, true}) {
    const VerifyReport v = verify_dense(bit_reversal_pattern(2, embed), swap, options(BackendKind::kDense, 4, 10));
    EXPECT_TRUE(v.passed) << v.detail;
    EXPECT_LT(v.worst_infidelity, 1e-10);
  }
}

TEST(bit_reversal, larger_blocks_on_tableau) {
  for (std::size_t n = 3; n <= 6; ++n) {
    for (bool embed : {false, true}) {
      const MeasurementPattern p = bit_reversal_pattern(n, embed);
      EXPECT_EQ(extent(p.graph).width(), static_cast<int>(2 * n - 1));
      EXPECT_TRUE(p.all_pauli());
      EXPECT_EQ(logical_depth(p), 1);
      const VerifyReport v = verify_choi(p, reversal_clifford(n), options(BackendKind::kTableau, n, 10));
      EXPECT_TRUE(v.passed) << n << " " << v.detail;
    }
  }
}

TEST(bit_reversal, basis_readout) {
  const MeasurementPattern p = bit_reversal_pattern(4);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    EXPECT_EQ(run_basis(p, {1, 0, 0, 0}, seed), (std::vector<int>{0, 0, 0, 1}));
    EXPECT_EQ(run_basis(p, {1, 1, 0, 1}, seed), (std::vector<int>{1, 0, 1, 1}));
  }
}

TEST(teleportation, decomposition_equations) {
  for (std::size_t n = 2; n <= 5; ++n) {
    const TeleportationReport r = teleportation_decomposition_check(n, n);
    EXPECT_EQ(r.pairs.size(), n);
    EXPECT_TRUE(r.equations_hold) << n;
    EXPECT_TRUE(r.reversal_after_bell_measurements) << n;
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_EQ(r.pairs[k].m.y, static_cast<int>(2 * k));
      EXPECT_EQ(r.pairs[k].o.y, static_cast<int>(2 * (n - 1 - k)));
    }
  }
  const TeleportationReport two = teleportation_decomposition_check(2, 7);
  ASSERT_TRUE(two.protocol_residual && two.bell_probability_gap);
  EXPECT_LT(*two.protocol_residual, 1e-10);
  EXPECT_LT(*two.bell_probability_gap, 1e-10);
}

TEST(interpret_readout, flips_on_x) {
  ByproductFrame f(3);
  f[0].x = true;
  f[1].z = true;
  f[2].x = true;
  f[2].z = true;
  EXPECT_EQ(interpret_readout({0, 0, 0}, f), (std::vector<int>{1, 0, 1}));
  EXPECT_EQ(interpret_readout({1, 1, 1}, f), (std::vector<int>{0, 1, 0}));
  EXPECT_THROW(interpret_readout({0, 0}, f), DimensionError);
}

TEST(compile, basis_permuting_circuit_truth_table) {
  const CircuitIR c = parse_circuit("CNOT 0 1\nS 1\nCNOT 1 2\nH 3\nCNOT 2 0\nH 3\nCNOT 3 1\nS 0\nCNOT 0 3\nCNOT 2 3\n");
  const CompileReport r = compile(c);
  for (int in = 0; in < 16; ++in) {
    std::vector<int> bits(4);
    std::vector<Complex> amps(16, 0.0);
    for (int k = 0; k < 4; ++k) bits[k] = (in >> k) & 1;
    amps[in] = 1.0;
    const StateVector out = simulate_circuit(c, StateVector::from_amplitudes(amps));
    std::vector<int> want(4, -1);
    for (std::size_t i = 0; i < 16; ++i) {
      if (std::norm(out.amplitude(i)) > 0.5) {
        for (int k = 0; k < 4; ++k) want[k] = static_cast<int>((i >> k) & 1);
      }
    }
    EXPECT_EQ(run_basis(r.pattern, bits, in), want) << in;
  }
}

TEST(compile, frame_matches_choi_frame) {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    const CircuitIR c = random_clifford_circuit(3, 8, rng);
    const CompileReport r = compile(c);
    const CliffordMap u = circuit_clifford(c);
    OutcomeSource src(rng());
    const ChoiRun run = run_choi(r.pattern, src);
    const auto measured = choi_frame(run, u);
    ASSERT_TRUE(measured);
    EXPECT_EQ(*measured, run.result.frame) << write_circuit(c);
  }
}

TEST(compile, template_locality) {
  const CircuitIR c = parse_circuit("H 0\nCNOT 0 1\nS 2\nCNOT 2 1\nROT 1 0.1 0.2 0.3\n");
  const CompileReport r = compile(c);
  std::size_t odd_rows = 0;
  for (const Coord& s : r.pattern.graph.sites()) {
    EXPECT_GE(s.y, 0);
    EXPECT_LE(s.y, 4);
    if (s.y % 2) ++odd_rows;
  }
  // One bridge site per CNOT, nothing else between the wires.
  EXPECT_EQ(odd_rows, 2u);
  // Every slot is 4 or 6 wide: 4 + 6 + 4 + 6 + 4.
  EXPECT_EQ(extent(r.pattern.graph).width(), 25);
}

TEST(compile, peephole_clifford_rotation) {
  const CircuitIR c = parse_circuit("ROT 0 1.5707963267948966 1.5707963267948966 1.5707963267948966\nCNOT 0 1\n");
  CompileOptions o;
  o.peephole = true;
  const CompileReport with = compile(c, o);
  const CompileReport without = compile(c);
  EXPECT_EQ(with.depth, 1);
  EXPECT_TRUE(with.pattern.all_pauli());
  const Eigen::MatrixXcd u = circuit_matrix(c);
  EXPECT_TRUE(verify_dense(with.pattern, u, options(BackendKind::kDense, 1, 3)).passed);
  EXPECT_TRUE(verify_dense(without.pattern, u, options(BackendKind::kDense, 1, 3)).passed);
}

TEST(compile, max_grid_is_enforced) {
  const CircuitIR c = parse_circuit("H 0\nH 0\nH 0\nCNOT 0 1\n");
  CompileOptions o;
  o.max_grid = 10;
  EXPECT_THROW(compile(c, o), CompileError);
  o.max_grid = 100;
  EXPECT_NO_THROW(compile(c, o));
}

TEST(compile, rejects_invalid_circuit) {
  CircuitIR c;
  c.num_logical = 1;
  c.gates = {Cnot{0, 1}};
  EXPECT_THROW(compile(c), DimensionError);
}

TEST(compile, embedding_preserves_map) {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 5; ++trial) {
    const CircuitIR c = random_clifford_circuit(3, 6, rng);
    CompileOptions o;
    o.embed_rectangle = true;
    const CompileReport r = compile(c, o);
    const auto b = extent(r.pattern.graph);
    EXPECT_EQ(r.site_count, static_cast<std::size_t>(b.width() * b.height()));
    EXPECT_EQ(r.depth, 1);
    EXPECT_TRUE(verify_choi(r.pattern, circuit_clifford(c), options(BackendKind::kTableau, trial)).passed);
  }
}
