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

#include "oneway/templates.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "oneway/errors.hpp"
#include "oneway/verify.hpp"
#include "oracle.hpp"

using namespace oneway;
using std::numbers::pi;

namespace {

std::string bases(const MeasurementPattern& p, int row, int from, int to) {
  std::string out;
  for (int x = from; x < to; ++x) out += basis_tag(p.assignments.at({x, row}));
  return out;
}

std::vector<FrameRule> wire_rules() {
  return {{{0, 0}, 1, 0, FrameAxis::kZ},
          {{1, 0}, 1, 0, FrameAxis::kX},
          {{2, 0}, 1, 0, FrameAxis::kZ},
          {{3, 0}, 1, 0, FrameAxis::kX}};
}

VerifyOptions dense_options(std::uint64_t seed) {
  VerifyOptions o;
  o.backend = BackendKind::kDense;
  o.seed = seed;
  o.trials = 10;
  return o;
}

}  // namespace

TEST(rotation_template, realizes_euler_rotation) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> a(-pi, pi);
  for (int i = 0; i < 20; ++i) {
    const GateTemplate t = rotation_template(EulerAngles(a(rng), a(rng), a(rng)));
    EXPECT_EQ(t.width, 4);
    EXPECT_FALSE(t.clifford.has_value());
    const VerifyReport r = verify_dense(t.pattern, t.reference, dense_options(i));
    EXPECT_TRUE(r.passed) << r.detail;
    EXPECT_LT(r.worst_infidelity, 1e-10);
    EXPECT_NE(r.detail.find("every outcome branch"), std::string::npos);
    EXPECT_EQ(r.runs, 16 * 10);
  }
}

TEST(rotation_template, frame_is_fixed) {
  const GateTemplate t = rotation_template(EulerAngles(0.3, 0.4, 0.5));
  EXPECT_EQ(t.pattern.frame_rules, wire_rules());
  EXPECT_EQ(logical_depth(t.pattern), 4);
}

TEST(hadamard_template, bases_and_depth) {
  const GateTemplate t = hadamard_template();
  EXPECT_EQ(bases(t.pattern, 0, 0, 4), "XYYY");
  EXPECT_EQ(dependency_dag(t.pattern).edge_count(), 0u);
  EXPECT_EQ(logical_depth(t.pattern), 1);
  EXPECT_EQ(t.pattern.frame_rules, wire_rules());
  const VerifyReport r = verify_dense(t.pattern, t.reference, dense_options(1));
  EXPECT_TRUE(r.passed) << r.detail;
}

TEST(phase_template, bases_and_depth) {
  const GateTemplate t = phase_template();
  EXPECT_EQ(bases(t.pattern, 0, 0, 4), "XXYX");
  EXPECT_EQ(dependency_dag(t.pattern).edge_count(), 0u);
  EXPECT_EQ(t.pattern.frame_rules, wire_rules());
  EXPECT_TRUE(verify_dense(t.pattern, t.reference, dense_options(2)).passed);
  ASSERT_TRUE(t.clifford);
  EXPECT_TRUE(verify_choi(t.pattern, *t.clifford, dense_options(2)).passed);
}

TEST(wire_template, identity_of_even_width) {
  for (int w : {2, 4, 6}) {
    const GateTemplate t = wire_template(w);
    EXPECT_EQ(t.width, w);
    EXPECT_TRUE(verify_dense(t.pattern, t.reference, dense_options(3)).passed);
  }
  EXPECT_THROW(wire_template(3), std::invalid_argument);
}

TEST(cnot_template, frozen_frame_rules) {
  const GateTemplate t = cnot_template();
  const std::vector<FrameRule> want{{{0, 1}, 1, 0, FrameAxis::kZ},
                                    {{0, 1}, 1, 1, FrameAxis::kZ},
                                    {{1, 1}, 1, 1, FrameAxis::kX}};
  EXPECT_EQ(t.pattern.frame_rules, want);
  EXPECT_EQ(logical_depth(t.pattern), 1);
}

TEST(cnot_template, matches_hand_built_cluster) {
  // Qubits: 0 control (1,0), 1 target input (0,1), 2 middle (1,1), 3 output (2,1).
  std::mt19937_64 rng(12);
  const oracle::Mat cnot = oracle::on_qubit(oracle::ket(1, 0) * oracle::ket(1, 0).adjoint(), 0, 2) +
                           oracle::on_qubit(oracle::ket(0, 1) * oracle::ket(0, 1).adjoint(), 0, 2) *
                               oracle::on_qubit(oracle::pauli('X'), 1, 2);
  for (int trial = 0; trial < 5; ++trial) {
    const oracle::Vec psi = oracle::random_state(2, rng);
    const oracle::Vec graph = oracle::cluster_with_input(psi, 2, 4, {{1, 2}, {2, 3}, {0, 2}});
    for (int sa = 0; sa < 2; ++sa) {
      for (int sb = 0; sb < 2; ++sb) {
        oracle::Vec out = oracle::measure_out(graph, {{1, oracle::equatorial(0, sa)}, {2, oracle::equatorial(0, sb)}});
        // Frozen rules: (0,1) gives z on both wires, (1,1) gives x on the target.
        if (sa) out = oracle::on_qubit(oracle::pauli('Z'), 0, 2) * oracle::on_qubit(oracle::pauli('Z'), 1, 2) * out;
        if (sb) out = oracle::on_qubit(oracle::pauli('X'), 1, 2) * out;
        EXPECT_LT(oracle::infidelity(out, cnot * psi), 1e-12) << sa << sb;
      }
    }
  }
}

TEST(cnot_template, truth_table_and_plus_states) {
  const GateTemplate t = cnot_template();
  for (int c = 0; c < 2; ++c) {
    for (int tt = 0; tt < 2; ++tt) {
      const std::array<Qubit2, 2> in{c ? Qubit2{0, 1} : Qubit2{1, 0}, tt ? Qubit2{0, 1} : Qubit2{1, 0}};
      const StateVector psi = StateVector::product(in);
      for (std::uint64_t seed = 0; seed < 4; ++seed) {
        OutcomeSource src(seed);
        const StateVector out = run_dense(t.pattern, psi, src);
        const std::size_t want = static_cast<std::size_t>(c) | static_cast<std::size_t>(c ^ tt) << 1;
        EXPECT_NEAR(std::norm(out.amplitude(want)), 1.0, 1e-12);
      }
    }
  }
  const StateVector pp = StateVector::plus(2);
  OutcomeSource src(9);
  EXPECT_LT(infidelity(run_dense(t.pattern, pp, src), pp), 1e-12);
}

TEST(bridged_cnot_template, both_orientations) {
  for (bool top : {true, false}) {
    const GateTemplate t = bridged_cnot_template(top);
    EXPECT_EQ(t.width, 6);
    EXPECT_TRUE(t.pattern.all_pauli());
    EXPECT_TRUE(t.pattern.relabels.empty());
    EXPECT_EQ(logical_depth(t.pattern), 1);
    const int crow = top ? 0 : 2, trow = top ? 2 : 0;
    EXPECT_EQ(bases(t.pattern, crow, 0, 6), "XYYYYY");
    EXPECT_EQ(bases(t.pattern, trow, 0, 6), "XXXYXX");
    EXPECT_EQ(basis_tag(t.pattern.assignments.at({3, 1})), "Y");
    EXPECT_EQ(t.pattern.inputs[0], (Coord{0, crow}));
    EXPECT_EQ(t.pattern.outputs[1], (Coord{6, trow}));
    EXPECT_TRUE(t.reference.isApprox(cnot_matrix(0, 1, 2)));
    VerifyOptions o = dense_options(4);
    o.trials = 3;
    const VerifyReport r = verify_dense(t.pattern, t.reference, o);
    EXPECT_TRUE(r.passed) << r.detail;
    EXPECT_EQ(r.runs, 3u);
    ASSERT_TRUE(t.clifford);
    EXPECT_TRUE(verify_choi(t.pattern, *t.clifford, o).passed);
  }
}

TEST(clifford_rotation_template, all_quarter_turn_triples) {
  int index = 0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c, ++index) {
        const GateTemplate t = clifford_rotation_template(EulerAngles(a * pi / 2, b * pi / 2, c * pi / 2));
        EXPECT_TRUE(t.pattern.all_pauli());
        EXPECT_EQ(logical_depth(t.pattern), 1);
        ASSERT_TRUE(t.clifford);
        const VerifyReport r = verify_dense(t.pattern, t.reference, dense_options(index));
        EXPECT_TRUE(r.passed) << a << b << c << " " << r.detail;
      }
    }
  }
}

TEST(single_qubit_clifford, recognizes_and_rejects) {
  const auto h = single_qubit_clifford(hadamard_matrix());
  ASSERT_TRUE(h);
  EXPECT_EQ(h->x_image(0).str(), "+Z");
  EXPECT_EQ(h->z_image(0).str(), "+X");
  const auto s = single_qubit_clifford(phase_matrix());
  ASSERT_TRUE(s);
  EXPECT_EQ(s->x_image(0).str(), "+Y");
  EXPECT_FALSE(single_qubit_clifford(euler_rotation(EulerAngles(0.3, 0.0, 0.0))));
}

TEST(derive_template_frame, reproduces_stored_rules) {
  for (GateTemplate t : {hadamard_template(), cnot_template(), bridged_cnot_template(false)}) {
    const auto before = t.pattern.frame_rules;
    t.pattern.frame_rules.clear();
    derive_template_frame(t);
    EXPECT_EQ(t.pattern.frame_rules, before) << t.name;
  }
}
