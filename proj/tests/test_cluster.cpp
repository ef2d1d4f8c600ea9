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

#include "oneway/cluster.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oneway/errors.hpp"
#include "oracle.hpp"
#include "random_graphs.hpp"

using namespace oneway;

TEST(cluster_graph, grid_shape) {
  const ClusterGraph g = grid_cluster(3, 2);
  EXPECT_EQ(g.size(), 6u);
  EXPECT_EQ(g.edges().size(), 7u);
  EXPECT_TRUE(g.is_induced());
  EXPECT_TRUE(g.is_connected());
  EXPECT_EQ(g.neighbors({1, 0}).size(), 3u);
  EXPECT_THROW(grid_cluster(0, 3), std::invalid_argument);
}

TEST(cluster_graph, rejects_bad_input) {
  EXPECT_THROW(ClusterGraph({{0, 0}, {0, 0}}, {}), std::invalid_argument);
  EXPECT_THROW(ClusterGraph({{0, 0}}, {{{0, 0}, {1, 0}}}), std::invalid_argument);
  EXPECT_THROW(ClusterGraph({{0, 0}, {1, 1}}, {{{0, 0}, {1, 1}}}), std::invalid_argument);
  EXPECT_THROW(ClusterGraph({{0, 0}, {1, 0}}, {{{0, 0}, {1, 0}}, {{1, 0}, {0, 0}}}), std::invalid_argument);
}

TEST(cluster_graph, sites_sorted_row_major) {
  const ClusterGraph g = ClusterGraph::induced({{1, 1}, {0, 1}, {1, 0}});
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(g.sites()[0], (Coord{1, 0}));
  EXPECT_EQ(g.sites()[1], (Coord{0, 1}));
  EXPECT_EQ(g.sites()[2], (Coord{1, 1}));
}

TEST(correlation_operator, two_site_pair) {
  const ClusterGraph g = grid_cluster(2, 1);
  EXPECT_EQ(correlation_operator(g, {0, 0}).op.str(), "+XZ");
  EXPECT_EQ(correlation_operator(g, {1, 0}).op.str(), "+ZX");
}

TEST(cluster_state, grid_2x2_dense_all_plus) {
  const ClusterGraph g = grid_cluster(2, 2);
  StateVector s = StateVector::plus(4);
  entangle(s, g);
  const ClusterReport r = verify_cluster_state(s, g);
  EXPECT_EQ(r.satisfied(), 4u);
}

TEST(cluster_state, matches_independent_oracle) {
  const ClusterGraph g = grid_cluster(3, 2);
  StateVector s = StateVector::plus(g.size());
  entangle(s, g);
  oracle::Vec v = oracle::product(std::vector<oracle::Vec>(g.size(), oracle::plus()));
  for (const auto& [a, b] : g.edges()) oracle::cz(v, g.index_of(a), g.index_of(b));
  for (std::size_t i = 0; i < s.amplitudes().size(); ++i) {
    EXPECT_NEAR(std::abs(s.amplitude(i) - v(static_cast<Eigen::Index>(i))), 0.0, 1e-14);
  }
}

TEST(cluster_state, random_subgraphs_dense) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const ClusterGraph g = testing_support::random_connected_subgraph(4, 4, rng);
    ASSERT_TRUE(g.is_connected());
    StateVector s = StateVector::plus(g.size());
    entangle(s, g);
    EXPECT_EQ(verify_cluster_state(s, g).satisfied(), g.size());
  }
}

TEST(cluster_state, grids_up_to_20_tableau) {
  for (int side : {1, 2, 5, 11, 20}) {
    const ClusterGraph g = grid_cluster(side, side);
    StabilizerTableau t(g.size());
    entangle(t, g);
    EXPECT_EQ(verify_cluster_state(t, g).satisfied(), g.size());
  }
}

TEST(cluster_state, missing_bond_names_the_site) {
  const ClusterGraph g = grid_cluster(3, 1);
  StabilizerTableau t(3);
  t.cz(0, 1);
  try {
    verify_cluster_state(t, g);
    FAIL() << "expected a VerificationError";
  } catch (const VerificationError& e) {
    EXPECT_NE(std::string(e.what()).find("(1,0)"), std::string::npos) << e.what();
  }
}
