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

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "oneway/coord.hpp"
#include "oneway/pauli.hpp"
#include "oneway/state_vector.hpp"
#include "oneway/tableau.hpp"

namespace oneway {

/// Undirected lattice edge, stored with first < second.
using Edge = std::pair<Coord, Coord>;

/// A cluster 𝒞: occupied lattice sites plus the entangling bonds between them.
/// Bonds only join lattice neighbours. Site index = position in sites().
class ClusterGraph {
 public:
  ClusterGraph() = default;
  /// Throws std::invalid_argument on duplicate sites/edges, dangling
  /// endpoints or edges longer than one lattice step.
  ClusterGraph(std::vector<Coord> sites, std::vector<Edge> edges);

  /// Every lattice-adjacent pair of `sites` becomes an edge.
  static ClusterGraph induced(std::vector<Coord> sites);

  std::size_t size() const { return sites_.size(); }
  const std::vector<Coord>& sites() const { return sites_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool contains(const Coord& c) const { return index_.count(c) != 0; }
  std::optional<std::size_t> find(const Coord& c) const;
  std::size_t index_of(const Coord& c) const;
  const std::vector<Coord>& neighbors(const Coord& c) const;

  /// All lattice-adjacent site pairs are edges.
  bool is_induced() const;
  bool is_connected() const;

  bool operator==(const ClusterGraph& other) const {
    return sites_ == other.sites_ && edges_ == other.edges_;
  }

 private:
  std::vector<Coord> sites_;
  std::vector<Edge> edges_;
  std::map<Coord, std::size_t> index_;
  std::map<Coord, std::vector<Coord>> adjacency_;
};

/// Full width × height rectangle with every nearest-neighbour bond.
ClusterGraph grid_cluster(int width, int height);

/// K_a = σx at a, σz on each neighbour, as a Pauli over the graph's site order.
struct CorrelationOperator {
  Coord anchor;
  PauliString op;
};

CorrelationOperator correlation_operator(const ClusterGraph& graph, const Coord& anchor);

/// Applies the entangler S: one controlled-Z per edge. `state` is anything
/// with cz(a, b) addressed by site index.
template <typename State>
void entangle(State& state, const ClusterGraph& graph) {
  for (const auto& [a, b] : graph.edges()) state.cz(graph.index_of(a), graph.index_of(b));
}

/// Controlled-Z only on the edges accepted by `keep` (realizes S_MGO, S_IM, ...).
template <typename State>
void entangle_subset(State& state, const ClusterGraph& graph,
                     const std::function<bool(const Edge&)>& keep) {
  for (const auto& e : graph.edges()) {
    if (keep(e)) state.cz(graph.index_of(e.first), graph.index_of(e.second));
  }
}

/// Eigenvalue of each K_a on the prepared state.
struct ClusterReport {
  std::vector<std::pair<Coord, int>> signs;
  std::size_t satisfied() const;
};

/// Checks K_a|φ⟩ = |φ⟩ for every site (dense, to `tol`). Throws
/// VerificationError naming the first site whose equation fails.
ClusterReport verify_cluster_state(const StateVector& state, const ClusterGraph& graph,
                                   double tol = 1e-12);
/// Same via stabilizer membership with sign +1.
ClusterReport verify_cluster_state(const StabilizerTableau& state, const ClusterGraph& graph);

}  // namespace oneway
