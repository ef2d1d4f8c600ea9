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

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>

#include "oneway/errors.hpp"

namespace oneway {

ClusterGraph::ClusterGraph(std::vector<Coord> sites, std::vector<Edge> edges) {
  std::sort(sites.begin(), sites.end());
  if (std::adjacent_find(sites.begin(), sites.end()) != sites.end()) {
    throw std::invalid_argument("cluster graph: duplicate site");
  }
  sites_ = std::move(sites);
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    index_[sites_[i]] = i;
    adjacency_[sites_[i]];
  }
  for (auto& e : edges) {
    if (e.second < e.first) std::swap(e.first, e.second);
    if (!contains(e.first) || !contains(e.second)) {
      throw std::invalid_argument("cluster graph: edge endpoint " +
                                  to_string(contains(e.first) ? e.second : e.first) + " is not a site");
    }
    if (manhattan(e.first, e.second) != 1) {
      throw std::invalid_argument("cluster graph: edge " + to_string(e.first) + "-" +
                                  to_string(e.second) + " is not a lattice bond");
    }
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw std::invalid_argument("cluster graph: duplicate edge");
  }
  edges_ = std::move(edges);
  for (const auto& [a, b] : edges_) {
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& [c, ns] : adjacency_) std::sort(ns.begin(), ns.end());
}

ClusterGraph ClusterGraph::induced(std::vector<Coord> sites) {
  std::set<Coord> occupied(sites.begin(), sites.end());
  std::vector<Edge> edges;
  for (const auto& c : occupied) {
    for (const Coord n : {Coord{c.x + 1, c.y}, Coord{c.x, c.y + 1}}) {
      if (occupied.count(n)) edges.emplace_back(c, n);
    }
  }
  return ClusterGraph(std::move(sites), std::move(edges));
}

std::optional<std::size_t> ClusterGraph::find(const Coord& c) const {
  auto it = index_.find(c);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t ClusterGraph::index_of(const Coord& c) const {
  auto it = index_.find(c);
  if (it == index_.end()) throw std::out_of_range("site " + to_string(c) + " not in cluster");
  return it->second;
}

const std::vector<Coord>& ClusterGraph::neighbors(const Coord& c) const {
  auto it = adjacency_.find(c);
  if (it == adjacency_.end()) throw std::out_of_range("site " + to_string(c) + " not in cluster");
  return it->second;
}

bool ClusterGraph::is_induced() const { return induced(sites_).edges_ == edges_; }

bool ClusterGraph::is_connected() const {
  if (sites_.empty()) return true;
  std::set<Coord> seen{sites_.front()};
  std::deque<Coord> todo{sites_.front()};
  while (!todo.empty()) {
    const Coord c = todo.front();
    todo.pop_front();
    for (const auto& n : neighbors(c)) {
      if (seen.insert(n).second) todo.push_back(n);
    }
  }
  return seen.size() == sites_.size();
}

ClusterGraph grid_cluster(int width, int height) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("grid_cluster: dimensions must be at least 1");
  }
  std::vector<Coord> sites;
  sites.reserve(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) sites.push_back({x, y});
  }
  return ClusterGraph::induced(std::move(sites));
}

CorrelationOperator correlation_operator(const ClusterGraph& graph, const Coord& anchor) {
  PauliString op(graph.size());
  op.set(graph.index_of(anchor), 'X');
  for (const auto& n : graph.neighbors(anchor)) op.set(graph.index_of(n), 'Z');
  return {anchor, std::move(op)};
}

std::size_t ClusterReport::satisfied() const {
  return static_cast<std::size_t>(
      std::count_if(signs.begin(), signs.end(), [](const auto& s) { return s.second == 1; }));
}

ClusterReport verify_cluster_state(const StateVector& state, const ClusterGraph& graph, double tol) {
  if (state.num_qubits() != graph.size()) throw DimensionError("verify_cluster_state: size mismatch");
  ClusterReport report;
  for (const auto& a : graph.sites()) {
    StateVector image = state;
    image.apply_pauli(correlation_operator(graph, a).op);
    const Complex overlap = state.inner(image);
    if (std::abs(overlap - 1.0) > tol) {
      throw VerificationError("eigenvalue equation violated at site " + to_string(a) +
                              " (overlap " + std::to_string(overlap.real()) + ")");
    }
    report.signs.emplace_back(a, 1);
  }
  return report;
}

ClusterReport verify_cluster_state(const StabilizerTableau& state, const ClusterGraph& graph) {
  if (state.num_qubits() != graph.size()) throw DimensionError("verify_cluster_state: size mismatch");
  ClusterReport report;
  for (const auto& a : graph.sites()) {
    const Membership m = state.contains(correlation_operator(graph, a).op);
    if (m != Membership::kPlus) {
      throw VerificationError("eigenvalue equation violated at site " + to_string(a) +
                              (m == Membership::kMinus ? " (sign -1)" : " (not a stabilizer)"));
    }
    report.signs.emplace_back(a, 1);
  }
  return report;
}

}  // namespace oneway
