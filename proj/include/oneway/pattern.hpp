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
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "oneway/backend.hpp"
#include "oneway/cluster.hpp"
#include "oneway/coord.hpp"
#include "oneway/pauli.hpp"

namespace oneway {

/// Effective outcomes s_j ∈ {0,1} keyed by site.
class OutcomeRecord {
 public:
  void set(const Coord& site, int s) { values_[site] = s; }
  bool contains(const Coord& site) const { return values_.count(site) != 0; }
  /// Throws SchedulingError when the site has not been measured yet.
  int at(const Coord& site) const;
  std::size_t size() const { return values_.size(); }
  const std::map<Coord, int>& entries() const { return values_; }
  bool operator==(const OutcomeRecord&) const = default;

 private:
  std::map<Coord, int> values_;
};

/// constant ⊕ Σ_{d ∈ sites} s_d over GF(2). Sites are kept sorted and unique;
/// toggling a present site removes it.
struct Parity {
  std::vector<Coord> sites;
  bool constant = false;

  void toggle(const Coord& site);
  Parity& operator^=(const Parity& other);
  bool empty() const { return sites.empty() && !constant; }
  int evaluate(const OutcomeRecord& record) const;
  bool operator==(const Parity&) const = default;
};

struct PauliXBasis {
  bool operator==(const PauliXBasis&) const = default;
};
struct PauliYBasis {
  bool operator==(const PauliYBasis&) const = default;
};
struct PauliZRemoval {
  bool operator==(const PauliZRemoval&) const = default;
};
/// B(θ') with θ' = (-1)^{(Σ_{d∈deps} s_d + offset) mod 2} · θ.
struct Equatorial {
  double theta = 0.0;
  std::vector<Coord> deps;  // sorted, unique (parity semantics)
  int offset = 0;
  bool operator==(const Equatorial&) const = default;
};

using BasisSpec = std::variant<PauliXBasis, PauliYBasis, PauliZRemoval, Equatorial>;

/// Builds an Equatorial spec; repeated deps cancel pairwise.
Equatorial make_equatorial(double theta, std::vector<Coord> deps, int offset);

std::string basis_tag(const BasisSpec& basis);
bool is_pauli(const BasisSpec& basis);

/// Effective measurement angle of an adaptive equatorial site.
/// Throws SchedulingError if a dependency outcome is missing.
double effective_angle(const Equatorial& spec, const OutcomeRecord& record);

enum class FrameAxis { kX, kZ };

/// When site's effective outcome equals `outcome`, toggle σ_axis on logical `qubit`.
/// A constant byproduct is written as the pair outcome=0 and outcome=1.
struct FrameRule {
  Coord site;
  int outcome = 1;
  int qubit = 0;
  FrameAxis axis = FrameAxis::kX;

  friend bool operator==(const FrameRule&, const FrameRule&) = default;
  friend auto operator<=>(const FrameRule& a, const FrameRule& b) {
    if (auto c = a.site <=> b.site; c != 0) return c;
    if (auto c = a.outcome <=> b.outcome; c != 0) return c;
    if (auto c = a.qubit <=> b.qubit; c != 0) return c;
    return static_cast<int>(a.axis) <=> static_cast<int>(b.axis);
  }
};

/// The compiler's target IR: which site is measured in which basis, which
/// sites carry the logical input and output registers, and how outcomes map
/// onto the byproduct frame acting on the outputs.
///
/// `relabels` holds classical outcome relabelings: the effective outcome of
/// site j is s_phys(j) ⊕ relabels[j] evaluated over effective outcomes. Pauli
/// pruning and σz removal both produce them; neither changes a basis.
struct MeasurementPattern {
  ClusterGraph graph;
  std::map<Coord, BasisSpec> assignments;
  std::vector<Coord> inputs;
  std::vector<Coord> outputs;
  std::map<Coord, Parity> relabels;
  std::vector<FrameRule> frame_rules;

  std::size_t num_logical() const { return outputs.size(); }
  std::vector<Coord> measured_sites() const;
  /// True when every measured site is σx, σy, σz or an equatorial site at a
  /// multiple of π/2 (so the tableau backend can run it).
  bool all_pauli() const;
  /// Throws PatternError on any structural problem, including cycles.
  void validate() const;
  ByproductFrame frame_for(const OutcomeRecord& record) const;
  /// Canonical ordering of frame rules; drops pairs that cancel.
  void normalize_frame_rules();

  bool operator==(const MeasurementPattern&) const = default;
};

/// Measurement-order constraints: an edge d → j means d must be measured first.
struct DependencyDag {
  std::vector<Coord> nodes;
  std::map<Coord, std::vector<Coord>> predecessors;

  std::size_t edge_count() const;
  std::vector<std::pair<Coord, Coord>> edges() const;
};

/// Basis-changing dependencies only: d → j when s_d can change the basis of j.
/// For a dependency d, every site its effective outcome is relabeled by is
/// also a predecessor. Throws PatternError on cycles.
DependencyDag dependency_dag(const MeasurementPattern& pattern);

/// Equatorial sites at θ ≡ 0 (mod π) become σx and at θ ≡ π/2 (mod π) become
/// σy; the sign the dependencies would have applied moves into `relabels`.
MeasurementPattern prune_pauli_dependencies(const MeasurementPattern& pattern);

/// Greedy measurement rounds: round k holds every site whose DAG
/// predecessors all lie in earlier rounds.
struct Schedule {
  std::vector<std::vector<Coord>> rounds;
  int depth() const { return static_cast<int>(rounds.size()); }
};

Schedule measurement_rounds(const MeasurementPattern& pattern);
int logical_depth(const MeasurementPattern& pattern);

/// Seedable source of measurement outcomes with optional forcing.
/// Forced outcomes are strict (probability zero raises InconsistentForcing);
/// preferred outcomes fall back to the other value when impossible.
class OutcomeSource {
 public:
  explicit OutcomeSource(std::uint64_t seed = 0) : rng_(seed) {}

  void force(const Coord& site, int s) { forced_[site] = s; }
  void prefer(const Coord& site, int s) { preferred_[site] = s; }
  void clear() {
    forced_.clear();
    preferred_.clear();
  }

  /// Picks the effective outcome of `site` given Pr(s_eff = 0).
  int choose(const Coord& site, double prob_zero);
  double uniform();

 private:
  std::mt19937_64 rng_;
  std::map<Coord, int> forced_;
  std::map<Coord, int> preferred_;
};

struct ExecuteOptions {
  /// Explicit measurement order; must be a linear extension of the
  /// dependency order. Default: topological order sweeping by column.
  std::optional<std::vector<Coord>> order;
};

struct ExecutionResult {
  std::vector<std::size_t> output_qubits;  // backend qubit of output k
  OutcomeRecord outcomes;                  // effective outcomes
  OutcomeRecord raw;                       // physical outcomes
  ByproductFrame frame;
  std::vector<Coord> order;
};

/// Runs the pattern on `backend`. `input_qubits[k]` already holds logical
/// input k. Non-input sites are prepared in |+⟩ lazily, entangled with their
/// materialized neighbours, measured, and released; the returned output
/// qubits hold F·U·|ψ_in⟩ where F is the returned frame.
ExecutionResult execute(const MeasurementPattern& pattern, Backend& backend,
                        std::span<const std::size_t> input_qubits, OutcomeSource& source,
                        const ExecuteOptions& options = {});

/// Fills the bounding rectangle with σz-removed sites. Measured neighbours of
/// a removal get its outcome folded into their relabel; output neighbours get
/// a σz frame rule. Requires an induced-lattice graph.
MeasurementPattern embed_in_rectangle(const MeasurementPattern& pattern);

}  // namespace oneway
