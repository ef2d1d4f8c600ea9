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
#include <vector>

#include "oneway/pauli.hpp"
#include "oneway/state_vector.hpp"

namespace oneway {

/// Result of a stabilizer-group membership query.
enum class Membership { kAbsent, kPlus, kMinus };

/// Stabilizer state on n qubits in the destabilizer form of Aaronson and
/// Gottesman: n stabilizer generators plus n paired destabilizers, bit-packed
/// 64 qubits per word. Measurements cost O(n^2 / 64).
class StabilizerTableau {
 public:
  /// |+⟩^⊗n: stabilizers X_q, destabilizers Z_q.
  explicit StabilizerTableau(std::size_t num_qubits = 0);

  std::size_t num_qubits() const { return n_; }

  /// Appends a fresh qubit in |+⟩ and returns its index.
  std::size_t add_qubit_plus();

  void h(std::size_t q);
  void s(std::size_t q);
  void s_dag(std::size_t q);
  void x(std::size_t q);
  void z(std::size_t q);
  void cnot(std::size_t control, std::size_t target);
  void cz(std::size_t a, std::size_t b);

  /// Measures the Hermitian Pauli observable p; s = 0 is the +1 eigenvalue.
  /// Random outcomes are offered to `choose` with Pr(s=0) = 1/2, deterministic
  /// ones with Pr 0 or 1 (a disagreeing choice raises InconsistentForcing).
  MeasurementOutcome measure(const PauliString& p, const OutcomeChooser& choose);

  /// Whether ±p belongs to the stabilizer group, and with which sign.
  Membership contains(const PauliString& p) const;

  PauliString stabilizer(std::size_t i) const;
  PauliString destabilizer(std::size_t i) const;

  /// Stabilizers commute pairwise, destabilizers commute pairwise, and
  /// destabilizer i anticommutes exactly with stabilizer i.
  bool check_invariants() const;

 private:
  struct Row {
    std::vector<std::uint64_t> x;
    std::vector<std::uint64_t> z;
    bool sign = false;
  };

  Row pack(const PauliString& p) const;
  PauliString unpack(const Row& row) const;
  static bool anticommutes(const Row& a, const Row& b);
  /// target <- source · target, returning the Z4 phase exponent of the result.
  static int multiply_into(const Row& source, Row& target, int source_phase, int target_phase);

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<Row> destab_;
  std::vector<Row> stab_;
};

}  // namespace oneway
