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
#include <map>
#include <string_view>
#include <vector>

#include "oneway/state_vector.hpp"
#include "oneway/tableau.hpp"

namespace oneway {

enum class BackendKind { kDense, kTableau, kAuto };

BackendKind parse_backend_kind(std::string_view name);
std::string_view backend_name(BackendKind kind);

/// A single-qubit measurement as physically performed: either σz or the
/// equatorial basis B(angle). s = 0 always denotes the first basis state.
struct PhysicalBasis {
  enum class Kind { kZ, kEquatorial };
  Kind kind = Kind::kEquatorial;
  double angle = 0.0;

  static PhysicalBasis z_basis() { return {Kind::kZ, 0.0}; }
  static PhysicalBasis equatorial(double phi) { return {Kind::kEquatorial, phi}; }
};

/// Quarter turns k when phi ≡ k·π/2 (mod 2π), else -1.
int pauli_quarter_turns(double phi);

/// Qubit-pool executor interface shared by the dense and stabilizer engines.
/// Measured qubits are released back to the pool in |+⟩ and reused, so the
/// live width tracks the measurement front rather than the pattern size.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual BackendKind kind() const = 0;
  virtual bool supports(const PhysicalBasis& basis) const = 0;
  virtual std::size_t num_qubits() const = 0;

  /// A qubit in |+⟩, recycled from the pool when possible.
  virtual std::size_t allocate_plus() = 0;
  virtual void h(std::size_t q) = 0;
  virtual void x(std::size_t q) = 0;
  virtual void z(std::size_t q) = 0;
  virtual void cz(std::size_t a, std::size_t b) = 0;
  virtual void cnot(std::size_t control, std::size_t target) = 0;

  /// Throws CapabilityError if `supports(basis)` is false.
  virtual MeasurementOutcome measure(std::size_t q, const PhysicalBasis& basis,
                                     const OutcomeChooser& choose) = 0;
  /// Returns a just-measured qubit to the pool, resetting it to |+⟩.
  virtual void release(std::size_t q) = 0;
};

class DenseBackend final : public Backend {
 public:
  explicit DenseBackend(std::size_t cap = kDefaultDenseCap);

  BackendKind kind() const override { return BackendKind::kDense; }
  bool supports(const PhysicalBasis&) const override { return true; }
  std::size_t num_qubits() const override { return state_.num_qubits(); }

  /// Adds a qubit in an arbitrary single-qubit state (never recycled).
  std::size_t allocate(const Qubit2& q);
  std::size_t allocate_plus() override;
  void h(std::size_t q) override { state_.h(q); }
  void x(std::size_t q) override { state_.x(q); }
  void z(std::size_t q) override { state_.z(q); }
  void cz(std::size_t a, std::size_t b) override { state_.cz(a, b); }
  void cnot(std::size_t c, std::size_t t) override { state_.cnot(c, t); }
  MeasurementOutcome measure(std::size_t q, const PhysicalBasis& basis,
                             const OutcomeChooser& choose) override;
  void release(std::size_t q) override;

  StateVector& state() { return state_; }
  const StateVector& state() const { return state_; }
  /// Replaces the whole register; used to load multi-qubit input states.
  void load(StateVector state);

 private:
  StateVector state_;
  std::vector<std::size_t> free_;
  std::map<std::size_t, Qubit2> collapsed_;
};

class TableauBackend final : public Backend {
 public:
  TableauBackend() = default;

  BackendKind kind() const override { return BackendKind::kTableau; }
  bool supports(const PhysicalBasis& basis) const override;
  std::size_t num_qubits() const override { return tableau_.num_qubits(); }

  std::size_t allocate_plus() override;
  void h(std::size_t q) override { tableau_.h(q); }
  void x(std::size_t q) override { tableau_.x(q); }
  void z(std::size_t q) override { tableau_.z(q); }
  void cz(std::size_t a, std::size_t b) override { tableau_.cz(a, b); }
  void cnot(std::size_t c, std::size_t t) override { tableau_.cnot(c, t); }
  MeasurementOutcome measure(std::size_t q, const PhysicalBasis& basis,
                             const OutcomeChooser& choose) override;
  void release(std::size_t q) override;

  StabilizerTableau& tableau() { return tableau_; }
  const StabilizerTableau& tableau() const { return tableau_; }

 private:
  struct Collapsed {
    char axis;      // 'X', 'Y' or 'Z'
    bool negative;  // post-measurement eigenvalue of the axis is -1
  };
  StabilizerTableau tableau_;
  std::vector<std::size_t> free_;
  std::map<std::size_t, Collapsed> collapsed_;
};

}  // namespace oneway
