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

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "oneway/pauli.hpp"

namespace oneway {

using Complex = std::complex<double>;
using Matrix2 = std::array<std::array<Complex, 2>, 2>;
using Qubit2 = std::array<Complex, 2>;

/// Default maximum width of a dense state.
inline constexpr std::size_t kDefaultDenseCap = 22;

/// Result of a single projective measurement.
struct MeasurementOutcome {
  int s = 0;
  bool deterministic = false;
};

/// Picks a physical outcome given Pr(s = 0). Must return 0 or 1.
using OutcomeChooser = std::function<int(double prob_zero)>;

/// First state of the equatorial basis B(φ): (|0⟩ + e^{iφ}|1⟩)/√2.
Qubit2 equatorial_state(double phi, int s);

/// Exact dense amplitude vector. Qubit q is bit q of the basis index.
class StateVector {
 public:
  StateVector() = default;
  /// |0...0⟩ on n qubits.
  explicit StateVector(std::size_t num_qubits, std::size_t cap = kDefaultDenseCap);
  static StateVector plus(std::size_t num_qubits, std::size_t cap = kDefaultDenseCap);
  static StateVector from_amplitudes(std::vector<Complex> amplitudes,
                                     std::size_t cap = kDefaultDenseCap);
  /// Product state of the given single-qubit states, qubit 0 first.
  static StateVector product(std::span<const Qubit2> qubits, std::size_t cap = kDefaultDenseCap);

  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t cap() const { return cap_; }
  const std::vector<Complex>& amplitudes() const { return amps_; }
  Complex amplitude(std::size_t index) const { return amps_[index]; }
  double norm() const;

  /// Appends a new qubit (becomes the highest index) in state `q`.
  std::size_t add_qubit(const Qubit2& q);

  void apply(const Matrix2& u, std::size_t q);
  void h(std::size_t q);
  void s(std::size_t q);
  void x(std::size_t q);
  void z(std::size_t q);
  void cz(std::size_t a, std::size_t b);
  void cnot(std::size_t control, std::size_t target);
  /// Applies the (possibly non-Hermitian) Pauli operator including its phase.
  void apply_pauli(const PauliString& p);

  /// Probability of projecting qubit q onto `v` (normalized).
  double probability(std::size_t q, const Qubit2& v) const;

  /// Measures q in the orthonormal basis {v0, v1}; s = 0 projects onto v0.
  MeasurementOutcome measure(std::size_t q, const Qubit2& v0, const Qubit2& v1,
                             const OutcomeChooser& choose);
  /// Basis B(φ) of the equatorial family.
  MeasurementOutcome measure_equatorial(std::size_t q, double phi, const OutcomeChooser& choose);
  MeasurementOutcome measure_z(std::size_t q, const OutcomeChooser& choose);

  /// For a qubit known to be in the product state `from`, replaces it by `to`.
  void replace_product_qubit(std::size_t q, const Qubit2& from, const Qubit2& to);

  /// The state of `qubits` (in the given order) assuming every other qubit
  /// is in the product state |+⟩. Throws VerificationError if not.
  StateVector extract(std::span<const std::size_t> qubits) const;

  Complex inner(const StateVector& other) const;

 private:
  void check_qubit(std::size_t q) const;
  void renormalize();

  std::size_t num_qubits_ = 0;
  std::size_t cap_ = kDefaultDenseCap;
  std::vector<Complex> amps_;
};

/// |⟨a|b⟩| ≥ 1 - tol. Throws DimensionError on size mismatch.
bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol);

/// 1 - |⟨a|b⟩|.
double infidelity(const StateVector& a, const StateVector& b);

}  // namespace oneway
