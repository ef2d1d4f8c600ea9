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

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oneway/backend.hpp"
#include "oneway/pattern.hpp"
#include "oneway/pauli.hpp"
#include "oneway/state_vector.hpp"

namespace oneway {

struct VerifyOptions {
  BackendKind backend = BackendKind::kAuto;
  std::size_t trials = 20;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  /// Dense mode: run every outcome branch (by preference) instead of sampling,
  /// when there are at most this many measured sites.
  std::size_t exhaustive_limit = 6;
};

struct VerifyReport {
  bool passed = false;
  std::string mode;  // "dense" or "choi"
  std::size_t runs = 0;
  double worst_infidelity = 0.0;
  std::string detail;
};

/// Haar-like random pure state on n qubits.
StateVector random_state(std::size_t n, std::mt19937_64& rng);

/// Multiplies the dense register by `u` (logical qubit k is bit k).
StateVector apply_matrix(const Eigen::MatrixXcd& u, const StateVector& state);

/// Runs the pattern once on a dense backend and returns the frame-corrected
/// output state.
StateVector run_dense(const MeasurementPattern& pattern, const StateVector& input, OutcomeSource& source,
                      const ExecuteOptions& options = {});

/// Dense mode: random inputs, outputs compared with U|ψ⟩ up to global phase.
VerifyReport verify_dense(const MeasurementPattern& pattern, const Eigen::MatrixXcd& reference,
                          const VerifyOptions& options);
/// Choi mode on the tableau: exact stabilizer identity after frame correction.
VerifyReport verify_choi(const MeasurementPattern& pattern, const CliffordMap& reference,
                         const VerifyOptions& options);

/// Dispatches on options.backend. kAuto picks Choi when a Clifford reference
/// is given and the pattern is all-Pauli, dense otherwise. Throws
/// CapabilityError if the tableau is requested without a Clifford reference.
VerifyReport verify_equivalence(const MeasurementPattern& pattern, const std::optional<Eigen::MatrixXcd>& dense,
                                const std::optional<CliffordMap>& clifford, const VerifyOptions& options);

/// One pair of Bell-pair equations between m_k and its partner output.
struct BellPairCheck {
  Coord m;
  Coord o;
  Membership xz = Membership::kAbsent;  // σx(m) σz(o)
  Membership zx = Membership::kAbsent;  // σz(m) σx(o)
};

struct TeleportationReport {
  std::vector<BellPairCheck> pairs;
  bool equations_hold = false;
  bool reversal_after_bell_measurements = false;
  /// n = 2 only: protocol-1 versus protocol-2 dense residual, and the largest
  /// gap between step-5 outcome probabilities and a direct Bell-basis projection.
  std::optional<double> protocol_residual;
  std::optional<double> bell_probability_gap;
};

/// Splits the bit-reversal block into I, M, G, O and runs the two-stage
/// protocol: entangle M∪G∪O and measure G, check the eigenvalue equations on
/// M∪O, then entangle I with M and measure I and M.
TeleportationReport teleportation_decomposition_check(std::size_t n, std::uint64_t seed = 0);

}  // namespace oneway
