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

#include <optional>
#include <vector>

#include "oneway/backend.hpp"
#include "oneway/pattern.hpp"
#include "oneway/pauli.hpp"

namespace oneway {

/// One execution of a pattern whose inputs are half of Bell pairs with
/// reference qubits, so the final stabilizer group encodes the whole channel.
struct ChoiRun {
  TableauBackend backend;
  std::vector<std::size_t> references;  // reference of input k
  ExecutionResult result;
};

ChoiRun run_choi(const MeasurementPattern& pattern, OutcomeSource& source);

/// X_ref(k) ⊗ p placed on the run's reference and output qubits; identity elsewhere.
PauliString choi_operator(const ChoiRun& run, std::size_t k, char ref_pauli, const PauliString& on_outputs);

/// If the realized map is F·U for a Pauli F, returns F's exponents; otherwise
/// nullopt. Global phases are ignored.
std::optional<ByproductFrame> choi_frame(const ChoiRun& run, const CliffordMap& u);

/// Applies the run's recorded frame as a physical correction and checks that
/// every X_ref⊗U X U† and Z_ref⊗U Z U† holds with sign +.
bool choi_corrected_matches(ChoiRun& run, const CliffordMap& u);

struct FrameDerivation {
  std::vector<FrameRule> rules;
  std::vector<Coord> deterministic;  // sites whose outcome was never random
};

/// Reads the affine outcome-to-frame map of an all-Pauli pattern meant to
/// realize U: one run with every outcome 0, then one run per site with that
/// site flipped. Throws VerificationError if a run is not of the form F·U.
FrameDerivation derive_frame_rules(const MeasurementPattern& pattern, const CliffordMap& u);

}  // namespace oneway
