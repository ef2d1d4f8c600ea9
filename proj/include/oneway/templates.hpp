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
#include <string>

#include <Eigen/Dense>

#include "oneway/circuit.hpp"
#include "oneway/pattern.hpp"
#include "oneway/pauli.hpp"

namespace oneway {

/// A verified building block. Logical qubit k of the gate sits on row 2k of
/// the footprint (except the standalone CNOT, whose wires are adjacent rows);
/// the input of every wire is at column 0 and its output at column `width`.
struct GateTemplate {
  std::string name;
  MeasurementPattern pattern;
  Eigen::MatrixXcd reference;  // logical qubit k is bit k of the index
  std::optional<CliffordMap> clifford;
  int width = 0;
};

/// Five-site chain realizing U_R(ξ,η,ζ) up to σx^{s2+s4} σz^{s1+s3}.
/// Sites (0,0)..(4,0); (0,0) is the input, (4,0) the output.
GateTemplate rotation_template(const EulerAngles& angles);
/// rotation_template at Clifford angles, pruned, with frame rules derived
/// by the Choi harness.
GateTemplate hadamard_template();
GateTemplate phase_template();
/// Minimal neighbouring-wire CNOT: control (1,0) passes through unmeasured,
/// target chain (0,1)-(1,1)-(2,1) with (0,1) and (1,1) measured in σx.
GateTemplate cnot_template();
/// Straight wire of `width` σx-measured sites; width must be even.
GateTemplate wire_template(int width);
/// CNOT between wires on rows 0 and 2 through a bridge at (3,1), six
/// columns wide. `control_on_top` selects which row is the control.
/// Logical qubit 0 is the control.
GateTemplate bridged_cnot_template(bool control_on_top);
/// A Clifford rotation (all angles multiples of π/2) as a pruned chain.
GateTemplate clifford_rotation_template(const EulerAngles& angles);

/// U as a CliffordMap if the 2×2 unitary is Clifford, else nullopt.
std::optional<CliffordMap> single_qubit_clifford(const Matrix2& u, double tol = 1e-9);

Eigen::Matrix2cd to_eigen(const Matrix2& m);
Eigen::MatrixXcd cnot_matrix(std::size_t control, std::size_t target, std::size_t n);

/// Rebuilds the template's frame rules from the Choi harness. Throws
/// VerificationError if any outcome is deterministic.
void derive_template_frame(GateTemplate& t);

}  // namespace oneway
