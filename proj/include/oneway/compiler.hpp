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
#include <vector>

#include "oneway/circuit.hpp"
#include "oneway/pattern.hpp"
#include "oneway/pauli.hpp"

namespace oneway {

struct CompileOptions {
  /// Fill the bounding rectangle with σz-removed sites.
  bool embed_rectangle = false;
  /// Largest allowed extent in either direction, in lattice sites.
  int max_grid = 100000;
  /// Replace rotations whose angles are all multiples of π/2 by pruned
  /// Clifford chains.
  bool peephole = false;
};

struct CompileReport {
  MeasurementPattern pattern;
  int depth = 0;
  std::size_t site_count = 0;
  Schedule schedule;
};

/// Neighbouring-wire CNOTs equivalent to CNOT(c, t): the control is carried
/// next to the target by a chain of swaps (three CNOTs each) and carried back.
std::vector<Cnot> distant_cnot(std::size_t control, std::size_t target);

/// Lays wire k on row 2k, gives each gate its own column slot (4 columns
/// for one-qubit gates, 6 for a neighbouring CNOT) and composes the byproduct
/// frame slot by slot. The returned pattern is pruned.
/// Throws CompileError when the layout exceeds `max_grid`.
CompileReport compile(const CircuitIR& circuit, const CompileOptions& options = {});

/// (2n−1)×(2n−1) block: inputs (0, 2k), outputs (2n−2, 2k), every other
/// site measured in σx. The left column holds only the inputs; with
/// `embed_rectangle` its blank squares become σz removals.
MeasurementPattern bit_reversal_pattern(std::size_t n, bool embed_rectangle = false);
/// The qubit-order reversal k ↦ n−1−k.
CliffordMap reversal_clifford(std::size_t n);

/// σz readout of the outputs, corrected by the frame: bit k flips iff the
/// frame carries σx on qubit k. Throws DimensionError on width mismatch.
std::vector<int> interpret_readout(const std::vector<int>& z_outcomes, const ByproductFrame& frame);

}  // namespace oneway
