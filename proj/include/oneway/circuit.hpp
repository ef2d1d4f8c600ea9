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
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "oneway/pauli.hpp"
#include "oneway/state_vector.hpp"
#include "oneway/tableau.hpp"

namespace oneway {

struct Cnot {
  std::size_t control = 0;
  std::size_t target = 1;
  bool operator==(const Cnot&) const = default;
};
struct Hadamard {
  std::size_t qubit = 0;
  bool operator==(const Hadamard&) const = default;
};
struct PhaseS {
  std::size_t qubit = 0;
  bool operator==(const PhaseS&) const = default;
};
struct Rotation {
  std::size_t qubit = 0;
  EulerAngles angles;
};

using Gate = std::variant<Cnot, Hadamard, PhaseS, Rotation>;

std::string gate_str(const Gate& gate);

/// A quantum logic network in temporal order.
struct CircuitIR {
  std::size_t num_logical = 0;
  std::vector<Gate> gates;

  /// Throws DimensionError on out-of-range or coinciding qubits.
  void validate() const;
  bool is_clifford() const;
};

/// Parses `CNOT c t`, `H q`, `S q`, `ROT q xi eta zeta`, with `#` comments.
/// The register is max index + 1 unless `num_logical` is larger.
/// Throws ParseError with the offending line number.
CircuitIR parse_circuit(const std::string& text, std::size_t num_logical = 0);
CircuitIR load_circuit_file(const std::string& path, std::size_t num_logical = 0);
std::string write_circuit(const CircuitIR& circuit);

/// exp(-i α σx / 2) and exp(-i α σz / 2).
Matrix2 rotation_x(double alpha);
Matrix2 rotation_z(double alpha);
/// U_R(ξ,η,ζ) = U_x(ζ) U_z(η) U_x(ξ).
Matrix2 euler_rotation(const EulerAngles& angles);
Matrix2 hadamard_matrix();
Matrix2 phase_matrix();

/// Applies one gate to `state`, logical qubit k living on qubits[k].
void apply_gate(StateVector& state, const Gate& gate, const std::vector<std::size_t>& qubits);
/// Same on a tableau; Rotation throws CapabilityError.
void apply_gate(StabilizerTableau& tableau, const Gate& gate, const std::vector<std::size_t>& qubits);

/// Direct simulation of the network on a dense register.
StateVector simulate_circuit(const CircuitIR& circuit, StateVector input);
/// The network's Clifford, U = G_last ⋯ G_first. Throws CapabilityError on Rotation.
CliffordMap circuit_clifford(const CircuitIR& circuit);

/// Random {CNOT, H, S} network; CNOT pairs are arbitrary distinct qubits.
/// n must be at least 2.
CircuitIR random_clifford_circuit(std::size_t n, std::size_t gates, std::mt19937_64& rng);

}  // namespace oneway
