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

#include "oneway/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "oneway/errors.hpp"

namespace oneway {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string angle_str(double a) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", a);
  return buf;
}

Matrix2 multiply(const Matrix2& a, const Matrix2& b) {
  Matrix2 out{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  }
  return out;
}

std::size_t parse_index(const std::string& tok, int line) {
  std::size_t used = 0;
  long long v = -1;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || v < 0) throw ParseError(line, "bad qubit index '" + tok + "'");
  return static_cast<std::size_t>(v);
}

double parse_real(const std::string& tok, int line) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || !std::isfinite(v)) throw ParseError(line, "bad angle '" + tok + "'");
  return v;
}

}  // namespace

std::string gate_str(const Gate& gate) {
  return std::visit(
      Overloaded{[](const Cnot& g) { return "CNOT " + std::to_string(g.control) + " " + std::to_string(g.target); },
                 [](const Hadamard& g) { return "H " + std::to_string(g.qubit); },
                 [](const PhaseS& g) { return "S " + std::to_string(g.qubit); },
                 [](const Rotation& g) {
                   return "ROT " + std::to_string(g.qubit) + " " + angle_str(g.angles.xi) + " " +
                          angle_str(g.angles.eta) + " " + angle_str(g.angles.zeta);
                 }},
      gate);
}

void CircuitIR::validate() const {
  auto check = [&](std::size_t q) {
    if (q >= num_logical) {
      throw DimensionError("qubit " + std::to_string(q) + " outside a register of " + std::to_string(num_logical));
    }
  };
  for (const auto& g : gates) {
    std::visit(Overloaded{[&](const Cnot& c) {
                            check(c.control);
                            check(c.target);
                            if (c.control == c.target) throw DimensionError("CNOT with control == target");
                          },
                          [&](const auto& one) { check(one.qubit); }},
               g);
  }
}

bool CircuitIR::is_clifford() const {
  for (const auto& g : gates) {
    if (std::holds_alternative<Rotation>(g)) return false;
  }
  return true;
}

CircuitIR parse_circuit(const std::string& text, std::size_t num_logical) {
  CircuitIR circuit;
  std::size_t max_index = 0;
  bool any = false;
  std::istringstream in(text);
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto expect = [&](std::size_t n) {
      if (tok.size() != n) {
        throw ParseError(line_no, tok[0] + " takes " + std::to_string(n - 1) + " operands, got " +
                                      std::to_string(tok.size() - 1));
      }
    };
    Gate gate;
    if (tok[0] == "CNOT") {
      expect(3);
      Cnot c{parse_index(tok[1], line_no), parse_index(tok[2], line_no)};
      if (c.control == c.target) throw ParseError(line_no, "CNOT control equals target");
      gate = c;
    } else if (tok[0] == "H") {
      expect(2);
      gate = Hadamard{parse_index(tok[1], line_no)};
    } else if (tok[0] == "S") {
      expect(2);
      gate = PhaseS{parse_index(tok[1], line_no)};
    } else if (tok[0] == "ROT") {
      expect(5);
      gate = Rotation{parse_index(tok[1], line_no),
                      EulerAngles(parse_real(tok[2], line_no), parse_real(tok[3], line_no),
                                  parse_real(tok[4], line_no))};
    } else {
      throw ParseError(line_no, "unknown gate '" + tok[0] + "'");
    }
    std::visit(Overloaded{[&](const Cnot& c) { max_index = std::max({max_index, c.control, c.target}); },
                          [&](const auto& one) { max_index = std::max(max_index, one.qubit); }},
               gate);
    any = true;
    circuit.gates.push_back(gate);
  }
  circuit.num_logical = std::max(num_logical, any ? max_index + 1 : std::size_t{0});
  return circuit;
}

CircuitIR load_circuit_file(const std::string& path, std::size_t num_logical) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_circuit(ss.str(), num_logical);
}

std::string write_circuit(const CircuitIR& circuit) {
  std::string out;
  for (const auto& g : circuit.gates) out += gate_str(g) + "\n";
  return out;
}

Matrix2 rotation_x(double a) {
  const Complex c(std::cos(a / 2), 0), s(0, -std::sin(a / 2));
  return Matrix2{{{c, s}, {s, c}}};
}

Matrix2 rotation_z(double a) {
  return Matrix2{{{std::polar(1.0, -a / 2), 0}, {0, std::polar(1.0, a / 2)}}};
}

Matrix2 euler_rotation(const EulerAngles& e) {
  return multiply(rotation_x(e.zeta), multiply(rotation_z(e.eta), rotation_x(e.xi)));
}

Matrix2 hadamard_matrix() {
  const double r = 1 / std::sqrt(2.0);
  return Matrix2{{{r, r}, {r, -r}}};
}

Matrix2 phase_matrix() { return Matrix2{{{1, 0}, {0, Complex(0, 1)}}}; }

void apply_gate(StateVector& state, const Gate& gate, const std::vector<std::size_t>& q) {
  std::visit(Overloaded{[&](const Cnot& g) { state.cnot(q.at(g.control), q.at(g.target)); },
                        [&](const Hadamard& g) { state.h(q.at(g.qubit)); },
                        [&](const PhaseS& g) { state.s(q.at(g.qubit)); },
                        [&](const Rotation& g) { state.apply(euler_rotation(g.angles), q.at(g.qubit)); }},
             gate);
}

void apply_gate(StabilizerTableau& t, const Gate& gate, const std::vector<std::size_t>& q) {
  std::visit(Overloaded{[&](const Cnot& g) { t.cnot(q.at(g.control), q.at(g.target)); },
                        [&](const Hadamard& g) { t.h(q.at(g.qubit)); },
                        [&](const PhaseS& g) { t.s(q.at(g.qubit)); },
                        [&](const Rotation&) {
                          throw CapabilityError("tableau cannot apply a generic rotation");
                        }},
             gate);
}

StateVector simulate_circuit(const CircuitIR& circuit, StateVector input) {
  circuit.validate();
  if (input.num_qubits() != circuit.num_logical) {
    throw DimensionError("input has " + std::to_string(input.num_qubits()) + " qubits, circuit " +
                         std::to_string(circuit.num_logical));
  }
  std::vector<std::size_t> q(circuit.num_logical);
  for (std::size_t k = 0; k < q.size(); ++k) q[k] = k;
  for (const auto& g : circuit.gates) apply_gate(input, g, q);
  return input;
}

CliffordMap circuit_clifford(const CircuitIR& circuit) {
  circuit.validate();
  CliffordMap u = CliffordMap::identity(circuit.num_logical);
  for (const auto& g : circuit.gates) {
    std::visit(Overloaded{[&](const Cnot& c) { u.cnot(c.control, c.target); },
                          [&](const Hadamard& h) { u.h(h.qubit); },
                          [&](const PhaseS& s) { u.s(s.qubit); },
                          [&](const Rotation&) {
                            throw CapabilityError("circuit contains a non-Clifford rotation");
                          }},
               g);
  }
  return u;
}

CircuitIR random_clifford_circuit(std::size_t n, std::size_t gates, std::mt19937_64& rng) {
  if (n < 2) throw DimensionError("random Clifford circuit needs at least two qubits");
  CircuitIR c;
  c.num_logical = n;
  std::uniform_int_distribution<std::size_t> kind(0, 2), qubit(0, n - 1), other(0, n - 2);
  for (std::size_t i = 0; i < gates; ++i) {
    const std::size_t a = qubit(rng);
    switch (kind(rng)) {
      case 0: {
        std::size_t b = other(rng);
        if (b >= a) ++b;
        c.gates.push_back(Cnot{a, b});
        break;
      }
      case 1:
        c.gates.push_back(Hadamard{a});
        break;
      default:
        c.gates.push_back(PhaseS{a});
    }
  }
  return c;
}

}  // namespace oneway
