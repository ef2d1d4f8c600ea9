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

#include "oneway/backend.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "oneway/errors.hpp"

namespace oneway {
namespace {

const Qubit2 kPlus{Complex(1.0 / std::numbers::sqrt2), Complex(1.0 / std::numbers::sqrt2)};

}  // namespace

BackendKind parse_backend_kind(std::string_view name) {
  if (name == "dense") return BackendKind::kDense;
  if (name == "tableau") return BackendKind::kTableau;
  if (name == "auto") return BackendKind::kAuto;
  throw std::invalid_argument("unknown backend '" + std::string(name) + "'");
}

std::string_view backend_name(BackendKind kind) {
  switch (kind) {
    case BackendKind::kDense:
      return "dense";
    case BackendKind::kTableau:
      return "tableau";
    case BackendKind::kAuto:
      return "auto";
  }
  return "?";
}

int pauli_quarter_turns(double phi) {
  const double turns = phi / (std::numbers::pi / 2.0);
  const double nearest = std::round(turns);
  if (std::abs(turns - nearest) > 1e-9) return -1;
  return static_cast<int>(((static_cast<long long>(nearest) % 4) + 4) % 4);
}

DenseBackend::DenseBackend(std::size_t cap) : state_(0, cap) {}

std::size_t DenseBackend::allocate(const Qubit2& q) { return state_.add_qubit(q); }

std::size_t DenseBackend::allocate_plus() {
  if (!free_.empty()) {
    const std::size_t q = free_.back();
    free_.pop_back();
    return q;
  }
  return state_.add_qubit(kPlus);
}

MeasurementOutcome DenseBackend::measure(std::size_t q, const PhysicalBasis& basis,
                                         const OutcomeChooser& choose) {
  MeasurementOutcome out;
  if (basis.kind == PhysicalBasis::Kind::kZ) {
    out = state_.measure_z(q, choose);
    collapsed_[q] = out.s == 0 ? Qubit2{1.0, 0.0} : Qubit2{0.0, 1.0};
  } else {
    out = state_.measure_equatorial(q, basis.angle, choose);
    collapsed_[q] = equatorial_state(basis.angle, out.s);
  }
  return out;
}

void DenseBackend::release(std::size_t q) {
  auto it = collapsed_.find(q);
  if (it == collapsed_.end()) throw std::logic_error("release of unmeasured qubit");
  state_.replace_product_qubit(q, it->second, kPlus);
  collapsed_.erase(it);
  free_.push_back(q);
}

void DenseBackend::load(StateVector state) {
  state_ = std::move(state);
  free_.clear();
  collapsed_.clear();
}

bool TableauBackend::supports(const PhysicalBasis& basis) const {
  return basis.kind == PhysicalBasis::Kind::kZ || pauli_quarter_turns(basis.angle) >= 0;
}

std::size_t TableauBackend::allocate_plus() {
  if (!free_.empty()) {
    const std::size_t q = free_.back();
    free_.pop_back();
    return q;
  }
  return tableau_.add_qubit_plus();
}

MeasurementOutcome TableauBackend::measure(std::size_t q, const PhysicalBasis& basis,
                                           const OutcomeChooser& choose) {
  char axis = 'Z';
  bool negated = false;
  if (basis.kind == PhysicalBasis::Kind::kEquatorial) {
    const int k = pauli_quarter_turns(basis.angle);
    if (k < 0) {
      throw CapabilityError("tableau backend cannot measure at non-Pauli angle " +
                            std::to_string(basis.angle));
    }
    axis = (k % 2 == 0) ? 'X' : 'Y';
    negated = k >= 2;
  }
  PauliString obs = PauliString::single(tableau_.num_qubits(), q, axis);
  if (negated) obs.set_phase(2);
  const MeasurementOutcome out = tableau_.measure(obs, choose);
  collapsed_[q] = Collapsed{axis, negated != (out.s == 1)};
  return out;
}

void TableauBackend::release(std::size_t q) {
  auto it = collapsed_.find(q);
  if (it == collapsed_.end()) throw std::logic_error("release of unmeasured qubit");
  const Collapsed c = it->second;
  collapsed_.erase(it);
  switch (c.axis) {
    case 'X':
      if (c.negative) tableau_.z(q);
      break;
    case 'Y':
      if (c.negative) tableau_.z(q);
      tableau_.s_dag(q);
      break;
    default:
      if (c.negative) tableau_.x(q);
      tableau_.h(q);
      break;
  }
  free_.push_back(q);
}

}  // namespace oneway
