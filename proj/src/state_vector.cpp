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

#include "oneway/state_vector.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "oneway/errors.hpp"

namespace oneway {
namespace {

constexpr double kZeroProbability = 1e-12;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

std::size_t checked_dimension(std::size_t num_qubits, std::size_t cap) {
  if (num_qubits > cap) {
    throw CapabilityError("dense backend: " + std::to_string(num_qubits) +
                          " qubits exceeds cap " + std::to_string(cap));
  }
  return std::size_t{1} << num_qubits;
}

}  // namespace

Qubit2 equatorial_state(double phi, int s) {
  const Complex phase = std::polar(1.0, phi) * (s == 0 ? 1.0 : -1.0);
  return {Complex(kInvSqrt2), phase * kInvSqrt2};
}

StateVector::StateVector(std::size_t num_qubits, std::size_t cap)
    : num_qubits_(num_qubits), cap_(cap), amps_(checked_dimension(num_qubits, cap)) {
  amps_[0] = 1.0;
}

StateVector StateVector::plus(std::size_t num_qubits, std::size_t cap) {
  StateVector sv(num_qubits, cap);
  const double a = std::pow(kInvSqrt2, static_cast<double>(num_qubits));
  for (auto& amp : sv.amps_) amp = a;
  return sv;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes, std::size_t cap) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < amplitudes.size()) ++n;
  if ((std::size_t{1} << n) != amplitudes.size()) {
    throw DimensionError("amplitude count is not a power of two");
  }
  checked_dimension(n, cap);
  StateVector sv;
  sv.num_qubits_ = n;
  sv.cap_ = cap;
  sv.amps_ = std::move(amplitudes);
  sv.renormalize();
  return sv;
}

StateVector StateVector::product(std::span<const Qubit2> qubits, std::size_t cap) {
  StateVector sv(0, cap);
  for (const auto& q : qubits) sv.add_qubit(q);
  return sv;
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

std::size_t StateVector::add_qubit(const Qubit2& q) {
  checked_dimension(num_qubits_ + 1, cap_);
  const double n = std::sqrt(std::norm(q[0]) + std::norm(q[1]));
  const std::size_t half = amps_.size();
  amps_.resize(2 * half);
  for (std::size_t i = 0; i < half; ++i) {
    amps_[half + i] = amps_[i] * (q[1] / n);
    amps_[i] *= q[0] / n;
  }
  return num_qubits_++;
}

void StateVector::check_qubit(std::size_t q) const {
  if (q >= num_qubits_) {
    throw std::out_of_range("qubit " + std::to_string(q) + " out of range for " +
                            std::to_string(num_qubits_) + "-qubit state");
  }
}

void StateVector::apply(const Matrix2& u, std::size_t q) {
  check_qubit(q);
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) continue;
    const Complex a0 = amps_[i], a1 = amps_[i | bit];
    amps_[i] = u[0][0] * a0 + u[0][1] * a1;
    amps_[i | bit] = u[1][0] * a0 + u[1][1] * a1;
  }
}

void StateVector::h(std::size_t q) {
  apply({{{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}}}, q);
}

void StateVector::s(std::size_t q) { apply({{{1.0, 0.0}, {0.0, Complex(0, 1)}}}, q); }

void StateVector::x(std::size_t q) { apply({{{0.0, 1.0}, {1.0, 0.0}}}, q); }

void StateVector::z(std::size_t q) { apply({{{1.0, 0.0}, {0.0, -1.0}}}, q); }

void StateVector::cz(std::size_t a, std::size_t b) {
  check_qubit(a);
  check_qubit(b);
  if (a == b) throw std::invalid_argument("cz: identical qubits");
  const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & mask) == mask) amps_[i] = -amps_[i];
  }
}

void StateVector::cnot(std::size_t control, std::size_t target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) throw std::invalid_argument("cnot: identical qubits");
  const std::size_t cbit = std::size_t{1} << control, tbit = std::size_t{1} << target;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & cbit) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
  }
}

void StateVector::apply_pauli(const PauliString& p) {
  if (p.size() != num_qubits_) throw DimensionError("apply_pauli: dimension mismatch");
  std::size_t xmask = 0, zmask = 0;
  int ycount = 0;
  for (std::size_t q = 0; q < p.size(); ++q) {
    if (p.x(q)) xmask |= std::size_t{1} << q;
    if (p.z(q)) zmask |= std::size_t{1} << q;
    if (p.x(q) && p.z(q)) ++ycount;
  }
  // Y = i·X·Z, so P = i^(phase + #Y) · X^xmask · Z^zmask.
  static const Complex kIPowers[] = {1.0, Complex(0, 1), -1.0, Complex(0, -1)};
  const Complex global = kIPowers[(p.phase() + ycount) % 4];
  std::vector<Complex> out(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    const bool neg = std::popcount(i & zmask) & 1;
    out[i ^ xmask] = global * (neg ? -amps_[i] : amps_[i]);
  }
  amps_ = std::move(out);
}

double StateVector::probability(std::size_t q, const Qubit2& v) const {
  check_qubit(q);
  const std::size_t bit = std::size_t{1} << q;
  const Complex c0 = std::conj(v[0]), c1 = std::conj(v[1]);
  double p = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) continue;
    p += std::norm(c0 * amps_[i] + c1 * amps_[i | bit]);
  }
  return p;
}

MeasurementOutcome StateVector::measure(std::size_t q, const Qubit2& v0, const Qubit2& v1,
                                        const OutcomeChooser& choose) {
  const double p0 = probability(q, v0);
  const int s = choose(p0);
  const double ps = s == 0 ? p0 : 1.0 - p0;
  if (ps < kZeroProbability) {
    throw InconsistentForcing("outcome " + std::to_string(s) + " on qubit " + std::to_string(q) +
                              " has probability zero");
  }
  const Qubit2& v = s == 0 ? v0 : v1;
  const std::size_t bit = std::size_t{1} << q;
  const double scale = 1.0 / std::sqrt(ps);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) continue;
    const Complex c = (std::conj(v[0]) * amps_[i] + std::conj(v[1]) * amps_[i | bit]) * scale;
    amps_[i] = c * v[0];
    amps_[i | bit] = c * v[1];
  }
  return {s, p0 < kZeroProbability || p0 > 1.0 - kZeroProbability};
}

MeasurementOutcome StateVector::measure_equatorial(std::size_t q, double phi,
                                                   const OutcomeChooser& choose) {
  return measure(q, equatorial_state(phi, 0), equatorial_state(phi, 1), choose);
}

MeasurementOutcome StateVector::measure_z(std::size_t q, const OutcomeChooser& choose) {
  return measure(q, {1.0, 0.0}, {0.0, 1.0}, choose);
}

void StateVector::replace_product_qubit(std::size_t q, const Qubit2& from, const Qubit2& to) {
  check_qubit(q);
  const std::size_t bit = std::size_t{1} << q;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) continue;
    const Complex c = std::conj(from[0]) * amps_[i] + std::conj(from[1]) * amps_[i | bit];
    amps_[i] = c * to[0];
    amps_[i | bit] = c * to[1];
  }
}

StateVector StateVector::extract(std::span<const std::size_t> qubits) const {
  std::size_t keep_mask = 0;
  for (auto q : qubits) {
    check_qubit(q);
    keep_mask |= std::size_t{1} << q;
  }
  const std::size_t rest = num_qubits_ - qubits.size();
  const double weight = std::pow(kInvSqrt2, static_cast<double>(rest));
  std::vector<Complex> out(std::size_t{1} << qubits.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    std::size_t j = 0;
    for (std::size_t k = 0; k < qubits.size(); ++k) {
      if (i & (std::size_t{1} << qubits[k])) j |= std::size_t{1} << k;
    }
    out[j] += amps_[i] * weight;
  }
  double n2 = 0.0;
  for (const auto& a : out) n2 += std::norm(a);
  if (std::abs(n2 - 1.0) > 1e-9) {
    throw VerificationError("extract: remaining qubits are not in |+>");
  }
  StateVector sv;
  sv.num_qubits_ = qubits.size();
  sv.cap_ = cap_;
  sv.amps_ = std::move(out);
  return sv;
}

Complex StateVector::inner(const StateVector& other) const {
  if (amps_.size() != other.amps_.size()) throw DimensionError("inner: dimension mismatch");
  Complex sum = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) sum += std::conj(amps_[i]) * other.amps_[i];
  return sum;
}

void StateVector::renormalize() {
  const double n = norm();
  if (n == 0.0) throw std::invalid_argument("zero state vector");
  for (auto& a : amps_) a /= n;
}

bool equal_up_to_global_phase(const StateVector& a, const StateVector& b, double tol) {
  return std::abs(a.inner(b)) >= 1.0 - tol;
}

double infidelity(const StateVector& a, const StateVector& b) {
  return 1.0 - std::abs(a.inner(b));
}

}  // namespace oneway
