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

#include "oneway/pauli.hpp"

#include <cmath>
#include <numbers>

#include "oneway/errors.hpp"

namespace oneway {

PauliString::PauliString(std::size_t num_qubits) : x_(num_qubits, 0), z_(num_qubits, 0) {}

PauliString PauliString::from_str(std::string_view text) {
  int phase = 0;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') phase = 2;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    phase += 1;
    ++pos;
  }
  PauliString result(text.size() - pos);
  for (std::size_t q = 0; pos < text.size(); ++pos, ++q) {
    result.set(q, text[pos]);
  }
  result.set_phase(phase);
  return result;
}

PauliString PauliString::single(std::size_t num_qubits, std::size_t qubit, char pauli) {
  PauliString result(num_qubits);
  result.set(qubit, pauli);
  return result;
}

void PauliString::set(std::size_t q, bool x, bool z) {
  x_[q] = x;
  z_[q] = z;
}

void PauliString::set(std::size_t q, char pauli) {
  switch (pauli) {
    case 'I':
    case '_':
      set(q, false, false);
      break;
    case 'X':
      set(q, true, false);
      break;
    case 'Y':
      set(q, true, true);
      break;
    case 'Z':
      set(q, false, true);
      break;
    default:
      throw std::invalid_argument(std::string("not a Pauli character: ") + pauli);
  }
}

char PauliString::at(std::size_t q) const {
  static constexpr char kNames[] = {'_', 'X', 'Z', 'Y'};
  return kNames[x_[q] | (z_[q] << 1)];
}

bool PauliString::is_identity() const { return weight() == 0; }

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (std::size_t q = 0; q < size(); ++q) w += (x_[q] | z_[q]);
  return w;
}

bool PauliString::commutes(const PauliString& other) const {
  if (size() != other.size()) throw DimensionError("commutes: length mismatch");
  unsigned parity = 0;
  for (std::size_t q = 0; q < size(); ++q) {
    parity ^= (x_[q] & other.z_[q]) ^ (z_[q] & other.x_[q]);
  }
  return parity == 0;
}

std::string PauliString::str() const {
  static constexpr const char* kSigns[] = {"+", "+i", "-", "-i"};
  std::string out = kSigns[phase_];
  for (std::size_t q = 0; q < size(); ++q) out.push_back(at(q));
  return out;
}

int pauli_product_phase(bool x1, bool z1, bool x2, bool z2) {
  if (!x1 && !z1) return 0;
  if (x1 && z1) return static_cast<int>(z2) - static_cast<int>(x2);
  if (x1) return z2 ? (x2 ? 1 : -1) : 0;
  return x2 ? (z2 ? -1 : 1) : 0;
}

PauliString pauli_mul(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size()) {
    throw DimensionError("pauli_mul: lengths " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
  }
  PauliString out(a.size());
  int phase = a.phase() + b.phase();
  for (std::size_t q = 0; q < a.size(); ++q) {
    phase += pauli_product_phase(a.x(q), a.z(q), b.x(q), b.z(q));
    out.set(q, a.x(q) != b.x(q), a.z(q) != b.z(q));
  }
  out.set_phase(phase);
  return out;
}

PauliString PauliString::operator*(const PauliString& rhs) const { return pauli_mul(*this, rhs); }

bool ByproductFrame::is_identity() const {
  for (const auto& b : bits_) {
    if (b.x || b.z) return false;
  }
  return true;
}

PauliString ByproductFrame::to_pauli() const {
  PauliString p(size());
  for (std::size_t q = 0; q < size(); ++q) p.set(q, bits_[q].x, bits_[q].z);
  return p;
}

std::string ByproductFrame::str() const {
  std::string out;
  for (std::size_t q = 0; q < size(); ++q) {
    if (q) out += ' ';
    out += "q" + std::to_string(q) + ":x" + (bits_[q].x ? "1" : "0") + "z" + (bits_[q].z ? "1" : "0");
  }
  return out;
}

ByproductFrame frame_compose(const ByproductFrame& f1, const ByproductFrame& f2) {
  if (f1.size() != f2.size()) {
    throw DimensionError("frame_compose: widths " + std::to_string(f1.size()) + " and " +
                         std::to_string(f2.size()));
  }
  ByproductFrame out(f1.size());
  for (std::size_t q = 0; q < f1.size(); ++q) {
    out[q].x = f1[q].x != f2[q].x;
    out[q].z = f1[q].z != f2[q].z;
  }
  return out;
}

double wrap_angle(double radians) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double r = std::remainder(radians, kTwoPi);  // [-π, π]
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

EulerAngles propagate_rotation(bool s, bool s_prime, const EulerAngles& angles) {
  const double sz = s ? -1.0 : 1.0;
  const double sx = s_prime ? -1.0 : 1.0;
  return EulerAngles(sz * angles.xi, sx * angles.eta, sz * angles.zeta);
}

std::pair<FrameBits, FrameBits> propagate_cnot(FrameBits control, FrameBits target) {
  FrameBits c_out{control.x, control.z != target.z};
  FrameBits t_out{control.x != target.x, target.z};
  return {c_out, t_out};
}

void conjugate_h(PauliString& p, std::size_t q) {
  const bool x = p.x(q), z = p.z(q);
  if (x && z) p.set_phase(p.phase() + 2);
  p.set(q, z, x);
}

void conjugate_s(PauliString& p, std::size_t q) {
  const bool x = p.x(q), z = p.z(q);
  if (x && z) p.set_phase(p.phase() + 2);
  p.set(q, x, z != x);
}

void conjugate_cnot(PauliString& p, std::size_t c, std::size_t t) {
  const bool xc = p.x(c), zc = p.z(c), xt = p.x(t), zt = p.z(t);
  if (xc && zt && (xt == zc)) p.set_phase(p.phase() + 2);
  p.set(t, xt != xc, zt);
  p.set(c, xc, zc != zt);
}

void conjugate_cz(PauliString& p, std::size_t a, std::size_t b) {
  const bool xa = p.x(a), za = p.z(a), xb = p.x(b), zb = p.z(b);
  if (xa && xb && (za != zb)) p.set_phase(p.phase() + 2);
  p.set(a, xa, za != xb);
  p.set(b, xb, zb != xa);
}

CliffordMap CliffordMap::identity(std::size_t num_qubits) {
  CliffordMap m;
  for (std::size_t q = 0; q < num_qubits; ++q) {
    m.x_images_.push_back(PauliString::single(num_qubits, q, 'X'));
    m.z_images_.push_back(PauliString::single(num_qubits, q, 'Z'));
  }
  return m;
}

CliffordMap& CliffordMap::h(std::size_t q) {
  for (auto& p : x_images_) conjugate_h(p, q);
  for (auto& p : z_images_) conjugate_h(p, q);
  return *this;
}

CliffordMap& CliffordMap::s(std::size_t q) {
  for (auto& p : x_images_) conjugate_s(p, q);
  for (auto& p : z_images_) conjugate_s(p, q);
  return *this;
}

CliffordMap& CliffordMap::cnot(std::size_t control, std::size_t target) {
  for (auto& p : x_images_) conjugate_cnot(p, control, target);
  for (auto& p : z_images_) conjugate_cnot(p, control, target);
  return *this;
}

CliffordMap& CliffordMap::cz(std::size_t a, std::size_t b) {
  for (auto& p : x_images_) conjugate_cz(p, a, b);
  for (auto& p : z_images_) conjugate_cz(p, a, b);
  return *this;
}

PauliString CliffordMap::conjugate(const PauliString& p) const {
  if (p.size() != size()) throw DimensionError("conjugate_by_clifford: dimension mismatch");
  PauliString out(size());
  // p = i^(k + #Y) · Π_q X_q^x Z_q^z
  int phase = p.phase();
  for (std::size_t q = 0; q < size(); ++q) {
    if (p.x(q) && p.z(q)) ++phase;
    if (p.x(q)) out = pauli_mul(out, x_images_[q]);
    if (p.z(q)) out = pauli_mul(out, z_images_[q]);
  }
  out.set_phase(out.phase() + phase);
  return out;
}

PauliString conjugate_by_clifford(const PauliString& p, const CliffordMap& clifford) {
  return clifford.conjugate(p);
}

}  // namespace oneway
