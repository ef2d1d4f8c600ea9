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
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oneway {

/// A Pauli operator on `size()` qubits, i^phase * P_0 ⊗ P_1 ⊗ ...
///
/// Each tensor factor is encoded by an (x, z) bit pair: (0,0)=I, (1,0)=X,
/// (0,1)=Z, (1,1)=Y. The project-wide convention is Y = i·X·Z, so the factor
/// with both bits set is Y itself (not X·Z).
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t num_qubits);

  /// Parses "+XIZ", "-Y", "iXX", "-i_Z" ('_' and 'I' both mean identity).
  /// Character k after the sign is qubit k.
  static PauliString from_str(std::string_view text);
  static PauliString single(std::size_t num_qubits, std::size_t qubit, char pauli);

  std::size_t size() const { return x_.size(); }
  bool x(std::size_t q) const { return x_[q] != 0; }
  bool z(std::size_t q) const { return z_[q] != 0; }
  void set(std::size_t q, bool x, bool z);
  void set(std::size_t q, char pauli);
  char at(std::size_t q) const;

  /// Exponent k of the leading i^k, in [0, 4).
  int phase() const { return phase_; }
  void set_phase(int k) { phase_ = static_cast<std::uint8_t>(((k % 4) + 4) % 4); }
  bool is_hermitian() const { return phase_ % 2 == 0; }
  bool negative() const { return phase_ == 2; }

  bool is_identity() const;
  std::size_t weight() const;
  bool commutes(const PauliString& other) const;

  std::string str() const;

  PauliString operator*(const PauliString& rhs) const;
  bool operator==(const PauliString& rhs) const = default;

 private:
  std::vector<std::uint8_t> x_;
  std::vector<std::uint8_t> z_;
  std::uint8_t phase_ = 0;
};

/// Group product a·b with exact phase. Throws DimensionError on length mismatch.
PauliString pauli_mul(const PauliString& a, const PauliString& b);

/// Phase exponent contributed by multiplying single-qubit factors (x1,z1)·(x2,z2).
int pauli_product_phase(bool x1, bool z1, bool x2, bool z2);

/// Byproduct exponents of one logical qubit: the operator σx^x σz^z.
struct FrameBits {
  bool x = false;
  bool z = false;
  bool operator==(const FrameBits&) const = default;
};

/// Accumulated byproduct operator on a register of logical qubits.
/// Only exponents are tracked; global phases are discarded.
class ByproductFrame {
 public:
  ByproductFrame() = default;
  explicit ByproductFrame(std::size_t num_logical) : bits_(num_logical) {}

  std::size_t size() const { return bits_.size(); }
  FrameBits& operator[](std::size_t q) { return bits_[q]; }
  const FrameBits& operator[](std::size_t q) const { return bits_[q]; }

  bool is_identity() const;
  /// The frame as a Hermitian Pauli string, ordered σx^x σz^z per qubit.
  PauliString to_pauli() const;
  std::string str() const;

  bool operator==(const ByproductFrame&) const = default;

 private:
  std::vector<FrameBits> bits_;
};

/// Componentwise XOR of exponents. Throws DimensionError on width mismatch.
ByproductFrame frame_compose(const ByproductFrame& f1, const ByproductFrame& f2);

/// Wraps an angle into (-π, π].
double wrap_angle(double radians);

/// Euler angles of U_R(ξ,η,ζ) = U_x(ζ) U_z(η) U_x(ξ), stored wrapped into (-π, π].
struct EulerAngles {
  double xi = 0.0;
  double eta = 0.0;
  double zeta = 0.0;

  EulerAngles() = default;
  EulerAngles(double xi_, double eta_, double zeta_)
      : xi(wrap_angle(xi_)), eta(wrap_angle(eta_)), zeta(wrap_angle(zeta_)) {}
};

/// Pulls σz^s σx^s' through a rotation: the rotation needed after the byproduct
/// so that the pair realizes the requested U_R followed by the same byproduct.
/// Returns ((-1)^s ξ, (-1)^s' η, (-1)^s ζ); the byproduct itself is unchanged.
EulerAngles propagate_rotation(bool s, bool s_prime, const EulerAngles& angles);

/// Byproduct exponents after commuting σ's on (control, target) through CNOT(c,t).
std::pair<FrameBits, FrameBits> propagate_cnot(FrameBits control, FrameBits target);

/// A Clifford unitary U encoded by the images U X_q U† and U Z_q U†.
class CliffordMap {
 public:
  CliffordMap() = default;
  static CliffordMap identity(std::size_t num_qubits);

  std::size_t size() const { return x_images_.size(); }
  const PauliString& x_image(std::size_t q) const { return x_images_[q]; }
  const PauliString& z_image(std::size_t q) const { return z_images_[q]; }

  /// Post-compose with a gate: U <- G·U.
  CliffordMap& h(std::size_t q);
  CliffordMap& s(std::size_t q);
  CliffordMap& cnot(std::size_t control, std::size_t target);
  CliffordMap& cz(std::size_t a, std::size_t b);

  /// U·p·U†.
  PauliString conjugate(const PauliString& p) const;

 private:
  std::vector<PauliString> x_images_;
  std::vector<PauliString> z_images_;
};

/// Single-gate conjugation helpers, acting in place on p.
void conjugate_h(PauliString& p, std::size_t q);
void conjugate_s(PauliString& p, std::size_t q);
void conjugate_cnot(PauliString& p, std::size_t control, std::size_t target);
void conjugate_cz(PauliString& p, std::size_t a, std::size_t b);

/// U·p·U† for the Clifford encoded by `clifford`. Throws DimensionError.
PauliString conjugate_by_clifford(const PauliString& p, const CliffordMap& clifford);

}  // namespace oneway
