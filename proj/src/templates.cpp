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

#include "oneway/templates.hpp"

#include <cmath>
#include <deque>
#include <numbers>

#include "oneway/choi.hpp"
#include "oneway/errors.hpp"

namespace oneway {
namespace {

using std::numbers::pi;

MeasurementPattern chain(int width) {
  std::vector<Coord> sites;
  for (int x = 0; x <= width; ++x) sites.push_back({x, 0});
  MeasurementPattern p;
  p.graph = ClusterGraph::induced(sites);
  p.inputs = {{0, 0}};
  p.outputs = {{width, 0}};
  return p;
}

/// The image of P under the 2×2 unitary, as a signed Pauli, or nullopt.
std::optional<PauliString> image_of(const Eigen::Matrix2cd& u, char pauli, double tol) {
  const Eigen::Matrix2cd x{{0, 1}, {1, 0}};
  const Eigen::Matrix2cd z{{1, 0}, {0, -1}};
  const Eigen::Matrix2cd y{{0, std::complex<double>(0, -1)}, {std::complex<double>(0, 1), 0}};
  const Eigen::Matrix2cd p = pauli == 'X' ? x : z;
  const Eigen::Matrix2cd img = u * p * u.adjoint();
  for (auto [c, m] : {std::pair{'X', x}, std::pair{'Y', y}, std::pair{'Z', z}}) {
    for (int sign : {1, -1}) {
      if ((img - static_cast<double>(sign) * m).norm() < tol) {
        PauliString out = PauliString::single(1, 0, c);
        if (sign < 0) out.set_phase(2);
        return out;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

Eigen::Matrix2cd to_eigen(const Matrix2& m) {
  Eigen::Matrix2cd out;
  out << m[0][0], m[0][1], m[1][0], m[1][1];
  return out;
}

Eigen::MatrixXcd cnot_matrix(std::size_t control, std::size_t target, std::size_t n) {
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t j = (i >> control) & 1 ? i ^ (std::size_t{1} << target) : i;
    u(j, i) = 1;
  }
  return u;
}

std::optional<CliffordMap> single_qubit_clifford(const Matrix2& u, double tol) {
  const Eigen::Matrix2cd m = to_eigen(u);
  const auto ix = image_of(m, 'X', tol);
  const auto iz = image_of(m, 'Z', tol);
  if (!ix || !iz) return std::nullopt;
  // Breadth-first over H/S words; the group has 24 elements modulo phase.
  std::deque<CliffordMap> queue{CliffordMap::identity(1)};
  for (int visited = 0; !queue.empty() && visited < 4096; ++visited) {
    CliffordMap c = queue.front();
    queue.pop_front();
    if (c.x_image(0) == *ix && c.z_image(0) == *iz) return c;
    queue.push_back(CliffordMap(c).h(0));
    queue.push_back(CliffordMap(c).s(0));
  }
  return std::nullopt;
}

void derive_template_frame(GateTemplate& t) {
  if (!t.clifford) throw CapabilityError(t.name + ": frame derivation needs a Clifford template");
  FrameDerivation d = derive_frame_rules(t.pattern, *t.clifford);
  if (!d.deterministic.empty()) {
    throw VerificationError(t.name + ": outcome of " + to_string(d.deterministic.front()) + " is deterministic");
  }
  t.pattern.frame_rules = std::move(d.rules);
  t.pattern.normalize_frame_rules();
}

GateTemplate rotation_template(const EulerAngles& a) {
  const Coord s1{0, 0}, s2{1, 0}, s3{2, 0}, s4{3, 0};
  GateTemplate t;
  t.name = "rotation";
  t.width = 4;
  t.pattern = chain(4);
  t.pattern.assignments[s1] = make_equatorial(0.0, {}, 0);
  t.pattern.assignments[s2] = make_equatorial(a.xi, {s1}, 1);
  t.pattern.assignments[s3] = make_equatorial(a.eta, {s2}, 1);
  t.pattern.assignments[s4] = make_equatorial(a.zeta, {s1, s3}, 1);
  t.pattern.frame_rules = {{s2, 1, 0, FrameAxis::kX},
                           {s4, 1, 0, FrameAxis::kX},
                           {s1, 1, 0, FrameAxis::kZ},
                           {s3, 1, 0, FrameAxis::kZ}};
  t.pattern.normalize_frame_rules();
  t.reference = to_eigen(euler_rotation(a));
  return t;
}

GateTemplate clifford_rotation_template(const EulerAngles& a) {
  GateTemplate t = rotation_template(a);
  t.clifford = single_qubit_clifford(euler_rotation(a));
  if (!t.clifford) throw CapabilityError("rotation angles are not a Clifford");
  t.name = "clifford-rotation";
  t.pattern = prune_pauli_dependencies(t.pattern);
  derive_template_frame(t);
  return t;
}

GateTemplate hadamard_template() {
  GateTemplate t = clifford_rotation_template(EulerAngles(pi / 2, pi / 2, pi / 2));
  t.name = "hadamard";
  t.clifford = CliffordMap::identity(1).h(0);
  t.reference = to_eigen(hadamard_matrix());
  return t;
}

GateTemplate phase_template() {
  GateTemplate t = clifford_rotation_template(EulerAngles(0, pi / 2, 0));
  t.name = "phase";
  t.clifford = CliffordMap::identity(1).s(0);
  t.reference = to_eigen(phase_matrix());
  return t;
}

GateTemplate cnot_template() {
  const Coord control{1, 0}, t_in{0, 1}, mid{1, 1}, t_out{2, 1};
  GateTemplate t;
  t.name = "cnot";
  t.width = 2;
  t.pattern.graph = ClusterGraph::induced({control, t_in, mid, t_out});
  t.pattern.inputs = {control, t_in};
  t.pattern.outputs = {control, t_out};
  t.pattern.assignments[t_in] = PauliXBasis{};
  t.pattern.assignments[mid] = PauliXBasis{};
  t.clifford = CliffordMap::identity(2).cnot(0, 1);
  t.reference = cnot_matrix(0, 1, 2);
  derive_template_frame(t);
  return t;
}

GateTemplate wire_template(int width) {
  if (width < 0 || width % 2 != 0) throw std::invalid_argument("wire width must be even and non-negative");
  GateTemplate t;
  t.name = "wire";
  t.width = width;
  t.pattern = chain(width);
  for (int x = 0; x < width; ++x) t.pattern.assignments[{x, 0}] = PauliXBasis{};
  t.clifford = CliffordMap::identity(1);
  t.reference = Eigen::Matrix2cd::Identity();
  if (width > 0) derive_template_frame(t);
  return t;
}

GateTemplate bridged_cnot_template(bool control_on_top) {
  constexpr int kWidth = 6;
  constexpr int kBridge = 3;
  const int yc = control_on_top ? 0 : 2;
  const int yt = 2 - yc;
  std::vector<Coord> sites{{kBridge, 1}};
  GateTemplate t;
  t.name = "bridged-cnot";
  t.width = kWidth;
  for (int x = 0; x <= kWidth; ++x) {
    sites.push_back({x, yc});
    sites.push_back({x, yt});
  }
  t.pattern.graph = ClusterGraph::induced(sites);
  t.pattern.inputs = {{0, yc}, {0, yt}};
  t.pattern.outputs = {{kWidth, yc}, {kWidth, yt}};
  for (int x = 0; x < kWidth; ++x) {
    const bool y_control = x >= 1;
    t.pattern.assignments[{x, yc}] = y_control ? BasisSpec{PauliYBasis{}} : BasisSpec{PauliXBasis{}};
    t.pattern.assignments[{x, yt}] = x == kBridge ? BasisSpec{PauliYBasis{}} : BasisSpec{PauliXBasis{}};
  }
  t.pattern.assignments[{kBridge, 1}] = PauliYBasis{};
  t.clifford = CliffordMap::identity(2).cnot(0, 1);
  t.reference = cnot_matrix(0, 1, 2);
  derive_template_frame(t);
  return t;
}

}  // namespace oneway
