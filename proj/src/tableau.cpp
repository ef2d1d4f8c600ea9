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

#include "oneway/tableau.hpp"

#include <bit>
#include <string>

#include "oneway/errors.hpp"

namespace oneway {
namespace {

inline std::uint64_t bit_of(std::size_t q) { return std::uint64_t{1} << (q % 64); }

}  // namespace

StabilizerTableau::StabilizerTableau(std::size_t num_qubits) {
  for (std::size_t q = 0; q < num_qubits; ++q) add_qubit_plus();
}

std::size_t StabilizerTableau::add_qubit_plus() {
  const std::size_t q = n_++;
  const std::size_t words = (n_ + 63) / 64;
  if (words != words_) {
    words_ = words;
    for (auto* rows : {&destab_, &stab_}) {
      for (auto& r : *rows) {
        r.x.resize(words_, 0);
        r.z.resize(words_, 0);
      }
    }
  }
  Row d{std::vector<std::uint64_t>(words_, 0), std::vector<std::uint64_t>(words_, 0), false};
  Row s = d;
  d.z[q / 64] |= bit_of(q);
  s.x[q / 64] |= bit_of(q);
  destab_.push_back(std::move(d));
  stab_.push_back(std::move(s));
  return q;
}

namespace {

template <class Rows, class F>
void for_each_row(Rows& a, Rows& b, F&& f) {
  for (auto& r : a) f(r);
  for (auto& r : b) f(r);
}

}  // namespace

void StabilizerTableau::h(std::size_t q) {
  const std::size_t w = q / 64;
  const std::uint64_t m = bit_of(q);
  for_each_row(destab_, stab_, [&](auto& r) {
    const bool xb = r.x[w] & m, zb = r.z[w] & m;
    if (xb && zb) r.sign = !r.sign;
    if (xb != zb) {
      r.x[w] ^= m;
      r.z[w] ^= m;
    }
  });
}

void StabilizerTableau::s(std::size_t q) {
  const std::size_t w = q / 64;
  const std::uint64_t m = bit_of(q);
  for_each_row(destab_, stab_, [&](auto& r) {
    const bool xb = r.x[w] & m, zb = r.z[w] & m;
    if (xb && zb) r.sign = !r.sign;
    if (xb) r.z[w] ^= m;
  });
}

void StabilizerTableau::s_dag(std::size_t q) {
  const std::size_t w = q / 64;
  const std::uint64_t m = bit_of(q);
  for_each_row(destab_, stab_, [&](auto& r) {
    const bool xb = r.x[w] & m, zb = r.z[w] & m;
    if (xb && !zb) r.sign = !r.sign;
    if (xb) r.z[w] ^= m;
  });
}

void StabilizerTableau::x(std::size_t q) {
  const std::size_t w = q / 64;
  const std::uint64_t m = bit_of(q);
  for_each_row(destab_, stab_, [&](auto& r) {
    if (r.z[w] & m) r.sign = !r.sign;
  });
}

void StabilizerTableau::z(std::size_t q) {
  const std::size_t w = q / 64;
  const std::uint64_t m = bit_of(q);
  for_each_row(destab_, stab_, [&](auto& r) {
    if (r.x[w] & m) r.sign = !r.sign;
  });
}

void StabilizerTableau::cnot(std::size_t c, std::size_t t) {
  if (c == t) throw std::invalid_argument("cnot: identical qubits");
  const std::size_t wc = c / 64, wt = t / 64;
  const std::uint64_t mc = bit_of(c), mt = bit_of(t);
  for_each_row(destab_, stab_, [&](auto& r) {
    const bool xc = r.x[wc] & mc, zc = r.z[wc] & mc, xt = r.x[wt] & mt, zt = r.z[wt] & mt;
    if (xc && zt && (xt == zc)) r.sign = !r.sign;
    if (xc) r.x[wt] ^= mt;
    if (zt) r.z[wc] ^= mc;
  });
}

void StabilizerTableau::cz(std::size_t a, std::size_t b) {
  if (a >= n_ || b >= n_) throw std::out_of_range("cz: qubit index out of range");
  if (a == b) throw std::invalid_argument("cz: identical qubits");
  const std::size_t wa = a / 64, wb = b / 64;
  const std::uint64_t ma = bit_of(a), mb = bit_of(b);
  for_each_row(destab_, stab_, [&](auto& r) {
    const bool xa = r.x[wa] & ma, za = r.z[wa] & ma, xb = r.x[wb] & mb, zb = r.z[wb] & mb;
    if (xa && xb && (za != zb)) r.sign = !r.sign;
    if (xb) r.z[wa] ^= ma;
    if (xa) r.z[wb] ^= mb;
  });
}

StabilizerTableau::Row StabilizerTableau::pack(const PauliString& p) const {
  if (p.size() != n_) {
    throw DimensionError("tableau: Pauli of length " + std::to_string(p.size()) + " on " +
                         std::to_string(n_) + " qubits");
  }
  Row r{std::vector<std::uint64_t>(words_, 0), std::vector<std::uint64_t>(words_, 0), false};
  for (std::size_t q = 0; q < n_; ++q) {
    if (p.x(q)) r.x[q / 64] |= bit_of(q);
    if (p.z(q)) r.z[q / 64] |= bit_of(q);
  }
  return r;
}

PauliString StabilizerTableau::unpack(const Row& row) const {
  PauliString p(n_);
  for (std::size_t q = 0; q < n_; ++q) {
    p.set(q, (row.x[q / 64] & bit_of(q)) != 0, (row.z[q / 64] & bit_of(q)) != 0);
  }
  p.set_phase(row.sign ? 2 : 0);
  return p;
}

bool StabilizerTableau::anticommutes(const Row& a, const Row& b) {
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < a.x.size(); ++w) acc ^= (a.x[w] & b.z[w]) ^ (a.z[w] & b.x[w]);
  return std::popcount(acc) & 1;
}

int StabilizerTableau::multiply_into(const Row& source, Row& target, int source_phase,
                                     int target_phase) {
  int phase = source_phase + target_phase;
  for (std::size_t w = 0; w < source.x.size(); ++w) {
    const std::uint64_t x1 = source.x[w], z1 = source.z[w], x2 = target.x[w], z2 = target.z[w];
    const std::uint64_t plus = (x1 & ~z1 & x2 & z2) | (x1 & z1 & ~x2 & z2) | (~x1 & z1 & x2 & ~z2);
    const std::uint64_t minus = (x1 & ~z1 & ~x2 & z2) | (x1 & z1 & x2 & ~z2) | (~x1 & z1 & x2 & z2);
    phase += std::popcount(plus) - std::popcount(minus);
    target.x[w] = x2 ^ x1;
    target.z[w] = z2 ^ z1;
  }
  return ((phase % 4) + 4) % 4;
}

MeasurementOutcome StabilizerTableau::measure(const PauliString& p, const OutcomeChooser& choose) {
  if (!p.is_hermitian()) throw std::invalid_argument("measure: observable must have phase ±1");
  const Row obs = pack(p);

  std::size_t pivot = n_;
  for (std::size_t i = 0; i < n_; ++i) {
    if (anticommutes(stab_[i], obs)) {
      pivot = i;
      break;
    }
  }

  if (pivot == n_) {
    Row acc{std::vector<std::uint64_t>(words_, 0), std::vector<std::uint64_t>(words_, 0), false};
    int phase = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (anticommutes(destab_[i], obs)) {
        phase = multiply_into(stab_[i], acc, stab_[i].sign ? 2 : 0, phase);
      }
    }
    const int s = ((p.phase() - phase) % 4 + 4) % 4 == 2 ? 1 : 0;
    const int chosen = choose(s == 0 ? 1.0 : 0.0);
    if (chosen != s) {
      throw InconsistentForcing("deterministic outcome " + std::to_string(s) + " cannot be forced to " +
                                std::to_string(chosen));
    }
    return {s, true};
  }

  const int s = choose(0.5);
  if (s != 0 && s != 1) throw std::invalid_argument("outcome must be 0 or 1");
  for (std::size_t i = 0; i < n_; ++i) {
    if (i != pivot && anticommutes(stab_[i], obs)) {
      const int ph = multiply_into(stab_[pivot], stab_[i], stab_[pivot].sign ? 2 : 0,
                                   stab_[i].sign ? 2 : 0);
      stab_[i].sign = ph == 2;
    }
    if (i != pivot && anticommutes(destab_[i], obs)) {
      const int ph = multiply_into(stab_[pivot], destab_[i], stab_[pivot].sign ? 2 : 0,
                                   destab_[i].sign ? 2 : 0);
      destab_[i].sign = ph == 2;
    }
  }
  destab_[pivot] = stab_[pivot];
  stab_[pivot] = obs;
  stab_[pivot].sign = p.negative() != (s == 1);
  return {s, false};
}

Membership StabilizerTableau::contains(const PauliString& p) const {
  const Row obs = pack(p);
  if (!p.is_hermitian()) return Membership::kAbsent;
  for (const auto& r : stab_) {
    if (anticommutes(r, obs)) return Membership::kAbsent;
  }
  Row acc{std::vector<std::uint64_t>(words_, 0), std::vector<std::uint64_t>(words_, 0), false};
  int phase = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (anticommutes(destab_[i], obs)) phase = multiply_into(stab_[i], acc, stab_[i].sign ? 2 : 0, phase);
  }
  return phase == p.phase() ? Membership::kPlus : Membership::kMinus;
}

PauliString StabilizerTableau::stabilizer(std::size_t i) const { return unpack(stab_.at(i)); }

PauliString StabilizerTableau::destabilizer(std::size_t i) const { return unpack(destab_.at(i)); }

bool StabilizerTableau::check_invariants() const {
  if (stab_.size() != n_ || destab_.size() != n_) return false;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (anticommutes(stab_[i], stab_[j])) return false;
      if (anticommutes(destab_[i], destab_[j])) return false;
      if (anticommutes(destab_[i], stab_[j]) != (i == j)) return false;
    }
  }
  return true;
}

}  // namespace oneway
