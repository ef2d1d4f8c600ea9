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

#include "oneway/verify.hpp"

#include <cmath>
#include <map>
#include <set>

#include "oneway/choi.hpp"
#include "oneway/compiler.hpp"
#include "oneway/errors.hpp"

namespace oneway {
namespace {

const Qubit2 kPlusState{Complex(1 / std::sqrt(2.0)), Complex(1 / std::sqrt(2.0))};

/// Returns the preferred outcome unless it is impossible.
int prefer(int wanted, double p0) {
  const double p = wanted == 0 ? p0 : 1 - p0;
  return p > 1e-12 ? wanted : 1 - wanted;
}

/// Sites of the bit-reversal block by role.
struct BlockRoles {
  std::set<Coord> inputs, middle, outputs, body;
};

BlockRoles roles_of(const MeasurementPattern& p) {
  BlockRoles r;
  r.inputs.insert(p.inputs.begin(), p.inputs.end());
  r.outputs.insert(p.outputs.begin(), p.outputs.end());
  for (const auto& i : p.inputs) {
    for (const auto& m : p.graph.neighbors(i)) r.middle.insert(m);
  }
  for (const auto& c : p.graph.sites()) {
    if (!r.inputs.count(c) && !r.middle.count(c) && !r.outputs.count(c)) r.body.insert(c);
  }
  return r;
}

}  // namespace

StateVector random_state(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Complex> amps(std::size_t{1} << n);
  for (auto& a : amps) a = Complex(g(rng), g(rng));
  return StateVector::from_amplitudes(std::move(amps));
}

StateVector apply_matrix(const Eigen::MatrixXcd& u, const StateVector& state) {
  const auto& a = state.amplitudes();
  if (static_cast<std::size_t>(u.rows()) != a.size() || u.rows() != u.cols()) {
    throw DimensionError("reference unitary does not match the register");
  }
  Eigen::VectorXcd v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a[i];
  const Eigen::VectorXcd w = u * v;
  return StateVector::from_amplitudes(std::vector<Complex>(w.data(), w.data() + w.size()));
}

StateVector run_dense(const MeasurementPattern& pattern, const StateVector& input, OutcomeSource& source,
                      const ExecuteOptions& options) {
  DenseBackend backend;
  backend.load(input);
  std::vector<std::size_t> qubits(input.num_qubits());
  for (std::size_t k = 0; k < qubits.size(); ++k) qubits[k] = k;
  const ExecutionResult r = execute(pattern, backend, qubits, source, options);
  StateVector out = backend.state().extract(r.output_qubits);
  for (std::size_t k = 0; k < r.frame.size(); ++k) {
    if (r.frame[k].x) out.x(k);
    if (r.frame[k].z) out.z(k);
  }
  return out;
}

VerifyReport verify_dense(const MeasurementPattern& pattern, const Eigen::MatrixXcd& reference,
                          const VerifyOptions& options) {
  VerifyReport report;
  report.mode = "dense";
  std::mt19937_64 rng(options.seed);
  const auto sites = pattern.measured_sites();
  const bool exhaustive = sites.size() <= options.exhaustive_limit;
  const std::size_t branches = exhaustive ? std::size_t{1} << sites.size() : 1;
  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    const StateVector input = random_state(pattern.inputs.size(), rng);
    const StateVector expected = apply_matrix(reference, input);
    for (std::size_t b = 0; b < branches; ++b) {
      OutcomeSource source(rng());
      if (exhaustive) {
        for (std::size_t j = 0; j < sites.size(); ++j) source.prefer(sites[j], static_cast<int>((b >> j) & 1));
      }
      const StateVector got = run_dense(pattern, input, source);
      report.worst_infidelity = std::max(report.worst_infidelity, infidelity(got, expected));
      ++report.runs;
    }
  }
  report.passed = report.worst_infidelity < options.tol;
  report.detail = std::to_string(report.runs) + " runs" + (exhaustive ? " over every outcome branch" : "");
  return report;
}

VerifyReport verify_choi(const MeasurementPattern& pattern, const CliffordMap& reference,
                         const VerifyOptions& options) {
  VerifyReport report;
  report.mode = "choi";
  std::mt19937_64 rng(options.seed);
  report.passed = true;
  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    OutcomeSource source(rng());
    ChoiRun run = run_choi(pattern, source);
    ++report.runs;
    if (!choi_corrected_matches(run, reference)) {
      report.passed = false;
      report.detail = "stabilizer mismatch on run " + std::to_string(trial);
      return report;
    }
  }
  report.detail = std::to_string(report.runs) + " runs, exact stabilizer identity";
  return report;
}

VerifyReport verify_equivalence(const MeasurementPattern& pattern, const std::optional<Eigen::MatrixXcd>& dense,
                                const std::optional<CliffordMap>& clifford, const VerifyOptions& options) {
  BackendKind kind = options.backend;
  if (kind == BackendKind::kAuto) {
    kind = clifford && pattern.all_pauli() ? BackendKind::kTableau : BackendKind::kDense;
  }
  if (kind == BackendKind::kTableau) {
    if (!clifford) throw CapabilityError("tableau verification needs a Clifford reference");
    if (!pattern.all_pauli()) throw CapabilityError("tableau verification needs an all-Pauli pattern");
    return verify_choi(pattern, *clifford, options);
  }
  if (!dense) throw CapabilityError("dense verification needs a reference matrix");
  return verify_dense(pattern, *dense, options);
}

TeleportationReport teleportation_decomposition_check(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw DimensionError("teleportation check needs n >= 2");
  const MeasurementPattern p = bit_reversal_pattern(n);
  const BlockRoles roles = roles_of(p);
  const CliffordMap u = reversal_clifford(n);
  TeleportationReport report;

  // Stabilizer run with Choi references on the inputs.
  StabilizerTableau t(n);
  std::map<Coord, std::size_t> q;
  for (const auto& c : p.graph.sites()) q[c] = t.add_qubit_plus();
  for (std::size_t k = 0; k < n; ++k) {
    t.h(q[p.inputs[k]]);
    t.cnot(k, q[p.inputs[k]]);
  }
  OutcomeSource source(seed);
  OutcomeRecord outcomes;
  auto measure_x = [&](const Coord& c) {
    const PauliString x = PauliString::single(t.num_qubits(), q[c], 'X');
    outcomes.set(c, t.measure(x, [&](double p0) { return source.choose(c, p0); }).s);
  };
  // 2′ and 3′
  for (const auto& [a, b] : p.graph.edges()) {
    if (!roles.inputs.count(a) && !roles.inputs.count(b)) t.cz(q[a], q[b]);
  }
  for (const auto& g : roles.body) measure_x(g);
  report.equations_hold = true;
  for (std::size_t k = 0; k < n; ++k) {
    BellPairCheck check{{1, 2 * static_cast<int>(k)}, p.outputs[n - 1 - k]};
    PauliString xz(t.num_qubits()), zx(t.num_qubits());
    xz.set(q[check.m], 'X');
    xz.set(q[check.o], 'Z');
    zx.set(q[check.m], 'Z');
    zx.set(q[check.o], 'X');
    check.xz = t.contains(xz);
    check.zx = t.contains(zx);
    report.equations_hold &= check.xz != Membership::kAbsent && check.zx != Membership::kAbsent;
    report.pairs.push_back(check);
  }
  // 4′ and 5′
  for (const auto& [a, b] : p.graph.edges()) {
    if (roles.inputs.count(a) || roles.inputs.count(b)) t.cz(q[a], q[b]);
  }
  for (const auto& c : roles.inputs) measure_x(c);
  for (const auto& c : roles.middle) measure_x(c);
  const ByproductFrame frame = p.frame_for(outcomes);
  for (std::size_t k = 0; k < n; ++k) {
    if (frame[k].x) t.x(q[p.outputs[k]]);
    if (frame[k].z) t.z(q[p.outputs[k]]);
  }
  report.reversal_after_bell_measurements = true;
  for (std::size_t k = 0; k < n; ++k) {
    for (char c : {'X', 'Z'}) {
      const PauliString image = u.conjugate(PauliString::single(n, k, c));
      PauliString probe(t.num_qubits());
      probe.set(k, c);
      for (std::size_t j = 0; j < n; ++j) probe.set(q[p.outputs[j]], image.x(j), image.z(j));
      probe.set_phase(image.phase());
      report.reversal_after_bell_measurements &= t.contains(probe) == Membership::kPlus;
    }
  }

  if (n != 2) return report;

  // Dense comparison of the two protocols under identical outcomes.
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const StateVector input = random_state(n, rng);
  std::map<Coord, int> forced;
  for (const auto& c : p.measured_sites()) forced[c] = static_cast<int>(rng() & 1);
  std::map<Coord, std::size_t> dq;
  auto prepare = [&]() {
    StateVector s = input;
    dq.clear();
    for (std::size_t k = 0; k < n; ++k) dq[p.inputs[k]] = k;
    for (const auto& c : p.graph.sites()) {
      if (!dq.count(c)) dq[c] = s.add_qubit(kPlusState);
    }
    return s;
  };
  auto measure_dense = [&](StateVector& s, const Coord& c) {
    s.measure_equatorial(dq[c], 0.0, [&](double p0) { return prefer(forced[c], p0); });
  };
  auto outputs_of = [&](StateVector s) {
    for (const auto& c : p.measured_sites()) {
      s.replace_product_qubit(dq[c], equatorial_state(0.0, forced[c]), kPlusState);
    }
    std::vector<std::size_t> outs;
    for (const auto& o : p.outputs) outs.push_back(dq[o]);
    return s.extract(outs);
  };

  StateVector one = prepare();
  for (const auto& [a, b] : p.graph.edges()) one.cz(dq[a], dq[b]);
  for (const auto& c : p.measured_sites()) measure_dense(one, c);

  StateVector two = prepare();
  for (const auto& [a, b] : p.graph.edges()) {
    if (!roles.inputs.count(a) && !roles.inputs.count(b)) two.cz(dq[a], dq[b]);
  }
  for (const auto& g : roles.body) measure_dense(two, g);
  const StateVector before_bell = two;
  for (const auto& [a, b] : p.graph.edges()) {
    if (roles.inputs.count(a) || roles.inputs.count(b)) two.cz(dq[a], dq[b]);
  }
  for (const auto& c : roles.inputs) measure_dense(two, c);
  for (const auto& c : roles.middle) measure_dense(two, c);

  const StateVector a = outputs_of(one), b = outputs_of(two);
  double residual = 0;
  for (std::size_t i = 0; i < a.amplitudes().size(); ++i) residual += std::norm(a.amplitude(i) - b.amplitude(i));
  report.protocol_residual = std::sqrt(residual);

  // Step 4′–5′ on one (i, m) pair against a projection onto
  // (|0⟩|±⟩ ± |1⟩|∓⟩)/√2.
  double gap = 0;
  const double r = 1 / std::sqrt(2.0);
  for (std::size_t k = 0; k < n; ++k) {
    const Coord i = p.inputs[k];
    const Coord m{1, i.y};
    for (int si = 0; si < 2; ++si) {
      for (int sm = 0; sm < 2; ++sm) {
        const double sign_m = sm == 0 ? 1 : -1, sign_i = si == 0 ? 1 : -1;
        // v[a + 2b] with a the i-qubit and b the m-qubit.
        const Complex v[4] = {r * r, r * r * sign_i, r * r * sign_m, -r * r * sign_i * sign_m};
        double direct = 0;
        const auto& amps = before_bell.amplitudes();
        const std::size_t bi = std::size_t{1} << dq[i], bm = std::size_t{1} << dq[m];
        for (std::size_t base = 0; base < amps.size(); ++base) {
          if (base & (bi | bm)) continue;
          Complex acc = 0;
          for (int ab = 0; ab < 4; ++ab) {
            const std::size_t idx = base | ((ab & 1) ? bi : 0) | ((ab & 2) ? bm : 0);
            acc += std::conj(v[ab]) * amps[idx];
          }
          direct += std::norm(acc);
        }
        StateVector s = before_bell;
        s.cz(dq[i], dq[m]);
        const double p_i = s.probability(dq[i], equatorial_state(0.0, si));
        s.measure_equatorial(dq[i], 0.0, [&](double) { return si; });
        const double via_protocol = p_i * s.probability(dq[m], equatorial_state(0.0, sm));
        gap = std::max(gap, std::abs(direct - via_protocol));
      }
    }
  }
  report.bell_probability_gap = gap;
  return report;
}

}  // namespace oneway
