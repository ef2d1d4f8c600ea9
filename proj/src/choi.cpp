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

#include "oneway/choi.hpp"

#include "oneway/errors.hpp"

namespace oneway {

ChoiRun run_choi(const MeasurementPattern& pattern, OutcomeSource& source) {
  if (pattern.inputs.size() != pattern.outputs.size()) {
    throw DimensionError("Choi harness needs as many inputs as outputs");
  }
  ChoiRun run;
  std::vector<std::size_t> inputs;
  for (std::size_t k = 0; k < pattern.inputs.size(); ++k) {
    const std::size_t r = run.backend.allocate_plus();
    const std::size_t q = run.backend.allocate_plus();
    run.backend.h(q);
    run.backend.cnot(r, q);
    run.references.push_back(r);
    inputs.push_back(q);
  }
  run.result = execute(pattern, run.backend, inputs, source);
  return run;
}

PauliString choi_operator(const ChoiRun& run, std::size_t k, char ref_pauli, const PauliString& on_outputs) {
  PauliString p(run.backend.num_qubits());
  p.set(run.references.at(k), ref_pauli);
  for (std::size_t j = 0; j < on_outputs.size(); ++j) {
    p.set(run.result.output_qubits.at(j), on_outputs.x(j), on_outputs.z(j));
  }
  // (1,1) already denotes Y, so bits and phase carry over unchanged.
  p.set_phase(on_outputs.phase());
  return p;
}

std::optional<ByproductFrame> choi_frame(const ChoiRun& run, const CliffordMap& u) {
  const std::size_t n = run.references.size();
  if (u.size() != n) throw DimensionError("Clifford width does not match the pattern");
  PauliString f(n);
  for (std::size_t k = 0; k < n; ++k) {
    const PauliString a = u.conjugate(PauliString::single(n, k, 'X'));
    const PauliString b = u.conjugate(PauliString::single(n, k, 'Z'));
    const Membership mx = run.backend.tableau().contains(choi_operator(run, k, 'X', a));
    const Membership mz = run.backend.tableau().contains(choi_operator(run, k, 'Z', b));
    if (mx == Membership::kAbsent || mz == Membership::kAbsent) return std::nullopt;
    if (mx == Membership::kMinus) f = f * b;
    if (mz == Membership::kMinus) f = f * a;
  }
  ByproductFrame frame(n);
  for (std::size_t k = 0; k < n; ++k) frame[k] = FrameBits{f.x(k), f.z(k)};
  return frame;
}

bool choi_corrected_matches(ChoiRun& run, const CliffordMap& u) {
  const std::size_t n = run.references.size();
  const ByproductFrame& frame = run.result.frame;
  for (std::size_t k = 0; k < n; ++k) {
    if (frame[k].x) run.backend.x(run.result.output_qubits[k]);
    if (frame[k].z) run.backend.z(run.result.output_qubits[k]);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (char c : {'X', 'Z'}) {
      const PauliString image = u.conjugate(PauliString::single(n, k, c));
      if (run.backend.tableau().contains(choi_operator(run, k, c, image)) != Membership::kPlus) return false;
    }
  }
  return true;
}

FrameDerivation derive_frame_rules(const MeasurementPattern& pattern, const CliffordMap& u) {
  if (!pattern.all_pauli()) throw CapabilityError("frame derivation needs an all-Pauli pattern");
  const auto sites = pattern.measured_sites();
  auto frame_of = [&](OutcomeSource& source, const char* what) {
    ChoiRun run = run_choi(pattern, source);
    auto f = choi_frame(run, u);
    if (!f) throw VerificationError(std::string("pattern does not realize the expected Clifford (") + what + ")");
    return std::make_pair(*f, run.result.outcomes);
  };

  OutcomeSource base_source;
  for (const auto& s : sites) base_source.prefer(s, 0);
  const auto [base, base_outcomes] = frame_of(base_source, "base run");

  FrameDerivation out;
  const std::size_t n = base.size();
  for (const auto& j : sites) {
    if (base_outcomes.at(j) != 0) {
      out.deterministic.push_back(j);
      continue;
    }
    OutcomeSource source;
    for (const auto& s : sites) source.prefer(s, s == j ? 1 : 0);
    const auto [flipped, outcomes] = frame_of(source, "flip run");
    for (const auto& s : sites) {
      if (s != j && outcomes.at(s) != base_outcomes.at(s)) {
        throw VerificationError("outcome of " + to_string(s) + " is tied to " + to_string(j));
      }
    }
    if (outcomes.at(j) == 0) {
      out.deterministic.push_back(j);
      continue;
    }
    for (std::size_t q = 0; q < n; ++q) {
      if (flipped[q].x != base[q].x) out.rules.push_back({j, 1, static_cast<int>(q), FrameAxis::kX});
      if (flipped[q].z != base[q].z) out.rules.push_back({j, 1, static_cast<int>(q), FrameAxis::kZ});
    }
  }
  for (std::size_t q = 0; q < n; ++q) {
    for (auto [bit, axis] : {std::pair{base[q].x, FrameAxis::kX}, std::pair{base[q].z, FrameAxis::kZ}}) {
      if (!bit) continue;
      if (sites.empty()) throw VerificationError("constant byproduct on a pattern with no measurements");
      out.rules.push_back({sites.front(), 0, static_cast<int>(q), axis});
      out.rules.push_back({sites.front(), 1, static_cast<int>(q), axis});
    }
  }
  std::sort(out.rules.begin(), out.rules.end());
  return out;
}

}  // namespace oneway
