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

// oneway: compile circuits to one-way measurement patterns, run them, and
// verify them.
//
// Exit codes: 0 success, 1 a requested check failed, 2 usage or parse
// error, 3 capability or layout error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "oneway/choi.hpp"
#include "oneway/circuit.hpp"
#include "oneway/cluster.hpp"
#include "oneway/compiler.hpp"
#include "oneway/errors.hpp"
#include "oneway/pattern_io.hpp"
#include "oneway/templates.hpp"
#include "oneway/verify.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace oneway;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCapability = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::uint64_t seed = 0;
  std::string backend = "auto";
  std::size_t trials = 20;
  double tol = 1e-10;
  std::string format = "text";
  bool embed_rectangle = false;
  int max_grid = 100000;
};

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    std::ostringstream ss;
    ss << v.get<double>();
    return ss.str();
  }
  return v.dump();
}

bool flat(const json& v) {
  if (!v.is_array()) return !v.is_object();
  for (const auto& e : v) {
    if (e.is_array() || e.is_object()) return false;
  }
  return true;
}

/// Text rendering mirrors the JSON report key for key.
void render_text(std::ostream& out, const json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, val] : v.items()) {
    if (flat(val)) {
      out << pad << key << " =";
      if (val.is_array()) {
        for (const auto& e : val) out << " " << scalar_text(e);
      } else {
        out << " " << scalar_text(val);
      }
      out << "\n";
    } else if (val.is_object()) {
      out << pad << key << ":\n";
      render_text(out, val, indent + 2);
    } else {
      out << pad << key << ":\n";
      for (const auto& e : val) {
        if (e.is_object()) {
          out << pad << "  -\n";
          render_text(out, e, indent + 4);
        } else {
          out << pad << "  - " << e.dump() << "\n";
        }
      }
    }
  }
}

void emit(const RunConfig& cfg, const json& report) {
  if (cfg.format == "json") {
    std::cout << report.dump(2) << "\n";
  } else {
    render_text(std::cout, report, 0);
  }
}

std::string coord_str(const Coord& c) { return to_string(c); }

json rounds_json(const Schedule& s, bool list_sites) {
  json rounds = json::array();
  for (std::size_t r = 0; r < s.rounds.size(); ++r) {
    json entry;
    entry["round"] = r + 1;
    entry["size"] = s.rounds[r].size();
    if (list_sites) {
      json sites = json::array();
      for (const auto& c : s.rounds[r]) sites.push_back(coord_str(c));
      entry["sites"] = sites;
    }
    rounds.push_back(entry);
  }
  return rounds;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_pattern(const std::string& text) { return text.rfind("oneway-pattern", 0) == 0; }

CircuitIR parse_nonempty_circuit(const std::string& text, std::size_t qubits) {
  CircuitIR c = parse_circuit(text, qubits);
  if (c.num_logical == 0) throw UsageError("circuit has no qubits (empty file); pass --qubits to set the register");
  return c;
}

CompileOptions compile_options(const RunConfig& cfg, bool peephole) {
  CompileOptions o;
  o.embed_rectangle = cfg.embed_rectangle;
  o.max_grid = cfg.max_grid;
  o.peephole = peephole;
  return o;
}

VerifyOptions verify_options(const RunConfig& cfg) {
  VerifyOptions o;
  o.backend = parse_backend_kind(cfg.backend);
  o.trials = cfg.trials;
  o.tol = cfg.tol;
  o.seed = cfg.seed;
  return o;
}

json verify_json(const std::string& check, const VerifyReport& r) {
  json j;
  j["check"] = check;
  j["mode"] = r.mode;
  j["passed"] = r.passed;
  j["runs"] = r.runs;
  if (r.mode == "dense") j["worst_infidelity"] = r.worst_infidelity;
  j["detail"] = r.detail;
  return j;
}

// ---- compile ----

int cmd_bitrev(const RunConfig& cfg, std::size_t n, const std::string& out_path) {
  if (n == 0) throw UsageError("--bitrev needs n >= 1");
  if (out_path.empty()) throw UsageError("--bitrev needs -o");
  const MeasurementPattern p = bit_reversal_pattern(n, cfg.embed_rectangle);
  save_pattern_file(out_path, p);
  const Schedule s = measurement_rounds(p);
  json j;
  j["pattern_file"] = out_path;
  j["logical_qubits"] = n;
  j["sites"] = p.graph.size();
  j["measured"] = p.assignments.size();
  j["depth"] = s.depth();
  j["rounds"] = rounds_json(s, false);
  emit(cfg, j);
  return kExitOk;
}

int cmd_compile(const RunConfig& cfg, const std::string& path, std::string out_path, std::size_t qubits, bool peephole) {
  if (path.empty()) throw UsageError("compile needs a circuit file or --bitrev");
  const CircuitIR circuit = parse_nonempty_circuit(read_file(path), qubits);
  const CompileReport rep = compile(circuit, compile_options(cfg, peephole));
  if (out_path.empty()) out_path = path + ".pattern";
  save_pattern_file(out_path, rep.pattern);
  json j;
  j["pattern_file"] = out_path;
  j["logical_qubits"] = circuit.num_logical;
  j["gates"] = circuit.gates.size();
  j["sites"] = rep.site_count;
  j["measured"] = rep.pattern.assignments.size();
  j["depth"] = rep.depth;
  j["rounds"] = rounds_json(rep.schedule, false);
  emit(cfg, j);
  return kExitOk;
}

// ---- run ----

bool use_tableau(const RunConfig& cfg, const MeasurementPattern& p) {
  const BackendKind k = parse_backend_kind(cfg.backend);
  if (k == BackendKind::kAuto) return p.all_pauli();
  return k == BackendKind::kTableau;
}

void prepare_input(Backend& b, std::size_t q, char c) {
  switch (c) {
    case '0':
      b.h(q);
      break;
    case '1':
      b.h(q);
      b.x(q);
      break;
    case '+':
      break;
    case '-':
      b.z(q);
      break;
    default:
      throw UsageError(std::string("input symbol '") + c + "' is not one of 0 1 + -");
  }
}

int cmd_run(const RunConfig& cfg, const std::string& path, const std::string& input) {
  const MeasurementPattern p = read_pattern(read_file(path));
  const std::size_t n = p.inputs.size();
  if (input.size() != n) {
    throw DimensionError("input has " + std::to_string(input.size()) + " symbols, pattern has " +
                         std::to_string(n) + " inputs");
  }
  std::unique_ptr<Backend> backend;
  if (use_tableau(cfg, p)) {
    backend = std::make_unique<TableauBackend>();
  } else {
    backend = std::make_unique<DenseBackend>();
  }
  // Qubit n-1 is printed first, so symbol i belongs to logical qubit n-1-i.
  std::vector<std::size_t> inputs(n);
  for (std::size_t k = 0; k < n; ++k) inputs[k] = backend->allocate_plus();
  for (std::size_t k = 0; k < n; ++k) prepare_input(*backend, inputs[k], input[n - 1 - k]);
  OutcomeSource source(cfg.seed);
  const ExecutionResult r = execute(p, *backend, inputs, source);

  std::vector<int> z(p.outputs.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    // Readouts draw from the same source under keys no lattice site uses.
    const Coord readout{std::numeric_limits<int>::min(), static_cast<int>(k)};
    z[k] = backend->measure(r.output_qubits[k], PhysicalBasis::z_basis(),
                            [&](double p0) { return source.choose(readout, p0); })
               .s;
  }
  const std::vector<int> bits = interpret_readout(z, r.frame);
  auto bit_string = [](const std::vector<int>& v) {
    std::string s;
    for (auto it = v.rbegin(); it != v.rend(); ++it) s += static_cast<char>('0' + *it);
    return s;
  };
  json outcomes = json::array();
  for (const auto& site : r.order) outcomes.push_back(coord_str(site) + "=" + std::to_string(r.outcomes.at(site)));
  json j;
  j["backend"] = std::string(backend_name(backend->kind()));
  j["seed"] = cfg.seed;
  j["input"] = input;
  j["outcomes"] = outcomes;
  j["frame"] = r.frame.str();
  j["raw_readout"] = bit_string(z);
  j["corrected"] = bit_string(bits);
  emit(cfg, j);
  return kExitOk;
}

// ---- verify ----

std::pair<int, int> parse_dims(const std::string& spec) {
  const auto x = spec.find_first_of("xX");
  try {
    if (x == std::string::npos) throw std::invalid_argument(spec);
    std::size_t u1 = 0, u2 = 0;
    const int w = std::stoi(spec.substr(0, x), &u1);
    const int h = std::stoi(spec.substr(x + 1), &u2);
    if (u1 != x || u2 != spec.size() - x - 1 || w < 1 || h < 1) throw std::invalid_argument(spec);
    return {w, h};
  } catch (const std::exception&) {
    throw UsageError("cluster size must look like WxH, got '" + spec + "'");
  }
}

json verify_cluster(const RunConfig& cfg, const std::string& spec, bool& ok) {
  const auto [w, h] = parse_dims(spec);
  const ClusterGraph g = grid_cluster(w, h);
  const BackendKind k = parse_backend_kind(cfg.backend);
  const bool dense = k == BackendKind::kDense;
  json j;
  j["check"] = "cluster " + spec;
  j["mode"] = dense ? "dense" : "tableau";
  std::size_t satisfied = 0;
  std::string failure;
  try {
    if (dense) {
      StateVector s = StateVector::plus(g.size());
      entangle(s, g);
      satisfied = verify_cluster_state(s, g).satisfied();
    } else {
      StabilizerTableau t(g.size());
      entangle(t, g);
      satisfied = verify_cluster_state(t, g).satisfied();
    }
  } catch (const VerificationError& e) {
    failure = e.what();
  }
  j["equations"] = std::to_string(satisfied) + "/" + std::to_string(g.size());
  j["passed"] = failure.empty() && satisfied == g.size();
  if (!failure.empty()) j["detail"] = failure;
  ok &= j["passed"].get<bool>();
  return j;
}

GateTemplate template_by_name(const std::string& name, const std::vector<double>& angles) {
  if (name == "hadamard") return hadamard_template();
  if (name == "phase") return phase_template();
  if (name == "cnot") return cnot_template();
  if (name == "bridged-cnot") return bridged_cnot_template(true);
  if (name == "wire") return wire_template(4);
  if (name == "rotation") {
    if (angles.size() != 3) throw UsageError("rotation needs --angles xi eta zeta");
    return rotation_template(EulerAngles(angles[0], angles[1], angles[2]));
  }
  throw UsageError("unknown template '" + name + "' (hadamard, phase, cnot, bridged-cnot, wire, rotation)");
}

json verify_template(const RunConfig& cfg, const std::string& name, const std::vector<double>& angles, bool& ok) {
  const GateTemplate t = template_by_name(name, angles);
  VerifyOptions o = verify_options(cfg);
  o.exhaustive_limit = 16;
  // Templates are small enough that auto means the dense oracle.
  if (o.backend == BackendKind::kAuto) o.backend = BackendKind::kDense;
  const VerifyReport r = verify_equivalence(t.pattern, t.reference, t.clifford, o);
  ok &= r.passed;
  json j = verify_json("template " + name, r);
  j["depth"] = logical_depth(prune_pauli_dependencies(t.pattern));
  return j;
}

Eigen::MatrixXcd circuit_matrix(const CircuitIR& c) {
  if (c.num_logical > 10) throw CapabilityError("dense reference limited to 10 logical qubits");
  const std::size_t dim = std::size_t{1} << c.num_logical;
  Eigen::MatrixXcd u(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<Complex> a(dim, 0.0);
    a[i] = 1.0;
    const StateVector out = simulate_circuit(c, StateVector::from_amplitudes(a));
    for (std::size_t r = 0; r < dim; ++r) u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = out.amplitude(r);
  }
  return u;
}

json verify_circuit(const RunConfig& cfg, const std::string& path, std::size_t qubits, bool peephole, bool& ok) {
  const CircuitIR c = parse_nonempty_circuit(read_file(path), qubits);
  const CompileReport rep = compile(c, compile_options(cfg, peephole));
  std::optional<CliffordMap> clifford;
  if (c.is_clifford()) clifford = circuit_clifford(c);
  VerifyOptions o = verify_options(cfg);
  std::optional<Eigen::MatrixXcd> dense;
  const bool needs_dense = o.backend == BackendKind::kDense || !clifford || !rep.pattern.all_pauli();
  if (needs_dense) dense = circuit_matrix(c);
  const VerifyReport r = verify_equivalence(rep.pattern, dense, clifford, o);
  ok &= r.passed;
  json j = verify_json("circuit " + path, r);
  j["depth"] = rep.depth;
  j["sites"] = rep.site_count;
  return j;
}

json verify_bitrev(const RunConfig& cfg, std::size_t n, bool& ok) {
  const MeasurementPattern p = bit_reversal_pattern(n, cfg.embed_rectangle);
  VerifyOptions o = verify_options(cfg);
  if (o.backend == BackendKind::kAuto) o.backend = n <= 2 ? BackendKind::kDense : BackendKind::kTableau;
  std::optional<Eigen::MatrixXcd> dense;
  if (o.backend == BackendKind::kDense) {
    CircuitIR swaps;
    swaps.num_logical = n;
    for (std::size_t k = 0; k < n / 2; ++k) {
      const std::size_t j = n - 1 - k;
      swaps.gates.insert(swaps.gates.end(), {Cnot{k, j}, Cnot{j, k}, Cnot{k, j}});
    }
    dense = circuit_matrix(swaps);
  }
  const VerifyReport r = verify_equivalence(p, dense, reversal_clifford(n), o);
  ok &= r.passed;
  json j = verify_json("bitrev " + std::to_string(n), r);
  j["sites"] = p.graph.size();
  j["depth"] = logical_depth(p);
  if (n >= 2) {
    const TeleportationReport t = teleportation_decomposition_check(n, cfg.seed);
    json tj;
    json pairs = json::array();
    auto sign = [](Membership m) {
      return m == Membership::kPlus ? "+" : m == Membership::kMinus ? "-" : "absent";
    };
    for (const auto& pc : t.pairs) {
      pairs.push_back(coord_str(pc.m) + "~" + coord_str(pc.o) + " xz" + sign(pc.xz) + " zx" + sign(pc.zx));
    }
    tj["bell_pairs"] = pairs;
    tj["equations_hold"] = t.equations_hold;
    tj["reversal_after_bell_measurements"] = t.reversal_after_bell_measurements;
    bool tele_ok = t.equations_hold && t.reversal_after_bell_measurements;
    if (t.protocol_residual) {
      tj["protocol_residual"] = *t.protocol_residual;
      tj["bell_probability_gap"] = *t.bell_probability_gap;
      tele_ok &= *t.protocol_residual < 1e-12 && *t.bell_probability_gap < 1e-12;
    }
    tj["passed"] = tele_ok;
    ok &= tele_ok;
    j["teleportation"] = tj;
  }
  return j;
}

// ---- depth ----

int cmd_depth(const RunConfig& cfg, const std::string& path, std::size_t qubits, bool peephole) {
  const std::string text = read_file(path);
  MeasurementPattern p;
  if (looks_like_pattern(text)) {
    p = read_pattern(text);
  } else {
    const CircuitIR c = parse_circuit(text, qubits);
    p = compile(c, compile_options(cfg, peephole)).pattern;
  }
  const Schedule s = measurement_rounds(p);
  json j;
  j["D"] = s.depth();
  j["rounds"] = rounds_json(s, true);
  emit(cfg, j);
  return kExitOk;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ONEWAY_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("ONEWAY_SEED is not an unsigned integer");
    }
  }
  return 0;
}

void add_common(CLI::App* app, RunConfig& cfg) {
  app->add_option("--seed", cfg.seed, "RNG seed (default: $ONEWAY_SEED or 0)");
  app->add_option("--backend", cfg.backend, "dense | tableau | auto")
      ->check(CLI::IsMember({"dense", "tableau", "auto"}));
  app->add_option("--trials", cfg.trials, "verification trials")->check(CLI::PositiveNumber);
  app->add_option("--tol", cfg.tol, "dense infidelity tolerance")->check(CLI::PositiveNumber);
  app->add_option("--format", cfg.format, "text | json")->check(CLI::IsMember({"text", "json"}));
  app->add_flag("--embed-rectangle", cfg.embed_rectangle, "fill the bounding box with sigma_z removals");
  app->add_option("--max-grid", cfg.max_grid, "largest layout extent")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"oneway: one-way quantum computer compiler and simulator"};
  app.require_subcommand(1);
  RunConfig cfg;
  try {
    cfg.seed = default_seed();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::string file, out_path, input, target, arg;
  std::size_t qubits = 0;
  bool peephole = false;
  std::vector<double> angles;

  auto* c = app.add_subcommand("compile", "compile a circuit file to a pattern file");
  std::size_t bitrev = 0;
  c->add_option("circuit", file, "circuit file");
  c->add_option("--bitrev", bitrev, "emit the bit-reversal block on n qubits instead");
  c->add_option("-o,--output", out_path, "pattern file (default: <circuit>.pattern)");
  c->add_option("--qubits", qubits, "minimum register size");
  c->add_flag("--peephole", peephole, "lower Clifford-angle rotations to pruned Clifford chains");
  add_common(c, cfg);

  auto* r = app.add_subcommand("run", "execute a pattern file and read out in sigma_z");
  r->add_option("pattern", file, "pattern file")->required();
  r->add_option("--input", input, "one symbol per input, qubit n-1 first: 0 1 + -")->required();
  add_common(r, cfg);

  auto* v = app.add_subcommand("verify", "run verification checks");
  v->add_option("target", target, "cluster | template | circuit | bitrev")->required();
  v->add_option("arg", arg, "WxH, template name, circuit file or n")->required();
  v->add_option("--angles", angles, "rotation template angles xi eta zeta")->expected(3);
  v->add_option("--qubits", qubits, "minimum register size for circuit targets");
  v->add_flag("--peephole", peephole, "compile circuits with the peephole pass");
  add_common(v, cfg);

  auto* d = app.add_subcommand("depth", "logical depth and round schedule of a pattern or circuit");
  d->add_option("file", file, "pattern or circuit file")->required();
  d->add_option("--qubits", qubits, "minimum register size for circuits");
  d->add_flag("--peephole", peephole, "compile circuits with the peephole pass");
  add_common(d, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c->parsed() && bitrev > 0) return cmd_bitrev(cfg, bitrev, out_path);
    if (c->parsed()) return cmd_compile(cfg, file, out_path, qubits, peephole);
    if (r->parsed()) return cmd_run(cfg, file, input);
    if (d->parsed()) return cmd_depth(cfg, file, qubits, peephole);
    bool ok = true;
    json checks = json::array();
    if (target == "cluster") {
      checks.push_back(verify_cluster(cfg, arg, ok));
    } else if (target == "template") {
      checks.push_back(verify_template(cfg, arg, angles, ok));
    } else if (target == "circuit") {
      checks.push_back(verify_circuit(cfg, arg, qubits, peephole, ok));
    } else if (target == "bitrev") {
      std::size_t n = 0;
      try {
        n = std::stoul(arg);
      } catch (const std::exception&) {
        throw UsageError("bitrev needs a qubit count");
      }
      if (n == 0) throw UsageError("bitrev needs n >= 1");
      checks.push_back(verify_bitrev(cfg, n, ok));
    } else {
      throw UsageError("unknown verify target '" + target + "'");
    }
    json j;
    j["checks"] = checks;
    j["passed"] = ok;
    emit(cfg, j);
    return ok ? kExitOk : kExitCheckFailed;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CapabilityError& e) {
    std::cerr << "capability error: " << e.what() << "\n";
    return kExitCapability;
  } catch (const CompileError& e) {
    std::cerr << "compile error: " << e.what() << "\n";
    return kExitCapability;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCapability;
  }
}
