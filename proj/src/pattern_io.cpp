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

#include "oneway/pattern_io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "oneway/errors.hpp"

namespace oneway {
namespace {

constexpr int kFormatVersion = 1;

std::string format_angle(double theta) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", theta);
  return buf;
}

std::string coords(const std::vector<Coord>& cs) {
  std::string s = std::to_string(cs.size());
  for (const auto& c : cs) s += " " + std::to_string(c.x) + " " + std::to_string(c.y);
  return s;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /// Next non-blank line split into tokens.
  std::vector<std::string> next(const char* expected) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      std::istringstream ss(line);
      std::vector<std::string> tokens;
      for (std::string t; ss >> t;) tokens.push_back(t);
      if (!tokens.empty()) return tokens;
    }
    throw ParseError(line_no_ + 1, std::string("unexpected end of input, expected ") + expected);
  }

  std::vector<std::string> keyword(const char* kw) {
    auto t = next(kw);
    if (t[0] != kw) fail("expected '" + std::string(kw) + "', found '" + t[0] + "'");
    return t;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_no_, what); }

  int line() const { return line_no_; }

 private:
  std::istream& in_;
  int line_no_ = 0;
};

class Tokens {
 public:
  Tokens(const std::vector<std::string>& t, const LineReader& r) : t_(t), r_(r) {}

  const std::string& str() {
    if (i_ >= t_.size()) r_.fail("missing field");
    return t_[i_++];
  }
  long long integer() {
    const std::string& s = str();
    try {
      std::size_t used = 0;
      long long v = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      r_.fail("expected an integer, found '" + s + "'");
    }
  }
  double real() {
    const std::string& s = str();
    try {
      std::size_t used = 0;
      double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      r_.fail("expected a number, found '" + s + "'");
    }
  }
  Coord coord() {
    const int x = static_cast<int>(integer());
    return {x, static_cast<int>(integer())};
  }
  std::vector<Coord> coord_list() {
    const long long n = integer();
    if (n < 0) r_.fail("negative count");
    std::vector<Coord> out;
    for (long long i = 0; i < n; ++i) out.push_back(coord());
    return out;
  }
  void done() {
    if (i_ != t_.size()) r_.fail("trailing field '" + t_[i_] + "'");
  }

 private:
  const std::vector<std::string>& t_;
  const LineReader& r_;
  std::size_t i_ = 1;
};

std::size_t count_of(LineReader& r, const char* kw) {
  auto t = r.keyword(kw);
  Tokens tok(t, r);
  const long long n = tok.integer();
  tok.done();
  if (n < 0) r.fail("negative count");
  return static_cast<std::size_t>(n);
}

}  // namespace

void write_pattern(std::ostream& out, const MeasurementPattern& p) {
  out << "oneway-pattern " << kFormatVersion << "\n";
  const auto& sites = p.graph.sites();
  if (sites.empty()) {
    out << "grid 0 0 -1 -1\n";
  } else {
    int xmin = sites[0].x, xmax = sites[0].x, ymin = sites[0].y, ymax = sites[0].y;
    for (const auto& c : sites) {
      xmin = std::min(xmin, c.x);
      xmax = std::max(xmax, c.x);
      ymin = std::min(ymin, c.y);
      ymax = std::max(ymax, c.y);
    }
    out << "grid " << xmin << " " << ymin << " " << xmax << " " << ymax << "\n";
  }
  std::map<Coord, std::size_t> in_index, out_index;
  for (std::size_t k = 0; k < p.inputs.size(); ++k) in_index[p.inputs[k]] = k;
  for (std::size_t k = 0; k < p.outputs.size(); ++k) out_index[p.outputs[k]] = k;

  out << "sites " << sites.size() << "\n";
  for (const auto& c : sites) {
    std::string role;
    if (auto it = in_index.find(c); it != in_index.end()) role = "in:" + std::to_string(it->second);
    if (auto it = out_index.find(c); it != out_index.end()) {
      role += (role.empty() ? "" : ",") + std::string("out:") + std::to_string(it->second);
    }
    if (role.empty()) role = "-";
    std::string basis = "-";
    if (auto it = p.assignments.find(c); it != p.assignments.end()) {
      basis = basis_tag(it->second);
      if (const auto* eq = std::get_if<Equatorial>(&it->second)) {
        basis += " " + format_angle(eq->theta) + " " + std::to_string(eq->offset) + " " + coords(eq->deps);
      }
    }
    out << "site " << c.x << " " << c.y << " " << role << " " << basis << "\n";
  }
  out << "edges " << p.graph.edges().size() << "\n";
  for (const auto& [a, b] : p.graph.edges()) {
    out << "edge " << a.x << " " << a.y << " " << b.x << " " << b.y << "\n";
  }
  out << "relabels " << p.relabels.size() << "\n";
  for (const auto& [c, parity] : p.relabels) {
    out << "relabel " << c.x << " " << c.y << " " << (parity.constant ? 1 : 0) << " " << coords(parity.sites) << "\n";
  }
  auto rules = p.frame_rules;
  std::sort(rules.begin(), rules.end());
  out << "frame_rules " << rules.size() << "\n";
  for (const auto& r : rules) {
    out << "rule " << r.site.x << " " << r.site.y << " " << r.outcome << " " << r.qubit << " "
        << (r.axis == FrameAxis::kX ? "x" : "z") << "\n";
  }
  out << "end\n";
}

std::string write_pattern(const MeasurementPattern& pattern) {
  std::ostringstream ss;
  write_pattern(ss, pattern);
  return ss.str();
}

MeasurementPattern read_pattern(std::istream& in) {
  LineReader r(in);
  {
    auto t = r.keyword("oneway-pattern");
    Tokens tok(t, r);
    if (tok.integer() != kFormatVersion) r.fail("unsupported pattern format version");
    tok.done();
  }
  {
    auto t = r.keyword("grid");
    Tokens tok(t, r);
    for (int i = 0; i < 4; ++i) tok.integer();
    tok.done();
  }
  MeasurementPattern p;
  std::vector<Coord> sites;
  std::map<std::size_t, Coord> ins, outs;
  const std::size_t n_sites = count_of(r, "sites");
  for (std::size_t i = 0; i < n_sites; ++i) {
    auto t = r.keyword("site");
    Tokens tok(t, r);
    const Coord c = tok.coord();
    sites.push_back(c);
    std::istringstream roles(tok.str());
    for (std::string role; std::getline(roles, role, ',');) {
      if (role == "-") continue;
      const auto colon = role.find(':');
      if (colon == std::string::npos) r.fail("bad role '" + role + "'");
      std::size_t k = 0;
      try {
        k = std::stoul(role.substr(colon + 1));
      } catch (const std::exception&) {
        r.fail("bad role index in '" + role + "'");
      }
      const std::string kind = role.substr(0, colon);
      if (kind != "in" && kind != "out") r.fail("bad role '" + role + "'");
      auto& target = kind == "in" ? ins : outs;
      if (!target.emplace(k, c).second) r.fail("duplicate role '" + role + "'");
    }
    const std::string tag = tok.str();
    if (tag == "X") {
      p.assignments[c] = PauliXBasis{};
    } else if (tag == "Y") {
      p.assignments[c] = PauliYBasis{};
    } else if (tag == "Z") {
      p.assignments[c] = PauliZRemoval{};
    } else if (tag == "EQ") {
      const double theta = tok.real();
      const long long offset = tok.integer();
      if (offset != 0 && offset != 1) r.fail("offset must be 0 or 1");
      p.assignments[c] = make_equatorial(theta, tok.coord_list(), static_cast<int>(offset));
    } else if (tag != "-") {
      r.fail("unknown basis '" + tag + "'");
    }
    tok.done();
  }
  std::vector<Edge> edges;
  const std::size_t n_edges = count_of(r, "edges");
  for (std::size_t i = 0; i < n_edges; ++i) {
    auto t = r.keyword("edge");
    Tokens tok(t, r);
    const Coord a = tok.coord();
    edges.emplace_back(a, tok.coord());
    tok.done();
  }
  try {
    p.graph = ClusterGraph(sites, edges);
  } catch (const std::exception& e) {
    r.fail(e.what());
  }
  const std::size_t n_relabels = count_of(r, "relabels");
  for (std::size_t i = 0; i < n_relabels; ++i) {
    auto t = r.keyword("relabel");
    Tokens tok(t, r);
    const Coord c = tok.coord();
    Parity parity;
    parity.constant = tok.integer() != 0;
    for (const auto& d : tok.coord_list()) parity.toggle(d);
    tok.done();
    p.relabels[c] = parity;
  }
  const std::size_t n_rules = count_of(r, "frame_rules");
  for (std::size_t i = 0; i < n_rules; ++i) {
    auto t = r.keyword("rule");
    Tokens tok(t, r);
    FrameRule rule;
    rule.site = tok.coord();
    rule.outcome = static_cast<int>(tok.integer());
    rule.qubit = static_cast<int>(tok.integer());
    const std::string axis = tok.str();
    if (axis != "x" && axis != "z") r.fail("frame axis must be x or z");
    rule.axis = axis == "x" ? FrameAxis::kX : FrameAxis::kZ;
    tok.done();
    p.frame_rules.push_back(rule);
  }
  r.keyword("end");
  for (std::size_t k = 0; k < ins.size(); ++k) {
    if (!ins.count(k)) r.fail("input indices are not contiguous");
    p.inputs.push_back(ins[k]);
  }
  for (std::size_t k = 0; k < outs.size(); ++k) {
    if (!outs.count(k)) r.fail("output indices are not contiguous");
    p.outputs.push_back(outs[k]);
  }
  try {
    p.validate();
  } catch (const PatternError& e) {
    r.fail(e.what());
  }
  return p;
}

MeasurementPattern read_pattern(const std::string& text) {
  std::istringstream ss(text);
  return read_pattern(ss);
}

MeasurementPattern load_pattern_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_pattern(in);
}

void save_pattern_file(const std::string& path, const MeasurementPattern& pattern) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_pattern(out, pattern);
}

}  // namespace oneway
