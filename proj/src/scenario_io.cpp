/******************************************************************************
 * Copyright 2026 The OOC Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *****************************************************************************/

#include "ooc/scenario_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "ooc/builtin_scenarios.hpp"
#include "ooc/errors.hpp"
#include "ooc/scenario_file.hpp"

namespace ooc {

namespace {

using file::Entry;
using file::Section;
using file::Value;

// Location-aware conversions from document values to scenario fields.
class Reader {
 public:
  explicit Reader(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void fail(const std::string& where, std::size_t line, const std::string& what) const {
    throw Error(ErrorCode::ValidationError, origin_ + ":" + std::to_string(line) + ": " + where + ": " + what);
  }

  double number(const Value& v, const std::string& where) const {
    if (!v.is_number()) fail(where, v.line, "expected a number");
    const double x = std::get<file::Number>(v.data).value;
    if (!std::isfinite(x)) fail(where, v.line, "expected a finite number");
    return x;
  }

  std::uint64_t unsigned_integer(const Value& v, const std::string& where) const {
    if (!v.is_number()) fail(where, v.line, "expected a non-negative integer");
    const std::string& t = std::get<file::Number>(v.data).text;
    std::uint64_t out = 0;
    const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size()) fail(where, v.line, "expected a non-negative integer");
    return out;
  }

  std::string string(const Value& v, const std::string& where) const {
    if (!v.is_string()) fail(where, v.line, "expected a string");
    return std::get<std::string>(v.data);
  }

  bool boolean(const Value& v, const std::string& where) const {
    if (!v.is_bool()) fail(where, v.line, "expected true or false");
    return std::get<bool>(v.data);
  }

  const file::Array& array(const Value& v, const std::string& where) const {
    if (!v.is_array()) fail(where, v.line, "expected an array");
    return std::get<file::Array>(v.data);
  }

  Eigen::VectorXd vector(const Value& v, const std::string& where) const {
    const file::Array& a = array(v, where);
    Eigen::VectorXd out(static_cast<Eigen::Index>(a.size()));
    for (std::size_t k = 0; k < a.size(); ++k) out(static_cast<Eigen::Index>(k)) = number(a[k], where);
    return out;
  }

  Eigen::MatrixXd matrix(const Value& v, const std::string& where) const {
    const file::Array& rows = array(v, where);
    if (rows.empty()) fail(where, v.line, "expected a non-empty matrix [[...], ...]");
    std::size_t cols = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!rows[r].is_array()) fail(where, v.line, "expected a matrix written as rows [[...], ...]");
      const std::size_t c = std::get<file::Array>(rows[r].data).size();
      if (r == 0) cols = c;
      if (c == 0 || c != cols) fail(where, v.line, "matrix rows must be non-empty and of equal length");
    }
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      out.row(static_cast<Eigen::Index>(r)) = vector(rows[r], where).transpose();
    }
    return out;
  }

  const std::string& origin() const { return origin_; }

 private:
  std::string origin_;
};

// Tracks which keys of a section were consumed; repeated keys are rejected
// unless listed as repeatable.
class SectionView {
 public:
  SectionView(const Reader& rd, const Section& sec, std::set<std::string> allowed,
              std::set<std::string> repeatable = {})
      : rd_(rd), sec_(sec) {
    std::map<std::string, std::size_t> seen;
    for (const Entry& e : sec.entries) {
      if (!allowed.count(e.key)) rd.fail(where(e.key), e.line, "unknown key");
      if (++seen[e.key] > 1 && !repeatable.count(e.key)) rd.fail(where(e.key), e.line, "key given more than once");
    }
  }

  std::string where(const std::string& key) const { return sec_.name.empty() ? key : sec_.name + "." + key; }

  const Entry* find(const std::string& key) const {
    for (const Entry& e : sec_.entries) {
      if (e.key == key) return &e;
    }
    return nullptr;
  }

  const Entry& require(const std::string& key) const {
    const Entry* e = find(key);
    if (!e) rd_.fail(where(key), sec_.line, "missing required key");
    return *e;
  }

  std::vector<const Entry*> all(const std::string& key) const {
    std::vector<const Entry*> out;
    for (const Entry& e : sec_.entries) {
      if (e.key == key) out.push_back(&e);
    }
    return out;
  }

  const Section& section() const { return sec_; }

 private:
  const Reader& rd_;
  const Section& sec_;
};

const Value* table_get(const file::Table& t, const std::string& key) {
  for (const auto& kv : t) {
    if (kv.first == key) return &kv.second;
  }
  return nullptr;
}

const file::Table& table(const Reader& rd, const Value& v, const std::string& where,
                         const std::set<std::string>& allowed) {
  if (!v.is_table()) rd.fail(where, v.line, "expected an inline table { ... }");
  const auto& t = std::get<file::Table>(v.data);
  for (const auto& kv : t) {
    if (!allowed.count(kv.first)) rd.fail(where + "." + kv.first, v.line, "unknown key");
  }
  return t;
}

const Value& table_require(const Reader& rd, const file::Table& t, const Value& owner, const std::string& where,
                           const std::string& key) {
  const Value* v = table_get(t, key);
  if (!v) rd.fail(where + "." + key, owner.line, "missing required key");
  return *v;
}

// Splits "agents.3" into ("agents", 3).
std::optional<std::pair<std::string, std::size_t>> indexed_section(const std::string& name) {
  const auto dot = name.find('.');
  if (dot == std::string::npos) return std::nullopt;
  const std::string head = name.substr(0, dot);
  const std::string tail = name.substr(dot + 1);
  std::size_t index = 0;
  const auto res = std::from_chars(tail.data(), tail.data() + tail.size(), index);
  if (res.ec != std::errc() || res.ptr != tail.data() + tail.size() || index == 0) return std::nullopt;
  return std::make_pair(head, index);
}

AgentSpec read_agent(const Reader& rd, const Section& sec) {
  const SectionView view(rd, sec, {"A", "B", "C", "K", "H", "triplet", "x0", "xhat0", "rho0", "v0"});
  auto mat = [&](const char* key) { return rd.matrix(view.require(key).value, view.where(key)); };
  auto opt_mat = [&](const char* key) -> std::optional<Eigen::MatrixXd> {
    if (const Entry* e = view.find(key)) return rd.matrix(e->value, view.where(key));
    return std::nullopt;
  };
  auto opt_vec = [&](const char* key) -> std::optional<Eigen::VectorXd> {
    if (const Entry* e = view.find(key)) return rd.vector(e->value, view.where(key));
    return std::nullopt;
  };

  std::optional<AgentPlant> plant;
  try {
    plant.emplace(mat("A"), mat("B"), mat("C"));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ShapeMismatch) throw;
    rd.fail(sec.name, sec.line, e.what());
  }
  AgentSpec spec{*plant, opt_mat("K"), opt_mat("H"), std::nullopt, opt_vec("x0"), opt_vec("xhat0"),
                 opt_vec("rho0"), opt_vec("v0")};

  auto check_shape = [&](const std::optional<Eigen::MatrixXd>& m, const char* key, std::size_t rows,
                         std::size_t cols) {
    if (m && (static_cast<std::size_t>(m->rows()) != rows || static_cast<std::size_t>(m->cols()) != cols)) {
      rd.fail(view.where(key), view.find(key)->line,
              "expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
    }
  };
  auto check_len = [&](const std::optional<Eigen::VectorXd>& v, const char* key, std::size_t n) {
    if (v && static_cast<std::size_t>(v->size()) != n) {
      rd.fail(view.where(key), view.find(key)->line, "expected " + std::to_string(n) + " entries");
    }
  };
  const AgentPlant& p = spec.plant;
  check_shape(spec.K, "K", p.p(), p.n());
  check_shape(spec.H, "H", p.n(), p.q());
  check_len(spec.x0, "x0", p.n());
  check_len(spec.xhat0, "xhat0", p.n());
  check_len(spec.rho0, "rho0", p.q());
  check_len(spec.v0, "v0", p.q());
  if (spec.v0 && !spec.v0->isZero(0.0)) {
    throw Error(ErrorCode::ConfigOverridesV0, view.where("v0") + " must be omitted or zero");
  }

  if (const Entry* e = view.find("triplet")) {
    const std::string where = view.where("triplet");
    const file::Table& t = table(rd, e->value, where, {"Upsilon", "Phi", "Psi"});
    auto part = [&](const char* key) {
      return rd.matrix(table_require(rd, t, e->value, where, key), where + "." + key);
    };
    TripletSpec trip{part("Upsilon"), part("Phi"), part("Psi")};
    if (trip.Upsilon.rows() != static_cast<Eigen::Index>(p.p()) || trip.Phi.rows() != static_cast<Eigen::Index>(p.p()) ||
        trip.Psi.rows() != static_cast<Eigen::Index>(p.n()) || trip.Upsilon.cols() != static_cast<Eigen::Index>(p.q()) ||
        trip.Phi.cols() != static_cast<Eigen::Index>(p.q()) || trip.Psi.cols() != static_cast<Eigen::Index>(p.q())) {
      rd.fail(where, e->line, "Upsilon and Phi must be p x q, Psi n x q");
    }
    spec.triplet = std::move(trip);
  }
  return spec;
}

CostSpec read_cost(const Reader& rd, const Section& sec, std::size_t q) {
  const SectionView view(rd, sec, {"expr", "quadratic", "domain_box"});
  const Entry* expr = view.find("expr");
  const Entry* quad = view.find("quadratic");
  if ((expr != nullptr) == (quad != nullptr)) rd.fail(sec.name, sec.line, "give exactly one of expr or quadratic");

  CostSpec spec;
  if (expr) {
    std::string text = rd.string(expr->value, view.where("expr"));
    try {
      parse_cost_expression(text, q);
    } catch (const Error& e) {
      rd.fail(view.where("expr"), expr->line, e.what());
    }
    spec.form = std::move(text);
  } else {
    const std::string where = view.where("quadratic");
    const file::Table& t = table(rd, quad->value, where, {"Q", "b", "c"});
    QuadraticSpec qs;
    qs.Q = rd.matrix(table_require(rd, t, quad->value, where, "Q"), where + ".Q");
    qs.b = rd.vector(table_require(rd, t, quad->value, where, "b"), where + ".b");
    qs.c = rd.number(table_require(rd, t, quad->value, where, "c"), where + ".c");
    if (qs.Q.rows() != static_cast<Eigen::Index>(q) || qs.Q.cols() != static_cast<Eigen::Index>(q) ||
        qs.b.size() != static_cast<Eigen::Index>(q)) {
      rd.fail(where, quad->line, "Q must be q x q and b of length q (q = " + std::to_string(q) + ")");
    }
    try {
      quadratic_cost(qs.Q, qs.b, qs.c);
    } catch (const Error& e) {
      rd.fail(where, quad->line, e.what());
    }
    spec.form = std::move(qs);
  }

  if (const Entry* e = view.find("domain_box")) {
    const std::string where = view.where("domain_box");
    const file::Array& a = rd.array(e->value, where);
    Box box;
    if (a.size() == 2 && a[0].is_number()) {
      box = Box::uniform(q, rd.number(a[0], where), rd.number(a[1], where));
    } else {
      if (a.size() != q) rd.fail(where, e->line, "expected [lo, hi] or one [lo, hi] pair per output component");
      box.lower.resize(static_cast<Eigen::Index>(q));
      box.upper.resize(static_cast<Eigen::Index>(q));
      for (std::size_t k = 0; k < q; ++k) {
        const Eigen::VectorXd pair = rd.vector(a[k], where);
        if (pair.size() != 2) rd.fail(where, e->line, "each component needs a [lo, hi] pair");
        box.lower(static_cast<Eigen::Index>(k)) = pair(0);
        box.upper(static_cast<Eigen::Index>(k)) = pair(1);
      }
    }
    if (!(box.lower.array() < box.upper.array()).all()) rd.fail(where, e->line, "lower bounds must be below upper");
    spec.domain_box = std::move(box);
  }
  return spec;
}

}  // namespace

ControllerMode parse_controller_mode(const std::string& text) {
  if (text == "state") return ControllerMode::State;
  if (text == "output") return ControllerMode::Output;
  throw Error(ErrorCode::ValidationError, "controller must be \"state\" or \"output\", got \"" + text + "\"");
}

std::string to_string(ControllerMode mode) { return mode == ControllerMode::State ? "state" : "output"; }

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  const file::Document doc = file::parse_document(text, origin);
  const Reader rd(origin);
  Scenario sc;

  const SectionView top(rd, doc.sections.front(), {"schema", "name"});
  const Entry& schema = top.require("schema");
  if (rd.unsigned_integer(schema.value, "schema") != 1) rd.fail("schema", schema.line, "only schema = 1 is supported");
  sc.name = top.find("name") ? rd.string(top.find("name")->value, "name") : "scenario";

  const Section* graph = nullptr;
  const Section* controller = nullptr;
  const Section* presets = nullptr;
  const Section* simulation = nullptr;
  std::map<std::size_t, const Section*> agents, costs;
  for (std::size_t k = 1; k < doc.sections.size(); ++k) {
    const Section& sec = doc.sections[k];
    if (sec.name == "graph") {
      graph = &sec;
    } else if (sec.name == "controller") {
      controller = &sec;
    } else if (sec.name == "presets") {
      presets = &sec;
    } else if (sec.name == "simulation") {
      simulation = &sec;
    } else if (auto idx = indexed_section(sec.name); idx && idx->first == "agents") {
      agents[idx->second] = &sec;
    } else if (idx && idx->first == "costs") {
      costs[idx->second] = &sec;
    } else {
      rd.fail("[" + sec.name + "]", sec.line, "unknown section");
    }
  }
  if (!graph) rd.fail("[graph]", 1, "missing section");

  // [graph]
  {
    const SectionView view(rd, *graph, {"nodes", "edge"}, {"edge"});
    const Entry& nodes = view.require("nodes");
    sc.nodes = rd.unsigned_integer(nodes.value, "graph.nodes");
    if (sc.nodes == 0) rd.fail("graph.nodes", nodes.line, "must be at least 1");
    for (const Entry* e : view.all("edge")) {
      const Eigen::VectorXd v = rd.vector(e->value, "graph.edge");
      if (v.size() != 2 && v.size() != 3) rd.fail("graph.edge", e->line, "expected [src, dst] or [src, dst, weight]");
      auto as_index = [&](double x) {
        if (x < 1 || x != std::floor(x)) rd.fail("graph.edge", e->line, "node indices must be positive integers");
        return static_cast<std::size_t>(x);
      };
      sc.edges.push_back(Edge{as_index(v(0)), as_index(v(1)), v.size() == 3 ? v(2) : 1.0});
    }
    for (std::size_t k = 0; k < sc.edges.size(); ++k) {
      const Edge& ed = sc.edges[k];
      const std::size_t line = view.all("edge")[k]->line;
      const std::string name = "edge " + std::to_string(ed.src) + " -> " + std::to_string(ed.dst);
      try {
        build_digraph({ed}, sc.nodes);
      } catch (const Error& err) {
        rd.fail("graph.edge", line, name + ": " + err.what());
      }
      for (std::size_t j = 0; j < k; ++j) {
        if (sc.edges[j].src == ed.src && sc.edges[j].dst == ed.dst) rd.fail("graph.edge", line, name + " repeats");
      }
    }
    const Digraph g = build_digraph(sc.edges, sc.nodes);
    if (!is_strongly_connected(g)) rd.fail("graph", graph->line, "digraph is not strongly connected");
  }

  // [agents.i], [costs.i]
  auto check_indices = [&](const std::map<std::size_t, const Section*>& m, const std::string& kind) {
    if (m.size() != sc.nodes || (!m.empty() && m.rbegin()->first != sc.nodes)) {
      rd.fail("[" + kind + ".*]", 1, "need sections " + kind + ".1 .. " + kind + "." + std::to_string(sc.nodes));
    }
  };
  check_indices(agents, "agents");
  check_indices(costs, "costs");
  for (const auto& [i, sec] : agents) sc.agents.push_back(read_agent(rd, *sec));
  const std::size_t q = sc.agents.front().plant.q();
  for (std::size_t i = 0; i < sc.agents.size(); ++i) {
    if (sc.agents[i].plant.q() != q) {
      rd.fail("agents." + std::to_string(i + 1) + ".C", agents.at(i + 1)->line, "all agents must share q");
    }
  }
  for (const auto& [i, sec] : costs) sc.costs.push_back(read_cost(rd, *sec, q));

  // [controller]
  if (controller) {
    const SectionView view(rd, *controller, {"controller", "gamma1", "gamma2", "auto_gains", "reference_y_star"});
    if (const Entry* e = view.find("controller")) {
      try {
        sc.mode = parse_controller_mode(rd.string(e->value, "controller.controller"));
      } catch (const Error& err) {
        rd.fail("controller.controller", e->line, err.what());
      }
    }
    auto positive = [&](const char* key, double& out) {
      if (const Entry* e = view.find(key)) {
        out = rd.number(e->value, view.where(key));
        if (!(out > 0.0)) rd.fail(view.where(key), e->line, "must be positive");
      }
    };
    positive("gamma1", sc.gamma1);
    positive("gamma2", sc.gamma2);
    if (const Entry* e = view.find("auto_gains")) sc.auto_gains = rd.boolean(e->value, view.where("auto_gains"));
    if (const Entry* e = view.find("reference_y_star")) {
      sc.reference_y_star = rd.number(e->value, view.where("reference_y_star"));
    }
  }

  // [presets]
  if (presets) {
    for (const Entry& e : presets->entries) {
      const std::string where = "presets." + e.key;
      for (const GainPreset& p : sc.presets) {
        if (p.name == e.key) rd.fail(where, e.line, "key given more than once");
      }
      const Eigen::VectorXd g = rd.vector(e.value, where);
      if (g.size() != 2 || !(g(0) > 0.0) || !(g(1) > 0.0)) rd.fail(where, e.line, "expected [gamma1, gamma2] > 0");
      sc.presets.push_back(GainPreset{e.key, g(0), g(1)});
    }
  }

  // [simulation]
  if (simulation) {
    const SectionView view(
        rd, *simulation, {"horizon", "step", "stride", "seed", "tolerance", "settle_epsilon"});
    auto positive = [&](const char* key, double& out) {
      if (const Entry* e = view.find(key)) {
        out = rd.number(e->value, view.where(key));
        if (!(out > 0.0)) rd.fail(view.where(key), e->line, "must be positive");
      }
    };
    positive("horizon", sc.horizon);
    positive("step", sc.step);
    positive("tolerance", sc.tolerance);
    positive("settle_epsilon", sc.settle_epsilon);
    if (const Entry* e = view.find("stride")) {
      sc.stride = rd.unsigned_integer(e->value, "simulation.stride");
      if (sc.stride == 0) rd.fail("simulation.stride", e->line, "must be at least 1");
    }
    if (const Entry* e = view.find("seed")) sc.seed = rd.unsigned_integer(e->value, "simulation.seed");
    if (sc.horizon < sc.step) rd.fail("simulation.horizon", simulation->line, "must be at least simulation.step");
  }
  return sc;
}

Scenario load_scenario(const std::string& name_or_path) {
  if (auto builtin = builtin_scenario(name_or_path)) return *builtin;
  std::ifstream in(name_or_path, std::ios::binary);
  if (!in) {
    std::string known;
    for (const std::string& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
    throw Error(ErrorCode::IoError,
                "cannot open scenario file '" + name_or_path + "' (built-in scenarios: " + known + ")");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), name_or_path);
}

namespace {

std::string num(double x) { return fmt::format("{}", x); }

std::string row(const Eigen::VectorXd& v) {
  std::string out = "[";
  for (Eigen::Index k = 0; k < v.size(); ++k) out += (k ? ", " : "") + num(v(k));
  return out + "]";
}

std::string matrix(const Eigen::MatrixXd& m) {
  std::string out = "[";
  for (Eigen::Index r = 0; r < m.rows(); ++r) out += (r ? ", " : "") + row(m.row(r).transpose());
  return out + "]";
}

}  // namespace

std::string emit_scenario(const Scenario& sc) {
  std::string out;
  auto line = [&out](const std::string& s) { out += s + "\n"; };

  line("schema = 1");
  line("name = " + file::quote(sc.name));
  line("");
  line("[graph]");
  line("nodes = " + std::to_string(sc.nodes));
  for (const Edge& e : sc.edges) {
    line(fmt::format("edge = [{}, {}, {}]", e.src, e.dst, num(e.weight)));
  }

  for (std::size_t i = 0; i < sc.agents.size(); ++i) {
    const AgentSpec& a = sc.agents[i];
    line("");
    line("[agents." + std::to_string(i + 1) + "]");
    line("A = " + matrix(a.plant.A()));
    line("B = " + matrix(a.plant.B()));
    line("C = " + matrix(a.plant.C()));
    if (a.K) line("K = " + matrix(*a.K));
    if (a.H) line("H = " + matrix(*a.H));
    if (a.triplet) {
      line("triplet = { Upsilon = " + matrix(a.triplet->Upsilon) + ", Phi = " + matrix(a.triplet->Phi) +
           ", Psi = " + matrix(a.triplet->Psi) + " }");
    }
    if (a.x0) line("x0 = " + row(*a.x0));
    if (a.xhat0) line("xhat0 = " + row(*a.xhat0));
    if (a.rho0) line("rho0 = " + row(*a.rho0));
    if (a.v0) line("v0 = " + row(*a.v0));
  }

  for (std::size_t i = 0; i < sc.costs.size(); ++i) {
    const CostSpec& c = sc.costs[i];
    line("");
    line("[costs." + std::to_string(i + 1) + "]");
    if (const auto* text = std::get_if<std::string>(&c.form)) {
      line("expr = " + file::quote(*text));
    } else {
      const auto& q = std::get<QuadraticSpec>(c.form);
      line("quadratic = { Q = " + matrix(q.Q) + ", b = " + row(q.b) + ", c = " + num(q.c) + " }");
    }
    if (c.domain_box) {
      std::string pairs;
      for (Eigen::Index k = 0; k < c.domain_box->lower.size(); ++k) {
        pairs += (k ? ", " : "") + fmt::format("[{}, {}]", num(c.domain_box->lower(k)), num(c.domain_box->upper(k)));
      }
      line("domain_box = [" + pairs + "]");
    }
  }

  line("");
  line("[controller]");
  line("controller = " + file::quote(to_string(sc.mode)));
  line("gamma1 = " + num(sc.gamma1));
  line("gamma2 = " + num(sc.gamma2));
  line(std::string("auto_gains = ") + (sc.auto_gains ? "true" : "false"));
  if (sc.reference_y_star) line("reference_y_star = " + num(*sc.reference_y_star));

  if (!sc.presets.empty()) {
    line("");
    line("[presets]");
    for (const GainPreset& p : sc.presets) line(p.name + " = [" + num(p.gamma1) + ", " + num(p.gamma2) + "]");
  }

  line("");
  line("[simulation]");
  line("horizon = " + num(sc.horizon));
  line("step = " + num(sc.step));
  line("stride = " + std::to_string(sc.stride));
  line("seed = " + std::to_string(sc.seed));
  line("tolerance = " + num(sc.tolerance));
  line("settle_epsilon = " + num(sc.settle_epsilon));
  return out;
}

Scenario apply_overrides(const Scenario& scenario, const ScenarioOverrides& o) {
  Scenario sc = o.preset ? with_preset(scenario, *o.preset) : scenario;
  if (o.mode) sc.mode = *o.mode;
  if (o.step) {
    if (!(*o.step > 0.0)) throw Error(ErrorCode::ValidationError, "--step must be positive");
    sc.step = *o.step;
  }
  if (o.horizon) {
    if (!(*o.horizon > 0.0)) throw Error(ErrorCode::ValidationError, "--horizon must be positive");
    sc.horizon = *o.horizon;
  }
  if (o.seed) sc.seed = *o.seed;
  if (o.tolerance) {
    if (!(*o.tolerance > 0.0)) throw Error(ErrorCode::ValidationError, "--tolerance must be positive");
    sc.tolerance = *o.tolerance;
  }
  if (sc.horizon < sc.step) throw Error(ErrorCode::ValidationError, "horizon must be at least the step size");
  return sc;
}

}  // namespace ooc
