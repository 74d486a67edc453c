// Copyright 2026 The relaqm Authors
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

#include "relaqm/scenario.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "relaqm/errors.hpp"

namespace relaqm {
namespace {

std::size_t line_of(const YAML::Node& node) { return static_cast<std::size_t>(node.Mark().line) + 1; }

[[noreturn]] void parse_error(const YAML::Node& node, const std::string& field, const std::string& what) {
  fail(Errc::ParseError, "line " + std::to_string(line_of(node)) + ": field '" + field + "': " + what, field);
}

[[noreturn]] void invalid(std::size_t line, const std::string& rule, const std::string& what) {
  fail(Errc::ValidationError, "line " + std::to_string(line) + ": " + rule + ": " + what, rule);
}

YAML::Node require(const YAML::Node& parent, const std::string& field) {
  const YAML::Node child = parent[field];
  if (!child) parse_error(parent, field, "missing");
  return child;
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& field) {
  if (!node.IsScalar()) parse_error(node, field, "expected a scalar");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    parse_error(node, field, "cannot read value '" + node.Scalar() + "'");
  }
}

std::string name_of(const YAML::Node& node, const std::string& field) { return scalar<std::string>(node, field); }

cplx complex_of(const YAML::Node& node, const std::string& field) {
  if (node.IsScalar()) return {scalar<double>(node, field), 0.0};
  if (node.IsSequence() && node.size() == 2) {
    return {scalar<double>(node[0], field), scalar<double>(node[1], field)};
  }
  parse_error(node, field, "complex numbers are written as a real or as [re, im]");
}

Vec vector_of(const YAML::Node& node, const std::string& field) {
  if (!node.IsSequence() || node.size() == 0) parse_error(node, field, "expected a non-empty list of amplitudes");
  Vec v(static_cast<Eigen::Index>(node.size()));
  for (std::size_t i = 0; i < node.size(); ++i) v[static_cast<Eigen::Index>(i)] = complex_of(node[i], field);
  return v;
}

Mat matrix_of(const YAML::Node& node, const std::string& field) {
  if (!node.IsSequence() || node.size() == 0) parse_error(node, field, "expected a list of rows");
  const auto n = static_cast<Eigen::Index>(node.size());
  Mat m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const Vec row = vector_of(node[static_cast<std::size_t>(r)], field);
    if (row.size() != n) parse_error(node[static_cast<std::size_t>(r)], field, "matrix must be square");
    m.row(r) = row.transpose();
  }
  return m;
}

std::vector<CompleteFamily> families_of(const YAML::Node& root) {
  std::vector<CompleteFamily> out;
  const YAML::Node families = root["families"];
  if (!families) return out;
  if (!families.IsMap()) parse_error(families, "families", "expected a map of name -> family");
  for (const auto& entry : families) {
    const std::string name = name_of(entry.first, "families");
    const YAML::Node body = entry.second;
    const std::string field = "families." + name;
    if (!body.IsMap()) parse_error(body, field, "expected a map");
    try {
      if (body["columns"]) {
        const YAML::Node cols = body["columns"];
        if (!cols.IsSequence() || cols.size() == 0) parse_error(cols, field + ".columns", "expected a list of vectors");
        Mat basis(static_cast<Eigen::Index>(cols.size()), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c) {
          const Vec v = vector_of(cols[c], field + ".columns");
          if (v.size() != basis.rows()) parse_error(cols[c], field + ".columns", "need dim vectors of length dim");
          basis.col(static_cast<Eigen::Index>(c)) = v;
        }
        out.emplace_back(std::move(basis), name);
      } else {
        const std::string kind = name_of(require(body, "kind"), field + ".kind");
        const auto dim = scalar<std::size_t>(require(body, "dim"), field + ".dim");
        if (dim < 2) invalid(line_of(body), "InvalidDimension", "family dimension must be at least 2");
        if (kind == "computational") {
          out.push_back(CompleteFamily::computational(dim, name));
        } else if (kind == "fourier") {
          out.push_back(CompleteFamily::fourier(dim, name));
        } else {
          parse_error(body, field + ".kind", "unknown family kind '" + kind + "'");
        }
      }
    } catch (const Error& e) {
      if (e.code() == Errc::NotUnitary) invalid(line_of(body), "FamilyNotOrthonormal", e.what());
      throw;
    }
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
      if (out[i].label() == name) invalid(line_of(entry.first), "DuplicateFamily", name);
    }
  }
  return out;
}

class Validator {
 public:
  explicit Validator(Scenario& sc) : sc_(sc) {}

  std::size_t system(const YAML::Node& node, const std::string& field) {
    const std::string name = name_of(node, field);
    for (std::size_t i = 0; i < sc_.systems.size(); ++i) {
      if (sc_.systems[i].name == name) return i;
    }
    invalid(line_of(node), "UndeclaredSystem", "'" + name + "' is not a declared system");
  }

  std::string observer(const YAML::Node& node, const std::string& field) {
    if (node.IsSequence()) {
      invalid(line_of(node), "SimultaneousMeasurement",
              "several observers cannot act at one event; one of them has to obtain the information first");
    }
    const std::string name = sc_.systems[system(node, field)].name;
    if (!sc_.is_observer(name)) invalid(line_of(node), "UndeclaredObserver", "'" + name + "' is not an observer");
    return name;
  }

  std::string family(const YAML::Node& node, const std::string& field, std::size_t dim) {
    const std::string name = name_of(node, field);
    try {
      (void)sc_.family(name, dim);
    } catch (const Error& e) {
      invalid(line_of(node), e.code() == Errc::DimensionMismatch ? "FamilyDimension" : "UnknownFamily", e.what());
    }
    return name;
  }

  std::size_t measurement(const YAML::Node& node, const std::string& field) {
    const auto m = scalar<std::size_t>(node, field);
    if (m == 0 || m > measures_.size()) {
      invalid(line_of(node), "UnknownMeasurement", "measurement " + std::to_string(m) + " does not precede this event");
    }
    return m;
  }

  void not_participant(const YAML::Node& node, const std::string& who, std::size_t m) {
    const MeasureEvent& me = measures_[m - 1];
    if (who == me.observer || who == me.target) {
      invalid(line_of(node), "ParticipantQuery",
              who + " took part in measurement " + std::to_string(m) + " and has no external account of it");
    }
  }

  void record(const MeasureEvent& me) { measures_.push_back(me); }
  const std::vector<MeasureEvent>& measures() const { return measures_; }

  void measured_after(const YAML::Node& node, const std::string& who, std::size_t m,
                      const std::vector<std::pair<std::size_t, MeasureEvent>>& history) {
    const MeasureEvent& me = measures_[m - 1];
    if (who == me.observer) return;
    for (const auto& [index, later] : history) {
      if (index > m && later.observer == who && later.target == me.observer) return;
    }
    invalid(line_of(node), "ComparisonWithoutInteraction",
            who + " has not interacted with " + me.observer + " since measurement " + std::to_string(m) +
                " and cannot know its outcome");
  }

 private:
  Scenario& sc_;
  std::vector<MeasureEvent> measures_;
};

Event parse_event(const YAML::Node& node, Scenario& sc, Validator& v,
                  std::vector<std::pair<std::size_t, MeasureEvent>>& history) {
  if (!node.IsMap() || node.size() != 1) parse_error(node, "events", "each event is a map with a single key");
  const std::string type = node.begin()->first.as<std::string>();
  const YAML::Node body = node.begin()->second;
  if (!body.IsMap()) parse_error(body, type, "expected a map");
  Event ev;
  ev.line = line_of(node);
  if (body["step"]) ev.step = scalar<long>(body["step"], type + ".step");

  if (type == "measure") {
    MeasureEvent me;
    me.observer = v.observer(require(body, "observer"), "measure.observer");
    me.target = sc.systems[v.system(require(body, "target"), "measure.target")].name;
    if (me.observer == me.target) {
      invalid(ev.line, "SelfMeasurement", me.observer + " cannot measure itself");
    }
    const std::size_t target_dim = sc.system(me.target).dim;
    if (sc.system(me.observer).dim < target_dim) {
      invalid(ev.line, "PointerTooSmall", me.observer + " has fewer states than " + me.target);
    }
    me.family = body["family"] ? v.family(body["family"], "measure.family", target_dim) : "computational";
    v.record(me);
    history.emplace_back(v.measures().size(), me);
    ev.body = me;
    return ev;
  }
  if (type == "evolve") {
    EvolveEvent ee;
    ee.target = sc.systems[v.system(require(body, "target"), "evolve.target")].name;
    ee.hamiltonian = matrix_of(require(body, "hamiltonian"), "evolve.hamiltonian");
    ee.time = scalar<double>(require(body, "t"), "evolve.t");
    if (static_cast<std::size_t>(ee.hamiltonian.rows()) != sc.system(ee.target).dim) {
      invalid(ev.line, "HamiltonianDimension", "Hamiltonian does not fit " + ee.target);
    }
    if (!Operator(ee.hamiltonian).is_hermitian()) invalid(ev.line, "NotHermitian", "Hamiltonian is not Hermitian");
    if (!std::isfinite(ee.time)) invalid(ev.line, "InvalidTime", "t must be finite");
    ev.body = std::move(ee);
    return ev;
  }

  QueryEvent q;
  auto observer_field = [&](const std::string& field) {
    q.observer = v.observer(require(body, "observer"), field + ".observer");
  };
  auto measurement_field = [&](const std::string& field) {
    q.measurement = v.measurement(require(body, "measurement"), field + ".measurement");
  };
  auto families_field = [&](const std::string& field) {
    const YAML::Node from = require(body, "from");
    const std::string from_name = name_of(from, field + ".from");
    std::size_t dim = 0;
    if (body["dim"]) {
      dim = scalar<std::size_t>(body["dim"], field + ".dim");
    } else if (auto d = sc.declared_family_dim(from_name)) {
      dim = *d;
    } else {
      parse_error(body, field + ".dim", "needed when 'from' is a built-in family");
    }
    q.dim = dim;
    q.from = v.family(from, field + ".from", dim);
    q.to = v.family(require(body, "to"), field + ".to", dim);
  };

  if (type == "relative_state") {
    q.kind = QueryKind::RelativeState;
    observer_field(type);
    const YAML::Node systems = require(body, "systems");
    if (!systems.IsSequence() || systems.size() == 0) parse_error(systems, type + ".systems", "expected a list");
    if (systems.size() > 2) {
      invalid(ev.line, "AggregateQuery", "only single systems and pairs have relative states");
    }
    for (const auto& s : systems) {
      const std::string name = sc.systems[v.system(s, type + ".systems")].name;
      if (name == q.observer) invalid(ev.line, "SelfDescription", q.observer + " has no description of itself");
      if (std::find(q.systems.begin(), q.systems.end(), name) != q.systems.end()) {
        parse_error(s, type + ".systems", "system listed twice");
      }
      q.systems.push_back(name);
    }
  } else if (type == "marginal") {
    q.kind = QueryKind::Marginal;
    observer_field(type);
    const std::string name = sc.systems[v.system(require(body, "system"), type + ".system")].name;
    if (name == q.observer) invalid(ev.line, "SelfDescription", q.observer + " has no description of itself");
    q.systems.push_back(name);
    q.family = v.family(require(body, "family"), type + ".family", sc.system(name).dim);
  } else if (type == "completion" || type == "consistency") {
    q.kind = type == "completion" ? QueryKind::Completion : QueryKind::Consistency;
    observer_field(type);
    measurement_field(type);
    v.not_participant(body, q.observer, q.measurement);
  } else if (type == "outcome") {
    q.kind = QueryKind::Outcome;
    observer_field(type);
    measurement_field(type);
    v.measured_after(body, q.observer, q.measurement, history);
  } else if (type == "kernel") {
    q.kind = QueryKind::Kernel;
    families_field(type);
  } else if (type == "interference") {
    q.kind = QueryKind::Interference;
    families_field(type);
    q.i = scalar<std::size_t>(require(body, "i"), type + ".i");
    const YAML::Node jk = require(body, "jk");
    if (!jk.IsSequence() || jk.size() != 2) parse_error(jk, type + ".jk", "expected [j, k]");
    q.j = scalar<std::size_t>(jk[0], type + ".jk");
    q.k = scalar<std::size_t>(jk[1], type + ".jk");
    for (std::size_t idx : {q.i, q.j, q.k}) {
      if (idx == 0 || idx > q.dim) invalid(ev.line, "IndexOutOfRange", "atom index " + std::to_string(idx));
    }
    if (q.j == q.k) invalid(ev.line, "IndexOutOfRange", "j and k must differ");
  } else {
    parse_error(node, "events", "unknown event type '" + type + "'");
  }
  ev.body = std::move(q);
  return ev;
}

YAML::Node load_yaml(std::string_view text) {
  try {
    return YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    fail(Errc::ParseError, "line " + std::to_string(e.mark.line + 1) + ": " + e.msg, "document");
  }
}

}  // namespace

std::string_view query_name(QueryKind kind) {
  switch (kind) {
    case QueryKind::RelativeState: return "relative_state";
    case QueryKind::Marginal: return "marginal";
    case QueryKind::Completion: return "completion";
    case QueryKind::Consistency: return "consistency";
    case QueryKind::Outcome: return "outcome";
    case QueryKind::Kernel: return "kernel";
    case QueryKind::Interference: return "interference";
  }
  return "unknown";
}

std::size_t Scenario::system_index(const std::string& name) const {
  for (std::size_t i = 0; i < systems.size(); ++i) {
    if (systems[i].name == name) return i;
  }
  fail(Errc::ValidationError, "'" + name + "' is not a declared system", "UndeclaredSystem");
}

bool Scenario::is_observer(const std::string& name) const {
  return std::find(observers.begin(), observers.end(), name) != observers.end();
}

std::optional<std::size_t> Scenario::declared_family_dim(const std::string& name) const {
  for (const auto& f : families) {
    if (f.label() == name) return f.dim();
  }
  return std::nullopt;
}

CompleteFamily Scenario::family(const std::string& name, std::size_t dim) const {
  for (const auto& f : families) {
    if (f.label() != name) continue;
    if (f.dim() != dim) {
      fail(Errc::DimensionMismatch, "family '" + name + "' has dimension " + std::to_string(f.dim()) + ", need " +
                                        std::to_string(dim));
    }
    return f;
  }
  if (name == "computational") return CompleteFamily::computational(dim, name);
  if (name == "fourier") return CompleteFamily::fourier(dim, name);
  if (name == "hadamard") {
    if (dim != 2) fail(Errc::DimensionMismatch, "the hadamard family is two-dimensional");
    return CompleteFamily::fourier(2, name);
  }
  fail(Errc::FamilyMismatch, "unknown family '" + name + "'");
}

Scenario parse_scenario(std::string_view text) {
  const YAML::Node root = load_yaml(text);
  if (!root.IsMap()) fail(Errc::ParseError, "line 1: scenario document must be a map", "document");
  Scenario sc;
  sc.name = root["name"] ? name_of(root["name"], "name") : "scenario";
  if (root["seed"]) sc.seed = scalar<std::uint64_t>(root["seed"], "seed");

  const YAML::Node systems = require(root, "systems");
  if (!systems.IsSequence() || systems.size() == 0) parse_error(systems, "systems", "expected a non-empty list");
  for (const auto& s : systems) {
    SystemDecl decl{name_of(require(s, "name"), "systems.name"), scalar<std::size_t>(require(s, "dim"), "systems.dim")};
    if (decl.dim < 2) invalid(line_of(s), "InvalidDimension", decl.name + " needs at least two states");
    for (const auto& other : sc.systems) {
      if (other.name == decl.name) invalid(line_of(s), "DuplicateSystem", decl.name);
    }
    sc.systems.push_back(std::move(decl));
  }

  sc.families = families_of(root);
  Validator v(sc);

  if (const YAML::Node observers = root["observers"]) {
    if (!observers.IsSequence()) parse_error(observers, "observers", "expected a list");
    for (const auto& o : observers) {
      const std::string name = name_of(o, "observers");
      if (std::none_of(sc.systems.begin(), sc.systems.end(), [&](const SystemDecl& d) { return d.name == name; })) {
        // Observers are ordinary physical systems.
        invalid(line_of(o), "UndeclaredObserver", "observer '" + name + "' is not a declared system");
      }
      if (sc.is_observer(name)) invalid(line_of(o), "DuplicateObserver", name);
      sc.observers.push_back(name);
    }
  }

  const YAML::Node preps = root["preparations"];
  if (preps && !preps.IsMap()) parse_error(preps, "preparations", "expected a map of system -> amplitudes");
  for (const auto& s : sc.systems) {
    const auto n = static_cast<Eigen::Index>(s.dim);
    if (!preps || !preps[s.name]) {
      sc.preparations[s.name] = Vec::Unit(n, 0);
      continue;
    }
    const YAML::Node node = preps[s.name];
    Vec amps = vector_of(node, "preparations." + s.name);
    if (amps.size() != n) invalid(line_of(node), "PreparationDimension", s.name + " amplitudes have wrong length");
    const double norm = amps.norm();
    if (std::abs(norm - 1.0) > kTol) {
      fail(Errc::NormalizationError,
           "line " + std::to_string(line_of(node)) + ": preparation of " + s.name + " has norm " +
               std::to_string(norm),
           "NormalizationError");
    }
    sc.preparations[s.name] = amps / norm;
  }
  if (preps) {
    for (const auto& entry : preps) v.system(entry.first, "preparations");
  }

  std::vector<std::pair<std::size_t, MeasureEvent>> history;
  std::set<long> steps;
  std::optional<long> last_step;
  if (const YAML::Node events = root["events"]) {
    if (!events.IsSequence()) parse_error(events, "events", "expected a list");
    for (const auto& node : events) {
      Event ev = parse_event(node, sc, v, history);
      if (ev.step) {
        if (!steps.insert(*ev.step).second) {
          invalid(ev.line, "SimultaneousMeasurement",
                  "two events share step " + std::to_string(*ev.step) + "; events must be totally ordered");
        }
        if (last_step && *ev.step < *last_step) invalid(ev.line, "EventOrder", "steps must increase");
        last_step = ev.step;
      }
      sc.events.push_back(std::move(ev));
    }
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open " + path, "path");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

Scenario parse_family_document(std::string_view text) {
  const YAML::Node root = load_yaml(text);
  if (!root.IsMap()) fail(Errc::ParseError, "line 1: family document must be a map", "document");
  Scenario sc;
  sc.name = root["name"] ? name_of(root["name"], "name") : "families";
  sc.families = families_of(root);
  if (const YAML::Node pairs = root["kernel_pairs"]) {
    if (!pairs.IsSequence()) parse_error(pairs, "kernel_pairs", "expected a list of [from, to]");
    for (const auto& p : pairs) {
      if (!p.IsSequence() || p.size() != 2) parse_error(p, "kernel_pairs", "expected [from, to]");
      const std::string from = name_of(p[0], "kernel_pairs");
      const std::string to = name_of(p[1], "kernel_pairs");
      const auto df = sc.declared_family_dim(from);
      const auto dt = sc.declared_family_dim(to);
      if (!df || !dt) invalid(line_of(p), "UnknownFamily", "kernel pairs must name declared families");
      if (*df != *dt) invalid(line_of(p), "FamilyDimension", from + " and " + to + " differ in dimension");
      sc.kernel_pairs.emplace_back(from, to);
    }
  } else {
    for (const auto& a : sc.families) {
      for (const auto& b : sc.families) {
        if (&a != &b && a.dim() == b.dim()) sc.kernel_pairs.emplace_back(a.label(), b.label());
      }
    }
  }
  return sc;
}

Eigen::MatrixXd parse_matrix(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<double> row;
    std::string token;
    while (fields >> token) {
      char* end = nullptr;
      const double x = std::strtod(token.c_str(), &end);
      if (end == token.c_str() || *end != '\0') {
        fail(Errc::ParseError, "line " + std::to_string(line_no) + ": not a number: '" + token + "'", "matrix");
      }
      row.push_back(x);
    }
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size()) {
      fail(Errc::ParseError, "line " + std::to_string(line_no) + ": ragged matrix row", "matrix");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(Errc::ParseError, "line 1: empty matrix", "matrix");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return m;
}

}  // namespace relaqm
