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

#include "relaqm/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace relaqm {
namespace {

constexpr double kPrintZero = 1e-13;

double round12(double x) {
  if (std::abs(x) < kPrintZero) return 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

std::string short_number(double x) {
  if (std::abs(x) < kPrintZero) x = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

bool is_complex_pair(const Tree& t) { return t.is_array() && t.size() == 2 && t[0].is_number() && t[1].is_number(); }

bool all_of(const Tree& arr, bool (*pred)(const Tree&)) {
  return std::all_of(arr.begin(), arr.end(), [&](const Tree& t) { return pred(t); });
}

bool is_number(const Tree& t) { return t.is_number(); }

bool is_number_row(const Tree& t) { return t.is_array() && !t.empty() && all_of(t, is_number); }

bool is_complex_row(const Tree& t) { return t.is_array() && !t.empty() && all_of(t, is_complex_pair); }

std::string complex_text(const Tree& pair) {
  const double re = pair[0].get<double>();
  const double im = pair[1].get<double>();
  std::string out = short_number(re);
  const std::string imag = short_number(std::abs(im));
  out += (im < 0.0 && std::abs(im) >= kPrintZero) ? "-" : "+";
  return out + imag + "i";
}

std::string scalar_text(const Tree& t) {
  if (t.is_string()) return t.get<std::string>();
  if (t.is_boolean()) return t.get<bool>() ? "true" : "false";
  if (t.is_null()) return "-";
  if (t.is_number_float()) return short_number(t.get<double>());
  return t.dump();
}

std::string row_text(const Tree& row, bool complex) {
  std::string out = "[";
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) out += ", ";
    out += complex && is_complex_pair(row[i]) ? complex_text(row[i]) : scalar_text(row[i]);
  }
  return out + "]";
}

// Complex entries are stored as [re, im] pairs, which a 2-column real matrix
// also looks like, so only fields known to hold amplitudes are read as complex.
bool complex_field(const std::string& key) { return key == "amplitudes" || key == "unitary"; }

void flatten(const Tree& node, const std::string& path, std::vector<std::pair<std::string, std::string>>& rows,
             bool complex = false) {
  if (node.is_object()) {
    for (const auto& [key, child] : node.items()) {
      if (path.empty() && (key == "event" || key == "type")) continue;
      flatten(child, path.empty() ? key : path + "." + key, rows, complex_field(key));
    }
    return;
  }
  if (node.is_array()) {
    if (node.empty() || is_number_row(node) || (complex && is_complex_row(node))) {
      rows.emplace_back(path, row_text(node, complex));
      return;
    }
    if (all_of(node, is_number_row) || (complex && all_of(node, is_complex_row))) {
      std::string text;
      for (std::size_t i = 0; i < node.size(); ++i) text += (i ? "; " : "") + row_text(node[i], complex);
      rows.emplace_back(path, text);
      return;
    }
    for (std::size_t i = 0; i < node.size(); ++i) flatten(node[i], path + "[" + std::to_string(i) + "]", rows, complex);
    return;
  }
  rows.emplace_back(path, scalar_text(node));
}

void find_untagged(const Tree& node, const std::string& path, std::vector<std::string>& out) {
  if (node.is_object()) {
    if (node.contains("amplitudes")) {
      const auto it = node.find("relative_to");
      if (it == node.end() || !it->is_string() || it->get<std::string>().empty()) out.push_back(path);
    }
    for (const auto& [key, child] : node.items()) find_untagged(child, path + "/" + key, out);
  } else if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i) find_untagged(node[i], path + "/" + std::to_string(i), out);
  }
}

std::string table(const Report& r) {
  std::ostringstream out;
  out << "relaqm report  scenario=" << r.scenario << "  seed=" << r.seed << "\n";
  struct Row {
    std::string event, type, field, value;
  };
  std::vector<Row> rows;
  for (const Tree& ev : r.events) {
    std::vector<std::pair<std::string, std::string>> fields;
    flatten(ev, "", fields);
    const std::string event = ev.at("event").dump();
    const std::string type = ev.at("type").get<std::string>();
    for (auto& [field, value] : fields) rows.push_back({event, type, std::move(field), std::move(value)});
  }
  std::size_t w_event = 5, w_type = 4, w_field = 5;
  for (const Row& row : rows) {
    w_event = std::max(w_event, row.event.size());
    w_type = std::max(w_type, row.type.size());
    w_field = std::max(w_field, row.field.size());
  }
  auto line = [&](const std::string& a, const std::string& b, const std::string& c, const std::string& d) {
    out << a << std::string(w_event - a.size() + 2, ' ') << b << std::string(w_type - b.size() + 2, ' ') << c
        << std::string(w_field - c.size() + 2, ' ') << d << "\n";
  };
  line("event", "type", "field", "value");
  for (const Row& row : rows) line(row.event, row.type, row.field, row.value);
  if (!r.violations.empty()) {
    out << "violations:\n";
    for (const auto& v : r.violations) out << "  " << v << "\n";
  }
  return out.str();
}

}  // namespace

Tree rounded(const Tree& tree) {
  if (tree.is_number_float()) return round12(tree.get<double>());
  if (tree.is_object()) {
    Tree out = Tree::object();
    for (const auto& [key, child] : tree.items()) out[key] = rounded(child);
    return out;
  }
  if (tree.is_array()) {
    Tree out = Tree::array();
    for (const auto& child : tree) out.push_back(rounded(child));
    return out;
  }
  return tree;
}

Tree report_tree(const Report& r) {
  Tree t = Tree::object();
  t["format"] = "relaqm-report/1";
  t["scenario"] = r.scenario;
  t["seed"] = r.seed;
  t["events"] = r.events;
  t["violations"] = r.violations;
  return t;
}

std::string emit_report(const Report& r, ReportFormat format) {
  if (format == ReportFormat::Table) return table(r);
  return rounded(report_tree(r)).dump(2) + "\n";
}

std::vector<std::string> untagged_states(const Tree& tree) {
  std::vector<std::string> out;
  find_untagged(tree, "", out);
  return out;
}

}  // namespace relaqm
