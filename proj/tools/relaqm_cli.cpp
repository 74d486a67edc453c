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

// relaqm: run relational measurement scenarios and the numerical checks that
// back them.
//
//   relaqm run <scenario.yaml>          per-observer accounts of a scenario
//   relaqm kernel <families.yaml>       transition kernels between families
//   relaqm unistochastic <matrix.txt>   search for a unitary with |U|^2 = p
//   relaqm lattice-check <dim>          randomized question-lattice sweep
//
// Exit codes: 0 success, 1 usage or I/O error, 2 parse/validation error,
// 3 numeric-check failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "relaqm/errors.hpp"
#include "relaqm/kernel.hpp"
#include "relaqm/lattice_sweep.hpp"
#include "relaqm/report.hpp"
#include "relaqm/runner.hpp"
#include "relaqm/scenario.hpp"

namespace {

using relaqm::Errc;
using relaqm::Tree;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

// File-system trouble, reported as a usage error rather than a bad document.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::optional<std::uint64_t> seed;
  std::string format = "table";
  std::optional<double> tolerance;
  std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--seed", flags.seed, "RNG seed (overrides RELAQM_SEED and the document's seed)");
  cmd->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"table", "structured"}));
  cmd->add_option("--tolerance", flags.tolerance, "Numeric tolerance for checks");
  cmd->add_option("--out", flags.out, "Write the structured report to this path");
}

std::optional<std::uint64_t> resolve_seed(const CommonFlags& flags) {
  if (flags.seed) return flags.seed;
  if (const char* env = std::getenv("RELAQM_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw relaqm::Error(Errc::ParseError, std::string("RELAQM_SEED is not an integer: ") + env, "RELAQM_SEED");
    }
  }
  return std::nullopt;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Structured output goes to --out when given, otherwise to stdout.
void emit(const CommonFlags& flags, const std::string& table, const Tree& structured) {
  const std::string json = relaqm::rounded(structured).dump(2) + "\n";
  if (!flags.out.empty()) {
    std::ofstream out(flags.out, std::ios::binary);
    if (!out) throw IoError("cannot write " + flags.out);
    out << json;
  }
  if (flags.format == "structured") {
    if (flags.out.empty()) std::cout << json;
  } else {
    std::cout << table;
  }
}

int cmd_run(const std::string& path, const CommonFlags& flags) {
  relaqm::Scenario sc = relaqm::parse_scenario(read_file(path));
  if (auto seed = resolve_seed(flags)) sc.seed = *seed;
  relaqm::RunOptions options;
  if (flags.tolerance) options.tolerance = *flags.tolerance;
  const relaqm::Report report = relaqm::run(sc, options);
  const Tree tree = relaqm::report_tree(report);
  emit(flags, relaqm::emit_report(report, relaqm::ReportFormat::Table), tree);
  const bool clean = report.violations.empty() && relaqm::untagged_states(tree).empty();
  return clean ? kExitOk : kExitNumeric;
}

int cmd_kernel(const std::string& path, const CommonFlags& flags) {
  const relaqm::Scenario doc = relaqm::parse_family_document(read_file(path));
  const double tol = flags.tolerance.value_or(relaqm::kTol);
  Tree kernels = Tree::array();
  std::ostringstream table;
  bool ok = true;
  for (const auto& [from, to] : doc.kernel_pairs) {
    const std::size_t dim = *doc.declared_family_dim(from);
    const relaqm::TransitionKernel k = relaqm::kernel_from_families(doc.family(from, dim), doc.family(to, dim));
    const relaqm::StochasticReport s = relaqm::verify_double_stochastic(k.p());
    ok = ok && s.ok(tol);
    Tree entry = Tree::object();
    entry["from"] = from;
    entry["to"] = to;
    Tree p = Tree::array();
    Tree u = Tree::array();
    table << "kernel " << from << " -> " << to << "  (max stochastic violation " << s.max_violation() << ")\n";
    for (Eigen::Index r = 0; r < k.p().rows(); ++r) {
      Tree prow = Tree::array();
      Tree urow = Tree::array();
      table << "  ";
      for (Eigen::Index c = 0; c < k.p().cols(); ++c) {
        prow.push_back(k.p()(r, c));
        urow.push_back({k.unitary()(r, c).real(), k.unitary()(r, c).imag()});
        char cell[24];
        std::snprintf(cell, sizeof cell, "%10.6f", k.p()(r, c));
        table << cell;
      }
      table << "\n";
      p.push_back(std::move(prow));
      u.push_back(std::move(urow));
    }
    entry["p"] = std::move(p);
    entry["unitary"] = std::move(u);
    entry["max_stochastic_violation"] = s.max_violation();
    kernels.push_back(std::move(entry));
  }
  Tree tree = Tree::object();
  tree["format"] = "relaqm-kernels/1";
  tree["kernels"] = std::move(kernels);
  emit(flags, table.str(), tree);
  return ok ? kExitOk : kExitNumeric;
}

int cmd_unistochastic(const std::string& path, const CommonFlags& flags) {
  const Eigen::MatrixXd p = relaqm::parse_matrix(read_file(path));
  if (p.rows() != p.cols()) throw relaqm::Error(Errc::ParseError, "matrix must be square", "matrix");
  relaqm::UnistochasticOptions options;
  options.seed = resolve_seed(flags).value_or(0);
  if (flags.tolerance) options.accept_tol = *flags.tolerance;
  const relaqm::UnistochasticResult r = relaqm::unistochastic_search(p, options);

  std::string verdict = "inconclusive";
  if (r.unistochastic) verdict = "unistochastic";
  if (r.all_stalled) verdict = "not unistochastic";
  std::optional<bool> triangle;
  if (p.rows() == 3) triangle = relaqm::unistochastic_triangle_criterion(p);

  Tree tree = Tree::object();
  tree["format"] = "relaqm-unistochastic/1";
  tree["dim"] = p.rows();
  tree["seed"] = options.seed;
  tree["starts"] = options.starts;
  tree["residual"] = r.residual;
  tree["best_start"] = r.best_start;
  tree["verdict"] = verdict;
  tree["triangle_criterion"] = triangle ? Tree(*triangle) : Tree(nullptr);
  Tree u = Tree::array();
  for (Eigen::Index row = 0; row < r.unitary.rows(); ++row) {
    Tree urow = Tree::array();
    for (Eigen::Index c = 0; c < r.unitary.cols(); ++c) urow.push_back({r.unitary(row, c).real(), r.unitary(row, c).imag()});
    u.push_back(std::move(urow));
  }
  tree["unitary"] = std::move(u);

  std::ostringstream table;
  table << "verdict: " << verdict << "\nresidual: " << r.residual << " (best of " << options.starts
        << " starts, start " << r.best_start << ")\n";
  if (triangle) table << "triangle criterion: " << (*triangle ? "unistochastic" : "not unistochastic") << "\n";
  table << "phase-fixed unitary:\n";
  for (Eigen::Index row = 0; row < r.unitary.rows(); ++row) {
    table << " ";
    for (Eigen::Index c = 0; c < r.unitary.cols(); ++c) {
      char cell[48];
      std::snprintf(cell, sizeof cell, "  %9.6f%+9.6fi", r.unitary(row, c).real(), r.unitary(row, c).imag());
      table << cell;
    }
    table << "\n";
  }
  emit(flags, table.str(), tree);
  // The analytic 3x3 certificate must agree with a decisive search verdict.
  if (triangle && verdict != "inconclusive" && *triangle != r.unistochastic) return kExitNumeric;
  return kExitOk;
}

int cmd_lattice(std::size_t dim, std::size_t trials, const CommonFlags& flags) {
  const auto tallies =
      relaqm::lattice_sweep(dim, trials, resolve_seed(flags).value_or(0), flags.tolerance.value_or(relaqm::kTol));
  Tree laws = Tree::array();
  std::ostringstream table;
  table << "lattice sweep  dim=" << dim << "  trials=" << trials << "\n";
  bool ok = true;
  for (const auto& t : tallies) {
    ok = ok && t.failed == 0;
    laws.push_back(Tree::object({{"law", t.law}, {"checked", t.checked}, {"failed", t.failed}}));
    char line[128];
    std::snprintf(line, sizeof line, "  %-32s %6zu checked  %4zu failed\n", t.law.c_str(), t.checked, t.failed);
    table << line;
  }
  Tree tree = Tree::object();
  tree["format"] = "relaqm-lattice/1";
  tree["dim"] = dim;
  tree["trials"] = trials;
  tree["laws"] = std::move(laws);
  tree["ok"] = ok;
  emit(flags, table.str(), tree);
  return ok ? kExitOk : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relaqm: observer-relative quantum descriptions"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string path;
  std::size_t dim = 0;
  std::size_t trials = 500;

  CLI::App* run = app.add_subcommand("run", "Run a scenario and report every observer's account");
  run->add_option("file", path, "Scenario document")->required();
  add_common(run, flags);

  CLI::App* kernel = app.add_subcommand("kernel", "Transition kernels between complete families");
  kernel->add_option("file", path, "Family document")->required();
  add_common(kernel, flags);

  CLI::App* uni = app.add_subcommand("unistochastic", "Search for a unitary realizing a doubly stochastic matrix");
  uni->add_option("file", path, "Matrix file: whitespace-separated rows")->required();
  add_common(uni, flags);

  CLI::App* lattice = app.add_subcommand("lattice-check", "Randomized question-lattice law sweep");
  lattice->add_option("dim", dim, "Hilbert-space dimension")->required()->check(CLI::Range(2, 16));
  lattice->add_option("--trials", trials, "Random trials per law");
  add_common(lattice, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(path, flags);
    if (kernel->parsed()) return cmd_kernel(path, flags);
    if (uni->parsed()) return cmd_unistochastic(path, flags);
    if (lattice->parsed()) return cmd_lattice(dim, trials, flags);
  } catch (const IoError& e) {
    std::cerr << "relaqm: " << e.what() << "\n";
    return kExitUsage;
  } catch (const relaqm::Error& e) {
    std::cerr << "relaqm: " << relaqm::errc_name(e.code()) << ": " << e.what() << "\n";
    switch (e.code()) {
      case Errc::ParseError:
      case Errc::ValidationError:
      case Errc::NormalizationError:
      case Errc::NotDoublyStochastic:
      case Errc::DescriptionUnavailable:
        return kExitValidation;
      default:
        return kExitNumeric;
    }
  }
  return kExitUsage;
}
