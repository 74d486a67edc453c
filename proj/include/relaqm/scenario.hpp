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

#pragma once

// Declarative scenario documents (YAML). Schema and examples: fixtures/ and
// README.md.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "relaqm/hilbert.hpp"
#include "relaqm/questions.hpp"

namespace relaqm {

struct SystemDecl {
  std::string name;
  std::size_t dim;
};

struct MeasureEvent {
  std::string observer;
  std::string target;
  std::string family;
};

struct EvolveEvent {
  std::string target;
  Mat hamiltonian;
  double time;
};

enum class QueryKind { RelativeState, Marginal, Completion, Consistency, Outcome, Kernel, Interference };

std::string_view query_name(QueryKind kind);

struct QueryEvent {
  QueryKind kind;
  std::string observer;              // every kind except kernel/interference
  std::vector<std::string> systems;  // relative_state (1 or 2), marginal (1)
  std::string family;                // marginal
  std::size_t measurement = 0;       // completion, consistency, outcome: 1-based measure count
  std::string from;                  // kernel, interference
  std::string to;
  std::size_t dim = 0;
  std::size_t i = 0, j = 0, k = 0;  // interference, 1-based
};

struct Event {
  std::size_t line = 0;
  std::optional<long> step;
  std::variant<MeasureEvent, EvolveEvent, QueryEvent> body;
};

struct Scenario {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<SystemDecl> systems;
  std::vector<std::string> observers;
  std::map<std::string, Vec> preparations;  // every system, defaults filled in
  std::vector<CompleteFamily> families;     // declared ones
  std::vector<Event> events;
  std::vector<std::pair<std::string, std::string>> kernel_pairs;

  std::size_t system_index(const std::string& name) const;
  const SystemDecl& system(const std::string& name) const { return systems[system_index(name)]; }
  bool is_observer(const std::string& name) const;
  // Declared family, or a built-in (computational, fourier, hadamard) of the
  // given dimension.
  CompleteFamily family(const std::string& name, std::size_t dim) const;
  std::optional<std::size_t> declared_family_dim(const std::string& name) const;
};

// ParseError (line and field in the message) for malformed documents,
// ValidationError (rule in detail()) or NormalizationError for
// well-formed documents that break a rule.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

// Families section only, for the kernel subcommand: declared families plus
// the requested pairs (all ordered pairs of equal dimension when absent).
Scenario parse_family_document(std::string_view text);

// Whitespace-separated rows of reals.
Eigen::MatrixXd parse_matrix(std::string_view text);

}  // namespace relaqm
