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

// Runs a scenario. Every observer keeps its own description of all the other
// systems; nothing is ever reported relative to no one.
//
//  - measure(O, S): relative to O the outcome is Born-sampled and O's
//    description collapses; relative to every observer not taking part, the
//    S-O pair undergoes the unitary premeasurement. If S is itself an
//    observer, its account of O is no longer available.
//  - evolve(T): every description containing T evolves unitarily.
//  - queries read descriptions; they never change them.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "relaqm/scenario.hpp"

namespace relaqm {

using Tree = nlohmann::ordered_json;

struct MeasureSummary {
  std::size_t event;  // 1-based position in the event list
  std::string observer;
  std::string target;
  int outcome;                                // relative to the observer
  std::vector<double> observer_probabilities;  // Born weights in the observer's account
  std::vector<std::pair<std::string, std::vector<double>>> external_marginals;  // per external observer
};

struct Report {
  std::string scenario;
  std::uint64_t seed = 0;
  Tree events = Tree::array();
  std::vector<std::string> violations;
  std::vector<MeasureSummary> measurements;
};

struct RunOptions {
  double tolerance = kTol;
};

Report run(const Scenario& sc, const RunOptions& options = {});

}  // namespace relaqm
