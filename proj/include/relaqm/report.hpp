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

#include <string>
#include <vector>

#include "relaqm/runner.hpp"

namespace relaqm {

enum class ReportFormat { Table, Structured };

// Structured: JSON with fixed key order and numbers rounded to 12 significant
// digits. Table: aligned text, one row per reported field.
std::string emit_report(const Report& r, ReportFormat format);

Tree report_tree(const Report& r);

// Paths of states (objects carrying "amplitudes") without a relative_to tag.
std::vector<std::string> untagged_states(const Tree& tree);

// Rounds every number to 12 significant digits and clears negative zero.
Tree rounded(const Tree& tree);

}  // namespace relaqm
