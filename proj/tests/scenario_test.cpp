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

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "relaqm/errors.hpp"
#include "relaqm/report.hpp"
#include "relaqm/runner.hpp"

using namespace relaqm;

namespace {

const std::string kFixtures = RELAQM_FIXTURES;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kHeader = R"(name: t
seed: 1
systems:
  - {name: S, dim: 2}
  - {name: O, dim: 2}
  - {name: P, dim: 2}
observers: [O, P]
)";

// Parses and returns the rule name of the ValidationError (or the Errc name).
std::string rejection(const std::string& doc) {
  try {
    parse_scenario(doc);
  } catch (const Error& e) {
    return e.code() == Errc::ValidationError ? e.detail() : std::string(errc_name(e.code()));
  }
  return "accepted";
}

const Tree& event(const Report& r, std::size_t number) { return r.events.at(number - 1); }

const Tree& account(const Tree& measure, const std::string& observer) {
  for (const auto& a : measure["accounts"]) {
    if (a["relative_to"] == observer) return a;
  }
  throw std::runtime_error("no account for " + observer);
}

std::vector<double> doubles(const Tree& t) { return t.get<std::vector<double>>(); }

}  // namespace

TEST(Parse, WignerFriendFixture) {
  const Scenario sc = load_scenario(kFixtures + "/wigner_friend.yaml");
  EXPECT_EQ(sc.name, "wigner_friend");
  EXPECT_EQ(sc.seed, 2026U);
  EXPECT_EQ(sc.systems.size(), 3U);
  EXPECT_EQ(sc.observers.size(), 2U);
  EXPECT_TRUE(sc.is_observer("P"));
  EXPECT_FALSE(sc.is_observer("S"));
  // P had no preparation: defaults to the first basis state.
  EXPECT_EQ(sc.preparations.at("P"), Vec::Unit(2, 0));
  EXPECT_EQ(sc.events.size(), 9U);
}

TEST(Parse, SelfMeasurementRejected) {
  try {
    load_scenario(kFixtures + "/self_measurement.yaml");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ValidationError);
    EXPECT_EQ(e.detail(), "SelfMeasurement");
    EXPECT_NE(std::string(e.what()).find("SelfMeasurement"), std::string::npos);
  }
}

TEST(Parse, SimultaneousRejected) {
  try {
    load_scenario(kFixtures + "/simultaneous.yaml");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.detail(), "SimultaneousMeasurement");
  }
  EXPECT_EQ(rejection(kHeader + "events:\n  - measure: {observer: [O, P], target: S}\n"), "SimultaneousMeasurement");
}

TEST(Parse, Normalization) {
  const Scenario ok = parse_scenario(kHeader + "preparations:\n  S: [0.6, 0.8]\n");
  EXPECT_NEAR(ok.preparations.at("S").norm(), 1.0, 1e-15);
  EXPECT_EQ(rejection(kHeader + "preparations:\n  S: [1, 1]\n"), "NormalizationError");
  const Scenario cplx_prep = parse_scenario(kHeader + "preparations:\n  S: [[0.6, 0], [0, 0.8]]\n");
  EXPECT_EQ(cplx_prep.preparations.at("S")[1], cplx(0.0, 0.8));
  EXPECT_EQ(rejection(kHeader + "preparations:\n  S: [1, 0, 0]\n"), "PreparationDimension");
}

TEST(Parse, RuleViolations) {
  const std::string ev = "events:\n";
  EXPECT_EQ(rejection(kHeader + ev + "  - measure: {observer: S, target: O}\n"), "UndeclaredObserver");
  EXPECT_EQ(rejection(kHeader + ev + "  - measure: {observer: O, target: X}\n"), "UndeclaredSystem");
  EXPECT_EQ(rejection(kHeader + ev + "  - measure: {observer: O, target: S, family: nope}\n"), "UnknownFamily");
  EXPECT_EQ(rejection(kHeader + ev + "  - relative_state: {observer: O, systems: [S, P, S]}\n"), "AggregateQuery");
  EXPECT_EQ(rejection(kHeader + ev + "  - relative_state: {observer: O, systems: [O]}\n"), "SelfDescription");
  EXPECT_EQ(rejection(kHeader + ev + "  - completion: {observer: P, measurement: 1}\n"), "UnknownMeasurement");
  EXPECT_EQ(rejection(kHeader + ev +
                      "  - measure: {observer: O, target: S}\n"
                      "  - completion: {observer: O, measurement: 1}\n"),
            "ParticipantQuery");
  EXPECT_EQ(rejection(kHeader + ev +
                      "  - measure: {observer: O, target: S}\n"
                      "  - outcome: {observer: P, measurement: 1}\n"),
            "ComparisonWithoutInteraction");
  EXPECT_EQ(rejection(kHeader + ev + "  - evolve: {target: S, hamiltonian: [[0, 1], [0, 0]], t: 1}\n"),
            "NotHermitian");
  EXPECT_EQ(rejection(kHeader + ev + "  - evolve: {target: S, hamiltonian: [[1]], t: 1}\n"), "HamiltonianDimension");
  EXPECT_EQ(rejection(kHeader + ev +
                      "  - measure: {observer: O, target: S, step: 2}\n"
                      "  - measure: {observer: P, target: S, step: 1}\n"),
            "EventOrder");
  EXPECT_EQ(rejection("name: t\nsystems:\n  - {name: S, dim: 3}\n  - {name: O, dim: 2}\nobservers: [O]\n"
                      "events:\n  - measure: {observer: O, target: S}\n"),
            "PointerTooSmall");
  EXPECT_EQ(rejection("name: t\nsystems:\n  - {name: S, dim: 1}\nobservers: []\n"), "InvalidDimension");
  EXPECT_EQ(rejection("name: t\nsystems:\n  - {name: S, dim: 2}\n  - {name: S, dim: 2}\n"), "DuplicateSystem");
}

TEST(Parse, SyntaxErrorsCarryLineAndField) {
  try {
    parse_scenario(kHeader + "events:\n  - measure: {observer: O}\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParseError);
    const std::string msg = e.what();
    EXPECT_NE(msg.find("line 9"), std::string::npos) << msg;
    EXPECT_NE(msg.find("target"), std::string::npos) << msg;
  }
  try {
    parse_scenario("name: [unclosed\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParseError);
  }
}

TEST(Parse, MatrixAndFamilies) {
  const auto m = parse_matrix("# comment\n0.5 0.5\n0.5 0.5\n");
  EXPECT_EQ(m.rows(), 2);
  EXPECT_DOUBLE_EQ(m(1, 0), 0.5);
  EXPECT_THROW(parse_matrix("1 0\n0\n"), Error);
  EXPECT_THROW(parse_matrix("1 x\n"), Error);

  const Scenario fams = parse_family_document(slurp(kFixtures + "/families.yaml"));
  EXPECT_EQ(fams.families.size(), 5U);
  EXPECT_EQ(fams.kernel_pairs.size(), 5U);
  EXPECT_EQ(fams.family("trit_f", 3).dim(), 3U);
}

TEST(Run, WignerFriendAccounts) {
  const Report r = run(load_scenario(kFixtures + "/wigner_friend.yaml"));
  EXPECT_TRUE(r.violations.empty());
  const Tree& m = event(r, 1);

  const Tree& own = account(m, "O");
  EXPECT_EQ(own["kind"], "collapse");
  const int outcome = own["outcome"];
  ASSERT_TRUE(outcome == 1 || outcome == 2);
  const auto amps = own["state"]["amplitudes"];
  EXPECT_NEAR(amps[outcome - 1][0].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(own["state"]["relative_to"], "O");

  const Tree& ext = account(m, "P");
  EXPECT_EQ(ext["kind"], "entangled");
  EXPECT_NEAR(ext["completion_probability"].get<double>(), 1.0, 1e-12);
  for (double x : doubles(ext["marginal"])) EXPECT_NEAR(x, 0.5, 1e-12);
  for (double x : doubles(ext["schmidt"])) EXPECT_NEAR(x, 1.0 / std::sqrt(2.0), 1e-12);

  EXPECT_NEAR(event(r, 4)["completion_probability"].get<double>(), 1.0, 1e-12);
  for (double x : doubles(event(r, 5)["probabilities"])) EXPECT_NEAR(x, 0.5, 1e-12);
  EXPECT_TRUE(event(r, 6)["agree"].get<bool>());
  EXPECT_EQ(event(r, 7)["outcome"], outcome);

  const Tree& inter = event(r, 8);
  EXPECT_NEAR(inter["composite"].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(inter["classical"].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(inter["gap"].get<double>(), 0.5, 1e-12);
}

TEST(Run, CrossObserverMarginalsAgree) {
  for (const char* name : {"wigner_friend", "wigner_chain"}) {
    const Report r = run(load_scenario(kFixtures + "/" + name + ".yaml"));
    for (const auto& m : r.measurements) {
      for (const auto& [observer, marginal] : m.external_marginals) {
        for (std::size_t i = 0; i < marginal.size(); ++i)
          EXPECT_NEAR(marginal[i], m.observer_probabilities[i], 1e-12) << name << " " << observer;
      }
    }
  }
}

TEST(Run, ChainMarksMeasuredObserverUnavailable) {
  const Report r = run(load_scenario(kFixtures + "/wigner_chain.yaml"));
  const Tree& second = event(r, 3);
  ASSERT_TRUE(second.contains("unavailable"));
  EXPECT_EQ(second["unavailable"][0]["relative_to"], "O");
  // P read O's pointer and so knows the outcome of O's measurement.
  EXPECT_EQ(event(r, 4)["via"], 2);  // the second measurement
  // Evolution by pi/4 under X turns (0.36, 0.64) into (0.5, 0.5).
  for (double x : doubles(event(r, 8)["probabilities"])) EXPECT_NEAR(x, 0.5, 1e-12);
}

TEST(Run, DescriptionUnavailableAfterInteraction) {
  // O measured P, so O holds no state for itself in P's account.
  const Scenario sc = parse_scenario(kHeader +
                                     "events:\n"
                                     "  - measure: {observer: O, target: P}\n"
                                     "  - relative_state: {observer: P, systems: [O]}\n");
  try {
    run(sc);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DescriptionUnavailable);
  }
}

TEST(Run, DeterministicPerSeed) {
  const Scenario sc = load_scenario(kFixtures + "/wigner_friend.yaml");
  const std::string a = emit_report(run(sc), ReportFormat::Structured);
  const std::string b = emit_report(run(sc), ReportFormat::Structured);
  EXPECT_EQ(a, b);
  // Some seed in a small sweep gives each outcome.
  Scenario varied = sc;
  std::set<int> seen;
  for (std::uint64_t seed = 0; seed < 32; ++seed) {
    varied.seed = seed;
    seen.insert(run(varied).measurements[0].outcome);
  }
  EXPECT_EQ(seen, (std::set<int>{1, 2}));
}

TEST(Report, EveryStateTagged) {
  for (const char* name : {"wigner_friend", "wigner_chain"}) {
    const Report r = run(load_scenario(kFixtures + "/" + name + ".yaml"));
    EXPECT_TRUE(untagged_states(report_tree(r)).empty()) << name;
  }
  Tree bad = Tree::object();
  bad["state"] = Tree::object({{"amplitudes", Tree::array({Tree::array({1.0, 0.0})})}});
  EXPECT_EQ(untagged_states(bad).size(), 1U);
}

TEST(Report, EmptyIsHeaderOnly) {
  Report r;
  r.scenario = "empty";
  r.seed = 5;
  const std::string table = emit_report(r, ReportFormat::Table);
  EXPECT_EQ(table, "relaqm report  scenario=empty  seed=5\nevent  type  field  value\n");
  const Tree t = Tree::parse(emit_report(r, ReportFormat::Structured));
  EXPECT_EQ(t["format"], "relaqm-report/1");
  EXPECT_TRUE(t["events"].empty());
}

TEST(Report, InterferenceShowsBothValues) {
  const Report r = run(load_scenario(kFixtures + "/wigner_friend.yaml"));
  const std::string table = emit_report(r, ReportFormat::Table);
  EXPECT_NE(table.find("composite"), std::string::npos);
  EXPECT_NE(table.find("classical"), std::string::npos);
  EXPECT_NE(table.find("gap"), std::string::npos);
  // Real kernel entries are not mistaken for complex pairs.
  EXPECT_NE(table.find("[0.5, 0.5]; [0.5, 0.5]"), std::string::npos);
}

TEST(Report, RoundedSnapsNoise) {
  Tree t = Tree::array({1e-15, 0.1 + 0.2, -3e-14});
  const Tree r = rounded(t);
  EXPECT_EQ(r.dump(), "[0.0,0.3,0.0]");
}

TEST(Report, MatchesGoldenFile) {
  const Report r = run(load_scenario(kFixtures + "/wigner_friend.yaml"));
  EXPECT_EQ(emit_report(r, ReportFormat::Structured), slurp(kFixtures + "/wigner_friend.golden.json"));
}
