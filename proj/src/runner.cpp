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

#include "relaqm/runner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "relaqm/dynamics.hpp"
#include "relaqm/errors.hpp"
#include "relaqm/kernel.hpp"
#include "relaqm/measurement.hpp"

namespace relaqm {
namespace {

struct Description {
  std::vector<std::size_t> systems;  // indices into Scenario::systems, declaration order
  StateVector state;
  std::set<std::size_t> unavailable;
};

Tree amplitudes_tree(const Vec& v) {
  Tree out = Tree::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v[i].real(), v[i].imag()});
  return out;
}

Tree numbers(const std::vector<double>& xs) {
  Tree out = Tree::array();
  for (double x : xs) out.push_back(x);
  return out;
}

Tree real_matrix(const Eigen::MatrixXd& m) {
  Tree out = Tree::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Tree row = Tree::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Tree complex_matrix(const Mat& m) {
  Tree out = Tree::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(amplitudes_tree(m.row(r).transpose()));
  return out;
}

class Runner {
 public:
  Runner(const Scenario& sc, const RunOptions& options) : sc_(sc), options_(options) {
    for (const std::string& name : sc_.observers) {
      const std::size_t self = sc_.system_index(name);
      std::vector<std::size_t> others;
      for (std::size_t i = 0; i < sc_.systems.size(); ++i) {
        if (i != self) others.push_back(i);
      }
      if (others.empty()) continue;
      std::optional<StateVector> state;
      for (std::size_t i : others) {
        StateVector part(sc_.preparations.at(sc_.systems[i].name), name);
        state = state ? tensor(*state, part) : part;
      }
      descriptions_.emplace(name, Description{std::move(others), std::move(*state), {}});
    }
    report_.scenario = sc_.name;
    report_.seed = sc_.seed;
  }

  Report run() {
    for (std::size_t e = 0; e < sc_.events.size(); ++e) {
      const Event& ev = sc_.events[e];
      const std::size_t number = e + 1;
      if (const auto* me = std::get_if<MeasureEvent>(&ev.body)) {
        measure(number, *me);
      } else if (const auto* ee = std::get_if<EvolveEvent>(&ev.body)) {
        evolve(number, *ee);
      } else {
        query(number, std::get<QueryEvent>(ev.body));
      }
    }
    return std::move(report_);
  }

 private:
  Description& description(const std::string& observer) {
    const auto it = descriptions_.find(observer);
    if (it == descriptions_.end()) fail(Errc::DescriptionUnavailable, observer + " has nothing to describe");
    return it->second;
  }

  std::size_t factor(const Description& d, const std::string& observer, const std::string& system) const {
    const std::size_t idx = sc_.system_index(system);
    if (d.unavailable.count(idx)) {
      fail(Errc::DescriptionUnavailable,
           observer + " interacted with " + system + " without a recorded outcome; no state of " + system +
               " relative to " + observer + " is defined");
    }
    const auto it = std::find(d.systems.begin(), d.systems.end(), idx);
    if (it == d.systems.end()) fail(Errc::DescriptionUnavailable, observer + " has no description of " + system);
    return static_cast<std::size_t>(it - d.systems.begin());
  }

  std::vector<Projector> local_partition(const Description& d, std::size_t f, const CompleteFamily& family) const {
    std::vector<Projector> parts;
    for (const Projector& p : partition(family)) parts.push_back(embed(p, d.state.dims(), f));
    return parts;
  }

  Tree tagged_state(const StateVector& s, const std::vector<std::string>& systems) const {
    Tree t = Tree::object();
    t["relative_to"] = s.relative_to();
    t["systems"] = systems;
    t["amplitudes"] = amplitudes_tree(s.amplitudes());
    return t;
  }

  MeasurementSetup setup_of(const MeasureEvent& me) const {
    const std::size_t dim = sc_.system(me.target).dim;
    return MeasurementSetup::standard(sc_.family(me.family, dim), sc_.system(me.observer).dim, me.observer);
  }

  void measure(std::size_t number, const MeasureEvent& me) {
    const MeasurementSetup setup = setup_of(me);
    const CompleteFamily& family = setup.system_basis();
    Rng rng(sc_.seed, number);

    Tree record = Tree::object();
    record["event"] = number;
    record["type"] = "measure";
    record["observer"] = me.observer;
    record["target"] = me.target;
    record["family"] = family.label();
    Tree accounts = Tree::array();

    // Relative to the measuring observer: collapse.
    Description& own = description(me.observer);
    const std::size_t fs = factor(own, me.observer, me.target);
    const std::vector<Projector> parts = local_partition(own, fs, family);
    const std::vector<double> probs = born_probabilities(own.state, parts);
    const Sample sample = sample_outcome(probs, rng);
    own.state = conditional_state(own.state, parts[sample.index]);
    const std::size_t fs_only[] = {fs};
    const std::optional<StateVector> post = pure_factor(own.state, fs_only);

    MeasureSummary summary{number, me.observer, me.target, static_cast<int>(sample.index) + 1, probs, {}};
    Tree collapse = Tree::object();
    collapse["relative_to"] = me.observer;
    collapse["kind"] = "collapse";
    collapse["outcome"] = summary.outcome;
    collapse["probabilities"] = numbers(probs);
    collapse["state"] = post ? tagged_state(*post, {me.target}) : Tree(nullptr);
    accounts.push_back(std::move(collapse));

    // Relative to everyone else: unitary premeasurement of the S-O pair.
    const Operator u = premeasurement_unitary(setup);
    const Operator m = correlation_operator(setup);
    for (auto& [name, d] : descriptions_) {
      if (name == me.observer || name == me.target) continue;
      Tree account = Tree::object();
      account["relative_to"] = name;
      account["kind"] = "entangled";
      std::size_t pair[2];
      try {
        pair[0] = factor(d, name, me.target);
        pair[1] = factor(d, name, me.observer);
      } catch (const Error& e) {
        if (e.code() != Errc::DescriptionUnavailable) throw;
        account["kind"] = "unavailable";
        account["reason"] = e.what();
        accounts.push_back(std::move(account));
        continue;
      }
      const std::vector<Projector> q_parts = local_partition(d, pair[0], family);
      const std::vector<double> before = born_probabilities(d.state, q_parts);
      d.state = apply_on_factors(u, d.state, pair);
      const std::vector<double> after = born_probabilities(d.state, q_parts);

      double drift = 0.0;
      for (std::size_t i = 0; i < after.size(); ++i) drift = std::max(drift, std::abs(after[i] - before[i]));
      if (drift > options_.tolerance) {
        report_.violations.push_back("event " + std::to_string(number) +
                                     ": premeasurement changed the q statistics relative to " + name);
      }
      double gap = 0.0;
      for (std::size_t i = 0; i < after.size(); ++i) gap = std::max(gap, std::abs(after[i] - probs[i]));

      account["marginal"] = numbers(after);
      account["marginal_gap_vs_observer"] = gap;
      account["completion_probability"] = expectation_on_factors(m, d.state, pair);
      const std::optional<StateVector> joint = pure_factor(d.state, pair);
      if (joint) {
        account["state"] = tagged_state(*joint, {me.target, me.observer});
        const std::size_t first[] = {0};
        account["schmidt"] = numbers(schmidt_coefficients(*joint, first));
      } else {
        account["state"] = nullptr;
        account["schmidt"] = nullptr;
      }
      summary.external_marginals.emplace_back(name, after);
      accounts.push_back(std::move(account));
    }

    // A measured observer gets no unitary account of the interaction.
    if (const auto it = descriptions_.find(me.target); it != descriptions_.end()) {
      it->second.unavailable.insert(sc_.system_index(me.observer));
      record["unavailable"] = Tree::array({Tree::object({{"relative_to", me.target}, {"system", me.observer}})});
    }
    record["accounts"] = std::move(accounts);
    report_.events.push_back(std::move(record));
    report_.measurements.push_back(std::move(summary));
    measure_events_.push_back(me);
  }

  void evolve(std::size_t number, const EvolveEvent& ee) {
    const std::size_t dim = sc_.system(ee.target).dim;
    const Propagator prop = propagator(Operator(ee.hamiltonian, {dim}), ee.time);
    const std::size_t target = sc_.system_index(ee.target);
    for (auto& [name, d] : descriptions_) {
      const auto it = std::find(d.systems.begin(), d.systems.end(), target);
      if (it == d.systems.end()) continue;
      const std::size_t f[] = {static_cast<std::size_t>(it - d.systems.begin())};
      d.state = apply_on_factors(prop.unitary(), d.state, f);
    }
    Tree record = Tree::object();
    record["event"] = number;
    record["type"] = "evolve";
    record["target"] = ee.target;
    record["t"] = ee.time;
    report_.events.push_back(std::move(record));
  }

  void query(std::size_t number, const QueryEvent& q) {
    Tree record = Tree::object();
    record["event"] = number;
    record["type"] = "query";
    record["query"] = std::string(query_name(q.kind));
    switch (q.kind) {
      case QueryKind::RelativeState: {
        Description& d = description(q.observer);
        std::vector<std::size_t> fs;
        for (const auto& s : q.systems) fs.push_back(factor(d, q.observer, s));
        record["relative_to"] = q.observer;
        record["systems"] = q.systems;
        const std::optional<StateVector> s = pure_factor(d.state, fs);
        record["pure"] = s.has_value();
        record["state"] = s ? tagged_state(*s, q.systems) : Tree(nullptr);
        record["schmidt"] = numbers(schmidt_coefficients(d.state, fs));
        break;
      }
      case QueryKind::Marginal: {
        Description& d = description(q.observer);
        const std::size_t f = factor(d, q.observer, q.systems[0]);
        const CompleteFamily family = sc_.family(q.family, sc_.system(q.systems[0]).dim);
        record["relative_to"] = q.observer;
        record["system"] = q.systems[0];
        record["family"] = q.family;
        record["probabilities"] = numbers(born_probabilities(d.state, local_partition(d, f, family)));
        break;
      }
      case QueryKind::Completion:
      case QueryKind::Consistency: {
        const MeasureEvent& me = measure_events_.at(q.measurement - 1);
        const MeasurementSetup setup = setup_of(me);
        Description& d = description(q.observer);
        const std::size_t pair[] = {factor(d, q.observer, me.target), factor(d, q.observer, me.observer)};
        record["relative_to"] = q.observer;
        record["measurement"] = q.measurement;
        if (q.kind == QueryKind::Completion) {
          record["completion_probability"] = expectation_on_factors(correlation_operator(setup), d.state, pair);
          break;
        }
        const std::optional<StateVector> joint = pure_factor(d.state, pair);
        if (!joint) {
          fail(Errc::DescriptionUnavailable, "relative to " + q.observer + ", " + me.target + "-" + me.observer +
                                                 " is entangled with further systems; pairwise check undefined");
        }
        Rng rng(sc_.seed, number);
        const ConsistencyResult c = consistency_check(*joint, setup, rng.next());
        record["agree"] = c.agree;
        record["q_outcome"] = c.q_outcome;
        record["pointer_outcome"] = c.pointer_outcome;
        record["transcript"] = c.transcript;
        break;
      }
      case QueryKind::Outcome: {
        const MeasureEvent& me = measure_events_.at(q.measurement - 1);
        record["relative_to"] = q.observer;
        record["measurement"] = q.measurement;
        if (q.observer == me.observer) {
          record["outcome"] = report_.measurements.at(q.measurement - 1).outcome;
          record["via"] = q.measurement;
          break;
        }
        // The latest measurement by this observer of the pointer.
        for (std::size_t m = measure_events_.size(); m > q.measurement; --m) {
          const MeasureEvent& later = measure_events_[m - 1];
          if (later.observer == q.observer && later.target == me.observer) {
            record["outcome"] = report_.measurements[m - 1].outcome;
            record["via"] = m;
            break;
          }
        }
        if (!record.contains("outcome")) {
          fail(Errc::DescriptionUnavailable, q.observer + " has not interacted with " + me.observer);
        }
        break;
      }
      case QueryKind::Kernel: {
        const TransitionKernel k = kernel_from_families(sc_.family(q.from, q.dim), sc_.family(q.to, q.dim));
        record["from"] = q.from;
        record["to"] = q.to;
        record["p"] = real_matrix(k.p());
        record["unitary"] = complex_matrix(k.unitary());
        const StochasticReport s = verify_double_stochastic(k.p());
        record["max_stochastic_violation"] = s.max_violation();
        if (!s.ok(options_.tolerance)) {
          report_.violations.push_back("event " + std::to_string(number) + ": kernel is not doubly stochastic");
        }
        break;
      }
      case QueryKind::Interference: {
        const TransitionKernel k = kernel_from_families(sc_.family(q.from, q.dim), sc_.family(q.to, q.dim));
        const Interference x = interference(k, q.i - 1, q.j - 1, q.k - 1);
        record["from"] = q.from;
        record["to"] = q.to;
        record["i"] = q.i;
        record["jk"] = {q.j, q.k};
        record["composite"] = x.composite;
        record["classical"] = x.classical;
        record["gap"] = x.gap();
        break;
      }
    }
    report_.events.push_back(std::move(record));
  }

  const Scenario& sc_;
  RunOptions options_;
  std::map<std::string, Description> descriptions_;
  std::vector<MeasureEvent> measure_events_;
  Report report_;
};

}  // namespace

Report run(const Scenario& sc, const RunOptions& options) { return Runner(sc, options).run(); }

}  // namespace relaqm
