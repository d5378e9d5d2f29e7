#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "fixtures.hpp"
#include "ksub/exact.hpp"
#include "ksub/greedy.hpp"
#include "ksub/interpolate.hpp"
#include "ksub/noise.hpp"
#include "ksub/rng.hpp"
#include "naive_oracles.hpp"

using namespace ksub;

namespace {

class CardinalityObjective final : public Objective {
 public:
  explicit CardinalityObjective(GroundSet gs) : Objective(gs) {}
  std::string name() const override { return "cardinality"; }
  bool claims_exact_ksubmodular() const override { return true; }

 protected:
  double value_of(const Assignment& x) const override {
    return static_cast<double>(x.support_size());
  }
};

void check_matches_naive(const GreedyTrace& trace,
                         const std::vector<oracle::Pick>& picks) {
  REQUIRE(trace.steps.size() == picks.size());
  for (size_t j = 0; j < picks.size(); ++j) {
    CHECK(trace.steps[j].element == picks[j].element);
    CHECK(trace.steps[j].dimension == picks[j].dimension);
    CHECK(trace.steps[j].value == doctest::Approx(picks[j].value).epsilon(1e-12));
  }
}

}  // namespace

TEST_CASE("greedy on a modular function picks the top-B weights") {
  auto f = ModularObjective::uniform_dims(GroundSet(3, 1), {5.0, 1.0, 3.0});
  GreedyTrace trace = greedy_ts(*f, 2);
  CHECK(trace.value() == doctest::Approx(8.0));
  CHECK(trace.solution.label(0) == 1);
  CHECK(trace.solution.label(2) == 1);
  CHECK(trace.solution.label(1) == 0);
}

TEST_CASE("dimension-agnostic cardinality reaches the budget") {
  CardinalityObjective f(GroundSet(5, 2));
  GreedyTrace trace = greedy_ts(f, 2);
  CHECK(trace.value() == doctest::Approx(2.0));
  CHECK(trace.solution.support_size() == 2);
}

TEST_CASE("total-size greedy matches the naive reference on fixture #1") {
  auto f = fixtures::coverage1();
  check_matches_naive(greedy_ts(*f, 3), oracle::naive_greedy_ts(*f, 3));
}

TEST_CASE("individual-size greedy on disjoint modular optima") {
  GroundSet gs(2, 2);
  ModularObjective f(gs, {{4.0, 0.0}, {0.0, 9.0}});
  GreedyTrace trace = greedy_is(f, {1, 1});
  CHECK(trace.value() == doctest::Approx(13.0));
  CHECK(trace.solution.label(0) == 1);
  CHECK(trace.solution.label(1) == 2);
}

TEST_CASE("k=1 individual caps coincide with the total-size run") {
  auto f = gen_coverage_objective(7, 1, 14, 11);
  GreedyTrace ts = greedy_ts(*f, 3);
  GreedyTrace is = greedy_is(*f, {3});
  REQUIRE(ts.steps.size() == is.steps.size());
  for (size_t j = 0; j < ts.steps.size(); ++j) {
    CHECK(ts.steps[j].element == is.steps[j].element);
    CHECK(ts.steps[j].dimension == is.steps[j].dimension);
    CHECK(ts.steps[j].value == is.steps[j].value);
  }
}

TEST_CASE("individual-size greedy matches the naive reference on fixture #2") {
  auto f = fixtures::coverage2();
  check_matches_naive(greedy_is(*f, {1, 1, 1}),
                      oracle::naive_greedy_is(*f, {1, 1, 1}));
}

TEST_CASE("group greedy: singleton groups reduce to individual caps") {
  auto f = fixtures::coverage2();
  GreedyTrace grouped = greedy_group(*f, {{1}, {2}, {3}}, {1, 1, 1});
  GreedyTrace individual = greedy_is(*f, {1, 1, 1});
  REQUIRE(grouped.steps.size() == individual.steps.size());
  for (size_t j = 0; j < grouped.steps.size(); ++j) {
    CHECK(grouped.steps[j].element == individual.steps[j].element);
    CHECK(grouped.steps[j].dimension == individual.steps[j].dimension);
  }
}

TEST_CASE("group greedy: one all-dimension group reduces to total size") {
  auto f = fixtures::coverage1();
  GreedyTrace grouped = greedy_group(*f, {{1, 2}}, {3});
  GreedyTrace total = greedy_ts(*f, 3);
  REQUIRE(grouped.steps.size() == total.steps.size());
  for (size_t j = 0; j < grouped.steps.size(); ++j) {
    CHECK(grouped.steps[j].element == total.steps[j].element);
    CHECK(grouped.steps[j].dimension == total.steps[j].dimension);
  }
}

TEST_CASE("group greedy matches the naive reference") {
  auto f = gen_coverage_objective(6, 3, 12, 21);
  std::vector<std::vector<int>> groups{{1, 2}, {3}};
  std::vector<int> caps{2, 1};
  check_matches_naive(greedy_group(*f, groups, caps),
                      oracle::naive_greedy_group(*f, groups, caps));
}

TEST_CASE("infeasible budgets error out") {
  auto f = fixtures::coverage1();  // n = 6
  CHECK_THROWS_AS(greedy_ts(*f, 7), std::invalid_argument);
  CHECK_THROWS_AS(greedy_is(*f, {4, 3}), std::invalid_argument);
  CHECK_THROWS_AS(greedy_group(*f, {{1}}, {2}), std::invalid_argument);
}

TEST_CASE("running value is non-decreasing for monotone objectives") {
  auto f = fixtures::coverage1();
  GreedyTrace trace = greedy_ts(*f, 5);
  double prev = 0.0;
  for (const GreedyStep& s : trace.steps) {
    CHECK(s.value >= prev - 1e-12);
    prev = s.value;
  }
  CHECK(Constraint::total_size(5).feasible(trace.solution));
}

TEST_CASE("every selected pair attains the true argmax") {
  auto f = fixtures::coverage2();
  GreedyTrace trace = greedy_ts(*f, 4);
  Assignment x(f->ground_set());
  double base = f->eval(x);
  for (const GreedyStep& step : trace.steps) {
    for (int e = 0; e < x.n(); ++e) {
      if (x.label(e) != 0) continue;
      for (int i = 1; i <= x.k(); ++i) {
        double alt = f->eval(x.with(e, i)) - base;
        CHECK(step.gain >= alt - 1e-12 * std::max(1.0, std::abs(step.value)));
      }
    }
    x.set(step.element, step.dimension);
    base = step.value;
  }
}

TEST_CASE("greedy fills the budget even when every remaining gain is negative") {
  // values: singletons 1, pairs 0.5, triple 0.2 -- second pick loses value
  std::map<std::vector<uint8_t>, double> table;
  for (uint8_t a : {0, 1}) {
    for (uint8_t b : {0, 1}) {
      for (uint8_t c : {0, 1}) {
        int s = a + b + c;
        double v = s == 0 ? 0.0 : (s == 1 ? 1.0 : (s == 2 ? 0.5 : 0.2));
        table[{a, b, c}] = v;
      }
    }
  }
  ExplicitObjective f(GroundSet(3, 1), std::move(table), "decaying");
  GreedyTrace trace = greedy_ts(f, 2);
  REQUIRE(trace.steps.size() == 2);
  CHECK(trace.solution.support_size() == 2);
  CHECK(trace.steps[1].gain < 0.0);
  CHECK(trace.value() == doctest::Approx(0.5));
}

TEST_CASE("lazy trace equals the eager trace on exact objectives") {
  for (uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    auto f = gen_coverage_objective(8, 2, 16, seed);
    GreedyTrace eager = greedy_ts(*f, 4, false);
    GreedyTrace lazy = greedy_ts(*f, 4, true);
    REQUIRE(eager.steps.size() == lazy.steps.size());
    for (size_t j = 0; j < eager.steps.size(); ++j) {
      CHECK(eager.steps[j].element == lazy.steps[j].element);
      CHECK(eager.steps[j].dimension == lazy.steps[j].dimension);
      CHECK(eager.steps[j].value == lazy.steps[j].value);
      CHECK(eager.steps[j].gain == lazy.steps[j].gain);
    }
  }
}

TEST_CASE("lazy evaluation saves oracle calls on larger instances") {
  auto f = gen_coverage_objective(24, 2, 48, 9);
  GreedyTrace eager = greedy_ts(*f, 6, false);
  GreedyTrace lazy = greedy_ts(*f, 6, true);
  CHECK(lazy.value() == eager.value());
  CHECK(lazy.eval_count < eager.eval_count);
}

TEST_CASE("lazy matches eager under individual and group caps") {
  auto f = gen_coverage_objective(9, 3, 18, 33);
  GreedyTrace ei = greedy_is(*f, {2, 1, 1}, false);
  GreedyTrace li = greedy_is(*f, {2, 1, 1}, true);
  REQUIRE(ei.steps.size() == li.steps.size());
  for (size_t j = 0; j < ei.steps.size(); ++j) {
    CHECK(ei.steps[j].element == li.steps[j].element);
    CHECK(ei.steps[j].dimension == li.steps[j].dimension);
    CHECK(ei.steps[j].value == li.steps[j].value);
  }
  GreedyTrace eg = greedy_group(*f, {{1, 3}, {2}}, {2, 1}, false);
  GreedyTrace lg = greedy_group(*f, {{1, 3}, {2}}, {2, 1}, true);
  REQUIRE(eg.steps.size() == lg.steps.size());
  for (size_t j = 0; j < eg.steps.size(); ++j) {
    CHECK(eg.steps[j].element == lg.steps[j].element);
    CHECK(eg.steps[j].dimension == lg.steps[j].dimension);
    CHECK(eg.steps[j].value == lg.steps[j].value);
  }
}

TEST_CASE("random baseline saturates and is seed-deterministic") {
  GroundSet gs(4, 2);
  Constraint is = Constraint::individual_size({1, 1});
  Assignment a = baseline_random(gs, is, 0);
  CHECK(a.support_size(1) == 1);
  CHECK(a.support_size(2) == 1);
  CHECK(is_feasible(is, a));
  CHECK(baseline_random(gs, is, 0) == a);
  CHECK(baseline_random(gs, Constraint::total_size(4), 3).support_size() == 4);

  Constraint grp = Constraint::group_size({{1, 2}}, {2});
  Assignment g = baseline_random(gs, grp, 5);
  CHECK(g.support_size() == 2);
  CHECK(is_feasible(grp, g));
}

TEST_CASE("degree baseline prefers the star center and breaks ties by id") {
  // star: node 0 points at everyone
  std::vector<std::pair<int, int>> star;
  for (int v = 1; v < 5; ++v) star.emplace_back(0, v);
  DirectedGraph g(5, star);
  Assignment a = baseline_degree(g, GroundSet(5, 2), 1, 7);
  CHECK(a.label(0) != 0);
  CHECK(a.support_size() == 1);

  // all-equal degrees: a 5-cycle
  std::vector<std::pair<int, int>> cycle;
  for (int v = 0; v < 5; ++v) cycle.emplace_back(v, (v + 1) % 5);
  DirectedGraph c(5, cycle);
  Assignment b = baseline_degree(c, GroundSet(5, 2), 2, 7);
  CHECK(b.label(0) != 0);
  CHECK(b.label(1) != 0);
}

TEST_CASE("degree baseline matches an independent sort on fixture graph #3") {
  CascadeModel model = fixtures::cascade3();
  const DirectedGraph& g = model.graph;
  GroundSet gs(g.node_count, 2);
  Assignment a = baseline_degree(g, gs, 3, 1);

  // hand sort of the degree list
  std::vector<int> deg(static_cast<size_t>(g.node_count), 0);
  for (auto [u, v] : g.edges) ++deg[static_cast<size_t>(u)];
  std::vector<int> ids(static_cast<size_t>(g.node_count));
  for (int v = 0; v < g.node_count; ++v) ids[static_cast<size_t>(v)] = v;
  std::sort(ids.begin(), ids.end(), [&](int p, int q) {
    return deg[static_cast<size_t>(p)] != deg[static_cast<size_t>(q)]
               ? deg[static_cast<size_t>(p)] > deg[static_cast<size_t>(q)]
               : p < q;
  });
  for (int t = 0; t < 3; ++t) CHECK(a.label(ids[static_cast<size_t>(t)]) != 0);
  CHECK(a.support_size() == 3);
  CHECK(baseline_degree(g, gs, 3, 1) == a);
}

TEST_CASE("interpolated sequences keep the support profile and end at greedy") {
  auto f = fixtures::coverage1();

  GreedyTrace ts = greedy_ts(*f, 3);
  auto [opt_ts, ts_value] =
      brute_force_max(*f, Constraint::total_size(3), {}, /*saturate=*/true);
  std::vector<Assignment> seq = interpolated_optimum_ts(ts, opt_ts);
  REQUIRE(seq.size() == 4);
  CHECK(seq.front() == opt_ts);
  CHECK(seq.back() == ts.solution);
  for (const Assignment& o : seq) CHECK(o.support_size() == 3);

  GreedyTrace is = greedy_is(*f, {2, 1});
  auto [opt_is, is_value] = brute_force_max(
      *f, Constraint::individual_size({2, 1}), {}, /*saturate=*/true);
  std::vector<Assignment> iseq = interpolated_optimum_is(is, opt_is);
  REQUIRE(iseq.size() == 4);
  CHECK(iseq.back() == is.solution);
  for (const Assignment& o : iseq) {
    CHECK(o.support_size(1) == 2);
    CHECK(o.support_size(2) == 1);
  }
}

TEST_CASE("value-envelope trace inequality holds along the greedy run") {
  // One spot instance of the per-iteration inequality; the acceptance suite
  // sweeps this over many seeds.
  double eps = 0.3;
  auto f = fixtures::coverage1();
  Constraint c = Constraint::total_size(3);
  auto F = make_ag_as(f, c, eps, 17);
  GreedyTrace trace = greedy(*F, c);
  auto [opt, opt_value] = brute_force_max(*F, c, {}, /*saturate=*/true);
  std::vector<Assignment> seq = interpolated_optimum_ts(trace, opt);

  Assignment x(f->ground_set());
  double fx_prev = f->eval(x);
  for (size_t j = 1; j < seq.size(); ++j) {
    x.set(trace.steps[j - 1].element, trace.steps[j - 1].dimension);
    double fx = f->eval(x);
    double lhs = (1.0 + eps) / (1.0 - eps) * fx - fx_prev;
    double rhs = f->eval(seq[j - 1]) - f->eval(seq[j]);
    CHECK(leq_slack(rhs, lhs));
    fx_prev = fx;
  }
}
