#include <doctest.h>

#include <cmath>

#include "growwalk/errors.hpp"
#include "growwalk/monte_carlo.hpp"
#include "support.hpp"

using namespace growwalk;
using growwalk::testing::model;
using growwalk::testing::spec;
using doctest::Approx;

namespace {

bool within(double estimate, double truth, double se, double k = 4.0) {
  return std::abs(estimate - truth) <= k * se;
}

}  // namespace

TEST_CASE("summary statistics") {
  const auto one = summarize({3.0}, 7);
  CHECK(one.mean == 3.0);
  CHECK(std::isnan(one.sd));
  CHECK_FALSE(one.sd_defined);
  CHECK_FALSE(one.interval_valid);
  const auto three = summarize({1.0, 2.0, 3.0}, 7);
  CHECK(three.mean == Approx(2.0));
  CHECK(three.sd == Approx(1.0));
  CHECK(three.half_width == Approx(1.96 / std::sqrt(3.0)));
  CHECK(three.seed == 7);
  CHECK_THROWS_AS(summarize({}, 1), ConfigError);
}

TEST_CASE("seed streams") {
  CHECK(stream_seed(1, 0) != stream_seed(1, 1));
  CHECK(stream_seed(1, 0) != stream_seed(2, 0));
  Rng rng(5);
  for (int j = 0; j < 1000; ++j) {
    const double u = uniform01(rng);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(uniform_below(rng, 7) < 7);
  }
}

TEST_CASE("simulation is reproducible") {
  const auto m = model(Family::path, {WalkTag::lazy_metropolis}, Schedule::linear(1.0));
  SimulationPlan plan{m, 30, 200, 7, false};
  const auto a = estimate_unvisited(plan);
  const auto b = estimate_unvisited(plan);
  CHECK(a.per_trial == b.per_trial);
  CHECK(a.final.mean == b.final.mean);
  plan.seed = 8;
  CHECK(estimate_unvisited(plan).per_trial != a.per_trial);
  CHECK(simulate_once(SimulationPlan{m, 30, 200, 7, false}, 3).unvisited == a.per_trial[3]);
}

TEST_CASE("a single vertex is always visited") {
  const auto m = model(Family::complete, {WalkTag::uniform_complete}, Schedule::constant(1));
  const auto est = estimate_unvisited(SimulationPlan{m, 1, 50, 1, false});
  CHECK(est.final.mean == 0.0);
}

TEST_CASE("trial outcome bookkeeping") {
  const auto m = model(Family::lollipop, {WalkTag::lazy_simple}, Schedule::constant(2));
  const Simulator sim(SimulationPlan{m, 12, 10, 3, true});
  const auto out = sim.run(4);
  CHECK(out.visited.size() == 12);
  std::size_t unvisited = 0;
  for (char v : out.visited) unvisited += v ? 0 : 1;
  CHECK(out.unvisited == unvisited);
  CHECK(out.ladder.size() == 12);
  CHECK(out.ladder.back() == unvisited);
  CHECK(out.ladder.front() == 0);
  CHECK(out.trace.back() == unvisited);
}

TEST_CASE("cover times") {
  const auto two = estimate_cover_time(uniform_complete_kernel(2), 20000, 3);
  CHECK(within(two.mean, 2.0, two.standard_error()));
  // Coupon collector from a visited start: n (1 + 1/2 + ... + 1/(n-1)).
  const auto five = estimate_cover_time(uniform_complete_kernel(5), 20000, 4);
  CHECK(within(five.mean, 5.0 * (1.0 + 0.5 + 1.0 / 3.0 + 0.25), five.standard_error()));
  const auto capped = estimate_cover_time(lazy_simple_kernel(grow(spec(Family::path), 20)), 5, 1, 10);
  CHECK(capped.capped);
}

TEST_CASE("simulation agrees with the exact engine for every walk") {
  struct Case {
    Family family;
    WalkSpec walk;
    Schedule schedule;
  };
  const std::vector<Case> cases = {
      {Family::complete, {WalkTag::uniform_complete}, Schedule::linear(1.0).with_initial_vertices(3)},
      {Family::complete, {WalkTag::lazy_simple}, Schedule::linear(1.0)},
      {Family::path, {WalkTag::lazy_simple}, Schedule::linear(2.0)},
      {Family::path, {WalkTag::path_chain, 0.7, 0.15}, Schedule::linear(2.0)},
      {Family::lollipop, {WalkTag::lazy_metropolis}, Schedule::linear(3.0)},
      {Family::expander_like, {WalkTag::lazy_simple}, Schedule::constant(4)},
  };
  for (const auto& c : cases) {
    const auto m = model(c.family, c.walk, c.schedule);
    const auto exact = exact_expected_unvisited(m, 25);
    const auto est = estimate_unvisited(SimulationPlan{m, 25, 4000, 11, false});
    CHECK(within(est.final.mean, exact.expected_unvisited, est.final.standard_error()));
    CHECK(within(est.ladder[9].mean, exact.ladder[9], est.ladder[9].standard_error()));
  }
}

TEST_CASE("mean trajectory") {
  const auto m = model(Family::path, {WalkTag::lazy_simple}, Schedule::linear(1.0));
  const auto est = estimate_unvisited(SimulationPlan{m, 10, 3000, 2, true});
  const auto exact = exact_trajectory(m, 10);
  REQUIRE(est.trajectory.size() == exact.size());
  for (std::size_t j = 0; j < exact.size(); j += 7) {
    CHECK(est.trajectory[j].t == exact[j].t);
    CHECK(std::abs(est.trajectory[j].expected_unvisited - exact[j].expected_unvisited) < 0.2);
  }
}

TEST_CASE("path lower-bound construction") {
  const auto r = path_lowerbound_experiment(1.0, 1.0, 100, 0);
  CHECK(r.epsilon == Approx(0.09));
  CHECK(r.R == 91);
  CHECK(r.L == 31);
  CHECK(r.lower_bound == Approx(0.18 * 0.09 * 100));
  CHECK(r.expected_unvisited >= r.lower_bound);
  CHECK(r.avoid_probability > 0.0);
  CHECK(r.avoid_probability <= 1.0);
  CHECK_FALSE(r.simulated.has_value());
  CHECK_THROWS_AS(path_lowerbound_experiment(1.0, 1.0, 100, 0, 1, 0.2), ConfigError);
  CHECK_THROWS_AS(path_lowerbound_experiment(0.0, 1.0, 100, 0), ConfigError);
}
