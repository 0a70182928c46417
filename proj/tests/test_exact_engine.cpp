#include <doctest.h>

#include <cmath>

#include "growwalk/errors.hpp"
#include "growwalk/exact_engine.hpp"
#include "support.hpp"

using namespace growwalk;
using growwalk::testing::brute_force_unvisited;
using growwalk::testing::model;
using doctest::Approx;

TEST_CASE("closed form on small complete graphs") {
  CHECK(complete_closed_form(Schedule::linear(1.0), 3) == Approx(10.0 / 27.0).epsilon(1e-15));
  CHECK(complete_closed_form(Schedule::linear(1.0), 1) == 0.0);
  // Constant c = 1 telescopes to (n - 1) / 2.
  CHECK(complete_closed_form(Schedule::constant(1), 2000) == Approx(1999.0 / 2.0).epsilon(1e-14));
}

TEST_CASE("exact engine matches the closed form") {
  for (std::size_t n0 : {0u, 3u}) {
    for (const Schedule& s : {Schedule::constant(2), Schedule::linear(1.5), Schedule::power(1.0, 0.5)}) {
      const Schedule sched = s.with_initial_vertices(n0);
      const auto m = model(Family::complete, {WalkTag::uniform_complete}, sched);
      const auto r = exact_expected_unvisited(m, 40);
      const auto closed = complete_closed_form_ladder(sched, 40);
      for (std::size_t j = 0; j < closed.size(); ++j) {
        CHECK(r.ladder[j] == Approx(closed[j]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("exact engine matches enumeration of trajectories") {
  struct Case {
    Family family;
    WalkSpec walk;
    Schedule schedule;
    Step n;
  };
  const std::vector<Case> cases = {
      {Family::path, {WalkTag::lazy_simple}, Schedule::linear(1.0), 3},
      {Family::path, {WalkTag::lazy_metropolis}, Schedule::linear(1.0), 5},
      {Family::path, {WalkTag::path_chain, 0.6, 0.2}, Schedule::constant(3), 5},
      {Family::lollipop, {WalkTag::lazy_simple}, Schedule::constant(2), 6},
      {Family::expander_like, {WalkTag::lazy_metropolis}, Schedule::linear(0.5), 6},
      {Family::complete, {WalkTag::lazy_simple}, Schedule::constant(2).with_initial_vertices(2), 4},
  };
  for (const auto& c : cases) {
    const auto m = model(c.family, c.walk, c.schedule);
    CHECK(exact_expected_unvisited(m, c.n).expected_unvisited ==
          Approx(brute_force_unvisited(m, c.n)).epsilon(1e-12));
  }
}

TEST_CASE("one run covers every prefix") {
  const auto m = model(Family::lollipop, {WalkTag::lazy_simple}, Schedule::power(1.0, 1.5));
  const auto full = exact_expected_unvisited(m, 20);
  for (Step k : {1, 5, 13, 20}) {
    CHECK(full.ladder[static_cast<std::size_t>(k - 1)] ==
          Approx(exact_expected_unvisited(m, k).expected_unvisited).epsilon(1e-12));
  }
  double sum = 0.0;
  for (double p : full.miss_probability) sum += p;
  CHECK(sum == Approx(full.expected_unvisited).epsilon(1e-12));
  CHECK(full.miss_probability[0] == 0.0);
}

TEST_CASE("truncation does not move the answer") {
  auto m = model(Family::path, {WalkTag::lazy_simple}, Schedule::power(1.0, 1.5));
  ExactOptions loose;
  ExactOptions none;
  none.truncation = 0.0;
  CHECK(exact_expected_unvisited(m, 40, loose).expected_unvisited ==
        Approx(exact_expected_unvisited(m, 40, none).expected_unvisited).epsilon(1e-12));
}

TEST_CASE("occupancy is kept on request") {
  const auto m = model(Family::path, {WalkTag::lazy_simple}, Schedule::linear(1.0));
  const auto r = exact_expected_unvisited(m, 6, {}, true);
  REQUIRE(r.round_start_occupancy.size() == 6);
  CHECK(r.round_start_occupancy[0] == std::vector<double>{1.0});
  for (const auto& nu : r.round_start_occupancy) {
    double s = 0.0;
    for (double x : nu) s += x;
    CHECK(s == Approx(1.0));
  }
  CHECK(r.final_occupancy.size() == 6);
}

TEST_CASE("trajectory rows") {
  const auto m = model(Family::path, {WalkTag::lazy_metropolis}, Schedule::linear(1.0));
  const Step n = 8;
  const auto rows = exact_trajectory(m, n);
  const Step total = m.schedule.round_boundary(n + 1);
  CHECK(rows.size() == static_cast<std::size_t>(total + n));
  CHECK(rows.front().t == 0);
  CHECK(rows.front().expected_unvisited == 0.0);
  CHECK(rows.back().t == total);
  CHECK(rows.back().expected_unvisited == Approx(exact_expected_unvisited(m, n).expected_unvisited));
  for (std::size_t j = 1; j < rows.size(); ++j) {
    if (rows[j].round == rows[j - 1].round) {
      CHECK(rows[j].t == rows[j - 1].t + 1);
      CHECK(rows[j].expected_unvisited <= rows[j - 1].expected_unvisited + 1e-15);
    } else {
      CHECK(rows[j].t == rows[j - 1].t);
      CHECK(rows[j].expected_unvisited == Approx(rows[j - 1].expected_unvisited + 1.0));
    }
  }
}

TEST_CASE("resource guards") {
  const auto m = model(Family::path, {WalkTag::lazy_simple}, Schedule::constant(1));
  CHECK_THROWS_AS(exact_expected_unvisited(m, 401), ResourceError);
  ExactOptions small;
  small.dense_cap = 10;
  CHECK_THROWS_AS(exact_expected_unvisited(m, 11, small), ResourceError);
  ExactOptions short_traj;
  short_traj.max_trajectory_steps = 5;
  CHECK_THROWS_AS(exact_trajectory(m, 10, short_traj), ResourceError);
}

TEST_CASE("complete-graph sum bound") {
  // With h(i) = i the sum is the closed form itself.
  const Schedule s = Schedule::linear(1.0);
  const auto c = kn_bound(s, [](Step i) { return double(i); }, 50, 1.0);
  CHECK(c.sum == Approx(complete_closed_form(s, 50)).epsilon(1e-13));
  CHECK(c.hypothesis_met);
  CHECK(c.holds);
  CHECK(c.verdict() == "pass");

  const auto unmet = kn_bound(s, [](Step i) { return double(i); }, 50, 0.5);
  CHECK_FALSE(unmet.hypothesis_met);
  CHECK(unmet.violating_round == 1);
  CHECK(unmet.verdict() == "hypothesis-unmet");

  // h(i) = 2i with f(i) = 2i / delta stays below delta.
  for (double delta : {1.0, 5.0}) {
    const auto k = kn_bound(Schedule::linear(2.0 / delta), [](Step i) { return 2.0 * double(i); },
                            500, delta);
    CHECK(k.hypothesis_met);
    CHECK(k.holds);
  }
}

TEST_CASE("product bounds dominate the exact value") {
  for (Family f : {Family::path, Family::lollipop, Family::expander_like}) {
    const auto m = model(f, {WalkTag::lazy_simple}, Schedule::power(1.0, 1.5));
    const auto b = realize_bounds(m, 16);
    for (std::size_t j = 0; j < b.exact.size(); ++j) {
      CHECK(b.exact[j] <= b.hit_bound[j] + 1e-12);
      CHECK(b.exact[j] <= b.mix_hit_bound[j] + 1e-12);
    }
  }
}

TEST_CASE("l2 recurrence") {
  for (Family f : {Family::path, Family::lollipop, Family::complete}) {
    const auto m = model(f, {WalkTag::lazy_metropolis}, Schedule::linear(2.0));
    const auto rows = l2_recurrence_audit(m, 20);
    CHECK(rows.size() == 19);
    for (const auto& r : rows) CHECK(r.measured <= r.bound + 1e-12);
  }
}
