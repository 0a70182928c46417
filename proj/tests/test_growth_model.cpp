#include <doctest.h>

#include <set>
#include <sstream>

#include "growwalk/errors.hpp"
#include "growwalk/growth_model.hpp"

using namespace growwalk;

namespace {

FamilySpec spec(Family f) {
  FamilySpec s;
  s.tag = f;
  return s;
}

}  // namespace

TEST_CASE("round boundaries accumulate durations") {
  const Schedule s = Schedule::linear(1.0);
  CHECK(s.duration(1) == 1);
  CHECK(s.duration(3) == 3);
  CHECK(s.round_boundary(1) == 0);
  CHECK(s.round_boundary(4) == 6);
  CHECK(s.boundaries(3) == std::vector<Step>{0, 1, 3, 6});

  const Schedule odd = Schedule::function("2i-1", [](Step i) { return 2 * i - 1; });
  CHECK(odd.round_boundary(5) == 16);
  CHECK(odd.round_boundary(6) == 25);
}

TEST_CASE("duration rounding") {
  CHECK(ceil_duration(2.5) == 3);
  CHECK(ceil_duration(3.0 + 1e-12) == 3);
  CHECK(ceil_duration(1e-3) == 1);
  CHECK_THROWS_AS(ceil_duration(1e30), RangeError);

  const Schedule root = Schedule::power(1.0, 0.5);
  CHECK(root.duration(4) == 2);
  CHECK(root.duration(5) == 3);
  CHECK(Schedule::power(1.0, 2.0).duration(7) == 49);
  CHECK(Schedule::linear(0.1).duration(1) == 1);
  CHECK(Schedule::constant(3).duration(1000) == 3);
}

TEST_CASE("schedules reject bad input") {
  CHECK_THROWS_AS(Schedule::constant(0), ConfigError);
  const Schedule zero = Schedule::function("zero", [](Step) { return Step{0}; });
  CHECK_THROWS_AS(zero.duration(1), ConfigError);
  const Schedule t = Schedule::table({1, 2});
  CHECK(t.horizon() == 2);
  CHECK_THROWS(t.duration(3));
}

TEST_CASE("schedule tables load from text") {
  std::istringstream in("# n f\n1 4\n2\t5\n\n3 6\n");
  const Schedule s = load_schedule_table(in);
  CHECK(s.horizon() == 3);
  CHECK(s.duration(2) == 5);
  CHECK(s.round_boundary(4) == 15);

  std::istringstream gap("1 4\n3 5\n");
  CHECK_THROWS_AS(load_schedule_table(gap), ConfigError);
  std::istringstream junk("1 x\n");
  CHECK_THROWS_AS(load_schedule_table(junk), ConfigError);
}

TEST_CASE("initial vertices shift the order") {
  const Schedule s = Schedule::linear(1.0).with_initial_vertices(5);
  CHECK(s.order_in_round(1) == 6);
  CHECK(s.initial_vertices() == 5);
  CHECK(s.duration(2) == 2);
}

TEST_CASE("family names") {
  CHECK(parse_family("expander") == Family::expander_like);
  CHECK(to_string(Family::lollipop) == "lollipop");
  CHECK_THROWS_AS(parse_family("star"), ConfigError);
}

TEST_CASE("complete and path snapshots") {
  const auto k5 = grow(spec(Family::complete), 5);
  CHECK(k5.edge_count() == 10);
  CHECK(k5.min_degree() == 4);
  const auto p6 = grow(spec(Family::path), 6);
  CHECK(p6.edge_count() == 5);
  CHECK(p6.degree(0) == 1);
  CHECK(p6.degree(3) == 2);
  CHECK(p6.has_edge(2, 3));
  CHECK_FALSE(p6.has_edge(0, 2));
  CHECK(p6.is_connected());
}

TEST_CASE("lollipop: odd labels form a clique, even labels a path") {
  const auto g = grow(spec(Family::lollipop), 4);
  CHECK(g.edge_count() == 3);
  const auto e = g.edges();
  CHECK(e == std::vector<std::pair<Vertex, Vertex>>{{0, 1}, {0, 2}, {1, 3}});

  // |E| after 2i vertices is i(i+1)/2.
  for (std::size_t i = 2; i <= 10; ++i) {
    CHECK(grow(spec(Family::lollipop), 2 * i).edge_count() == i * (i + 1) / 2);
    CHECK(grow(spec(Family::lollipop), 2 * i + 1).edge_count() == i * (i + 3) / 2);
  }
}

TEST_CASE("snapshots are nested") {
  for (Family f : {Family::complete, Family::path, Family::lollipop, Family::expander_like}) {
    const auto big = GrowingGraph::build(spec(f), 30);
    for (std::size_t m = 2; m <= 30; ++m) {
      const auto small = big->snapshot(m - 1).edges();
      const auto large = big->snapshot(m).edges();
      const std::set<std::pair<Vertex, Vertex>> all(large.begin(), large.end());
      for (const auto& e : small) CHECK(all.count(e) == 1);
      CHECK(big->snapshot(m).is_connected());
    }
  }
}

TEST_CASE("expander attachment is seeded and bounded") {
  FamilySpec a;
  a.tag = Family::expander_like;
  a.expander_degree = 3;
  a.graph_seed = 9;
  const auto g1 = grow(a, 40);
  const auto g2 = grow(a, 40);
  CHECK(g1.edges() == g2.edges());
  a.graph_seed = 10;
  CHECK(grow(a, 40).edges() != g1.edges());
  const auto seq = GrowingGraph::build(a, 40);
  for (std::size_t k = 1; k < 40; ++k) {
    CHECK(seq->edge_count(k + 1) - seq->edge_count(k) == std::min<std::size_t>(3, k));
  }
}

TEST_CASE("custom edge lists") {
  std::istringstream star("1 2\n1 3\n1 4\n");
  const auto g = GrowingGraph::from_edge_list(star);
  CHECK(g->max_order() == 4);
  CHECK(g->snapshot(4).degree(0) == 3);

  std::istringstream loop("1 1\n");
  CHECK_THROWS_AS(GrowingGraph::from_edge_list(loop), ConfigError);
  std::istringstream dup("1 2\n2 1\n");
  CHECK_THROWS_AS(GrowingGraph::from_edge_list(dup), ConfigError);
  std::istringstream orphan("1 2\n3 4\n");
  CHECK_THROWS_AS(GrowingGraph::from_edge_list(orphan), ConfigError);
}
