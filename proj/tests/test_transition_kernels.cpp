#include <doctest.h>

#include <random>
#include <sstream>

#include "growwalk/errors.hpp"
#include "growwalk/transition_kernels.hpp"

using namespace growwalk;
using doctest::Approx;

namespace {

GraphSnapshot snap(Family f, std::size_t n) {
  FamilySpec spec;
  spec.tag = f;
  return grow(spec, n);
}

std::vector<double> random_vector(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = u(rng);
  return x;
}

}  // namespace

TEST_CASE("lazy simple walk on a 3-path") {
  const auto k = lazy_simple_kernel(snap(Family::path, 3));
  CHECK(k.stationary()[0] == Approx(0.25));
  CHECK(k.stationary()[1] == Approx(0.5));
  CHECK(k.entry(0, 0) == 0.5);
  CHECK(k.entry(1, 0) == 0.25);
  CHECK(k.entry(0, 2) == 0.0);
  CHECK(k.lazy());
  CHECK(k.reversible());
  CHECK_FALSE(k.symmetric());
  CHECK(k.tridiagonal());
  CHECK(k.verify().empty());
}

TEST_CASE("lazy simple walk is symmetric on regular graphs") {
  CHECK(lazy_simple_kernel(snap(Family::complete, 6)).symmetric());
  CHECK(lazy_simple_kernel(snap(Family::complete, 6)).entry(0, 1) == Approx(0.1));
}

TEST_CASE("lazy metropolis entries") {
  const auto k = lazy_metropolis_kernel(snap(Family::path, 3));
  CHECK(k.entry(0, 1) == Approx(0.25));
  CHECK(k.entry(0, 0) == Approx(0.75));
  CHECK(k.entry(1, 1) == Approx(0.5));
  CHECK(k.symmetric());
  for (double p : k.stationary()) CHECK(p == Approx(1.0 / 3.0));

  std::istringstream star("1 2\n1 3\n1 4\n");
  const auto g = GrowingGraph::from_edge_list(star);
  const auto ks = lazy_metropolis_kernel(g->snapshot(4));
  CHECK(ks.entry(1, 0) == Approx(1.0 / 6.0));
  CHECK(ks.entry(1, 1) == Approx(5.0 / 6.0));
  CHECK(ks.entry(0, 0) == Approx(0.5));
}

TEST_CASE("uniform complete kernel") {
  const auto k = uniform_complete_kernel(4);
  CHECK(k.implicit_uniform());
  CHECK(k.entry(2, 2) == 0.25);
  CHECK_FALSE(k.lazy());
  CHECK(k.symmetric());
  CHECK(uniform_complete_kernel(1).lazy());
  CHECK(k.row(1).size() == 4);
}

TEST_CASE("path chain reproduces the named walks") {
  for (std::size_t n : {3u, 4u, 9u}) {
    const auto simple = lazy_simple_kernel(snap(Family::path, n)).dense();
    const auto metro = lazy_metropolis_kernel(snap(Family::path, n)).dense();
    CHECK((path_chain_kernel(n, 0.5, 0.25).dense() - simple).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK((path_chain_kernel(n, 0.75, 0.25).dense() - metro).cwiseAbs().maxCoeff() <= 1e-15);
  }
  const auto c = path_chain_kernel(5, 0.5, 0.25);
  CHECK(c.flags().simple);
  CHECK_FALSE(c.symmetric());
  CHECK(path_chain_kernel(5, 0.75, 0.25).symmetric());
  CHECK_FALSE(path_chain_kernel(5, 0.6, 0.3).lazy());
  CHECK(path_chain_kernel(7, 0.6, 0.2).verify().empty());
}

TEST_CASE("path chain parameter checks") {
  CHECK_THROWS_AS(path_chain_kernel(4, 0.2, 0.3), ConfigError);
  CHECK_THROWS_AS(path_chain_kernel(4, 1.0, 0.3), ConfigError);
  CHECK_THROWS_AS(path_chain_kernel(4, 0.6, 0.0), ConfigError);
  CHECK_THROWS_AS(path_chain_kernel(4, 0.9, 0.6), ConfigError);
  CHECK_NOTHROW(path_chain_kernel(2, 0.6, 0.0));
}

TEST_CASE("propagate and apply agree with dense products") {
  const std::vector<TransitionKernel> kernels = {
      uniform_complete_kernel(7),
      lazy_simple_kernel(snap(Family::lollipop, 11)),
      lazy_metropolis_kernel(snap(Family::expander_like, 13)),
      lazy_simple_kernel(snap(Family::path, 12)),
      path_chain_kernel(10, 0.7, 0.1),
  };
  for (const auto& k : kernels) {
    const std::size_t n = k.order();
    const auto x = random_vector(n, 3);
    std::vector<double> y(n), z(n);
    k.propagate(x, y);
    k.apply(x, z);
    const Eigen::MatrixXd p = k.dense();
    const Eigen::VectorXd xv = Eigen::Map<const Eigen::VectorXd>(x.data(), n);
    const Eigen::VectorXd left = p.transpose() * xv;
    const Eigen::VectorXd right = p * xv;
    for (std::size_t v = 0; v < n; ++v) {
      CHECK(y[v] == Approx(left(v)).epsilon(1e-13));
      CHECK(z[v] == Approx(right(v)).epsilon(1e-13));
    }
    CHECK(k.verify().empty());
  }
}

TEST_CASE("every family and walk builds a valid kernel") {
  for (Family f : {Family::complete, Family::path, Family::lollipop, Family::expander_like}) {
    for (std::size_t n : {1u, 2u, 5u, 17u}) {
      const auto g = snap(f, n);
      CHECK(lazy_simple_kernel(g).verify().empty());
      CHECK(lazy_metropolis_kernel(g).verify().empty());
    }
  }
}

TEST_CASE("walk selection") {
  CHECK(parse_walk("metropolis") == WalkTag::lazy_metropolis);
  CHECK(parse_walk("chain") == WalkTag::path_chain);
  CHECK_THROWS_AS(parse_walk("levy"), ConfigError);
  CHECK(default_walk(Family::complete).tag == WalkTag::uniform_complete);
  CHECK(default_walk(Family::path).tag == WalkTag::lazy_simple);
  CHECK_THROWS_AS(make_kernel({WalkTag::uniform_complete}, snap(Family::path, 4)), ConfigError);
  CHECK_THROWS_AS(make_kernel({WalkTag::path_chain}, snap(Family::lollipop, 4)), ConfigError);
}

TEST_CASE("kernel csv") {
  std::ostringstream out;
  lazy_simple_kernel(snap(Family::path, 2)).write_csv(out);
  CHECK(out.str() == "0.5,0.5\n0.5,0.5\n");
}
