// Acceptance harness: one "ACk PASS|FAIL: detail" line per criterion.
#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "growwalk/chain_analysis.hpp"
#include "growwalk/exact_engine.hpp"
#include "growwalk/monte_carlo.hpp"
#include "growwalk/theorem_suite.hpp"

using namespace growwalk;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

FamilySpec family_spec(Family f) {
  FamilySpec s;
  s.tag = f;
  return s;
}

std::string num(double v, const char* format = "%.6g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

Outcome closed_form_equivalence() {
  std::vector<Schedule> schedules;
  for (Step c : {1, 2, 5}) schedules.push_back(Schedule::constant(c));
  for (double C : {1.0, 2.0}) schedules.push_back(Schedule::linear(C));
  // Complete-graph convention: exponent 1 - gamma.
  for (double g : {0.0, 0.5, 1.0}) schedules.push_back(Schedule::power(1.0, 1.0 - g));

  double worst = 0.0;
  int comparisons = 0;
  for (const auto& s : schedules) {
    const ModelSpec m{s, family_spec(Family::complete), {WalkTag::uniform_complete}};
    const auto exact = exact_expected_unvisited(m, 200);
    const auto closed = complete_closed_form_ladder(s, 200);
    for (Step n : {10, 50, 200}) {
      const auto j = static_cast<std::size_t>(n - 1);
      worst = std::max(worst, std::abs(exact.ladder[j] - closed[j]));
      ++comparisons;
    }
  }
  return {worst <= 1e-10, std::to_string(comparisons) + " comparisons, max |diff| = " + num(worst)};
}

Outcome constant_ratio() {
  const Step n = 2000;
  const double e = complete_closed_form(Schedule::constant(1), n);
  const double ratio = e / (static_cast<double>(n) / 2.0);
  const double lo = 1.0 - 3.0 / static_cast<double>(n);
  return {ratio >= lo && ratio <= 1.0,
          "E[U]/(n/2) = " + num(ratio, "%.10g") + " in [" + num(lo, "%.10g") + ", 1]"};
}

Outcome path_hitting_constant() {
  TheoremCase c;
  c.id = "T1.2-1";
  c.C = 2.0;
  c.engine = Engine::exact;
  for (Step n = 2; n <= 64; ++n) c.ladder.push_back(n);
  const auto cert = run_case(c);
  double worst = 0.0;
  Step at = 0;
  bool ok = cert.verdict == Verdict::pass;
  for (const auto& r : cert.rows) {
    if (r.diagnostic || r.relation != "<=") continue;
    if (r.measured > worst) {
      worst = r.measured;
      at = r.n;
    }
    ok = ok && r.measured <= 1.0;
  }
  return {ok, "max E[U] over n <= 64 is " + num(worst) + " at n = " + std::to_string(at) +
                  " (verdict " + std::string(to_string(cert.verdict)) + ")"};
}

Outcome path_scaling() {
  Outcome o;
  std::ostringstream d;
  const std::vector<Step> ladder = {25, 50, 100, 200};
  for (WalkTag tag : {WalkTag::lazy_simple, WalkTag::lazy_metropolis}) {
    for (double g : {0.0, 0.5, 1.0}) {
      const ModelSpec m{Schedule::power(1.0, 2.0 - g), family_spec(Family::path), {tag}};
      const auto t = scaling_table(m, ladder, Engine::exact);
      const bool ok = std::abs(t.slope - g) <= 0.15;
      o.pass = o.pass && ok;
      d << to_string(tag) << " gamma=" << g << " slope=" << num(t.slope, "%.4f") << (ok ? "" : "(!)")
        << "; ";
    }
  }
  // Lower-bound construction components, exact, at the default C = 1.
  for (WalkTag tag : {WalkTag::lazy_simple, WalkTag::lazy_metropolis}) {
    for (double g : {0.0, 0.5, 1.0}) {
      for (Step n : {100, 200}) {
        const auto r = path_lowerbound_experiment(1.0, g, n, 0, 1, 0.0, {tag});
        const bool ok = r.avoid_probability >= 0.3 && r.prefix_mass >= 0.6;
        o.pass = o.pass && ok;
        if (!ok || (g == 1.0 && n == 100)) {
          d << to_string(tag) << " gamma=" << g << " n=" << n << " avoid=" << num(r.avoid_probability, "%.4f")
            << " prefix=" << num(r.prefix_mass, "%.4f") << (ok ? "" : "(!)") << "; ";
        }
      }
    }
  }
  o.detail = d.str();
  if (o.detail.size() >= 2) o.detail.resize(o.detail.size() - 2);
  return o;
}

Outcome spectral_suite() {
  struct Build {
    Family family;
    WalkSpec walk;
  };
  const std::vector<Build> builds = {
      {Family::path, {WalkTag::lazy_simple}},        {Family::path, {WalkTag::lazy_metropolis}},
      {Family::path, {WalkTag::path_chain, 0.6, 0.2}}, {Family::lollipop, {WalkTag::lazy_simple}},
      {Family::lollipop, {WalkTag::lazy_metropolis}}, {Family::expander_like, {WalkTag::lazy_simple}},
      {Family::expander_like, {WalkTag::lazy_metropolis}}, {Family::complete, {WalkTag::lazy_simple}},
  };
  std::size_t kernels = 0, checks = 0, violations = 0;
  std::string first;
  auto record = [&](bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++violations;
      if (first.empty()) first = what;
    }
  };
  std::mt19937_64 rng(2024);
  for (const auto& b : builds) {
    for (std::size_t n = 4; n <= 64; ++n) {
      const TransitionKernel k = make_kernel(b.walk, grow(family_spec(b.family), n));
      if (!k.lazy() || !k.reversible()) continue;
      ++kernels;
      const std::string tag = std::string(to_string(b.family)) + "/" + std::string(to_string(b.walk.tag)) +
                              " n=" + std::to_string(n);
      const double t_hit = hitting_time(k).t_hit;
      const double l2 = lambda2(k);
      const double pi_min = k.pi_min();
      for (Vertex w = 0; w < n; ++w) {
        const double rho = survival_radius(k, w);
        record(rho <= 1.0 - 1.0 / t_hit + 1e-9, tag + " survival radius at w=" + std::to_string(w));
      }
      const double tol = 1e-9 * t_hit;
      record(1.0 / (1.0 - l2) <= t_hit + tol, tag + " relaxation time above t_hit");
      record(t_hit <= 2.0 / (pi_min * (1.0 - l2)) + tol, tag + " t_hit above 2/(pi_min gap)");

      // Per-step contraction of the pi-weighted variance from point masses
      // and random starts.
      const auto& pi = k.stationary();
      std::vector<double> x(n), y(n);
      for (std::size_t trial = 0; trial < n + 8; ++trial) {
        std::fill(x.begin(), x.end(), 0.0);
        if (trial < n) {
          x[trial] = 1.0;
        } else {
          double s = 0.0;
          for (auto& v : x) s += (v = std::uniform_real_distribution<double>(0.0, 1.0)(rng));
          for (auto& v : x) v /= s;
        }
        for (int step = 0; step < 4; ++step) {
          k.propagate(x, y);
          const double before = pi_norm_sq(x, pi);
          const double after = pi_norm_sq(y, pi);
          record(after <= l2 * l2 * before + 1e-12 * std::max(1.0, before),
                 tag + " l2 contraction");
          x.swap(y);
        }
      }
    }
  }
  std::string detail = std::to_string(kernels) + " kernels, " + std::to_string(checks) + " checks, " +
                       std::to_string(violations) + " violations";
  if (!first.empty()) detail += " (first: " + first + ")";
  return {violations == 0, detail};
}

Outcome monte_carlo_calibration() {
  std::mt19937_64 rng(20241015);
  auto pick = [&](std::size_t m) { return static_cast<std::size_t>(rng() % m); };
  auto real = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  const std::vector<Family> families = {Family::complete, Family::path, Family::lollipop,
                                        Family::expander_like};
  int within = 0, cases = 0;
  std::ostringstream misses;
  while (cases < 20) {
    const Family f = families[pick(families.size())];
    WalkSpec walk;
    if (f == Family::complete) {
      walk.tag = pick(2) ? WalkTag::uniform_complete : WalkTag::lazy_simple;
    } else if (f == Family::path && pick(3) == 0) {
      walk = {WalkTag::path_chain, real(0.4, 0.9), real(0.05, 0.4)};
      walk.q = std::min(walk.q, walk.p);
    } else {
      walk.tag = pick(2) ? WalkTag::lazy_simple : WalkTag::lazy_metropolis;
    }
    Schedule s = Schedule::constant(1);
    switch (pick(3)) {
      case 0: s = Schedule::constant(static_cast<Step>(1 + pick(6))); break;
      case 1: s = Schedule::linear(real(0.5, 3.0)); break;
      default: s = Schedule::power(real(0.5, 2.0), real(0.5, 1.8)); break;
    }
    const Step n = static_cast<Step>(5 + pick(96));
    FamilySpec fs = family_spec(f);
    fs.graph_seed = rng();
    const ModelSpec m{s, fs, walk};
    const std::uint64_t seed = rng();
    // Keep the simulated walk length modest; redraw oversize cases.
    if (s.round_boundary(n + 1) > 40000) continue;
    ++cases;
    const double exact = exact_expected_unvisited(m, n).expected_unvisited;
    const auto est = estimate_unvisited(SimulationPlan{m, n, 10000, seed, false});
    const double se = est.final.standard_error();
    if (std::abs(est.final.mean - exact) <= 4.0 * se) {
      ++within;
    } else {
      misses << " [" << to_string(f) << " " << s.describe() << " n=" << n << " exact=" << num(exact)
             << " mc=" << num(est.final.mean) << " se=" << num(se) << "]";
    }
  }
  return {within >= 19, std::to_string(within) + "/20 cases within 4 SE" + misses.str()};
}

// Start-of-round occupancy by direct forward propagation.
Outcome path_monotonicity() {
  std::size_t settings = 0, rounds_checked = 0, violations = 0;
  std::ostringstream failing;
  double worst = 0.0;
  const std::vector<double> ps = {0.25, 0.4, 0.5, 0.6, 0.75, 0.9};
  const std::vector<double> qs = {0.05, 0.1, 0.2, 0.25, 0.4, 0.5};
  const std::vector<Schedule> schedules = {Schedule::linear(1.0), Schedule::power(1.0, 1.5)};
  const Step n = 128;
  for (double p : ps) {
    for (double q : qs) {
      if (q > p) continue;
      bool pair_failed = false;
      for (const auto& s : schedules) {
        ++settings;
        const RoundSequence seq(ModelSpec{s, family_spec(Family::path), {WalkTag::path_chain, p, q}}, n);
        std::vector<double> x = seq.initial_distribution();
        std::size_t bad = 0;
        double gap = 0.0;
        for (Step i = 1; i <= n; ++i) {
          x.resize(seq.order(i), 0.0);
          ++rounds_checked;
          for (std::size_t v = 0; v + 1 < x.size(); ++v) {
            const double d = x[v + 1] - x[v];
            if (d > 1e-12) {
              ++bad;
              gap = std::max(gap, d);
            }
          }
          const TransitionKernel k = seq.kernel(i);
          std::vector<double> y(x.size());
          for (Step t = 0; t < seq.duration(i); ++t) {
            k.propagate(x, y);
            x.swap(y);
          }
        }
        if (bad > 0) {
          violations += bad;
          worst = std::max(worst, gap);
          pair_failed = true;
        }
      }
      if (pair_failed) failing << " (" << p << "," << q << ")";
    }
  }
  std::string detail = std::to_string(settings) + " settings, " + std::to_string(rounds_checked) +
                       " rounds, " + std::to_string(violations) + " increasing adjacent pairs";
  if (violations > 0) detail += ", max rise " + num(worst) + ", failing (p,q):" + failing.str();
  return {violations == 0, detail};
}

Outcome initial_clique() {
  bool ok = true;
  std::ostringstream d;
  for (std::size_t n0 : {5u, 20u}) {
    for (double delta : {1.0, 5.0}) {
      const Schedule s = Schedule::linear(2.0 / delta).with_initial_vertices(n0);
      const ModelSpec m{s, family_spec(Family::complete), {WalkTag::uniform_complete}};
      const auto r = exact_expected_unvisited(m, 200);
      const double bound = 2.0 * static_cast<double>(n0) + delta;
      for (Step n : {50, 200}) {
        const double e = r.ladder[static_cast<std::size_t>(n - 1)];
        ok = ok && e <= bound;
        d << "n0=" << n0 << " D=" << delta << " n=" << n << ": " << num(e, "%.4f") << "<=" << bound << "; ";
      }
    }
  }
  std::string detail = d.str();
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-8)")->check(CLI::Range(0, 8));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Outcome()>> criteria = {
      closed_form_equivalence, constant_ratio,        path_hitting_constant, path_scaling,
      spectral_suite,          monte_carlo_calibration, path_monotonicity,   initial_clique,
  };
  bool all = true;
  for (std::size_t j = 0; j < criteria.size(); ++j) {
    if (only != 0 && static_cast<std::size_t>(only) != j + 1) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[j]();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "AC" << j + 1 << (o.pass ? " PASS: " : " FAIL: ") << o.detail << " [" << num(secs, "%.1f")
              << "s]" << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
