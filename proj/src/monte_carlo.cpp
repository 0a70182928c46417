#include "growwalk/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "growwalk/errors.hpp"
#include "growwalk/parallel.hpp"

namespace growwalk {

double EstimateRecord::standard_error() const {
  return sd_defined ? sd / std::sqrt(static_cast<double>(trials))
                    : std::numeric_limits<double>::quiet_NaN();
}

EstimateRecord summarize(const std::vector<double>& samples, std::uint64_t seed) {
  if (samples.empty()) throw ConfigError("estimate requires at least one trial");
  EstimateRecord r;
  r.trials = samples.size();
  r.seed = seed;
  long double sum = 0.0L;
  for (double x : samples) sum += x;
  r.mean = static_cast<double>(sum / static_cast<long double>(r.trials));
  if (r.trials == 1) {
    r.sd = std::numeric_limits<double>::quiet_NaN();
    r.half_width = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  long double ss = 0.0L;
  for (double x : samples) {
    const long double d = x - r.mean;
    ss += d * d;
  }
  r.sd = std::sqrt(static_cast<double>(ss / static_cast<long double>(r.trials - 1)));
  r.sd_defined = true;
  r.half_width = 1.96 * r.sd / std::sqrt(static_cast<double>(r.trials));
  r.interval_valid = r.trials >= 30;
  return r;
}

namespace {

SimulationPlan validated(SimulationPlan plan) {
  if (plan.trials < 1) throw ConfigError("trials must be >= 1");
  if (plan.n < 1) throw RangeError("n must be >= 1");
  if (plan.model.walk.tag == WalkTag::path_chain) {
    path_chain_kernel(3, plan.model.walk.p, plan.model.walk.q);  // parameter check
  }
  return plan;
}

}  // namespace

Simulator::Simulator(SimulationPlan plan)
    : plan_(validated(std::move(plan))), sequence_(plan_.model, plan_.n) {
  sequence_.kernel(1);  // rejects walk/family mismatches up front
  boundaries_ = plan_.model.schedule.boundaries(plan_.n);
  graph_ = sequence_.snapshot(1).sequence();
}

// One transition of the round kernel, sampled from the graph structure.
Vertex Simulator::step(Vertex x, std::size_t order, Rng& rng) const {
  if (order == 1) return x;
  const auto& walk = plan_.model.walk;
  switch (walk.tag) {
    case WalkTag::uniform_complete:
      return static_cast<Vertex>(uniform_below(rng, order));
    case WalkTag::lazy_simple: {
      const auto nbrs = graph_->neighbors(x, order);
      const std::uint64_t r = uniform_below(rng, 2 * nbrs.size());
      return r < nbrs.size() ? nbrs[r] : x;
    }
    case WalkTag::lazy_metropolis: {
      const auto& graph = *graph_;
      const auto nbrs = graph.neighbors(x, order);
      const std::uint64_t r = uniform_below(rng, 2 * nbrs.size());
      if (r >= nbrs.size()) return x;
      const Vertex u = nbrs[r];
      const std::size_t du = graph.degree(u, order);
      if (du <= nbrs.size() || uniform_below(rng, du) < nbrs.size()) return u;
      return x;
    }
    case WalkTag::path_chain: {
      const double z = uniform01(rng);
      if (x == 0) return z < walk.p ? 0 : 1;
      if (x + 1 == order) return z < walk.p ? x : x - 1;
      if (z < walk.q) return x - 1;
      if (z < 2.0 * walk.q) return x + 1;
      return x;
    }
  }
  return x;
}

TrialOutcome Simulator::run(std::size_t trial_index) const {
  Rng rng(stream_seed(plan_.seed, trial_index));
  const std::size_t n0 = sequence_.initial_vertices();
  TrialOutcome out;
  out.visited.assign(sequence_.final_order(), 0);
  out.ladder.reserve(static_cast<std::size_t>(plan_.n));
  Vertex x = n0 == 0 ? 0 : static_cast<Vertex>(uniform_below(rng, n0));
  out.visited[x] = 1;
  std::size_t seen = 1;
  for (Step i = 1; i <= plan_.n; ++i) {
    const std::size_t m = sequence_.order(i);
    const Step f = boundaries_[static_cast<std::size_t>(i)] - boundaries_[static_cast<std::size_t>(i - 1)];
    if (plan_.record_trajectory) out.trace.push_back(static_cast<std::uint32_t>(m - seen));
    for (Step j = 0; j < f; ++j) {
      x = step(x, m, rng);
      if (!out.visited[x]) {
        out.visited[x] = 1;
        ++seen;
      }
      if (plan_.record_trajectory) out.trace.push_back(static_cast<std::uint32_t>(m - seen));
    }
    out.ladder.push_back(static_cast<std::uint32_t>(m - seen));
  }
  out.unvisited = out.visited.size() - seen;
  return out;
}

std::vector<TrialOutcome> Simulator::run_all() const {
  std::vector<TrialOutcome> out(plan_.trials);
  parallel_for(plan_.trials, [&](std::size_t t) { out[t] = run(t); });
  return out;
}

TrialOutcome simulate_once(const SimulationPlan& plan, std::size_t trial_index) {
  return Simulator(plan).run(trial_index);
}

UnvisitedEstimate estimate_unvisited(const SimulationPlan& plan) {
  const Simulator sim(plan);
  const auto trials = sim.run_all();
  UnvisitedEstimate est;
  std::vector<double> samples(trials.size());
  for (std::size_t t = 0; t < trials.size(); ++t) {
    samples[t] = static_cast<double>(trials[t].unvisited);
    est.per_trial.push_back(static_cast<std::uint32_t>(trials[t].unvisited));
  }
  est.final = summarize(samples, plan.seed);
  for (std::size_t m = 0; m < static_cast<std::size_t>(plan.n); ++m) {
    for (std::size_t t = 0; t < trials.size(); ++t) samples[t] = trials[t].ladder[m];
    est.ladder.push_back(summarize(samples, plan.seed));
  }
  if (plan.record_trajectory) {
    const auto bounds = plan.model.schedule.boundaries(plan.n);
    std::size_t row = 0;
    for (Step i = 1; i <= plan.n; ++i) {
      for (Step t = bounds[static_cast<std::size_t>(i - 1)]; t <= bounds[static_cast<std::size_t>(i)]; ++t, ++row) {
        long double acc = 0.0L;
        for (const auto& tr : trials) acc += tr.trace[row];
        est.trajectory.push_back({t, i, static_cast<double>(acc / static_cast<long double>(trials.size()))});
      }
    }
  }
  return est;
}

EstimateRecord estimate_cover_time(const TransitionKernel& k, std::size_t trials,
                                   std::uint64_t seed, Step cap) {
  if (trials < 1) throw ConfigError("trials must be >= 1");
  const std::size_t n = k.order();
  if (n == 1) return summarize(std::vector<double>(trials, 0.0), seed);
  // Inverse-CDF tables per row.
  std::vector<std::vector<TransitionKernel::Entry>> rows(n);
  if (!k.implicit_uniform()) {
    for (Vertex u = 0; u < n; ++u) {
      rows[u] = k.row(u);
      double acc = 0.0;
      for (auto& e : rows[u]) {
        acc += e.value;
        e.value = acc;
      }
      rows[u].back().value = 1.0;
    }
  }
  std::vector<std::vector<double>> samples(n, std::vector<double>(trials));
  std::vector<char> capped(n * trials, 0);
  parallel_for(n * trials, [&](std::size_t job) {
    const std::size_t start = job / trials;
    const std::size_t trial = job % trials;
    Rng rng(stream_seed(seed, job));
    std::vector<char> seen(n, 0);
    Vertex x = static_cast<Vertex>(start);
    seen[x] = 1;
    std::size_t covered = 1;
    Step t = 0;
    while (covered < n && t < cap) {
      if (k.implicit_uniform()) {
        x = static_cast<Vertex>(uniform_below(rng, n));
      } else {
        const double z = uniform01(rng);
        const auto& r = rows[x];
        x = std::upper_bound(r.begin(), r.end(), z,
                             [](double v, const auto& e) { return v < e.value; })->index;
      }
      ++t;
      if (!seen[x]) {
        seen[x] = 1;
        ++covered;
      }
    }
    samples[start][trial] = static_cast<double>(t);
    capped[job] = covered < n;
  });
  std::size_t worst = 0;
  double worst_mean = -1.0;
  for (std::size_t s = 0; s < n; ++s) {
    long double acc = 0.0L;
    for (double v : samples[s]) acc += v;
    const double mean = static_cast<double>(acc / static_cast<long double>(trials));
    if (mean > worst_mean) {
      worst_mean = mean;
      worst = s;
    }
  }
  EstimateRecord r = summarize(samples[worst], seed);
  r.capped = std::any_of(capped.begin(), capped.end(), [](char c) { return c != 0; });
  return r;
}

PathLowerBoundResult path_lowerbound_experiment(double C, double gamma, Step n, std::size_t trials,
                                                std::uint64_t seed, double epsilon, WalkSpec walk,
                                                const ExactOptions& options) {
  if (!(C > 0.0)) throw ConfigError("C > 0 required");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("gamma in [0, 1] required");
  if (n < 4) throw ConfigError("n >= 4 required");
  const double eps_limit = std::min(1.0 / C, 0.1);
  if (epsilon <= 0.0) epsilon = 0.9 * eps_limit;
  if (!(epsilon < eps_limit)) {
    throw ConfigError("violated: epsilon < min(1/C, 0.1)");
  }
  const double nd = static_cast<double>(n);
  PathLowerBoundResult r;
  r.C = C;
  r.gamma = gamma;
  r.n = n;
  r.epsilon = epsilon;
  r.R = ceil_duration(nd - epsilon * std::pow(nd, gamma));
  r.L = r.R - ceil_duration(0.6 * nd);
  if (static_cast<double>(r.L) < 0.3 * nd || static_cast<double>(r.L) > 0.4 * nd || r.L < 1) {
    throw ConfigError("violated: L = R - 0.6n in [0.3n, 0.4n] (L = " + std::to_string(r.L) + ")");
  }
  if (walk.tag == WalkTag::uniform_complete) throw ConfigError("the path experiment needs a path walk");

  FamilySpec path_family;
  path_family.tag = Family::path;
  ModelSpec model{Schedule::power(C, 2.0 - gamma), path_family, walk};
  for (Step i = r.R; i <= n; ++i) r.T += model.schedule.duration(i);
  r.lower_bound = 0.18 * epsilon * std::pow(nd, gamma);
  r.avoid_claim = 1.0 - static_cast<double>(r.T) / (4.0 * static_cast<double>((r.R - r.L) * (r.R - r.L)));
  r.prefix_claim = 1.0 - static_cast<double>(r.L) / nd;

  const ExactResult exact = exact_expected_unvisited(model, n, options, true);
  r.expected_unvisited = exact.expected_unvisited;
  r.prefix_mass = 1.0;
  for (Step k = r.R; k <= n; ++k) {
    const auto& nu = exact.round_start_occupancy[static_cast<std::size_t>(k - 1)];
    double mass = 0.0;
    for (Step v = 0; v < r.L; ++v) mass += nu[static_cast<std::size_t>(v)];
    r.prefix_mass = std::min(r.prefix_mass, mass);
  }

  // Survival of v_R from a point mass on v_L at the start of round R.
  RoundSequence seq(model, n);
  const auto w = static_cast<Vertex>(r.R - 1);
  std::vector<double> s(seq.final_order(), 0.0);
  std::vector<double> next(seq.final_order(), 0.0);
  s[static_cast<std::size_t>(r.L - 1)] = 1.0;
  for (Step i = r.R; i <= n; ++i) {
    const TransitionKernel k = seq.kernel(i);
    const std::size_t m = k.order();
    const Step f = seq.duration(i);
    for (Step j = 0; j < f; ++j) {
      k.propagate(std::span<const double>(s.data(), m), std::span<double>(next.data(), m));
      next[w] = 0.0;
      std::swap(s, next);
    }
  }
  double mass = 0.0;
  for (double v : s) mass += v;
  r.avoid_probability = mass;

  if (trials > 0) {
    r.simulated = estimate_unvisited(SimulationPlan{model, n, trials, seed, false}).final;
  }
  return r;
}

}  // namespace growwalk
