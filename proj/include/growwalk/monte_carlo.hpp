#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "growwalk/exact_engine.hpp"
#include "growwalk/model.hpp"
#include "growwalk/random.hpp"

namespace growwalk {

struct SimulationPlan {
  ModelSpec model;
  Step n = 1;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  bool record_trajectory = false;
};

struct TrialOutcome {
  /// visited[v] for every vertex of the final graph.
  std::vector<char> visited;
  std::size_t unvisited = 0;
  /// unvisited count at the end of each round (ladder[m-1] = U(m)).
  std::vector<std::uint32_t> ladder;
  /// Unvisited count per trajectory row (same row layout as exact_trajectory).
  std::vector<std::uint32_t> trace;
};

struct EstimateRecord {
  double mean = 0.0;
  /// NaN when trials == 1.
  double sd = 0.0;
  std::size_t trials = 0;
  /// 1.96 sd / sqrt(trials); NaN when sd is undefined.
  double half_width = 0.0;
  std::uint64_t seed = 0;
  bool sd_defined = false;
  /// Normal-approximation interval is meaningful (trials >= 30).
  bool interval_valid = false;
  /// Some trial hit a step cap (cover time only).
  bool capped = false;

  double standard_error() const;
};

EstimateRecord summarize(const std::vector<double>& samples, std::uint64_t seed);

/// Precomputed simulation of one plan; trials are independent and reproducible.
class Simulator {
 public:
  explicit Simulator(SimulationPlan plan);

  const SimulationPlan& plan() const noexcept { return plan_; }
  TrialOutcome run(std::size_t trial_index) const;
  /// Runs plan.trials trials in parallel, ordered by trial index.
  std::vector<TrialOutcome> run_all() const;

 private:
  Vertex step(Vertex x, std::size_t order, Rng& rng) const;

  SimulationPlan plan_;
  RoundSequence sequence_;
  std::vector<Step> boundaries_;
  std::shared_ptr<const GrowingGraph> graph_;
};

TrialOutcome simulate_once(const SimulationPlan& plan, std::size_t trial_index);

struct UnvisitedEstimate {
  EstimateRecord final;
  /// ladder[m-1] estimates E[U(m)].
  std::vector<EstimateRecord> ladder;
  /// Per-trial U(n), in trial order.
  std::vector<std::uint32_t> per_trial;
  /// Mean trajectory (only with record_trajectory).
  std::vector<TrajectoryRow> trajectory;
};

UnvisitedEstimate estimate_unvisited(const SimulationPlan& plan);

/// Worst-start cover time of a static kernel; each trial capped at `cap` steps.
EstimateRecord estimate_cover_time(const TransitionKernel& k, std::size_t trials,
                                   std::uint64_t seed, Step cap = 1'000'000'000);

struct PathLowerBoundResult {
  double C = 1.0;
  double gamma = 1.0;
  Step n = 0;
  double epsilon = 0.0;
  Step R = 0;
  Step L = 0;
  Step T = 0;
  double expected_unvisited = 0.0;
  std::optional<EstimateRecord> simulated;
  double lower_bound = 0.0;
  /// Pr[v_R never visited | X_0^(R) = v_L] and the claimed 1 - T/(4(R-L)^2).
  double avoid_probability = 0.0;
  double avoid_claim = 0.0;
  /// min over R <= k <= n of Pr[X_0^(k) in {v_1..v_L}] and the claimed 1 - L/n.
  double prefix_mass = 0.0;
  double prefix_claim = 0.0;
};

/// f(i) = ceil(C i^(2-gamma)) on the growing path. epsilon <= 0 selects
/// 0.9 min(1/C, 0.1). Components are exact; `trials` > 0 adds a Monte Carlo
/// estimate of E[U].
PathLowerBoundResult path_lowerbound_experiment(double C, double gamma, Step n, std::size_t trials,
                                                std::uint64_t seed = 1, double epsilon = 0.0,
                                                WalkSpec walk = {},
                                                const ExactOptions& options = {});

}  // namespace growwalk
