#pragma once

#include <functional>
#include <string>
#include <vector>

#include "growwalk/model.hpp"

namespace growwalk {

struct ExactOptions {
  /// Largest graph order the dense engines accept.
  std::size_t dense_cap = 400;
  /// A target whose survival mass falls below this is dropped (counted as 0).
  double truncation = 1e-15;
  /// Trajectory output refuses runs longer than this many steps.
  Step max_trajectory_steps = 50'000'000;
};

struct ExactResult {
  Step rounds = 0;
  /// E[U(n)] for the requested n.
  double expected_unvisited = 0.0;
  /// ladder[m - 1] = E[U(m)] for m = 1..n (one run covers every prefix).
  std::vector<double> ladder;
  /// miss_probability[v] = Pr[v never visited by T_{n+1}], for every vertex
  /// of the final graph (0 for the start vertex).
  std::vector<double> miss_probability;
  /// occupancy[i - 1] = distribution of X_0^(i) over the round-i graph.
  /// Filled only when requested.
  std::vector<std::vector<double>> round_start_occupancy;
  /// Final-round end distribution (over the round-n graph).
  std::vector<double> final_occupancy;
};

ExactResult exact_expected_unvisited(const ModelSpec& model, Step n,
                                     const ExactOptions& options = {},
                                     bool keep_occupancy = false);

struct TrajectoryRow {
  Step t;
  Step round;
  /// E[number of unvisited vertices of the round's graph at time t].
  double expected_unvisited;
};

/// Rows (t, i, E[U_t]) for t = T_i..T_{i+1} in every round i. The boundary
/// time T_i appears twice: closing round i-1 and opening round i (one larger,
/// the arriving vertex).
std::vector<TrajectoryRow> exact_trajectory(const ModelSpec& model, Step n,
                                            const ExactOptions& options = {});

/// Sum_k prod_{i=k}^n (1 - 1/(n0+i))^{f(i)} plus the initial-vertex term
/// (n0 - 1) prod_{i=1}^n (1 - 1/(n0+i))^{f(i)} when n0 >= 1.
double complete_closed_form(const Schedule& schedule, Step n);
/// Values for m = 1..n.
std::vector<double> complete_closed_form_ladder(const Schedule& schedule, Step n);

struct KnCertificate {
  double sum = 0.0;
  double delta = 0.0;
  bool hypothesis_met = true;
  /// First i with f(i) < h(i)/delta, or 0.
  Step violating_round = 0;
  bool holds = true;
  std::string verdict() const;
};

/// S = sum_{k=1}^n prod_{i=k}^n (1 - 1/h(i))^{f(i)} checked against delta.
KnCertificate kn_bound(const Schedule& schedule, const std::function<double(Step)>& h, Step n,
                       double delta);

/// Per-ladder comparison of the exact value with the product-form upper bounds.
struct BoundRealization {
  std::vector<double> exact;
  /// sum_k prod_i max_v Pr[tau_{v_k} > f(i) | X_0 = v].
  std::vector<double> hit_bound;
  /// Same with the first s(i) = 2 t_mix(i) steps replaced by P^{s(i)}
  /// (s(i) = 0 when f(i) <= 2 t_mix(i)).
  std::vector<double> mix_hit_bound;
  std::vector<Step> split;
};

BoundRealization realize_bounds(const ModelSpec& model, Step n, const ExactOptions& options = {});

struct L2AuditRow {
  Step round;
  /// ||nu_{f}/pi - 1||^2 at the end of the round.
  double measured;
  /// r lambda2^{2f} x_prev + (r - 1) lambda2^{2f}, x_prev measured.
  double bound;
  double r;
  double lambda2;
};

/// Requires reversible kernels; rows for rounds 2..n.
std::vector<L2AuditRow> l2_recurrence_audit(const ModelSpec& model, Step n,
                                            const ExactOptions& options = {});

}  // namespace growwalk
