#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "growwalk/transition_kernels.hpp"

namespace growwalk {

enum class HittingMethod {
  /// One LU solve of (I - P restricted off v) h = 1 per target v.
  per_target,
  /// One inverse of I - P + 1 pi; E_u tau_v = (Z_vv - Z_uv) / pi_v.
  fundamental_matrix,
};

struct HittingTimes {
  double t_hit = 0.0;
  /// expected(u, v) = E[tau_v | X_0 = u]; zero diagonal.
  Eigen::MatrixXd expected;
};

HittingTimes hitting_time(const TransitionKernel& k,
                          HittingMethod method = HittingMethod::per_target);

struct MixingTime {
  Step steps = 0;
  /// True when the distance was still above 1/4 at t_cap; `steps` is then t_cap.
  bool capped = false;
};

MixingTime mixing_time(const TransitionKernel& k, Step t_cap = 10'000'000);

/// Worst-start total variation distance to pi after t steps.
double tv_distance(const TransitionKernel& k, Step t);

/// Second largest eigenvalue in absolute value, from the pi-symmetrized kernel.
double lambda2(const TransitionKernel& k);

/// Largest eigenvalue of P with row and column w zeroed (power iteration).
double survival_radius(const TransitionKernel& k, Vertex w);

/// The substochastic kernel P_{-w}, dense.
Eigen::MatrixXd substochastic(const TransitionKernel& k, Vertex w);

/// r = max over v < prev.order() of pi_prev(v) / pi_next(v).
double pi_ratio(const TransitionKernel& prev, const TransitionKernel& next);

/// sum_v pi(v) (xi(v)/pi(v) - 1)^2.
double pi_norm_sq(std::span<const double> xi, std::span<const double> pi);

/// sum_v pi(v) f(v) g(v).
double inner_product_pi(std::span<const double> f, std::span<const double> g,
                        std::span<const double> pi);

/// h(u) = Pr[X_s != w for all 0 <= s <= t | X_0 = u].
std::vector<double> survival_probabilities(const TransitionKernel& k, Vertex w, Step t);

/// Pr_pi[tau_w > t]: the walk started from stationarity avoids w through time t.
double stationary_tail(const TransitionKernel& k, Vertex w, Step t);

struct AnalysisReport {
  std::size_t order = 0;
  double t_hit = 0.0;
  MixingTime t_mix;
  double lambda2 = 0.0;
  double pi_min = 0.0;
  /// survival_radius for every vertex (empty when not requested).
  std::vector<double> survival_radius;
  double max_survival_radius = 0.0;
};

AnalysisReport analyze(const TransitionKernel& k, bool with_survival = true,
                       HittingMethod method = HittingMethod::per_target);

}  // namespace growwalk
