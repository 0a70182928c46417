#include "growwalk/chain_analysis.hpp"

#include <algorithm>
#include <cmath>

#include "growwalk/errors.hpp"
#include "growwalk/parallel.hpp"

namespace growwalk {

namespace {

constexpr double kSolveRcond = 1e-14;
constexpr double kEigenTol = 1e-10;
constexpr double kMaxEffectivePower = 1e6;
constexpr int kItersPerLevel = 32;
constexpr Step kDirectMixingSteps = 256;

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

void require_reversible(const TransitionKernel& k, const char* what) {
  if (!k.reversible()) throw DomainError(std::string(what) + " requires a reversible kernel");
}

// D^{1/2} P D^{-1/2}, symmetrized to remove rounding asymmetry.
MatrixXd symmetrized(const TransitionKernel& k) {
  const MatrixXd p = k.dense();
  const auto& pi = k.stationary();
  const Index n = p.rows();
  VectorXd s(n);
  for (Index v = 0; v < n; ++v) s(v) = std::sqrt(pi[static_cast<std::size_t>(v)]);
  MatrixXd a = s.asDiagonal() * p * s.cwiseInverse().asDiagonal();
  return 0.5 * (a + a.transpose());
}

HittingTimes hitting_per_target(const TransitionKernel& k) {
  const MatrixXd p = k.dense();
  const Index n = p.rows();
  HittingTimes out;
  out.expected = MatrixXd::Zero(n, n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t target) {
    const Index v = static_cast<Index>(target);
    // Coordinates other than v, in order.
    MatrixXd a(n - 1, n - 1);
    for (Index r = 0, i = 0; i < n; ++i) {
      if (i == v) continue;
      for (Index c = 0, j = 0; j < n; ++j) {
        if (j == v) continue;
        a(r, c) = (i == j ? 1.0 : 0.0) - p(i, j);
        ++c;
      }
      ++r;
    }
    Eigen::PartialPivLU<MatrixXd> lu(a);
    if (!(lu.rcond() > kSolveRcond)) {
      throw StructuralError("hitting time system for target " + std::to_string(v + 1) +
                            " is singular (kernel reducible)");
    }
    const VectorXd h = lu.solve(VectorXd::Ones(n - 1));
    for (Index r = 0, i = 0; i < n; ++i) {
      if (i == v) continue;
      out.expected(i, v) = h(r++);
    }
  });
  return out;
}

HittingTimes hitting_fundamental(const TransitionKernel& k) {
  const MatrixXd p = k.dense();
  const Index n = p.rows();
  const auto& pi = k.stationary();
  const VectorXd piv = Eigen::Map<const VectorXd>(pi.data(), n);
  const MatrixXd m = MatrixXd::Identity(n, n) - p + VectorXd::Ones(n) * piv.transpose();
  Eigen::PartialPivLU<MatrixXd> lu(m);
  if (!(lu.rcond() > kSolveRcond)) {
    throw StructuralError("fundamental matrix is singular (kernel reducible)");
  }
  const MatrixXd z = lu.inverse();
  HittingTimes out;
  out.expected = MatrixXd::Zero(n, n);
  for (Index v = 0; v < n; ++v) {
    if (!(piv(v) > 0.0)) throw StructuralError("zero stationary mass");
    for (Index u = 0; u < n; ++u) {
      if (u != v) out.expected(u, v) = (z(v, v) - z(u, v)) / piv(v);
    }
  }
  return out;
}

// Rows of P^t for every start, advanced one step.
void step_all(const TransitionKernel& k, std::vector<double>& block, std::vector<double>& scratch) {
  const std::size_t n = k.order();
  for (std::size_t u = 0; u < n; ++u) {
    k.propagate(std::span<const double>(block.data() + u * n, n),
                std::span<double>(scratch.data() + u * n, n));
  }
  block.swap(scratch);
}

double worst_tv(const TransitionKernel& k, const std::vector<double>& block) {
  const std::size_t n = k.order();
  const auto& pi = k.stationary();
  double worst = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    double d = 0.0;
    for (std::size_t v = 0; v < n; ++v) d += std::abs(block[u * n + v] - pi[v]);
    worst = std::max(worst, 0.5 * d);
  }
  return worst;
}

std::vector<double> identity_block(std::size_t n) {
  std::vector<double> block(n * n, 0.0);
  for (std::size_t u = 0; u < n; ++u) block[u * n + u] = 1.0;
  return block;
}

}  // namespace

HittingTimes hitting_time(const TransitionKernel& k, HittingMethod method) {
  HittingTimes out;
  if (k.order() == 1) {
    out.expected = MatrixXd::Zero(1, 1);
    return out;
  }
  out = method == HittingMethod::per_target ? hitting_per_target(k) : hitting_fundamental(k);
  out.t_hit = out.expected.maxCoeff();
  return out;
}

MixingTime mixing_time(const TransitionKernel& k, Step t_cap) {
  if (t_cap < 1) throw RangeError("mixing_time: t_cap must be >= 1");
  const std::size_t n = k.order();
  if (n == 1) return {0, false};
  std::vector<double> block = identity_block(n);
  std::vector<double> scratch(n * n);
  const Step direct = std::min<Step>(t_cap, kDirectMixingSteps);
  for (Step t = 1; t <= direct; ++t) {
    step_all(k, block, scratch);
    if (worst_tv(k, block) <= 0.25) return {t, false};
  }
  if (t_cap <= kDirectMixingSteps) return {t_cap, true};

  // The worst-start distance is nonincreasing in t, so the threshold can be
  // bracketed with powers P^(2^j) and refined by binary lifting.
  const auto& pi = k.stationary();
  auto distance = [&](const MatrixXd& m) {
    double worst = 0.0;
    for (Index u = 0; u < m.rows(); ++u) {
      double d = 0.0;
      for (Index v = 0; v < m.cols(); ++v) d += std::abs(m(u, v) - pi[static_cast<std::size_t>(v)]);
      worst = std::max(worst, 0.5 * d);
    }
    return worst;
  };
  std::vector<MatrixXd> powers{k.dense()};
  Step span = 1;
  while (span < kDirectMixingSteps) {
    powers.push_back(powers.back() * powers.back());
    span *= 2;
  }
  // distance(P^span) > 1/4 is known here.
  for (;;) {
    if (span >= t_cap) return {t_cap, true};
    MatrixXd next = powers.back() * powers.back();
    if (distance(next) <= 0.25) break;
    powers.push_back(std::move(next));
    span *= 2;
  }
  MatrixXd cur = powers.back();
  Step lo = span;
  for (std::size_t j = powers.size() - 1; j-- > 0;) {
    MatrixXd cand = cur * powers[j];
    if (distance(cand) > 0.25) {
      cur = std::move(cand);
      lo += Step{1} << j;
    }
  }
  if (lo + 1 > t_cap) return {t_cap, true};
  return {lo + 1, false};
}

double tv_distance(const TransitionKernel& k, Step t) {
  if (t < 0) throw RangeError("tv_distance: t must be >= 0");
  const std::size_t n = k.order();
  std::vector<double> block = identity_block(n);
  std::vector<double> scratch(n * n);
  for (Step s = 0; s < t; ++s) step_all(k, block, scratch);
  return worst_tv(k, block);
}

double lambda2(const TransitionKernel& k) {
  require_reversible(k, "lambda2");
  if (k.order() == 1) return 0.0;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(symmetrized(k), Eigen::EigenvaluesOnly);
  const VectorXd& ev = es.eigenvalues();  // ascending; ev(n-1) is 1
  const Index n = ev.size();
  return std::max(std::abs(ev(n - 2)), std::abs(ev(0)));
}

MatrixXd substochastic(const TransitionKernel& k, Vertex w) {
  if (w >= k.order()) throw RangeError("vertex out of range");
  MatrixXd p = k.dense();
  p.row(w).setZero();
  p.col(w).setZero();
  return p;
}

double survival_radius(const TransitionKernel& k, Vertex w) {
  require_reversible(k, "survival_radius");
  if (w >= k.order()) throw RangeError("vertex out of range");
  const Index n = static_cast<Index>(k.order());
  if (n == 1) return 0.0;
  MatrixXd a = symmetrized(k);
  a.row(w).setZero();
  a.col(w).setZero();

  VectorXd x(n);
  for (Index v = 0; v < n; ++v) x(v) = std::sqrt(k.stationary()[static_cast<std::size_t>(v)]);
  x(w) = 0.0;
  x.normalize();

  MatrixXd op = a;
  double power_per_iter = 1.0;
  double effective = 0.0;
  double residual = 0.0;
  for (;;) {
    for (int it = 0; it < kItersPerLevel; ++it) {
      const VectorXd ax = a * x;
      const double rho = x.dot(ax);
      residual = (ax - rho * x).norm();
      if (residual <= kEigenTol) return rho;
      if (effective > kMaxEffectivePower) {
        throw NumericalError("survival_radius: power iteration did not converge", residual);
      }
      VectorXd y = op * x;
      const double norm = y.norm();
      if (norm == 0.0) return 0.0;
      x = y / norm;
      effective += power_per_iter;
    }
    op = op * op;
    const double scale = op.norm();
    if (scale == 0.0) return 0.0;
    op /= scale;
    power_per_iter *= 2.0;
  }
}

double pi_ratio(const TransitionKernel& prev, const TransitionKernel& next) {
  if (prev.order() > next.order()) throw RangeError("pi_ratio: prev must not be larger than next");
  double r = 0.0;
  for (std::size_t v = 0; v < prev.order(); ++v) {
    const double denom = next.stationary()[v];
    if (!(denom > 0.0)) throw StructuralError("pi_ratio: zero stationary mass");
    r = std::max(r, prev.stationary()[v] / denom);
  }
  return r;
}

double pi_norm_sq(std::span<const double> xi, std::span<const double> pi) {
  if (xi.size() != pi.size()) throw RangeError("pi_norm_sq: size mismatch");
  double acc = 0.0;
  for (std::size_t v = 0; v < pi.size(); ++v) {
    if (!(pi[v] > 0.0)) throw DomainError("pi_norm_sq: zero stationary entry");
    const double d = xi[v] - pi[v];
    acc += d * d / pi[v];
  }
  return acc;
}

double inner_product_pi(std::span<const double> f, std::span<const double> g,
                        std::span<const double> pi) {
  if (f.size() != pi.size() || g.size() != pi.size()) {
    throw RangeError("inner_product_pi: size mismatch");
  }
  double acc = 0.0;
  for (std::size_t v = 0; v < pi.size(); ++v) acc += pi[v] * f[v] * g[v];
  return acc;
}

std::vector<double> survival_probabilities(const TransitionKernel& k, Vertex w, Step t) {
  if (w >= k.order()) throw RangeError("vertex out of range");
  if (t < 0) throw RangeError("survival_probabilities: t must be >= 0");
  std::vector<double> h(k.order(), 1.0);
  std::vector<double> next(k.order());
  h[w] = 0.0;
  for (Step s = 0; s < t; ++s) {
    k.apply(h, next);
    next[w] = 0.0;
    h.swap(next);
  }
  return h;
}

double stationary_tail(const TransitionKernel& k, Vertex w, Step t) {
  const auto h = survival_probabilities(k, w, t);
  double acc = 0.0;
  for (std::size_t v = 0; v < h.size(); ++v) acc += k.stationary()[v] * h[v];
  return acc;
}

AnalysisReport analyze(const TransitionKernel& k, bool with_survival, HittingMethod method) {
  AnalysisReport r;
  r.order = k.order();
  r.t_hit = hitting_time(k, method).t_hit;
  r.t_mix = mixing_time(k);
  r.pi_min = k.pi_min();
  if (k.reversible()) r.lambda2 = lambda2(k);
  if (with_survival && k.reversible()) {
    r.survival_radius.assign(k.order(), 0.0);
    parallel_for(k.order(), [&](std::size_t w) {
      r.survival_radius[w] = survival_radius(k, static_cast<Vertex>(w));
    });
    r.max_survival_radius =
        *std::max_element(r.survival_radius.begin(), r.survival_radius.end());
  }
  return r;
}

}  // namespace growwalk
