#include "growwalk/exact_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "growwalk/chain_analysis.hpp"
#include "growwalk/errors.hpp"
#include "growwalk/parallel.hpp"

namespace growwalk {

namespace {

constexpr Step kTruncationStride = 256;

// Unevaluated sum hi + lo (double-double), enough for the O(n) recurrence.
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  static DoubleDouble two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
  }
  DoubleDouble plus(double b) const {
    DoubleDouble s = two_sum(hi, b);
    s.lo += lo;
    return two_sum(s.hi, s.lo);
  }
  DoubleDouble times(double b) const {
    const double p = hi * b;
    const double e = std::fma(hi, b, -p);
    return two_sum(p, e + lo * b);
  }
  double value() const { return hi + lo; }
};

class KahanSum {
 public:
  void add(double x) {
    const double y = x - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// (1 - 1/m)^f, exact zero for m = 1.
double miss_factor(double m, Step f) {
  if (m <= 1.0) return 0.0;
  return std::exp(static_cast<double>(f) * std::log1p(-1.0 / m));
}

struct Target {
  Vertex w;
  std::vector<double> s;  // survive-and-be-at vector, padded to the final order
  double mass = 0.0;
  bool alive = true;
};

double prefix_sum(const std::vector<double>& x, std::size_t m) {
  double acc = 0.0;
  for (std::size_t v = 0; v < m; ++v) acc += x[v];
  return acc;
}

// Advances one target through `steps` substochastic steps of k.
void advance(Target& t, const TransitionKernel& k, Step steps, double truncation,
             std::vector<double>& scratch) {
  if (!t.alive || steps == 0) return;
  const std::size_t m = k.order();
  if (k.implicit_uniform()) {
    // After one step the vector is constant off w; each further step keeps
    // the fraction (m-1)/m.
    const double c = prefix_sum(t.s, m) / static_cast<double>(m);
    const double value = c * miss_factor(static_cast<double>(m), steps - 1);
    std::fill(t.s.begin(), t.s.begin() + static_cast<std::ptrdiff_t>(m), value);
    t.s[t.w] = 0.0;
    t.mass = value * static_cast<double>(m - 1);
  } else {
    scratch.resize(m);
    double* cur = t.s.data();
    double* nxt = scratch.data();
    for (Step j = 1; j <= steps; ++j) {
      k.propagate(std::span<const double>(cur, m), std::span<double>(nxt, m));
      nxt[t.w] = 0.0;
      std::swap(cur, nxt);
      if (j % kTruncationStride == 0 && std::accumulate(cur, cur + m, 0.0) < truncation) break;
    }
    if (cur != t.s.data()) std::copy(cur, cur + m, t.s.data());
    t.mass = prefix_sum(t.s, m);
  }
  if (t.mass < truncation) {
    t.alive = false;
    t.mass = 0.0;
    std::vector<double>().swap(t.s);
  }
}

void advance_occupancy(std::vector<double>& nu, const TransitionKernel& k, Step steps,
                       std::vector<double>& scratch) {
  const std::size_t m = k.order();
  if (k.implicit_uniform()) {
    if (steps > 0) std::fill(nu.begin(), nu.begin() + static_cast<std::ptrdiff_t>(m), 1.0 / static_cast<double>(m));
    return;
  }
  scratch.resize(m);
  for (Step j = 0; j < steps; ++j) {
    k.propagate(std::span<const double>(nu.data(), m), scratch);
    std::copy(scratch.begin(), scratch.end(), nu.begin());
  }
}

Step birth_round(Vertex w, std::size_t n0) {
  return w < n0 ? 1 : static_cast<Step>(w - n0) + 1;
}

void check_cap(const RoundSequence& seq, const ExactOptions& options) {
  if (seq.final_order() > options.dense_cap) {
    throw ResourceError("graph order " + std::to_string(seq.final_order()) +
                        " exceeds the dense cap " + std::to_string(options.dense_cap) +
                        " (use Monte Carlo or raise --dense-cap)");
  }
}

// Targets born at the start of round i, initialised from the occupancy.
void spawn(std::vector<Target>& targets, const RoundSequence& seq, Step i,
           const std::vector<double>& nu) {
  const std::size_t n0 = seq.initial_vertices();
  std::vector<Vertex> born;
  if (i == 1) {
    for (std::size_t w = 0; w < n0; ++w) born.push_back(static_cast<Vertex>(w));
    if (n0 > 0) born.push_back(seq.arrival(1));
  } else {
    born.push_back(seq.arrival(i));
  }
  for (Vertex w : born) {
    Target t{w, nu, 0.0, true};
    t.s[w] = 0.0;
    t.mass = prefix_sum(t.s, seq.order(i));
    targets.push_back(std::move(t));
  }
}

double live_mass(const std::vector<Target>& targets) {
  KahanSum acc;
  for (const auto& t : targets) acc.add(t.mass);
  return acc.value();
}

struct RunOutput {
  ExactResult result;
  std::vector<TrajectoryRow> trajectory;
};

RunOutput run(const ModelSpec& model, Step n, const ExactOptions& options, bool keep_occupancy,
              bool trajectory) {
  RoundSequence seq(model, n);
  check_cap(seq, options);
  const std::size_t final_order = seq.final_order();
  RunOutput out;
  std::vector<Step> bounds = model.schedule.boundaries(n);
  if (trajectory && bounds.back() > options.max_trajectory_steps) {
    throw ResourceError("trajectory of " + std::to_string(bounds.back()) +
                        " steps exceeds the limit " +
                        std::to_string(options.max_trajectory_steps));
  }

  std::vector<double> nu(final_order, 0.0);
  {
    const auto init = seq.initial_distribution();
    std::copy(init.begin(), init.end(), nu.begin());
  }
  std::vector<double> scratch;
  std::vector<Target> targets;
  targets.reserve(final_order);
  out.result.rounds = n;
  out.result.ladder.assign(static_cast<std::size_t>(n), 0.0);

  for (Step i = 1; i <= n; ++i) {
    const TransitionKernel k = seq.kernel(i);
    const std::size_t m = k.order();
    const Step f = seq.duration(i);
    spawn(targets, seq, i, nu);
    if (keep_occupancy) out.result.round_start_occupancy.emplace_back(nu.begin(), nu.begin() + static_cast<std::ptrdiff_t>(m));

    if (trajectory) {
      const Step t0 = bounds[static_cast<std::size_t>(i - 1)];
      out.trajectory.push_back({t0, i, live_mass(targets)});
      for (Step j = 1; j <= f; ++j) {
        for (auto& t : targets) advance(t, k, 1, options.truncation, scratch);
        out.trajectory.push_back({t0 + j, i, live_mass(targets)});
      }
    } else {
      parallel_for(targets.size(), [&](std::size_t idx) {
        std::vector<double> local;
        advance(targets[idx], k, f, options.truncation, local);
      });
    }
    advance_occupancy(nu, k, f, scratch);
    out.result.ladder[static_cast<std::size_t>(i - 1)] = live_mass(targets);
  }

  out.result.expected_unvisited = out.result.ladder.back();
  out.result.miss_probability.assign(final_order, 0.0);
  for (const auto& t : targets) out.result.miss_probability[t.w] = t.mass;
  out.result.final_occupancy.assign(nu.begin(), nu.end());
  return out;
}

}  // namespace

ExactResult exact_expected_unvisited(const ModelSpec& model, Step n, const ExactOptions& options,
                                     bool keep_occupancy) {
  return run(model, n, options, keep_occupancy, false).result;
}

std::vector<TrajectoryRow> exact_trajectory(const ModelSpec& model, Step n,
                                            const ExactOptions& options) {
  return run(model, n, options, false, true).trajectory;
}

std::vector<double> complete_closed_form_ladder(const Schedule& schedule, Step n) {
  if (n < 1) throw RangeError("complete_closed_form: n must be >= 1");
  const std::size_t n0 = schedule.initial_vertices();
  DoubleDouble s{n0 > 0 ? static_cast<double>(n0 - 1) : 0.0, 0.0};
  std::vector<double> out(static_cast<std::size_t>(n));
  for (Step l = 1; l <= n; ++l) {
    const double m = static_cast<double>(schedule.order_in_round(l));
    s = s.plus(1.0).times(miss_factor(m, schedule.duration(l)));
    out[static_cast<std::size_t>(l - 1)] = s.value();
  }
  return out;
}

double complete_closed_form(const Schedule& schedule, Step n) {
  return complete_closed_form_ladder(schedule, n).back();
}

std::string KnCertificate::verdict() const {
  if (!hypothesis_met) return "hypothesis-unmet";
  return holds ? "pass" : "fail";
}

KnCertificate kn_bound(const Schedule& schedule, const std::function<double(Step)>& h, Step n,
                       double delta) {
  if (n < 1) throw RangeError("kn_bound: n must be >= 1");
  if (!(delta > 0.0)) throw ConfigError("kn_bound: delta must be > 0");
  KnCertificate c;
  c.delta = delta;
  DoubleDouble s;
  for (Step i = 1; i <= n; ++i) {
    const double hi = h(i);
    if (!(hi >= 1.0)) throw ConfigError("kn_bound: h(" + std::to_string(i) + ") must be >= 1");
    const Step f = schedule.duration(i);
    if (static_cast<double>(f) < hi / delta * (1.0 - 1e-12) && c.hypothesis_met) {
      c.hypothesis_met = false;
      c.violating_round = i;
    }
    s = s.plus(1.0).times(miss_factor(hi, f));
  }
  c.sum = s.value();
  c.holds = c.sum <= delta * (1.0 + 1e-12);
  return c;
}

BoundRealization realize_bounds(const ModelSpec& model, Step n, const ExactOptions& options) {
  RoundSequence seq(model, n);
  check_cap(seq, options);
  const std::size_t n0 = seq.initial_vertices();
  BoundRealization out;
  out.exact = exact_expected_unvisited(model, n, options).ladder;
  std::vector<double> hit_prod(seq.final_order(), 1.0);
  std::vector<double> mix_prod(seq.final_order(), 1.0);
  for (Step i = 1; i <= n; ++i) {
    const TransitionKernel k = seq.kernel(i);
    const std::size_t m = k.order();
    const Step f = seq.duration(i);
    const Step two_mix = 2 * mixing_time(k).steps;
    const Step s = f > two_mix ? two_mix : 0;
    out.split.push_back(s);
    const Vertex first = n0 == 0 ? 1 : 0;
    parallel_for(m - first, [&](std::size_t idx) {
      const auto w = static_cast<Vertex>(idx + first);
      const auto h = survival_probabilities(k, w, f);
      hit_prod[w] *= *std::max_element(h.begin(), h.end());
      std::vector<double> g = survival_probabilities(k, w, f - s);
      std::vector<double> tmp(m);
      for (Step j = 0; j < s; ++j) {
        k.apply(g, tmp);
        g.swap(tmp);
      }
      mix_prod[w] *= *std::max_element(g.begin(), g.end());
    });
    KahanSum hit;
    KahanSum mix;
    for (Vertex w = first; w < m; ++w) {
      if (birth_round(w, n0) > i) continue;
      hit.add(hit_prod[w]);
      mix.add(mix_prod[w]);
    }
    out.hit_bound.push_back(hit.value());
    out.mix_hit_bound.push_back(mix.value());
  }
  return out;
}

std::vector<L2AuditRow> l2_recurrence_audit(const ModelSpec& model, Step n,
                                            const ExactOptions& options) {
  RoundSequence seq(model, n);
  check_cap(seq, options);
  std::vector<double> nu(seq.final_order(), 0.0);
  {
    const auto init = seq.initial_distribution();
    std::copy(init.begin(), init.end(), nu.begin());
  }
  std::vector<double> scratch;
  std::vector<L2AuditRow> rows;
  double x_prev = 0.0;
  TransitionKernel prev = seq.kernel(1);
  for (Step i = 1; i <= n; ++i) {
    TransitionKernel k = i == 1 ? prev : seq.kernel(i);
    const std::size_t m = k.order();
    const Step f = seq.duration(i);
    advance_occupancy(nu, k, f, scratch);
    const double x = pi_norm_sq(std::span<const double>(nu.data(), m), k.stationary());
    if (i >= 2) {
      const double r = pi_ratio(prev, k);
      const double lam = lambda2(k);
      const double decay = lam > 0.0 ? std::exp(2.0 * static_cast<double>(f) * std::log(lam)) : 0.0;
      rows.push_back({i, x, r * decay * x_prev + (r - 1.0) * decay, r, lam});
    }
    x_prev = x;
    prev = std::move(k);
  }
  return rows;
}

}  // namespace growwalk
