#include "growwalk/theorem_suite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>

#include "growwalk/errors.hpp"
#include "growwalk/parallel.hpp"

namespace growwalk {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kSlack = 1e-12;
constexpr double kSlopeTolerance = 0.15;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

double param(double given, double fallback) { return given > 0.0 ? given : fallback; }
double gamma_param(double given, double fallback) { return given >= 0.0 ? given : fallback; }

std::vector<Step> resolve_ladder(const TheoremCase& c, std::vector<Step> fallback) {
  std::vector<Step> ladder = c.ladder.empty() ? std::move(fallback) : c.ladder;
  for (Step n : ladder) {
    if (n < 1) throw ConfigError("ladder values must be >= 1");
  }
  std::sort(ladder.begin(), ladder.end());
  ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
  return ladder;
}

FamilySpec family_spec(Family f, const TheoremCase& c) {
  FamilySpec s;
  s.tag = f;
  s.expander_degree = c.expander_degree;
  s.graph_seed = c.graph_seed;
  return s;
}

// Cases whose statement fixes the graph and walk reject overrides.
void require_setting(const TheoremCase& c, Family family, WalkTag walk) {
  if (c.family && *c.family != family) {
    throw ConfigError(c.id + " is stated for the " + std::string(to_string(family)) + " family");
  }
  if (c.walk && c.walk->tag != walk) {
    throw ConfigError(c.id + " is stated for the " + std::string(to_string(walk)) + " walk");
  }
}

ModelSpec resolve_model(const TheoremCase& c, Family family, WalkSpec walk, Schedule schedule) {
  const Family f = c.family.value_or(family);
  WalkSpec w = c.walk ? *c.walk : (c.family ? default_walk(f) : walk);
  return ModelSpec{std::move(schedule), family_spec(f, c), w};
}

bool closed_form_applies(const ModelSpec& m) {
  return m.family.tag == Family::complete && m.walk.tag == WalkTag::uniform_complete;
}

struct Evaluation {
  std::vector<ScalingPoint> points;
  std::string engine;
};

Evaluation evaluate(const ModelSpec& model, const std::vector<Step>& ladder, Engine engine,
                    std::size_t trials, std::uint64_t seed, const ExactOptions& options) {
  if (ladder.empty()) throw ConfigError("empty ladder");
  const Step top = ladder.back();
  const bool closed = closed_form_applies(model);
  Engine chosen = engine;
  if (chosen == Engine::automatic) {
    chosen = closed || model.schedule.order_in_round(top) <= options.dense_cap ? Engine::exact
                                                                               : Engine::mc;
  }
  std::vector<double> mean;
  std::vector<double> half(static_cast<std::size_t>(top), 0.0);
  Evaluation out;
  if (chosen == Engine::exact) {
    if (closed) {
      mean = complete_closed_form_ladder(model.schedule, top);
      out.engine = "closed-form";
    } else {
      mean = exact_expected_unvisited(model, top, options).ladder;
      out.engine = "exact";
    }
  } else {
    const UnvisitedEstimate est = estimate_unvisited(SimulationPlan{model, top, trials, seed, false});
    for (std::size_t m = 0; m < est.ladder.size(); ++m) {
      mean.push_back(est.ladder[m].mean);
      half[m] = est.ladder[m].half_width;
    }
    out.engine = "monte-carlo trials=" + std::to_string(trials) + " seed=" + std::to_string(seed);
  }
  for (Step n : ladder) {
    const auto idx = static_cast<std::size_t>(n - 1);
    out.points.push_back({n, mean[idx], half[idx]});
  }
  return out;
}

void add_row(Certificate& cert, Step n, std::string label, double measured, double lower,
             double upper, std::string relation, bool diagnostic = false) {
  CertificateRow row{n, std::move(label), measured, lower, upper, std::move(relation), true,
                     diagnostic};
  const double lo_slack = kSlack * std::max(1.0, std::abs(lower));
  const double up_slack = kSlack * std::max(1.0, std::abs(upper));
  if (row.relation == "<=") {
    row.pass = measured <= upper + up_slack;
  } else if (row.relation == ">=") {
    row.pass = measured >= lower - lo_slack;
  } else if (row.relation == "in" || row.relation == "within") {
    row.pass = measured >= lower - lo_slack && measured <= upper + up_slack;
  }
  cert.rows.push_back(std::move(row));
}

void add_info(Certificate& cert, Step n, std::string label, double measured) {
  cert.rows.push_back({n, std::move(label), measured, kNaN, kNaN, "info", true, true});
}

Certificate finish(Certificate cert) {
  if (!cert.violated.empty()) {
    cert.verdict = Verdict::inapplicable;
    return cert;
  }
  const bool ok = std::all_of(cert.rows.begin(), cert.rows.end(),
                              [](const CertificateRow& r) { return r.diagnostic || r.pass; });
  cert.verdict = ok ? Verdict::pass : Verdict::fail;
  return cert;
}

Certificate inapplicable(Certificate cert, std::string violated) {
  cert.audit.push_back("violated: " + violated);
  cert.violated = std::move(violated);
  return finish(std::move(cert));
}

// Checks f(i) >= need(i) (or <= when `at_most`) for from <= i <= n.
bool audit_duration(Certificate& cert, const Schedule& s, Step from, Step n,
                    const std::function<double(Step)>& need, const std::string& inequality,
                    bool at_most = false) {
  double margin = std::numeric_limits<double>::infinity();
  for (Step i = std::max<Step>(from, 1); i <= n; ++i) {
    const double f = static_cast<double>(s.duration(i));
    const double req = need(i);
    const double gap = at_most ? req - f : f - req;
    if (gap < -kSlack * std::max(1.0, std::abs(req))) {
      cert.violated = inequality + " at i=" + std::to_string(i) + " (f=" + fmt(f) +
                      ", bound=" + fmt(req) + ")";
      cert.audit.push_back("violated: " + cert.violated);
      return false;
    }
    margin = std::min(margin, gap);
  }
  cert.audit.push_back(inequality + " holds for " + std::to_string(std::max<Step>(from, 1)) +
                       " <= i <= " + std::to_string(n) + " (min slack " + fmt(margin) + ")");
  return true;
}

bool audit_flags(Certificate& cert, const RoundProfile& p, Step n, bool lazy, bool reversible,
                 bool symmetric) {
  for (Step i = 2; i <= n; ++i) {
    const auto k = static_cast<std::size_t>(i - 1);
    const char* missing = nullptr;
    if (lazy && !p.lazy[k]) missing = "lazy";
    else if (reversible && !p.reversible[k]) missing = "reversible";
    else if (symmetric && !p.symmetric[k]) missing = "symmetric";
    if (missing) {
      cert.violated = std::string("P(i) ") + missing + " at i=" + std::to_string(i);
      cert.audit.push_back("violated: " + cert.violated);
      return false;
    }
  }
  std::string what;
  if (lazy) what += " lazy";
  if (reversible) what += " reversible";
  if (symmetric) what += " symmetric";
  cert.audit.push_back("P(i)" + what + " for 1 < i <= " + std::to_string(n));
  return true;
}

Schedule table_from(const std::vector<double>& need, std::size_t n0) {
  std::vector<Step> f;
  f.reserve(need.size());
  for (double x : need) f.push_back(std::max<Step>(1, ceil_duration(x)));
  return Schedule::table(std::move(f)).with_initial_vertices(n0);
}

double at(const std::vector<double>& v, Step i) { return v[static_cast<std::size_t>(i - 1)]; }

// L = max over 2 < i <= n of i (|E_i| / |E_{i-1}| - 1).
double edge_growth(const RoundProfile& p, Step n) {
  double L = 0.0;
  for (Step i = 3; i <= n; ++i) {
    const auto prev = static_cast<double>(p.edges[static_cast<std::size_t>(i - 2)]);
    const auto cur = static_cast<double>(p.edges[static_cast<std::size_t>(i - 1)]);
    if (prev > 0.0) L = std::max(L, static_cast<double>(i) * (cur / prev - 1.0));
  }
  return L;
}

void record_points(Certificate& cert, const Evaluation& e) {
  cert.setting += ";engine=" + e.engine;
}

// ---------------------------------------------------------------------------
// Complete graphs with the uniform walk
// ---------------------------------------------------------------------------

Certificate complete_linear(const TheoremCase& c) {
  require_setting(c, Family::complete, WalkTag::uniform_complete);
  const double C = param(c.C, 1.0);
  const auto ladder = resolve_ladder(c, {10, 100, 1000, 2000});
  Certificate cert{c.id, "", {}, {}, Verdict::pass, ""};
  const Schedule s = c.schedule.value_or(Schedule::linear(C));
  const ModelSpec model = resolve_model(c, Family::complete, {WalkTag::uniform_complete}, s);
  cert.setting = model.describe() + ";C=" + fmt(C);
  if (!audit_duration(cert, s, 1, ladder.back(), [&](Step i) { return C * double(i); },
                      "f(i) >= C i"))
    return finish(cert);
  const double bound = 1.0 / std::expm1(C);
  cert.audit.push_back("bound 1/(e^C - 1) = " + fmt(bound));
  const Evaluation e = evaluate(model, ladder, c.engine, c.trials, c.seed, c.exact);
  record_points(cert, e);
  for (const auto& p : e.points) add_row(cert, p.n, "E[U]", p.expected_unvisited, kNaN, bound, "<=");
  return finish(cert);
}

// Finite proxy for E[U] -> 0: nonincreasing along the ladder, final value below delta.
void trend_rows(Certificate& cert, const Evaluation& e, double delta) {
  for (std::size_t j = 0; j < e.points.size(); ++j) {
    const auto& p = e.points[j];
    if (j > 0) {
      add_row(cert, p.n, "E[U] nonincreasing", p.expected_unvisited, kNaN,
              e.points[j - 1].expected_unvisited, "<=");
    } else {
      add_info(cert, p.n, "E[U]", p.expected_unvisited);
    }
  }
  add_row(cert, e.points.back().n, "E[U] final below proxy delta",
          e.points.back().expected_unvisited, kNaN, delta, "<=");
}

// The ratio f(i)/g(i) must grow along the ladder for a divergence proxy.
bool audit_divergence(Certificate& cert, const std::vector<Step>& ladder,
                      const std::function<double(Step)>& ratio, const std::string& what) {
  if (ladder.size() < 2) {
    cert.violated = "ladder needs at least two points for the trend proxy";
    cert.audit.push_back("violated: " + cert.violated);
    return false;
  }
  for (std::size_t j = 1; j < ladder.size(); ++j) {
    if (!(ratio(ladder[j]) > ratio(ladder[j - 1]))) {
      cert.violated = what + " -> infinity (proxy: strictly increasing along the ladder) fails at n=" +
                      std::to_string(ladder[j]);
      cert.audit.push_back("violated: " + cert.violated);
      return false;
    }
  }
  cert.audit.push_back(what + " strictly increasing along the ladder");
  return true;
}

Certificate complete_superlinear(const TheoremCase& c) {
  require_setting(c, Family::complete, WalkTag::uniform_complete);
  const double C = param(c.C, 1.0);
  const auto ladder = resolve_ladder(c, {10, 100, 1000, 2000});
  Certificate cert{c.id, "", {}, {}, Verdict::pass, ""};
  const Schedule s = c.schedule.value_or(Schedule::power(C, 1.5));
  const ModelSpec model = resolve_model(c, Family::complete, {WalkTag::uniform_complete}, s);
  cert.setting = model.describe() + ";delta=" + fmt(c.proxy_delta);
  if (!audit_divergence(cert, ladder,
                        [&](Step n) { return double(s.duration(n)) / double(n); }, "f(n)/n"))
    return finish(cert);
  const Evaluation e = evaluate(model, ladder, c.engine, c.trials, c.seed, c.exact);
  record_points(cert, e);
  trend_rows(cert, e, c.proxy_delta);
  return finish(cert);
}

Certificate complete_sublinear(const TheoremCase& c) {
  require_setting(c, Family::complete, WalkTag::uniform_complete);
  const auto ladder = resolve_ladder(c, {100, 1000, 2000});
  Certificate cert{c.id, "", {}, {}, Verdict::pass, ""};
  const Schedule s = c.schedule.value_or(Schedule::linear(1.0));
  const ModelSpec model = resolve_model(c, Family::complete, {WalkTag::uniform_complete}, s);
  cert.setting = model.describe();
  const Step top = ladder.back();
  for (Step i = 1; i < top; ++i) {
    const double a = double(s.duration(i)), b = double(s.duration(i + 1));
    if (a / double(i) < b / double(i + 1)) {
      return inapplicable(cert, "f(i)/i >= f(i+1)/(i+1) at i=" + std::to_string(i));
    }
    if (a > b) return inapplicable(cert, "f(i) <= f(i+1) at i=" + std::to_string(i));
  }
  cert.audit.push_back("f(i)/i nonincreasing and f(i) nondecreasing for 1 <= i < " +
                       std::to_string(top));
  const Evaluation e = evaluate(model, ladder, c.engine, c.trials, c.seed, c.exact);
  record_points(cert, e);
  for (const auto& p : e.points) {
    const double n = double(p.n);
    const double fn = double(s.duration(p.n));
    const double lower = n / (fn + 1.0) * std::pow(1.0 - 1.0 / n, fn);
    add_row(cert, p.n, "E[U]", p.expected_unvisited, lower, n / fn, "in");
  }
  return finish(cert);
}

Certificate complete_constant(const TheoremCase& c) {
  require_setting(c, Family::complete, WalkTag::uniform_complete);
  if (c.c < 1) throw ConfigError("c must be >= 1");
  const auto ladder = resolve_ladder(c, {100, 1000, 2000});
  Certificate cert{c.id, "", {}, {}, Verdict::pass, ""};
  const Schedule s = Schedule::constant(c.c);
  const ModelSpec model = resolve_model(c, Family::complete, {WalkTag::uniform_complete}, s);
  cert.setting = model.describe() + ";c=" + std::to_string(c.c);
  const Evaluation e = evaluate(model, ladder, c.engine, c.trials, c.seed, c.exact);
  record_points(cert, e);
  const double cc = double(c.c);
  for (const auto& p : e.points) {
    const double n = double(p.n);
    add_row(cert, p.n, "E[U] (c+1)/n", p.expected_unvisited * (cc + 1.0) / n,
            1.0 - (cc + 2.0) / n, 1.0, "in");
  }
  return finish(cert);
}

Certificate simple_kn(const TheoremCase& c) {
  require_setting(c, Family::complete, WalkTag::uniform_complete);
  const double C = param(c.C, 1.0);
  const double gamma = gamma_param(c.gamma, 0.5);
  if (gamma > 1.0) throw ConfigError("gamma must lie in [0, 1]");
  const auto ladder = resolve_ladder(c, {10, 100, 1000, 2000});
  const double e = 1.0 - gamma;
  Certificate cert{c.id, "", {}, {}, Verdict::pass, ""};
  const Schedule upper = Schedule::power(C, e);
  const Schedule lower = Schedule::function(
      "floor(" + fmt(C) + " i^" + fmt(e) + ")", [C, e](Step i) {
        return std::max<Step>(1, static_cast<Step>(std::floor(C * std::pow(double(i), e) + 1e-9)));
      });
  const ModelSpec up_model = resolve_model(c, Family::complete, {WalkTag::uniform_complete}, upper);
  const ModelSpec lo_model = resolve_model(c, Family::complete, {WalkTag::uniform_complete}, lower);
  cert.setting = "upper:" + up_model.describe() + ";lower:" + lo_model.describe();
  const Step top = ladder.back();
  auto need = [&](Step i) { return C * std::pow(double(i), e); };
  if (!audit_duration(cert, upper, 1, top, need, "upper schedule f(i) >= C i^(1-gamma)"))
    return finish(cert);
  if (!audit_duration(cert, lower, 1, top, need, "lower schedule f(i) <= C i^(1-gamma)", true))
    return finish(cert);
  const Evaluation eu = evaluate(up_model, ladder, c.engine, c.trials, c.seed, c.exact);
  const Evaluation el = evaluate(lo_model, ladder, c.engine, c.trials, c.seed, c.exact);
  record_points(cert, eu);
  for (std::size_t j = 0; j < ladder.size(); ++j) {
    const double n = double(ladder[j]);
    add_row(cert, ladder[j], "E[U] upper schedule", eu.points[j].expected_unvisited, kNaN,
            std::pow(n, gamma) / C, "<=");
    const double lb = std::pow(n, gamma) / (C + std::pow(n, gamma - 1.0)) *
                      std::pow(1.0 - 1.0 / n, C * std::pow(n, e));
    add_row(cert, ladder[j], "E[U] lower schedule", el.points[j].expected_unvisited, lb, kNaN, ">=");
  }
  return finish(cert);
}

Certificate initial_clique(const TheoremCase& c) {
  require_setting(c, Family::complete, WalkTag::uniform_complete);
  const double delta = c.delta;
  if (!(delta > 0.0)) throw ConfigError("Delta must be positive");
  const auto ladder = resolve_ladder(c, {50, 200});
  Certificate cert{c.id, "", {}, {}, Verdict::pass, ""};
  const Schedule s =
      c.schedule.value_or(Schedule::linear(2.0 / delta)).with_initial_vertices(c.n0);
  const ModelSpec model = resolve_model(c, Family::complete, {WalkTag::uniform_complete}, s);
  cert.setting = model.describe() + ";n0=" + std::to_string(c.n0) + ";Delta=" + fmt(delta);
  if (!audit_duration(cert, s, 1, ladder.back(), [&](Step i) { return 2.0 * double(i) / delta; },
                      "f(i) >= 2i/Delta"))
    return finish(cert);
  const Evaluation e = evaluate(model, ladder, c.engine, c.trials, c.seed, c.exact);
  record_points(cert, e);
  const double bound = 2.0 * double(c.n0) + delta;
  for (const auto& p : e.points) add_row(cert, p.n, "E[U(n)]", p.expected_unvisited, kNaN, bound, "<=");
  return finish(cert);
}

// ---------------------------------------------------------------------------
// Hitting-time schedules on general graphs
// ---------------------------------------------------------------------------

struct Measured {
  ModelSpec model;
  RoundProfile profile;
};

Measured measure(const TheoremCase& c, Family family, WalkSpec walk, Step n, bool mixing,
                 bool lambda) {
  ModelSpec probe = resolve_model(c, family, walk, Schedule::constant(1));
  RoundProfile p = profile_rounds(probe, n, mixing, lambda);
  return {std::move(probe), std::move(p)};
}

std::vector<double> thit_multiple(const RoundProfile& p, const std::function<double(Step)>& factor) {
  std::vector<double> need(p.t_hit.size());
  for (std::size_t k = 0; k < need.size(); ++k) {
    need[k] = factor(static_cast<Step>(k + 1)) * p.t_hit[k];
  }
  return need;
}

Certificate hitting_constant(const TheoremCase& c) {
  const double C = param(c.C, 2.0);
  const auto ladder = resolve_ladder(c, {8, 16, 32, 64});
  Certificate cert{c.id, "", {}, {}, Verdict::pass, ""};
  auto m = measure(c, Family::path, {WalkTag::lazy_simple}, ladder.back(), false, false);
  if (!(C > 1.0)) {
    cert.setting = m.model.describe();
    return inapplicable(cert, "C > 1 (C=" + fmt(C) + ")");
  }
  const std::vector<double> need = thit_multiple(m.profile, [&](Step) { return C; });
  m.model.schedule = c.schedule.value_or(table_from(need, 0));
  cert.setting = m.model.describe() + ";C=" + fmt(C);
  if (!audit_duration(cert, m.model.schedule, 1, ladder.back(), [&](Step i) { return at(need, i); },
                      "f(i) >= C t_hit(i)"))
    return finish(cert);
  const double bound = 1.0 / (C - 1.0);
  const Evaluation e = evaluate(m.model, ladder, c.engine, c.trials, c.seed, c.exact);
  record_points(cert, e);
  for (const auto& p : e.points) add_row(cert, p.n, "E[U]", p.expected_unvisited, kNaN, bound, "<=");
  return finish(cert);
}

Certificate hitting_divergent(const TheoremCase& c) {
  const auto ladder = resolve_ladder(c, {8, 16, 32, 64});
  Certificate cert{c.id, "", {}, {}, Verdict::pass, ""};
  auto m = measure(c, Family::path, {WalkTag::lazy_simple}, ladder.back(), false, false);
  const std::vector<double> need =
      thit_multiple(m.profile, [](Step i) { return 2.0 * (1.0 + std::log(double(i))); });
  m.model.schedule = c.schedule.value_or(table_from(need, 0));
  cert.setting = m.model.describe() + ";delta=" + fmt(c.proxy_delta);
  const auto& s = m.model.schedule;
  if (!audit_divergence(cert, ladder,
                        [&](Step n) { return double(s.duration(n)) / at(m.profile.t_hit, n); },
                        "f(n)/t_hit(n)"))
    return finish(cert);
  const Evaluation e = evaluate(m.model, ladder, c.engine, c.trials, c.seed, c.exact);
  record_points(cert, e);
  trend_rows(cert, e, c.proxy_delta);
  return finish(cert);
}

Certificate rapid_mixing(const TheoremCase& c) {
  const double C = param(c.C, 1.0);
  const double gamma = gamma_param(c.gamma, 0.5);
  if (gamma > 1.0) throw ConfigError("gamma must lie in [0, 1]");
  const auto ladder = resolve_ladder(c, {10, 20, 50, 100});
  const Step top = ladder.back();
  Certificate cert{c.id, "", {}, {}, Verdict::pass, ""};
  auto m = measure(c, Family::complete, {WalkTag::lazy_simple}, top, true, false);
  const auto& p = m.profile;
  const std::vector<double> need =
      thit_multiple(p, [&](Step i) { return 3.0 * C / std::pow(double(i), gamma); });
  m.model.schedule = c.schedule.value_or(table_from(need, 0));
  cert.setting = m.model.describe() + ";C=" + fmt(C) + ";gamma=" + fmt(gamma);
  if (!audit_flags(cert, p, top, true, true, false)) return finish(cert);
  for (Step i = 2; i <= top; ++i) {
    const double ratio = at(p.t_hit, i) / double(p.t_mix[static_cast<std::size_t>(i - 1)]);
    const double req = std::pow(double(i), gamma) / C;
    if (ratio < req) {
      return inapplicable(cert, "t_hit(i)/t_mix(i) >= i^gamma/C at i=" + std::to_string(i) +
                                    " (" + fmt(ratio) + " < " + fmt(req) + ")");
    }
  }
  cert.audit.push_back("t_hit(i)/t_mix(i) >= i^gamma/C for 1 < i <= " + std::to_string(top));
  if (!audit_duration(cert, m.model.schedule, 2, top, [&](Step i) { return at(need, i); },
                      "f(i) >= 3C t_hit(i)/i^gamma"))
    return finish(cert);
  const Evaluation e = evaluate(m.model, ladder, c.engine, c.trials, c.seed, c.exact);
  record_points(cert, e);
  for (const auto& pt : e.points) {
    add_row(cert, pt.n, "E[U]", pt.expected_unvisited, kNaN,
            8.0 * std::pow(double(pt.n), gamma) / C + 32.0, "<=");
  }
  return finish(cert);
}

Certificate rapid_mixing_general(const TheoremCase& c) {
  const double delta = c.delta;
  if (!(delta > 0.0)) throw ConfigError("Delta must be positive");
  const auto ladder = resolve_ladder(c, {10, 20, 50, 100});
  const Step top = ladder.back();
  Certificate cert{c.id, "", {}, {}, Verdict::pass, ""};
  auto m = measure(c, Family::complete, {WalkTag::lazy_simple}, top, true, false);
  const auto& p = m.profile;
  std::vector<double> need(p.t_hit.size());
  for (std::size_t k = 0; k < need.size(); ++k) {
    need[k] = p.t_hit[k] / delta + 2.0 * double(p.t_mix[k]);
  }
  m.model.schedule = c.schedule.value_or(table_from(need, 0));
  cert.setting = m.model.describe() + ";Delta=" + fmt(delta);
  if (!audit_flags(cert, p, top, true, true, false)) return finish(cert);
  if (!audit_duration(cert, m.model.schedule, 1, top, [&](Step i) { return at(need, i); },
                      "f(i) >= t_hit(i)/Delta + 2 t_mix(i)"))
    return finish(cert);
  const Evaluation e = evaluate(m.model, ladder, c.engine, c.trials, c.seed, c.exact);
  record_points(cert, e);
  for (const auto& pt : e.points) {
    add_row(cert, pt.n, "E[U]", pt.expected_unvisited, kNaN, 8.0 * delta + 32.0, "<=");
  }
  return finish(cert);
}

bool is_simple_lazy(const WalkSpec& w) {
  return w.tag == WalkTag::lazy_simple ||
         (w.tag == WalkTag::path_chain && w.p == 0.5 && w.q == 0.25);
}

Certificate simple_lazy(const TheoremCase& c) {
  const double C = param(c.C, 1.0);
  const double gamma = gamma_param(c.gamma, 0.5);
  if (gamma > 1.0) throw ConfigError("gamma must lie in [0, 1]");
  const auto ladder = resolve_ladder(c, {8, 12, 16, 24});
  const Step top = ladder.back();
  Certificate cert{c.id, "", {}, {}, Verdict::pass, ""};
  auto m = measure(c, Family::lollipop, {WalkTag::lazy_simple}, top, false, false);
  const auto& p = m.profile;
  const double L = edge_growth(p, top);
  const std::vector<double> need = thit_multiple(p, [&](Step i) {
    return C / std::pow(double(i), gamma) + (L + 1.0) / (2.0 * double(i));
  });
  m.model.schedule = c.schedule.value_or(table_from(need, 0));
  cert.setting = m.model.describe() + ";C=" + fmt(C) + ";gamma=" + fmt(gamma) + ";L=" + fmt(L);
  if (!is_simple_lazy(m.model.walk)) return inapplicable(cert, "P(i) lazy and simple");
  cert.audit.push_back("P(i) lazy simple walk");
  cert.audit.push_back("measured L = max i(|E_i|/|E_{i-1}| - 1) over 2 < i <= " +
                       std::to_string(top) + " = " + fmt(L));
  if (!audit_duration(cert, m.model.schedule, 2, top, [&](Step i) { return at(need, i); },
                      "f(i) >= (C/i^gamma + (L+1)/(2i)) t_hit(i)"))
    return finish(cert);
  const Evaluation e = evaluate(m.model, ladder, c.engine, c.trials, c.seed, c.exact);
  record_points(cert, e);
  for (const auto& pt : e.points) {
    add_row(cert, pt.n, "E[U]", pt.expected_unvisited, kNaN,
            std::sqrt(L + 1.0) * std::pow(double(pt.n), gamma) / C, "<=");
  }
  return finish(cert);
}

Certificate lollipop_power(const TheoremCase& c) {
  const double C1 = param(c.C, 1.0);
  const double gamma = gamma_param(c.gamma, 0.5);
  if (gamma > 1.0) throw ConfigError("gamma must lie in [0, 1]");
  const auto ladder = resolve_ladder(c, {8, 12, 16, 24});
  const Step top = ladder.back();
  Certificate cert{c.id, "", {}, {}, Verdict::pass, ""};
  auto m = measure(c, Family::lollipop, {WalkTag::lazy_simple}, top, false, false);
  const auto& p = m.profile;
  m.model.schedule = c.schedule.value_or(Schedule::power(C1, 3.0 - gamma));
  const double L = edge_growth(p, top);
  cert.setting = m.model.describe() + ";C1=" + fmt(C1) + ";gamma=" + fmt(gamma) + ";L=" + fmt(L);
  if (!is_simple_lazy(m.model.walk)) return inapplicable(cert, "P(i) lazy and simple");
  // Largest C for which the simple-lazy hypothesis holds with the measured t_hit and L.
  double c_eff = std::numeric_limits<double>::infinity();
  for (Step i = 2; i <= top; ++i) {
    const double f = double(m.model.schedule.duration(i));
    const double th = at(p.t_hit, i);
    c_eff = std::min(c_eff, (f / th - (L + 1.0) / (2.0 * double(i))) * std::pow(double(i), gamma));
  }
  cert.audit.push_back("C_eff = min over 1 < i <= n of (f(i)/t_hit(i) - (L+1)/(2i)) i^gamma = " +
                       fmt(c_eff));
  if (!(c_eff > 0.0)) return inapplicable(cert, "C_eff > 0 (C_eff=" + fmt(c_eff) + ")");
  const Evaluation e = evaluate(m.model, ladder, c.engine, c.trials, c.seed, c.exact);
  record_points(cert, e);
  for (const auto& pt : e.points) {
    add_row(cert, pt.n, "E[U]", pt.expected_unvisited, kNaN,
            std::sqrt(L + 1.0) * std::pow(double(pt.n), gamma) / c_eff, "<=");
  }
  return finish(cert);
}

Certificate symmetric_case(const TheoremCase& c, Family family, std::vector<Step> ladder_default) {
  const double C = param(c.C, 1.0);
  const double gamma = gamma_param(c.gamma, 0.5);
  if (gamma > 1.0) throw ConfigError("gamma must lie in [0, 1]");
  const auto ladder = resolve_ladder(c, std::move(ladder_default));
  const Step top = ladder.back();
  Certificate cert{c.id, "", {}, {}, Verdict::pass, ""};
  auto m = measure(c, family, {WalkTag::lazy_metropolis}, top, false, false);
  const auto& p = m.profile;
  const std::vector<double> need = thit_multiple(
      p, [&](Step i) { return C / std::pow(double(i), gamma) + 2.0 / double(i); });
  m.model.schedule = c.schedule.value_or(table_from(need, 0));
  cert.setting = m.model.describe() + ";C=" + fmt(C) + ";gamma=" + fmt(gamma);
  if (!audit_flags(cert, p, top, true, false, true)) return finish(cert);
  if (!audit_duration(cert, m.model.schedule, 2, top, [&](Step i) { return at(need, i); },
                      "f(i) >= (C/i^gamma + 2/i) t_hit(i)"))
    return finish(cert);
  const Evaluation e = evaluate(m.model, ladder, c.engine, c.trials, c.seed, c.exact);
  record_points(cert, e);
  for (const auto& pt : e.points) {
    add_row(cert, pt.n, "E[U]", pt.expected_unvisited, kNaN,
            std::sqrt(3.0) * std::pow(double(pt.n), gamma) / C, "<=");
  }
  return finish(cert);
}

Certificate moderate(const TheoremCase& c) {
  const double delta = c.delta;
  if (!(delta > 0.0)) throw ConfigError("Delta must be positive");
  const auto ladder = resolve_ladder(c, {16, 32, 64});
  const Step top = ladder.back();
  Certificate cert{c.id, "", {}, {}, Verdict::pass, ""};
  auto m = measure(c, Family::expander_like, {WalkTag::lazy_simple}, top, false, false);
  const auto& p = m.profile;
  auto rho = [&](Step i) { return double(i) * (at(p.r, i) - 1.0) + 1.0; };
  const std::vector<double> need =
      thit_multiple(p, [&](Step i) { return 1.0 / delta + rho(i) / (2.0 * double(i)); });
  m.model.schedule = c.schedule.value_or(table_from(need, 0));
  cert.setting = m.model.describe() + ";Delta=" + fmt(delta);
  if (!audit_flags(cert, p, top, true, true, false)) return finish(cert);
  if (!audit_duration(cert, m.model.schedule, 1, top, [&](Step i) { return at(need, i); },
                      "f(i) >= (1/Delta + (i(r_i-1)+1)/(2i)) t_hit(i)"))
    return finish(cert);
  const Evaluation e = evaluate(m.model, ladder, c.engine, c.trials, c.seed, c.exact);
  record_points(cert, e);
  for (const auto& pt : e.points) {
    double worst = 1.0;
    for (Step i = 2; i <= pt.n; ++i) worst = std::max(worst, rho(i));
    add_row(cert, pt.n, "E[U]", pt.expected_unvisited, kNaN, delta * std::sqrt(worst), "<=");
  }
  return finish(cert);
}

Certificate expander(const TheoremCase& c) {
  const double C = param(c.C, 1.0);
  const double gamma = gamma_param(c.gamma, 0.5);
  if (gamma > 1.0) throw ConfigError("gamma must lie in [0, 1]");
  const auto ladder = resolve_ladder(c, {16, 32, 64, 128});
  const Step top = ladder.back();
  Certificate cert{c.id, "", {}, {}, Verdict::pass, ""};
  auto m = measure(c, Family::expander_like, {WalkTag::lazy_simple}, top, true, true);
  const auto& p = m.profile;
  double K1 = 0.0, K2 = 0.0;
  for (Step i = 1; i <= top; ++i) {
    K1 = std::max(K1, at(p.t_hit, i) / double(i));
    if (i >= 2) {
      K2 = std::max(K2, 2.0 * double(p.t_mix[static_cast<std::size_t>(i - 1)]) / std::log(double(i)));
    }
  }
  const double e = 1.0 - gamma;
  m.model.schedule = c.schedule.value_or(Schedule::function(
      fmt(C * K1) + " i^" + fmt(e) + " + " + fmt(K2) + " log i",
      [C, K1, K2, e](Step i) {
        return ceil_duration(C * K1 * std::pow(double(i), e) + K2 * std::log(double(i)));
      }));
  cert.setting = m.model.describe() + ";C=" + fmt(C) + ";gamma=" + fmt(gamma);
  cert.audit.push_back("K1 = max t_hit(i)/i = " + fmt(K1) + "; K2 = max 2 t_mix(i)/log i = " + fmt(K2));
  if (!audit_flags(cert, p, top, true, true, false)) return finish(cert);
  for (Step n : ladder) {
    const double Delta = std::pow(double(n), gamma) / C;
    if (!audit_duration(cert, m.model.schedule, 1, n,
                        [&](Step i) {
                          return at(p.t_hit, i) / Delta +
                                 2.0 * double(p.t_mix[static_cast<std::size_t>(i - 1)]);
                        },
                        "f(i) >= t_hit(i)/(n^gamma/C) + 2 t_mix(i) [n=" + std::to_string(n) + "]"))
      return finish(cert);
  }
  const Evaluation ev = evaluate(m.model, ladder, c.engine, c.trials, c.seed, c.exact);
  record_points(cert, ev);
  for (const auto& pt : ev.points) {
    add_row(cert, pt.n, "E[U]", pt.expected_unvisited, kNaN,
            8.0 * std::pow(double(pt.n), gamma) / C + 32.0, "<=");
  }
  RoundSequence seq(m.model, top);
  const GraphSnapshot g = seq.snapshot(top);
  add_info(cert, top, "1/(1-lambda2)", 1.0 / (1.0 - at(p.lambda2, top)));
  add_info(cert, top, "d_ave/d_min", g.average_degree() / double(g.min_degree()));
  return finish(cert);
}

// ---------------------------------------------------------------------------
// Growing path lower bound and scaling
// ---------------------------------------------------------------------------

Certificate path_lower(const TheoremCase& c) {
  const double C = param(c.C, 1.0);
  const double gamma = gamma_param(c.gamma, 1.0);
  if (gamma > 1.0) throw ConfigError("gamma must lie in [0, 1]");
  const auto ladder = resolve_ladder(c, {100});
  if (c.family && *c.family != Family::path) throw ConfigError(c.id + " is stated for the path family");
  const WalkSpec walk = c.walk.value_or(WalkSpec{});
  if (c.schedule) throw ConfigError(c.id + " fixes f(i) = ceil(C i^(2-gamma))");
  Certificate cert{c.id, "", {}, {}, Verdict::pass, ""};
  const Schedule s = Schedule::power(C, 2.0 - gamma);
  cert.setting = "family=path;walk=" + walk.describe() + ";schedule=" + s.describe() +
                 ";C=" + fmt(C) + ";gamma=" + fmt(gamma);
  // Rounding up can push f above C i^(2-gamma); the construction then uses the
  // smallest constant that does dominate.
  const Step top = ladder.back();
  double c_eff = C;
  for (Step i = 1; i <= top; ++i) {
    c_eff = std::max(c_eff, double(s.duration(i)) / std::pow(double(i), 2.0 - gamma));
  }
  cert.audit.push_back("f(i) <= C_eff i^(2-gamma) with C_eff = " + fmt(c_eff));
  const double epsilon = 0.9 * std::min(1.0 / c_eff, 0.1);
  cert.audit.push_back("epsilon = " + fmt(epsilon) + " < min(1/C_eff, 0.1)");
  const bool use_mc = c.engine == Engine::mc;
  for (Step n : ladder) {
    PathLowerBoundResult r;
    try {
      r = path_lowerbound_experiment(C, gamma, n, use_mc ? c.trials : 0, c.seed, epsilon, walk,
                                     c.exact);
    } catch (const ConfigError& e) {
      std::string what = e.what();
      if (what.rfind("violated: ", 0) == 0) what = what.substr(10);
      return inapplicable(cert, what + " at n=" + std::to_string(n));
    }
    cert.audit.push_back("n=" + std::to_string(n) + ": R=" + std::to_string(r.R) +
                         " L=" + std::to_string(r.L) + " T=" + std::to_string(r.T));
    const double measured = use_mc ? r.simulated->mean : r.expected_unvisited;
    add_row(cert, n, "E[U]", measured, r.lower_bound, kNaN, ">=");
    add_row(cert, n, "Pr[v_R avoided | start v_L] vs 1 - T/(4(R-L)^2)", r.avoid_probability,
            r.avoid_claim, kNaN, ">=", true);
    add_row(cert, n, "Pr[v_R avoided | start v_L] vs 0.3", r.avoid_probability, 0.3, kNaN, ">=", true);
    add_row(cert, n, "min_k Pr[X_0^(k) <= v_L] vs 1 - L/n", r.prefix_mass, r.prefix_claim, kNaN,
            ">=", true);
    add_row(cert, n, "min_k Pr[X_0^(k) <= v_L] vs 0.6", r.prefix_mass, 0.6, kNaN, ">=", true);
  }
  return finish(cert);
}

Certificate scaling_case(const TheoremCase& c) {
  const double C = param(c.C, 1.0);
  const double gamma = gamma_param(c.gamma, 0.5);
  if (gamma > 1.0) throw ConfigError("gamma must lie in [0, 1]");
  const auto ladder = resolve_ladder(c, {25, 50, 100, 200});
  const Family family = c.family.value_or(Family::path);
  const Schedule s = c.schedule.value_or(Schedule::power(C, family_exponent(family, gamma)));
  const ModelSpec model = resolve_model(c, Family::path, {WalkTag::lazy_simple}, s);
  Certificate cert{c.id, model.describe() + ";gamma=" + fmt(gamma), {}, {}, Verdict::pass, ""};
  ScalingTable t = scaling_table(model, ladder, c.engine, c.trials, c.seed, c.exact);
  cert.setting = t.setting + ";gamma=" + fmt(gamma);
  for (const auto& pt : t.points) add_info(cert, pt.n, "E[U]", pt.expected_unvisited);
  add_info(cert, ladder.back(), "fit residual (rms)", t.residual);
  add_row(cert, ladder.back(), "fitted exponent", t.slope, gamma - kSlopeTolerance,
          gamma + kSlopeTolerance, "within");
  return finish(cert);
}

using Runner = std::function<Certificate(const TheoremCase&)>;

const std::vector<std::pair<std::string, Runner>>& registry() {
  static const std::vector<std::pair<std::string, Runner>> cases = {
      {"T1.1-1", complete_linear},
      {"T1.1-2", complete_superlinear},
      {"T1.1-3", complete_sublinear},
      {"T1.1-4", complete_constant},
      {"T1.2-1", hitting_constant},
      {"T1.2-2", hitting_divergent},
      {"T1.3", rapid_mixing},
      {"T1.3-gen", rapid_mixing_general},
      {"T1.4", simple_lazy},
      {"T1.5", [](const TheoremCase& c) { return symmetric_case(c, Family::path, {8, 16, 32, 64}); }},
      {"T-moderate", moderate},
      {"T1.6", path_lower},
      {"C1.7", scaling_case},
      {"C-simpleKn", simple_kn},
      {"C-expander", expander},
      {"C-lollipop", lollipop_power},
      {"C-Metro",
       [](const TheoremCase& c) { return symmetric_case(c, Family::expander_like, {16, 32, 64}); }},
      {"A-initial", initial_clique},
  };
  return cases;
}

}  // namespace

Engine parse_engine(std::string_view name) {
  if (name == "exact") return Engine::exact;
  if (name == "mc" || name == "monte-carlo") return Engine::mc;
  if (name == "auto" || name == "automatic") return Engine::automatic;
  throw ConfigError("unknown engine '" + std::string(name) + "' (exact | mc | auto)");
}

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& [name, run] : registry()) out.push_back(name);
    return out;
  }();
  return ids;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inapplicable: return "inapplicable";
  }
  return "unknown";
}

Certificate run_case(const TheoremCase& c) {
  for (const auto& [name, run] : registry()) {
    if (name == c.id) return run(c);
  }
  throw ConfigError("unknown theorem id '" + c.id + "'");
}

RoundProfile profile_rounds(const ModelSpec& model, Step n, bool with_mixing, bool with_lambda2) {
  if (n < 1) throw RangeError("profile_rounds: n must be >= 1");
  ModelSpec probe = model;
  probe.schedule = Schedule::constant(1).with_initial_vertices(model.schedule.initial_vertices());
  const RoundSequence seq(probe, n);
  const auto count = static_cast<std::size_t>(n);
  RoundProfile p;
  p.t_hit.assign(count, 0.0);
  p.r.assign(count, 1.0);
  p.edges.assign(count, 0);
  p.lazy.assign(count, 0);
  p.reversible.assign(count, 0);
  p.symmetric.assign(count, 0);
  if (with_mixing) p.t_mix.assign(count, 0);
  if (with_lambda2) p.lambda2.assign(count, kNaN);
  parallel_for(count, [&](std::size_t k) {
    const Step i = static_cast<Step>(k + 1);
    const TransitionKernel kern = seq.kernel(i);
    p.t_hit[k] = hitting_time(kern, HittingMethod::fundamental_matrix).t_hit;
    if (with_mixing) p.t_mix[k] = mixing_time(kern).steps;
    if (with_lambda2 && kern.reversible()) p.lambda2[k] = lambda2(kern);
    if (i >= 2) p.r[k] = pi_ratio(seq.kernel(i - 1), kern);
    p.edges[k] = seq.snapshot(i).edge_count();
    p.lazy[k] = kern.lazy();
    p.reversible[k] = kern.reversible();
    p.symmetric[k] = kern.symmetric();
  });
  return p;
}

ScalingTable fit_scaling(std::vector<ScalingPoint> points) {
  std::sort(points.begin(), points.end(),
            [](const ScalingPoint& a, const ScalingPoint& b) { return a.n < b.n; });
  std::vector<Step> ns;
  for (const auto& p : points) ns.push_back(p.n);
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (ns.size() < 4) throw ConfigError("scaling fit needs at least 4 distinct n");
  for (const auto& p : points) {
    if (p.n < 1 || !(p.expected_unvisited > 0.0)) {
      throw ConfigError("scaling fit needs positive E[U] (n=" + std::to_string(p.n) + ")");
    }
  }
  const double m = static_cast<double>(points.size());
  double sx = 0, sy = 0;
  for (const auto& p : points) {
    sx += std::log(double(p.n));
    sy += std::log(p.expected_unvisited);
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (const auto& p : points) {
    const double dx = std::log(double(p.n)) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(p.expected_unvisited) - my);
  }
  ScalingTable t;
  t.slope = sxy / sxx;
  t.intercept = my - t.slope * mx;
  double ss = 0;
  for (const auto& p : points) {
    const double r = std::log(p.expected_unvisited) - (t.intercept + t.slope * std::log(double(p.n)));
    ss += r * r;
  }
  t.residual = std::sqrt(ss / m);
  t.points = std::move(points);
  return t;
}

ScalingTable scaling_table(const ModelSpec& model, const std::vector<Step>& ladder, Engine engine,
                           std::size_t trials, std::uint64_t seed, const ExactOptions& options) {
  std::vector<Step> sorted = ladder;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() < 4) throw ConfigError("scaling ladder needs at least 4 distinct n");
  if (sorted.front() < 1) throw ConfigError("ladder values must be >= 1");
  const Evaluation e = evaluate(model, sorted, engine, trials, seed, options);
  ScalingTable t = fit_scaling(e.points);
  t.setting = model.describe() + ";engine=" + e.engine;
  t.gamma = kNaN;
  return t;
}

double family_exponent(Family family, double gamma) {
  switch (family) {
    case Family::path: return 2.0 - gamma;
    case Family::lollipop: return 3.0 - gamma;
    default: return 1.0 - gamma;
  }
}

}  // namespace growwalk
