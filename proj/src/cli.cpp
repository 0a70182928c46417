#include "growwalk/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "growwalk/chain_analysis.hpp"
#include "growwalk/csv.hpp"
#include "growwalk/errors.hpp"
#include "growwalk/exact_engine.hpp"
#include "growwalk/model.hpp"
#include "growwalk/monte_carlo.hpp"
#include "growwalk/parallel.hpp"
#include "growwalk/theorem_suite.hpp"

namespace growwalk {

namespace {

constexpr const char* kOutputDirEnv = "GROWWALK_OUTPUT_DIR";

double parse_number(std::string_view text, std::string_view field) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("--schedule: malformed number '" + std::string(text) + "' for " +
                      std::string(field));
  }
  return v;
}

std::map<std::string, double> parse_params(std::string_view body, std::string_view kind) {
  std::map<std::string, double> params;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const std::size_t comma = std::min(body.find(',', pos), body.size());
    const std::string_view item = body.substr(pos, comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ConfigError("--schedule: expected key=value in '" + std::string(item) + "' (" +
                        std::string(kind) + ")");
    }
    const std::string key(item.substr(0, eq));
    if (params.count(key)) throw ConfigError("--schedule: repeated key '" + key + "'");
    params[key] = parse_number(item.substr(eq + 1), key);
    pos = comma + 1;
  }
  return params;
}

void expect_keys(const std::map<std::string, double>& params, std::initializer_list<const char*> allowed,
                 std::initializer_list<const char*> required, std::string_view kind) {
  for (const auto& [key, value] : params) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ConfigError("--schedule: unknown key '" + key + "' for " + std::string(kind));
    }
  }
  for (const char* key : required) {
    if (!params.count(key)) {
      throw ConfigError("--schedule: " + std::string(kind) + " needs " + key);
    }
  }
}

struct Options {
  std::string family = "complete";
  std::string walk;
  double p = 0.5;
  double q = 0.25;
  std::string schedule = "linear:C=1";
  Step n = 0;
  std::vector<Step> ladder;
  std::size_t n0 = 0;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::string output;
  std::string engine = "auto";
  std::size_t dense_cap = 400;
  std::size_t jobs = 0;
  std::size_t degree = 5;
  std::uint64_t graph_seed = 1;
  std::string graph_file;
  bool trajectory = false;
  bool per_trial = false;
  std::string dump_kernel;
  // theorem / sweep parameters
  std::string theorem_id;
  double C = 0.0;
  double gamma = -1.0;
  Step c = 1;
  double delta = 1.0;
  double proxy_delta = 0.1;
  std::vector<double> gammas;
  // theorem and sweep take these only when given
  std::string case_family;
  std::string case_schedule;
};

void add_model_options(CLI::App* sub, Options& o, bool with_schedule = true) {
  sub->add_option("--family", o.family, "complete | path | lollipop | expander | custom")
      ->capture_default_str();
  sub->add_option("--walk", o.walk, "uniform | simple | metropolis | chain (default per family)");
  sub->add_option("--p", o.p, "chain: holding probability at interior vertices")
      ->capture_default_str();
  sub->add_option("--q", o.q, "chain: probability of each interior move")->capture_default_str();
  if (with_schedule) {
    sub->add_option("--schedule", o.schedule, "duration schedule spec")->capture_default_str();
  }
  sub->add_option("--n0", o.n0, "initial clique size")->capture_default_str();
  sub->add_option("--degree", o.degree, "expander attachment count")->capture_default_str();
  sub->add_option("--graph-seed", o.graph_seed, "expander attachment seed")->capture_default_str();
  sub->add_option("--graph-file", o.graph_file, "edge list for --family custom");
}

void add_run_options(CLI::App* sub, Options& o) {
  sub->add_option("--n", o.n, "number of rounds");
  sub->add_option("--ladder", o.ladder, "comma-separated n values")->delimiter(',');
  sub->add_option("--output", o.output, "CSV path ('-' for stdout)");
  sub->add_option("--dense-cap", o.dense_cap, "largest order for the exact engine")
      ->capture_default_str();
  sub->add_option("--jobs", o.jobs, "worker threads (0 = all cores)")->capture_default_str();
}

void add_sampling_options(CLI::App* sub, Options& o) {
  sub->add_option("--trials", o.trials, "Monte Carlo trials")->capture_default_str();
  sub->add_option("--seed", o.seed, "master seed")->capture_default_str();
}

FamilySpec build_family(const Options& o) {
  FamilySpec spec;
  spec.tag = parse_family(o.family);
  spec.expander_degree = o.degree;
  spec.graph_seed = o.graph_seed;
  if (spec.tag == Family::custom) {
    if (o.graph_file.empty()) throw ConfigError("--graph-file is required for --family custom");
    spec.custom = GrowingGraph::load_edge_list(o.graph_file);
  } else if (!o.graph_file.empty()) {
    throw ConfigError("--graph-file needs --family custom");
  }
  return spec;
}

WalkSpec build_walk(const Options& o, Family family) {
  WalkSpec w = o.walk.empty() ? default_walk(family) : WalkSpec{parse_walk(o.walk), o.p, o.q};
  if (w.tag == WalkTag::path_chain) {
    w.p = o.p;
    w.q = o.q;
  }
  return w;
}

ModelSpec build_model(const Options& o) {
  FamilySpec family = build_family(o);
  const WalkSpec walk = build_walk(o, family.tag);
  Schedule s = parse_schedule_spec(o.schedule, family.tag).with_initial_vertices(o.n0);
  return ModelSpec{std::move(s), std::move(family), walk};
}

// Requested n values, ascending; the largest is the run length.
std::vector<Step> requested(const Options& o) {
  std::vector<Step> ns = o.ladder;
  if (o.n > 0) ns.push_back(o.n);
  if (ns.empty()) throw ConfigError("--n or --ladder is required");
  for (Step n : ns) {
    if (n < 1) throw ConfigError("--n / --ladder values must be >= 1");
  }
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  return ns;
}

std::string join(const std::vector<Step>& v) {
  std::string s;
  for (std::size_t j = 0; j < v.size(); ++j) s += (j ? "," : "") + std::to_string(v[j]);
  return s;
}

std::string config_line(const std::string& command, const Options& o, const ModelSpec* model) {
  std::ostringstream s;
  s << "command=" << command;
  if (!o.theorem_id.empty()) s << ";id=" << o.theorem_id;
  if (model) s << ';' << model->describe();
  s << ";n0=" << o.n0 << ";n=" << o.n << ";ladder=" << join(o.ladder) << ";trials=" << o.trials
    << ";seed=" << o.seed << ";engine=" << o.engine << ";dense_cap=" << o.dense_cap
    << ";degree=" << o.degree << ";graph_seed=" << o.graph_seed;
  if (!o.graph_file.empty()) s << ";graph_file=" << o.graph_file;
  if (o.trajectory) s << ";trajectory=1";
  if (o.per_trial) s << ";per_trial=1";
  return s.str();
}

// Destination for CSV output: --output, else $GROWWALK_OUTPUT_DIR/<name>.csv, else none.
class CsvSink {
 public:
  CsvSink(const Options& o, const std::string& name, std::ostream& out) {
    std::string path = o.output;
    if (path.empty()) {
      if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) {
        path = std::string(dir) + "/" + name + ".csv";
      }
    }
    if (path == "-") {
      stream_ = &out;
    } else if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
      if (!*file_) throw ConfigError("--output: cannot open '" + path + "'");
      stream_ = file_.get();
      path_ = path;
    }
  }

  std::ostream* stream() const { return stream_; }
  const std::string& path() const { return path_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
  std::string path_;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

void apply_runtime(const Options& o, ExactOptions& exact) {
  set_max_jobs(o.jobs);
  exact.dense_cap = o.dense_cap;
}

int cmd_exact(const Options& o, std::ostream& out) {
  ExactOptions exact;
  apply_runtime(o, exact);
  const ModelSpec model = build_model(o);
  const auto ns = requested(o);
  const Step top = ns.back();
  const std::string config = config_line("exact", o, &model);
  CsvSink sink(o, "exact", out);
  if (o.trajectory) {
    const auto rows = exact_trajectory(model, top, exact);
    if (sink.stream()) {
      CsvWriter w(*sink.stream(), config, {"t", "round", "expected_unvisited"});
      for (const auto& r : rows) w.cell(r.t).cell(r.round).cell(r.expected_unvisited).end_row();
    }
  }
  const bool closed = model.family.tag == Family::complete &&
                      model.walk.tag == WalkTag::uniform_complete;
  const std::vector<double> ladder = closed ? complete_closed_form_ladder(model.schedule, top)
                                            : exact_expected_unvisited(model, top, exact).ladder;
  if (!o.trajectory && sink.stream()) {
    CsvWriter w(*sink.stream(), config, {"n", "expected_unvisited"});
    for (Step n : ns) w.cell(n).cell(ladder[static_cast<std::size_t>(n - 1)]).end_row();
  }
  out << "E[U]=" << fmt(ladder.back()) << " n=" << top << " engine=" << (closed ? "closed-form" : "exact")
      << '\n';
  return kExitOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  ExactOptions exact;
  apply_runtime(o, exact);
  const ModelSpec model = build_model(o);
  const auto ns = requested(o);
  const Step top = ns.back();
  const UnvisitedEstimate est =
      estimate_unvisited(SimulationPlan{model, top, o.trials, o.seed, o.trajectory});
  const std::string config = config_line("simulate", o, &model);
  CsvSink sink(o, "simulate", out);
  if (sink.stream()) {
    if (o.per_trial) {
      CsvWriter w(*sink.stream(), config, {"trial", "unvisited"});
      for (std::size_t t = 0; t < est.per_trial.size(); ++t) w.cell(t).cell(est.per_trial[t]).end_row();
    } else if (o.trajectory) {
      CsvWriter w(*sink.stream(), config, {"t", "round", "mean_unvisited"});
      for (const auto& r : est.trajectory) w.cell(r.t).cell(r.round).cell(r.expected_unvisited).end_row();
    } else {
      CsvWriter w(*sink.stream(), config,
                  {"n", "mean", "sd", "trials", "half_width", "seed", "interval_valid"});
      for (Step n : ns) {
        const auto& r = est.ladder[static_cast<std::size_t>(n - 1)];
        w.cell(n).cell(r.mean).cell(r.sd).cell(r.trials).cell(r.half_width).cell(r.seed)
            .cell(r.interval_valid).end_row();
      }
    }
  }
  const auto& f = est.final;
  out << "E[U]~" << fmt(f.mean) << " +/- " << fmt(f.half_width) << " n=" << top
      << " trials=" << f.trials << " seed=" << f.seed << '\n';
  return kExitOk;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  ExactOptions exact;
  apply_runtime(o, exact);
  const ModelSpec model = build_model(o);
  std::vector<Step> ns = o.ladder;
  if (ns.empty()) {
    if (o.n < 1) throw ConfigError("--n or --ladder is required");
    for (Step i = 1; i <= o.n; ++i) ns.push_back(i);
  } else {
    if (o.n > 0) ns.push_back(o.n);
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  }
  if (ns.front() < 1) throw ConfigError("--n / --ladder values must be >= 1");
  const RoundSequence seq(model, ns.back());
  if (seq.final_order() > o.dense_cap) {
    throw ResourceError("--dense-cap: order " + std::to_string(seq.final_order()) +
                        " exceeds the dense cap " + std::to_string(o.dense_cap));
  }
  const std::string config = config_line("analyze", o, &model);
  CsvSink sink(o, "analyze", out);
  std::optional<CsvWriter> w;
  if (sink.stream()) {
    w.emplace(*sink.stream(), config,
              std::vector<std::string>{"n", "order", "t_hit", "t_mix", "t_mix_capped", "lambda2",
                                       "pi_min", "max_survival_radius", "lazy", "reversible",
                                       "symmetric"});
  }
  AnalysisReport last;
  for (Step i : ns) {
    const TransitionKernel k = seq.kernel(i);
    last = analyze(k, true, HittingMethod::fundamental_matrix);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (w) {
      w->cell(i).cell(last.order).cell(last.t_hit).cell(last.t_mix.steps).cell(last.t_mix.capped)
          .cell(k.reversible() ? last.lambda2 : nan).cell(last.pi_min)
          .cell(k.reversible() ? last.max_survival_radius : nan).cell(k.lazy())
          .cell(k.reversible()).cell(k.symmetric()).end_row();
    }
  }
  if (!o.dump_kernel.empty()) {
    std::ofstream f(o.dump_kernel, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("--dump-kernel: cannot open '" + o.dump_kernel + "'");
    seq.kernel(ns.back()).write_csv(f);
  }
  out << "t_hit=" << fmt(last.t_hit) << " t_mix=" << last.t_mix.steps
      << (last.t_mix.capped ? "(capped)" : "") << " order=" << last.order << '\n';
  return kExitOk;
}

int cmd_theorem(const Options& o, std::ostream& out) {
  ExactOptions exact;
  apply_runtime(o, exact);
  TheoremCase c;
  c.id = o.theorem_id;
  c.C = o.C;
  c.gamma = o.gamma;
  c.c = o.c;
  c.delta = o.delta;
  c.proxy_delta = o.proxy_delta;
  c.ladder = o.ladder;
  if (o.n > 0) c.ladder.push_back(o.n);
  c.engine = parse_engine(o.engine);
  c.trials = o.trials;
  c.seed = o.seed;
  c.expander_degree = o.degree;
  c.graph_seed = o.graph_seed;
  c.exact = exact;
  if (o.n0 > 0) c.n0 = o.n0;
  if (!o.case_family.empty()) c.family = parse_family(o.case_family);
  if (!o.walk.empty()) {
    c.walk = WalkSpec{parse_walk(o.walk), o.p, o.q};
  }
  if (!o.case_schedule.empty()) {
    c.schedule = parse_schedule_spec(o.case_schedule, c.family.value_or(Family::complete));
  }
  const Certificate cert = run_case(c);
  CsvSink sink(o, "theorem_" + c.id, out);
  if (sink.stream()) {
    CsvWriter w(*sink.stream(), config_line("theorem", o, nullptr) + ";setting=" + cert.setting,
                {"id", "n", "label", "measured", "lower", "upper", "relation", "pass", "diagnostic"});
    for (const auto& r : cert.rows) {
      w.cell(cert.id).cell(r.n).cell(r.label).cell(r.measured).cell(r.lower).cell(r.upper)
          .cell(r.relation).cell(r.pass).cell(r.diagnostic).end_row();
    }
  }
  out << cert.id << ": " << to_string(cert.verdict) << " (" << cert.setting << ")\n";
  for (const auto& line : cert.audit) out << "  audit: " << line << '\n';
  for (const auto& r : cert.rows) {
    out << "  n=" << r.n << ' ' << r.label << " = " << fmt(r.measured);
    if (r.relation == "<=") out << " <= " << fmt(r.upper);
    else if (r.relation == ">=") out << " >= " << fmt(r.lower);
    else if (r.relation == "in" || r.relation == "within")
      out << " in [" << fmt(r.lower) << ", " << fmt(r.upper) << "]";
    if (r.relation != "info") out << (r.pass ? "  ok" : "  VIOLATED");
    if (r.diagnostic && r.relation != "info") out << " (diagnostic)";
    out << '\n';
  }
  switch (cert.verdict) {
    case Verdict::pass: return kExitOk;
    case Verdict::fail: return kExitFailed;
    case Verdict::inapplicable: return kExitConfig;
  }
  return kExitFailed;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  ExactOptions exact;
  apply_runtime(o, exact);
  const FamilySpec family = build_family(o);
  const WalkSpec walk = build_walk(o, family.tag);
  std::vector<Step> ladder = o.ladder;
  if (ladder.empty()) throw ConfigError("--ladder is required (at least 4 values)");
  std::vector<double> gammas = o.gammas;
  if (gammas.empty()) gammas.push_back(o.gamma >= 0.0 ? o.gamma : 0.5);
  const double C = o.C > 0.0 ? o.C : 1.0;
  const Engine engine = parse_engine(o.engine);
  const bool explicit_schedule = !o.case_schedule.empty();
  if (explicit_schedule && gammas.size() > 1) {
    throw ConfigError("--schedule and a --gammas grid are mutually exclusive");
  }
  std::vector<ScalingTable> tables;
  for (double g : gammas) {
    if (!(g >= 0.0 && g <= 1.0)) throw ConfigError("--gammas: values must lie in [0, 1]");
    Schedule s = explicit_schedule ? parse_schedule_spec(o.case_schedule, family.tag)
                                   : Schedule::power(C, family_exponent(family.tag, g));
    const ModelSpec model{s.with_initial_vertices(o.n0), family, walk};
    ScalingTable t = scaling_table(model, ladder, engine, o.trials, o.seed, exact);
    t.gamma = g;
    tables.push_back(std::move(t));
  }
  CsvSink sink(o, "sweep", out);
  if (sink.stream()) {
    CsvWriter w(*sink.stream(), config_line("sweep", o, nullptr) + ";C=" + fmt(C),
                {"gamma", "n", "expected_unvisited", "half_width", "slope", "intercept", "residual",
                 "setting"});
    for (const auto& t : tables) {
      for (const auto& p : t.points) {
        w.cell(t.gamma).cell(p.n).cell(p.expected_unvisited).cell(p.half_width).cell(t.slope)
            .cell(t.intercept).cell(t.residual).cell(t.setting).end_row();
      }
    }
  }
  for (const auto& t : tables) {
    out << "gamma=" << fmt(t.gamma) << " slope=" << fmt(t.slope) << " residual=" << fmt(t.residual)
        << '\n';
  }
  return kExitOk;
}

}  // namespace

Schedule parse_schedule_spec(std::string_view spec, Family family) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("--schedule: expected kind:params, got '" + std::string(spec) + "'");
  }
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view body = spec.substr(colon + 1);
  if (kind == "table") {
    if (body.empty()) throw ConfigError("--schedule: table needs a path");
    return load_schedule_table(std::string(body));
  }
  const auto params = parse_params(body, kind);
  if (kind == "constant") {
    expect_keys(params, {"c"}, {"c"}, kind);
    const double c = params.at("c");
    if (!(c >= 1.0) || c != std::floor(c)) throw ConfigError("--schedule: c must be an integer >= 1");
    return Schedule::constant(static_cast<Step>(c));
  }
  if (kind == "linear") {
    expect_keys(params, {"C"}, {"C"}, kind);
    if (!(params.at("C") > 0.0)) throw ConfigError("--schedule: C must be positive");
    return Schedule::linear(params.at("C"));
  }
  if (kind == "power") {
    expect_keys(params, {"C", "gamma", "exp"}, {"C"}, kind);
    const double C = params.at("C");
    if (!(C > 0.0)) throw ConfigError("--schedule: C must be positive");
    double e = 0.0;
    if (params.count("exp")) {
      e = params.at("exp");
    } else if (params.count("gamma")) {
      const double g = params.at("gamma");
      if (!(g >= 0.0 && g <= 1.0)) throw ConfigError("--schedule: gamma must lie in [0, 1]");
      e = family_exponent(family, g);
    } else {
      throw ConfigError("--schedule: power needs gamma or exp");
    }
    return Schedule::power(C, e);
  }
  throw ConfigError("--schedule: unknown kind '" + std::string(kind) + "'");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Random walks on growing graphs: exact and simulated unvisited-vertex counts"};
  app.require_subcommand(1);

  auto* exact = app.add_subcommand("exact", "exact E[U] for one model");
  add_model_options(exact, o);
  add_run_options(exact, o);
  exact->add_flag("--trajectory", o.trajectory, "write (t, round, E[U_t]) rows");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of E[U]");
  add_model_options(simulate, o);
  add_run_options(simulate, o);
  add_sampling_options(simulate, o);
  simulate->add_flag("--trajectory", o.trajectory, "write the mean trajectory");
  simulate->add_flag("--per-trial", o.per_trial, "write U(n) of every trial");

  auto* analyze_cmd = app.add_subcommand("analyze", "hitting, mixing and spectral quantities per round");
  add_model_options(analyze_cmd, o);
  add_run_options(analyze_cmd, o);
  analyze_cmd->add_option("--dump-kernel", o.dump_kernel, "write the last kernel as dense CSV");

  auto* theorem = app.add_subcommand("theorem", "run one certificate case");
  theorem->add_option("id", o.theorem_id, "case id")->required();
  add_run_options(theorem, o);
  add_sampling_options(theorem, o);
  theorem->add_option("--family", o.case_family, "override the case's family");
  theorem->add_option("--walk", o.walk, "override the case's walk");
  theorem->add_option("--p", o.p, "chain parameter p");
  theorem->add_option("--q", o.q, "chain parameter q");
  theorem->add_option("--schedule", o.case_schedule, "override the synthesized schedule");
  theorem->add_option("--n0", o.n0, "initial clique size (A-initial)");
  theorem->add_option("--degree", o.degree, "expander attachment count");
  theorem->add_option("--graph-seed", o.graph_seed, "expander attachment seed");
  theorem->add_option("--engine", o.engine, "exact | mc | auto")->capture_default_str();
  theorem->add_option("--C", o.C, "constant C (0 = case default)");
  theorem->add_option("--gamma", o.gamma, "exponent gamma (negative = case default)");
  theorem->add_option("--c", o.c, "constant duration c")->capture_default_str();
  theorem->add_option("--delta", o.delta, "Delta")->capture_default_str();
  theorem->add_option("--proxy-delta", o.proxy_delta, "threshold of the limit proxies")
      ->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "fit the log-log exponent of E[U] over a ladder");
  sweep->add_option("--schedule", o.case_schedule, "fixed schedule instead of the gamma grid");
  add_model_options(sweep, o, false);
  add_run_options(sweep, o);
  add_sampling_options(sweep, o);
  sweep->add_option("--engine", o.engine, "exact | mc | auto")->capture_default_str();
  sweep->add_option("--C", o.C, "schedule coefficient");
  sweep->add_option("--gamma", o.gamma, "schedule exponent parameter");
  sweep->add_option("--gammas", o.gammas, "comma-separated gamma grid")->delimiter(',');

  for (auto* sub : {exact, simulate, analyze_cmd}) {
    sub->add_option("--engine", o.engine, "ignored; kept for uniform invocations");
  }

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  try {
    if (exact->parsed()) return cmd_exact(o, out);
    if (simulate->parsed()) return cmd_simulate(o, out);
    if (analyze_cmd->parsed()) return cmd_analyze(o, out);
    if (theorem->parsed()) return cmd_theorem(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out);
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << " (residual " << e.residual() << ")\n";
    return kExitFailed;
  } catch (const std::exception& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace growwalk
