#pragma once

#include <optional>
#include <string>
#include <vector>

#include "growwalk/chain_analysis.hpp"
#include "growwalk/exact_engine.hpp"
#include "growwalk/model.hpp"
#include "growwalk/monte_carlo.hpp"

namespace growwalk {

enum class Engine { exact, mc, automatic };

Engine parse_engine(std::string_view name);

/// Identifiers accepted by run_case.
const std::vector<std::string>& theorem_ids();

struct TheoremCase {
  std::string id;
  double C = 0.0;      // 0 selects the case default
  double gamma = -1.0; // negative selects the case default
  Step c = 1;
  double delta = 1.0;
  std::size_t n0 = 5;
  /// Ladder of n values; empty selects the case default.
  std::vector<Step> ladder;
  /// Family / walk overrides (cases with a fixed setting reject overrides).
  std::optional<Family> family;
  std::optional<WalkSpec> walk;
  /// Explicit schedule for cases that take f as input (T1.1-2, T1.1-3, T1.6).
  std::optional<Schedule> schedule;
  std::size_t expander_degree = 5;
  std::uint64_t graph_seed = 1;
  Engine engine = Engine::automatic;
  std::size_t trials = 2000;
  std::uint64_t seed = 1;
  /// Finite-n proxy threshold for limit statements.
  double proxy_delta = 0.1;
  ExactOptions exact;
};

enum class Verdict { pass, fail, inapplicable };
std::string_view to_string(Verdict v);

struct CertificateRow {
  Step n = 0;
  std::string label;
  double measured = 0.0;
  /// Lower end for two-sided rows; NaN otherwise.
  double lower = 0.0;
  double upper = 0.0;
  /// "<=", ">=", "in", "within".
  std::string relation;
  bool pass = true;
  /// Diagnostic rows are reported but do not decide the verdict.
  bool diagnostic = false;
};

struct Certificate {
  std::string id;
  std::string setting;
  /// Hypothesis audit trail, one line per check.
  std::vector<std::string> audit;
  std::vector<CertificateRow> rows;
  Verdict verdict = Verdict::pass;
  /// Named inequality when inapplicable.
  std::string violated;
};

Certificate run_case(const TheoremCase& c);

/// Measured per-round quantities of a growing sequence, rounds 1..n.
struct RoundProfile {
  std::vector<double> t_hit;
  std::vector<Step> t_mix;       // empty unless requested
  std::vector<double> r;         // r[i-1] for i >= 2, r[0] = 1
  std::vector<double> lambda2;   // empty unless requested
  std::vector<std::size_t> edges;
  std::vector<char> lazy, reversible, symmetric;
};

RoundProfile profile_rounds(const ModelSpec& model, Step n, bool with_mixing, bool with_lambda2);

struct ScalingPoint {
  Step n = 0;
  double expected_unvisited = 0.0;
  double half_width = 0.0;  // 0 for exact values
};

struct ScalingTable {
  std::string setting;
  double gamma = 0.0;
  std::vector<ScalingPoint> points;
  double slope = 0.0;
  double intercept = 0.0;
  /// Root-mean-square residual of the log-log fit.
  double residual = 0.0;
};

/// Least-squares slope of log E[U] against log n. Fewer than 4 distinct n or
/// a nonpositive value is a configuration error.
ScalingTable fit_scaling(std::vector<ScalingPoint> points);

/// Runs one model over the ladder (exact when within the cap, else Monte
/// Carlo) and fits the exponent.
ScalingTable scaling_table(const ModelSpec& model, const std::vector<Step>& ladder,
                           Engine engine = Engine::automatic, std::size_t trials = 2000,
                           std::uint64_t seed = 1, const ExactOptions& options = {});

/// Duration exponent convention: complete/expander 1-gamma, path 2-gamma,
/// lollipop 3-gamma.
double family_exponent(Family family, double gamma);

}  // namespace growwalk
