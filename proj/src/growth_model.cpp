#include "growwalk/growth_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "growwalk/errors.hpp"
#include "growwalk/random.hpp"

namespace growwalk {

namespace {

constexpr Step kMaxDuration = Step{1} << 60;

std::string format_real(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

Step ceil_duration(double x) {
  if (!std::isfinite(x) || x > static_cast<double>(kMaxDuration)) {
    throw RangeError("duration overflows the step counter: " + format_real(x));
  }
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9 * std::max(1.0, std::abs(x))) {
    return static_cast<Step>(nearest);
  }
  return static_cast<Step>(std::ceil(x));
}

// ---------------------------------------------------------------------------
// Schedule
// ---------------------------------------------------------------------------

Schedule Schedule::constant(Step c) {
  if (c < 1) throw ConfigError("constant schedule requires c >= 1, got " + std::to_string(c));
  Schedule s;
  s.kind_ = DurationKind::constant;
  s.coefficient_ = static_cast<double>(c);
  return s;
}

Schedule Schedule::linear(double coefficient) {
  if (!(coefficient > 0.0) || !std::isfinite(coefficient)) {
    throw ConfigError("linear schedule requires C > 0");
  }
  Schedule s;
  s.kind_ = DurationKind::linear;
  s.coefficient_ = coefficient;
  s.exponent_ = 1.0;
  return s;
}

Schedule Schedule::power(double coefficient, double exponent) {
  if (!(coefficient > 0.0) || !std::isfinite(coefficient)) {
    throw ConfigError("power schedule requires C > 0");
  }
  if (!std::isfinite(exponent)) throw ConfigError("power schedule exponent must be finite");
  Schedule s;
  s.kind_ = DurationKind::power;
  s.coefficient_ = coefficient;
  s.exponent_ = exponent;
  return s;
}

Schedule Schedule::table(std::vector<Step> durations) {
  if (durations.empty()) throw ConfigError("table schedule is empty");
  for (std::size_t i = 0; i < durations.size(); ++i) {
    if (durations[i] < 1) {
      throw ConfigError("table schedule: f(" + std::to_string(i + 1) + ") must be >= 1");
    }
  }
  Schedule s;
  s.kind_ = DurationKind::table;
  s.horizon_ = static_cast<Step>(durations.size());
  s.table_ = std::make_shared<const std::vector<Step>>(std::move(durations));
  return s;
}

Schedule Schedule::function(std::string label, std::function<Step(Step)> f, Step horizon) {
  if (!f) throw ConfigError("function schedule requires a callable");
  if (horizon < 1) throw ConfigError("schedule horizon must be >= 1");
  Schedule s;
  s.kind_ = DurationKind::function;
  s.label_ = std::move(label);
  s.function_ = std::make_shared<const std::function<Step(Step)>>(std::move(f));
  s.horizon_ = horizon;
  return s;
}

Schedule Schedule::with_initial_vertices(std::size_t n0) const {
  Schedule s = *this;
  s.initial_vertices_ = n0;
  return s;
}

Schedule Schedule::with_horizon(Step horizon) const {
  if (horizon < 1) throw ConfigError("schedule horizon must be >= 1");
  if (kind_ == DurationKind::table && horizon > horizon_) {
    throw ConfigError("table schedule cannot be extended past its length");
  }
  Schedule s = *this;
  s.horizon_ = horizon;
  return s;
}

Step Schedule::duration(Step i) const {
  if (i < 1 || i > horizon_) {
    throw RangeError("round " + std::to_string(i) + " outside [1, " + std::to_string(horizon_) +
                     "]");
  }
  Step f = 0;
  switch (kind_) {
    case DurationKind::constant:
      f = static_cast<Step>(coefficient_);
      break;
    case DurationKind::linear:
      f = ceil_duration(coefficient_ * static_cast<double>(i));
      break;
    case DurationKind::power:
      f = ceil_duration(coefficient_ * std::pow(static_cast<double>(i), exponent_));
      break;
    case DurationKind::table:
      f = (*table_)[static_cast<std::size_t>(i - 1)];
      break;
    case DurationKind::function:
      f = (*function_)(i);
      if (f < 1) {
        throw ConfigError("schedule '" + label_ + "' produced f(" + std::to_string(i) +
                          ") = " + std::to_string(f) + " < 1");
      }
      break;
  }
  return std::max<Step>(1, f);
}

Step Schedule::round_boundary(Step n) const {
  if (n < 1 || n > horizon_ + 1) {
    throw RangeError("round boundary index " + std::to_string(n) + " outside [1, " +
                     std::to_string(horizon_ + 1) + "]");
  }
  Step total = 0;
  for (Step i = 1; i < n; ++i) {
    const Step f = duration(i);
    if (total > std::numeric_limits<Step>::max() - f) throw RangeError("T_n overflows");
    total += f;
  }
  return total;
}

std::vector<Step> Schedule::boundaries(Step n) const {
  if (n < 0 || n > horizon_) {
    throw RangeError("boundaries requested through round " + std::to_string(n));
  }
  std::vector<Step> out(static_cast<std::size_t>(n) + 1, 0);
  for (Step i = 1; i <= n; ++i) {
    const Step f = duration(i);
    const Step prev = out[static_cast<std::size_t>(i - 1)];
    if (prev > std::numeric_limits<Step>::max() - f) throw RangeError("T_n overflows");
    out[static_cast<std::size_t>(i)] = prev + f;
  }
  return out;
}

std::string Schedule::describe() const {
  std::string body;
  switch (kind_) {
    case DurationKind::constant:
      body = "constant:c=" + format_real(coefficient_);
      break;
    case DurationKind::linear:
      body = "linear:C=" + format_real(coefficient_);
      break;
    case DurationKind::power:
      body = "power:C=" + format_real(coefficient_) + ",exp=" + format_real(exponent_);
      break;
    case DurationKind::table:
      body = "table:len=" + std::to_string(table_->size());
      break;
    case DurationKind::function:
      body = "function:" + label_;
      break;
  }
  if (initial_vertices_ > 0) body += ";n0=" + std::to_string(initial_vertices_);
  return body;
}

Schedule load_schedule_table(std::istream& in) {
  std::vector<Step> durations;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    long long round = 0;
    long long f = 0;
    if (!(fields >> round)) continue;  // blank line
    if (!(fields >> f)) {
      throw ConfigError("schedule table line " + std::to_string(line_no) + ": expected 'n f(n)'");
    }
    if (round != static_cast<long long>(durations.size()) + 1) {
      throw ConfigError("schedule table line " + std::to_string(line_no) + ": expected round " +
                        std::to_string(durations.size() + 1));
    }
    durations.push_back(f);
  }
  return Schedule::table(std::move(durations));
}

Schedule load_schedule_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open schedule table '" + path + "'");
  return load_schedule_table(in);
}

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

std::string_view to_string(Family family) {
  switch (family) {
    case Family::complete:
      return "complete";
    case Family::path:
      return "path";
    case Family::lollipop:
      return "lollipop";
    case Family::expander_like:
      return "expander_like";
    case Family::custom:
      return "custom";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  if (name == "complete") return Family::complete;
  if (name == "path") return Family::path;
  if (name == "lollipop") return Family::lollipop;
  if (name == "expander_like" || name == "expander") return Family::expander_like;
  if (name == "custom") return Family::custom;
  throw ConfigError("unknown family '" + std::string(name) + "'");
}

namespace {

using Adjacency = std::vector<std::vector<Vertex>>;

void add_edge(Adjacency& adj, Vertex u, Vertex v) {
  adj[u].push_back(v);
  adj[v].push_back(u);
}

Adjacency build_complete(std::size_t n) {
  Adjacency adj(n);
  for (Vertex k = 1; k < n; ++k) {
    for (Vertex u = 0; u < k; ++u) add_edge(adj, u, k);
  }
  return adj;
}

Adjacency build_path(std::size_t n) {
  Adjacency adj(n);
  for (Vertex k = 1; k < n; ++k) add_edge(adj, k - 1, k);
  return adj;
}

// Odd labels (even 0-based indices) form a clique, even labels form a path
// v_2 - v_4 - v_6 - ..., and {v_1, v_2} bridges the two.
Adjacency build_lollipop(std::size_t n) {
  Adjacency adj(n);
  for (Vertex k = 1; k < n; ++k) {
    if (k % 2 == 0) {
      for (Vertex u = 0; u < k; u += 2) add_edge(adj, u, k);
    } else if (k == 1) {
      add_edge(adj, 0, 1);
    } else {
      add_edge(adj, k - 2, k);
    }
  }
  return adj;
}

// Each arriving vertex attaches to min(d, k) distinct earlier vertices drawn
// uniformly (Floyd's sampling) from one seeded stream, so prefixes agree.
Adjacency build_expander_like(std::size_t n, std::size_t degree, std::uint64_t seed) {
  if (degree < 1) throw ConfigError("expander_like requires degree >= 1");
  Adjacency adj(n);
  Rng rng(stream_seed(seed, 0));
  std::vector<Vertex> chosen;
  for (Vertex k = 1; k < n; ++k) {
    const std::size_t m = std::min<std::size_t>(degree, k);
    chosen.clear();
    for (std::size_t j = k - m; j < k; ++j) {
      const auto t = static_cast<Vertex>(uniform_below(rng, j + 1));
      if (std::find(chosen.begin(), chosen.end(), t) == chosen.end()) {
        chosen.push_back(t);
      } else {
        chosen.push_back(static_cast<Vertex>(j));
      }
    }
    std::sort(chosen.begin(), chosen.end());
    for (Vertex u : chosen) add_edge(adj, u, k);
  }
  return adj;
}

}  // namespace

GrowingGraph::GrowingGraph(Family family, std::vector<std::vector<Vertex>> adjacency)
    : family_(family), adjacency_(std::move(adjacency)) {
  edges_before_.assign(adjacency_.size() + 1, 0);
  for (std::size_t k = 0; k < adjacency_.size(); ++k) {
    auto& nbrs = adjacency_[k];
    std::sort(nbrs.begin(), nbrs.end());
    const auto earlier = static_cast<std::size_t>(
        std::lower_bound(nbrs.begin(), nbrs.end(), static_cast<Vertex>(k)) - nbrs.begin());
    edges_before_[k + 1] = edges_before_[k] + earlier;
  }
}

std::shared_ptr<const GrowingGraph> GrowingGraph::build(const FamilySpec& spec,
                                                        std::size_t max_order) {
  if (max_order == 0) throw RangeError("graph order must be >= 1");
  Adjacency adj;
  switch (spec.tag) {
    case Family::complete:
      adj = build_complete(max_order);
      break;
    case Family::path:
      adj = build_path(max_order);
      break;
    case Family::lollipop:
      adj = build_lollipop(max_order);
      break;
    case Family::expander_like:
      adj = build_expander_like(max_order, spec.expander_degree, spec.graph_seed);
      break;
    case Family::custom:
      if (!spec.custom) throw ConfigError("custom family requires an edge-list graph");
      if (spec.custom->max_order() < max_order) {
        throw RangeError("custom graph has " + std::to_string(spec.custom->max_order()) +
                         " vertices, order " + std::to_string(max_order) + " requested");
      }
      return spec.custom;
  }
  return std::shared_ptr<const GrowingGraph>(new GrowingGraph(spec.tag, std::move(adj)));
}

std::shared_ptr<const GrowingGraph> GrowingGraph::from_edge_list(std::istream& in) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::size_t order = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    long long u = 0;
    long long v = 0;
    if (!(fields >> u)) continue;
    if (!(fields >> v)) {
      throw ConfigError("edge list line " + std::to_string(line_no) + ": expected 'u v'");
    }
    if (u < 1 || v < 1) {
      throw ConfigError("edge list line " + std::to_string(line_no) + ": labels are 1-based");
    }
    if (u == v) {
      throw ConfigError("edge list line " + std::to_string(line_no) + ": self-loop");
    }
    const auto a = static_cast<Vertex>(std::min(u, v) - 1);
    const auto b = static_cast<Vertex>(std::max(u, v) - 1);
    edges.emplace_back(a, b);
    order = std::max<std::size_t>(order, b + 1);
  }
  if (order == 0) throw ConfigError("edge list is empty");
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw ConfigError("edge list contains a repeated edge");
  }
  Adjacency adj(order);
  for (auto [a, b] : edges) add_edge(adj, a, b);
  for (Vertex k = 1; k < order; ++k) {
    const auto& nbrs = adj[k];
    if (std::none_of(nbrs.begin(), nbrs.end(), [k](Vertex u) { return u < k; })) {
      throw ConfigError("edge list: vertex " + std::to_string(k + 1) +
                        " has no edge to an earlier vertex");
    }
  }
  return std::shared_ptr<const GrowingGraph>(new GrowingGraph(Family::custom, std::move(adj)));
}

std::shared_ptr<const GrowingGraph> GrowingGraph::load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open edge list '" + path + "'");
  return from_edge_list(in);
}

std::span<const Vertex> GrowingGraph::neighbors(Vertex v, std::size_t order) const {
  if (order > adjacency_.size() || v >= order) {
    throw RangeError("vertex " + std::to_string(v + 1) + " not in snapshot of order " +
                     std::to_string(order));
  }
  const auto& nbrs = adjacency_[v];
  const auto end = std::lower_bound(nbrs.begin(), nbrs.end(), static_cast<Vertex>(order));
  return {nbrs.data(), static_cast<std::size_t>(end - nbrs.begin())};
}

std::size_t GrowingGraph::edge_count(std::size_t order) const {
  if (order > adjacency_.size()) throw RangeError("snapshot order beyond sequence");
  return edges_before_[order];
}

GraphSnapshot GrowingGraph::snapshot(std::size_t order) const {
  return GraphSnapshot(shared_from_this(), order);
}

// ---------------------------------------------------------------------------
// GraphSnapshot
// ---------------------------------------------------------------------------

GraphSnapshot::GraphSnapshot(std::shared_ptr<const GrowingGraph> sequence, std::size_t order)
    : sequence_(std::move(sequence)), order_(order) {
  if (!sequence_) throw ConfigError("snapshot requires a graph sequence");
  if (order_ == 0) throw RangeError("graph order must be >= 1");
  if (order_ > sequence_->max_order()) {
    throw RangeError("snapshot order " + std::to_string(order_) + " beyond sequence of " +
                     std::to_string(sequence_->max_order()));
  }
}

bool GraphSnapshot::has_edge(Vertex u, Vertex v) const {
  const auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<std::pair<Vertex, Vertex>> GraphSnapshot::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < order_; ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

bool GraphSnapshot::is_connected() const {
  std::vector<char> seen(order_, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    for (Vertex v : neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == order_;
}

std::size_t GraphSnapshot::min_degree() const {
  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (Vertex v = 0; v < order_; ++v) best = std::min(best, degree(v));
  return best;
}

double GraphSnapshot::average_degree() const {
  return 2.0 * static_cast<double>(edge_count()) / static_cast<double>(order_);
}

GraphSnapshot grow(const FamilySpec& spec, std::size_t n) {
  if (n == 0) throw RangeError("grow: order must be >= 1");
  return GrowingGraph::build(spec, n)->snapshot(n);
}

}  // namespace growwalk
