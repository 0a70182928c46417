#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace growwalk {

using Step = std::int64_t;
/// 0-based vertex index; vertex v_k of the arrival order has index k-1.
using Vertex = std::uint32_t;

// ---------------------------------------------------------------------------
// Duration schedules
// ---------------------------------------------------------------------------

enum class DurationKind { constant, linear, power, table, function };

/// Vertex-arrival schedule: round i lasts f(i) >= 1 steps, round boundaries
/// T_1 = 0, T_{i+1} = T_i + f(i).
///
/// `initial_vertices` is the number of vertices present before the first
/// arrival. With 0 (the default) the graph in round i has order i and the walk
/// starts on v_1. With n0 > 0 the graph in round i has order n0 + i and the walk
/// starts on the n0 initial vertices.
class Schedule {
 public:
  static constexpr Step kUnbounded = Step{1} << 40;

  static Schedule constant(Step c);
  /// f(i) = max(1, ceil(C i)).
  static Schedule linear(double coefficient);
  /// f(i) = max(1, ceil(C i^exponent)).
  static Schedule power(double coefficient, double exponent);
  /// f(i) = durations[i-1]; the horizon is the table length.
  static Schedule table(std::vector<Step> durations);
  static Schedule function(std::string label, std::function<Step(Step)> f,
                           Step horizon = kUnbounded);

  Schedule with_initial_vertices(std::size_t n0) const;
  Schedule with_horizon(Step horizon) const;

  /// f(i) for 1 <= i <= horizon.
  Step duration(Step i) const;
  /// T_n = sum_{i<n} f(i) for 1 <= n <= horizon + 1.
  Step round_boundary(Step n) const;
  /// {T_1, ..., T_{n+1}}.
  std::vector<Step> boundaries(Step n) const;

  Step horizon() const noexcept { return horizon_; }
  std::size_t initial_vertices() const noexcept { return initial_vertices_; }
  /// Order of the graph during round i.
  std::size_t order_in_round(Step i) const noexcept {
    return initial_vertices_ + static_cast<std::size_t>(i);
  }
  DurationKind kind() const noexcept { return kind_; }
  double coefficient() const noexcept { return coefficient_; }
  double exponent() const noexcept { return exponent_; }
  std::string describe() const;

 private:
  Schedule() = default;

  DurationKind kind_ = DurationKind::constant;
  double coefficient_ = 1.0;
  double exponent_ = 0.0;
  std::shared_ptr<const std::vector<Step>> table_;
  std::shared_ptr<const std::function<Step(Step)>> function_;
  std::string label_;
  Step horizon_ = kUnbounded;
  std::size_t initial_vertices_ = 0;
};

/// Reads `n <tab> f(n)` lines (rounds 1, 2, ... consecutively; '#' comments).
Schedule load_schedule_table(std::istream& in);
Schedule load_schedule_table(const std::string& path);

/// ceil(x), except that x within 1e-9 (relative) of an integer rounds to it.
Step ceil_duration(double x);

// ---------------------------------------------------------------------------
// Growing graphs
// ---------------------------------------------------------------------------

enum class Family { complete, path, lollipop, expander_like, custom };

std::string_view to_string(Family family);
Family parse_family(std::string_view name);

class GrowingGraph;

struct FamilySpec {
  Family tag = Family::complete;
  /// Attachment count for expander_like.
  std::size_t expander_degree = 5;
  /// Seed of the expander_like attachment stream.
  std::uint64_t graph_seed = 1;
  /// Source sequence for Family::custom.
  std::shared_ptr<const GrowingGraph> custom;
};

class GraphSnapshot;

/// The whole arrival sequence G^(1) ⊆ G^(2) ⊆ ... ⊆ G^(max_order). Vertex k
/// (0-based) arrives with edges only to vertices < k, so snapshot m is the
/// induced prefix on {0, ..., m-1}. Immutable once built.
class GrowingGraph : public std::enable_shared_from_this<GrowingGraph> {
 public:
  static std::shared_ptr<const GrowingGraph> build(const FamilySpec& spec,
                                                   std::size_t max_order);
  /// Edge list `u v` lines (1-based labels). Every vertex after the first must
  /// have an edge to an earlier vertex.
  static std::shared_ptr<const GrowingGraph> from_edge_list(std::istream& in);
  static std::shared_ptr<const GrowingGraph> load_edge_list(const std::string& path);

  std::size_t max_order() const noexcept { return adjacency_.size(); }
  Family family() const noexcept { return family_; }

  /// Neighbours of v inside the snapshot of the given order, ascending.
  std::span<const Vertex> neighbors(Vertex v, std::size_t order) const;
  std::size_t degree(Vertex v, std::size_t order) const {
    return neighbors(v, order).size();
  }
  std::size_t edge_count(std::size_t order) const;

  GraphSnapshot snapshot(std::size_t order) const;

 private:
  GrowingGraph(Family family, std::vector<std::vector<Vertex>> adjacency);

  Family family_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<std::size_t> edges_before_;  // edges_before_[m] = |E(G^(m))|
};

/// G^(n): a view of the first n vertices of a growing sequence.
class GraphSnapshot {
 public:
  GraphSnapshot(std::shared_ptr<const GrowingGraph> sequence, std::size_t order);

  std::size_t order() const noexcept { return order_; }
  Family family() const noexcept { return sequence_->family(); }
  std::size_t edge_count() const { return sequence_->edge_count(order_); }
  std::span<const Vertex> neighbors(Vertex v) const { return sequence_->neighbors(v, order_); }
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  bool has_edge(Vertex u, Vertex v) const;
  /// Edges as (u, v) with u < v, sorted.
  std::vector<std::pair<Vertex, Vertex>> edges() const;
  bool is_connected() const;
  std::size_t min_degree() const;
  double average_degree() const;
  const std::shared_ptr<const GrowingGraph>& sequence() const noexcept { return sequence_; }

 private:
  std::shared_ptr<const GrowingGraph> sequence_;
  std::size_t order_;
};

/// Snapshot of order n of the family's growing sequence.
GraphSnapshot grow(const FamilySpec& spec, std::size_t n);

}  // namespace growwalk
