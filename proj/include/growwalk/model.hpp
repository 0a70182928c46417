#pragma once

#include <memory>
#include <vector>

#include "growwalk/growth_model.hpp"
#include "growwalk/transition_kernels.hpp"

namespace growwalk {

/// One random walk on a growing graph: schedule, graph family and walk rule.
struct ModelSpec {
  Schedule schedule;
  FamilySpec family;
  WalkSpec walk;

  std::string describe() const;
};

/// The first n rounds of a model: snapshots and kernels on demand.
/// Round i uses the graph of order n0 + i.
class RoundSequence {
 public:
  RoundSequence(ModelSpec spec, Step rounds);

  const ModelSpec& spec() const noexcept { return spec_; }
  Step rounds() const noexcept { return rounds_; }
  std::size_t initial_vertices() const noexcept { return spec_.schedule.initial_vertices(); }
  std::size_t order(Step i) const { return spec_.schedule.order_in_round(i); }
  std::size_t final_order() const { return order(rounds_); }
  Step duration(Step i) const { return spec_.schedule.duration(i); }

  GraphSnapshot snapshot(Step i) const;
  TransitionKernel kernel(Step i) const;

  /// Position distribution at time 0 over the round-1 graph: a point mass on
  /// v_1 when n0 = 0, uniform over v_1..v_{n0} otherwise.
  std::vector<double> initial_distribution() const;

  /// Index of the vertex that arrives at the start of round i.
  Vertex arrival(Step i) const { return static_cast<Vertex>(order(i) - 1); }

 private:
  ModelSpec spec_;
  Step rounds_;
  std::shared_ptr<const GrowingGraph> graph_;
};

}  // namespace growwalk
