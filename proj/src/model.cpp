#include "growwalk/model.hpp"

#include "growwalk/errors.hpp"

namespace growwalk {

std::string ModelSpec::describe() const {
  return "family=" + std::string(to_string(family.tag)) + ";walk=" + walk.describe() +
         ";schedule=" + schedule.describe();
}

RoundSequence::RoundSequence(ModelSpec spec, Step rounds)
    : spec_(std::move(spec)), rounds_(rounds) {
  if (rounds_ < 1) throw RangeError("number of rounds must be >= 1");
  if (rounds_ > spec_.schedule.horizon()) {
    throw RangeError("round " + std::to_string(rounds_) + " beyond schedule horizon " +
                     std::to_string(spec_.schedule.horizon()));
  }
  graph_ = GrowingGraph::build(spec_.family, final_order());
}

GraphSnapshot RoundSequence::snapshot(Step i) const {
  if (i < 1 || i > rounds_) throw RangeError("round " + std::to_string(i) + " out of range");
  return graph_->snapshot(order(i));
}

TransitionKernel RoundSequence::kernel(Step i) const {
  return make_kernel(spec_.walk, snapshot(i));
}

std::vector<double> RoundSequence::initial_distribution() const {
  const std::size_t n0 = initial_vertices();
  std::vector<double> x(order(1), 0.0);
  if (n0 == 0) {
    x[0] = 1.0;
  } else {
    for (std::size_t v = 0; v < n0; ++v) x[v] = 1.0 / static_cast<double>(n0);
  }
  return x;
}

}  // namespace growwalk
