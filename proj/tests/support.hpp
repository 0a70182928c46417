#pragma once

#include <bit>
#include <map>
#include <utility>

#include "growwalk/model.hpp"

namespace growwalk::testing {

inline FamilySpec spec(Family f) {
  FamilySpec s;
  s.tag = f;
  return s;
}

inline ModelSpec model(Family f, WalkSpec walk, Schedule schedule) {
  return ModelSpec{std::move(schedule), spec(f), walk};
}

// E[U(n)] by dynamic programming over (position, visited set); small orders only.
inline double brute_force_unvisited(const ModelSpec& m, Step n) {
  const RoundSequence seq(m, n);
  using State = std::pair<std::uint32_t, std::uint64_t>;
  std::map<State, double> dist;
  const auto init = seq.initial_distribution();
  for (std::uint32_t v = 0; v < init.size(); ++v) {
    if (init[v] > 0.0) dist[{v, std::uint64_t{1} << v}] += init[v];
  }
  for (Step i = 1; i <= n; ++i) {
    const TransitionKernel k = seq.kernel(i);
    for (Step s = 0; s < seq.duration(i); ++s) {
      std::map<State, double> next;
      for (const auto& [state, p] : dist) {
        for (const auto& e : k.row(state.first)) {
          next[{e.index, state.second | (std::uint64_t{1} << e.index)}] += p * e.value;
        }
      }
      dist.swap(next);
    }
  }
  double expected = 0.0;
  for (const auto& [state, p] : dist) {
    expected += p * static_cast<double>(seq.final_order() - std::popcount(state.second));
  }
  return expected;
}

}  // namespace growwalk::testing
