#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "growwalk/growth_model.hpp"

namespace growwalk {

enum class WalkTag { uniform_complete, lazy_simple, lazy_metropolis, path_chain };

std::string_view to_string(WalkTag tag);

/// Walk selection. `p`, `q` apply to path_chain only.
struct WalkSpec {
  WalkTag tag = WalkTag::lazy_simple;
  double p = 0.5;
  double q = 0.25;

  std::string describe() const;
};

/// Accepts uniform | simple | metropolis | chain (and the full tag names).
WalkTag parse_walk(std::string_view name);

/// Default walk for a family: uniform on complete graphs, lazy simple elsewhere.
WalkSpec default_walk(Family family);

struct KernelFlags {
  bool lazy = false;
  bool reversible = false;
  bool symmetric = false;
  bool simple = false;
};

/// Row-stochastic transition matrix on {0, ..., n-1}. Stored sparsely in both
/// orientations; the uniform complete kernel is implicit (rank one).
class TransitionKernel {
 public:
  struct Entry {
    Vertex index;
    double value;
  };

  std::size_t order() const noexcept { return order_; }
  WalkTag tag() const noexcept { return tag_; }
  const KernelFlags& flags() const noexcept { return flags_; }
  bool lazy() const noexcept { return flags_.lazy; }
  bool reversible() const noexcept { return flags_.reversible; }
  bool symmetric() const noexcept { return flags_.symmetric; }
  bool implicit_uniform() const noexcept { return implicit_uniform_; }
  /// Nonzeros only on the three central diagonals (path kernels).
  bool tridiagonal() const noexcept { return tridiagonal_; }
  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }

  const std::vector<double>& stationary() const noexcept { return stationary_; }
  double pi_min() const;

  double entry(Vertex u, Vertex v) const;
  /// Nonzero entries of row u (column, value), ascending columns.
  std::vector<Entry> row(Vertex u) const;
  std::size_t nonzeros() const;

  /// y = x P (distribution update). x and y must not alias.
  void propagate(std::span<const double> x, std::span<double> y) const;
  /// y = P x (expectation update). x and y must not alias.
  void apply(std::span<const double> x, std::span<double> y) const;

  Eigen::MatrixXd dense() const;

  /// Numerical audit of every declared invariant. Returns human-readable
  /// violations; empty means the kernel is well formed.
  std::vector<std::string> verify(double tol = 1e-12) const;

  /// Dense row-major CSV (one row per line, %.17g).
  void write_csv(std::ostream& out) const;

 private:
  friend TransitionKernel uniform_complete_kernel(std::size_t n);
  friend class KernelBuilder;
  TransitionKernel() = default;

  std::size_t order_ = 0;
  WalkTag tag_ = WalkTag::uniform_complete;
  KernelFlags flags_;
  bool implicit_uniform_ = false;
  double p_ = 0.0;
  double q_ = 0.0;
  std::vector<double> stationary_;
  // Outgoing rows: row u holds P(u, .).
  std::vector<std::size_t> out_ptr_;
  std::vector<Vertex> out_idx_;
  std::vector<double> out_val_;
  // Incoming columns: column v holds P(., v).
  std::vector<std::size_t> in_ptr_;
  std::vector<Vertex> in_idx_;
  std::vector<double> in_val_;
  // Band copies when tridiagonal_: P(v-1,v), P(v,v), P(v+1,v) and
  // P(u,u-1), P(u,u+1) (zero outside the range).
  bool tridiagonal_ = false;
  std::vector<double> from_left_, diag_, from_right_, to_left_, to_right_;
};

TransitionKernel uniform_complete_kernel(std::size_t n);
TransitionKernel lazy_simple_kernel(const GraphSnapshot& g);
TransitionKernel lazy_metropolis_kernel(const GraphSnapshot& g);
TransitionKernel path_chain_kernel(std::size_t n, double p, double q);

/// Kernel of `walk` on `g`. path_chain requires a path snapshot.
TransitionKernel make_kernel(const WalkSpec& walk, const GraphSnapshot& g);

}  // namespace growwalk
