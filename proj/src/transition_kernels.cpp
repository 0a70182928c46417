#include "growwalk/transition_kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "growwalk/errors.hpp"

namespace growwalk {

std::string_view to_string(WalkTag tag) {
  switch (tag) {
    case WalkTag::uniform_complete:
      return "uniform_complete";
    case WalkTag::lazy_simple:
      return "lazy_simple";
    case WalkTag::lazy_metropolis:
      return "lazy_metropolis";
    case WalkTag::path_chain:
      return "path_chain";
  }
  return "unknown";
}

std::string WalkSpec::describe() const {
  std::string out(to_string(tag));
  if (tag == WalkTag::path_chain) {
    std::ostringstream os;
    os.precision(12);
    os << "(p=" << p << ",q=" << q << ")";
    out += os.str();
  }
  return out;
}

WalkTag parse_walk(std::string_view name) {
  if (name == "uniform" || name == "uniform_complete") return WalkTag::uniform_complete;
  if (name == "simple" || name == "lazy_simple") return WalkTag::lazy_simple;
  if (name == "metropolis" || name == "lazy_metropolis") return WalkTag::lazy_metropolis;
  if (name == "chain" || name == "path_chain") return WalkTag::path_chain;
  throw ConfigError("unknown walk '" + std::string(name) + "'");
}

WalkSpec default_walk(Family family) {
  WalkSpec w;
  w.tag = family == Family::complete ? WalkTag::uniform_complete : WalkTag::lazy_simple;
  return w;
}

// Assembles both CSR orientations from per-row entry lists.
class KernelBuilder {
 public:
  explicit KernelBuilder(std::size_t n) : rows_(n) {}

  void set(Vertex u, Vertex v, double value) {
    if (value != 0.0) rows_[u].push_back({v, value});
  }

  TransitionKernel finish(WalkTag tag, KernelFlags flags, std::vector<double> pi) {
    TransitionKernel k;
    const std::size_t n = rows_.size();
    k.order_ = n;
    k.tag_ = tag;
    k.flags_ = flags;
    k.stationary_ = std::move(pi);
    k.out_ptr_.assign(n + 1, 0);
    std::vector<std::size_t> col_count(n + 1, 0);
    for (std::size_t u = 0; u < n; ++u) {
      auto& r = rows_[u];
      std::sort(r.begin(), r.end(),
                [](const auto& a, const auto& b) { return a.index < b.index; });
      k.out_ptr_[u + 1] = k.out_ptr_[u] + r.size();
      for (const auto& e : r) {
        k.out_idx_.push_back(e.index);
        k.out_val_.push_back(e.value);
        ++col_count[e.index + 1];
      }
    }
    k.in_ptr_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) k.in_ptr_[v + 1] = k.in_ptr_[v] + col_count[v + 1];
    k.in_idx_.resize(k.out_idx_.size());
    k.in_val_.resize(k.out_val_.size());
    std::vector<std::size_t> cursor(k.in_ptr_.begin(), k.in_ptr_.end() - 1);
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t j = k.out_ptr_[u]; j < k.out_ptr_[u + 1]; ++j) {
        const std::size_t slot = cursor[k.out_idx_[j]]++;
        k.in_idx_[slot] = static_cast<Vertex>(u);
        k.in_val_[slot] = k.out_val_[j];
      }
    }
    bool band = n >= 2;
    for (std::size_t u = 0; u < n && band; ++u) {
      for (std::size_t j = k.out_ptr_[u]; j < k.out_ptr_[u + 1]; ++j) {
        const auto v = static_cast<std::size_t>(k.out_idx_[j]);
        if (v + 1 < u || u + 1 < v) band = false;
      }
    }
    if (band) {
      k.tridiagonal_ = true;
      k.from_left_.assign(n, 0.0);
      k.diag_.assign(n, 0.0);
      k.from_right_.assign(n, 0.0);
      k.to_left_.assign(n, 0.0);
      k.to_right_.assign(n, 0.0);
      for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t j = k.out_ptr_[u]; j < k.out_ptr_[u + 1]; ++j) {
          const auto v = static_cast<std::size_t>(k.out_idx_[j]);
          const double w = k.out_val_[j];
          if (v == u) {
            k.diag_[u] = w;
          } else if (v == u + 1) {
            k.from_left_[v] = w;
            k.to_right_[u] = w;
          } else {
            k.from_right_[v] = w;
            k.to_left_[u] = w;
          }
        }
      }
    }
    return k;
  }

  void set_chain_params(TransitionKernel& k, double p, double q) const {
    k.p_ = p;
    k.q_ = q;
  }

 private:
  std::vector<std::vector<TransitionKernel::Entry>> rows_;
};

namespace {

TransitionKernel single_state(WalkTag tag) {
  KernelBuilder b(1);
  b.set(0, 0, 1.0);
  return b.finish(tag, {true, true, true, tag == WalkTag::lazy_simple}, {1.0});
}

void require_connected(const GraphSnapshot& g, const char* what) {
  if (!g.is_connected()) {
    throw StructuralError(std::string(what) + " requires a connected graph");
  }
}

}  // namespace

TransitionKernel uniform_complete_kernel(std::size_t n) {
  if (n == 0) throw RangeError("uniform_complete_kernel: order must be >= 1");
  TransitionKernel k;
  k.order_ = n;
  k.tag_ = WalkTag::uniform_complete;
  k.flags_ = {n == 1, true, true, false};
  k.implicit_uniform_ = true;
  k.stationary_.assign(n, 1.0 / static_cast<double>(n));
  return k;
}

TransitionKernel lazy_simple_kernel(const GraphSnapshot& g) {
  const std::size_t n = g.order();
  if (n == 1) return single_state(WalkTag::lazy_simple);
  require_connected(g, "lazy_simple_kernel");
  KernelBuilder b(n);
  std::vector<double> pi(n);
  const double two_m = 2.0 * static_cast<double>(g.edge_count());
  for (Vertex u = 0; u < n; ++u) {
    const auto nbrs = g.neighbors(u);
    const double w = 1.0 / (2.0 * static_cast<double>(nbrs.size()));
    b.set(u, u, 0.5);
    for (Vertex v : nbrs) b.set(u, v, w);
    pi[u] = static_cast<double>(nbrs.size()) / two_m;
  }
  bool regular = true;
  for (Vertex u = 1; u < n; ++u) regular = regular && g.degree(u) == g.degree(0);
  return b.finish(WalkTag::lazy_simple, {true, true, regular, true}, std::move(pi));
}

TransitionKernel lazy_metropolis_kernel(const GraphSnapshot& g) {
  const std::size_t n = g.order();
  if (n == 1) return single_state(WalkTag::lazy_metropolis);
  require_connected(g, "lazy_metropolis_kernel");
  KernelBuilder b(n);
  for (Vertex u = 0; u < n; ++u) {
    const double du = static_cast<double>(g.degree(u));
    double off = 0.0;
    for (Vertex v : g.neighbors(u)) {
      const double w = 1.0 / (2.0 * std::max(du, static_cast<double>(g.degree(v))));
      b.set(u, v, w);
      off += w;
    }
    b.set(u, u, 1.0 - off);
  }
  return b.finish(WalkTag::lazy_metropolis, {true, true, true, false},
                  std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

TransitionKernel path_chain_kernel(std::size_t n, double p, double q) {
  if (n == 0) throw RangeError("path_chain_kernel: order must be >= 1");
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0)) {
    throw ConfigError("path_chain requires p, q in [0, 1]");
  }
  if (p < q) throw ConfigError("path_chain requires p >= q");
  if (q > 0.5) throw ConfigError("path_chain requires q <= 1/2");
  if (!(p < 1.0)) throw ConfigError("path_chain requires p < 1 (otherwise endpoints absorb)");
  if (n >= 3 && !(q > 0.0)) {
    throw ConfigError("path_chain requires q > 0 (otherwise interior vertices absorb)");
  }
  KernelBuilder b(n);
  std::vector<double> pi(n);
  KernelFlags flags;
  if (n == 1) {
    b.set(0, 0, 1.0);
    pi[0] = 1.0;
    flags = {true, true, true, false};
  } else if (n == 2) {
    b.set(0, 0, p);
    b.set(0, 1, 1.0 - p);
    b.set(1, 0, 1.0 - p);
    b.set(1, 1, p);
    pi = {0.5, 0.5};
    flags = {p >= 0.5, true, true, false};
  } else {
    const Vertex last = static_cast<Vertex>(n - 1);
    b.set(0, 0, p);
    b.set(0, 1, 1.0 - p);
    for (Vertex u = 1; u < last; ++u) {
      b.set(u, u - 1, q);
      b.set(u, u, 1.0 - 2.0 * q);
      b.set(u, u + 1, q);
    }
    b.set(last, last - 1, 1.0 - p);
    b.set(last, last, p);
    const double r = (1.0 - p) / q;
    const double z = 2.0 + r * static_cast<double>(n - 2);
    for (Vertex u = 0; u < n; ++u) pi[u] = (u == 0 || u == last) ? 1.0 / z : r / z;
    flags = {p >= 0.5 && q <= 0.25, true, 1.0 - p == q, p == 0.5 && q == 0.25};
  }
  auto k = b.finish(WalkTag::path_chain, flags, std::move(pi));
  b.set_chain_params(k, p, q);
  return k;
}

TransitionKernel make_kernel(const WalkSpec& walk, const GraphSnapshot& g) {
  switch (walk.tag) {
    case WalkTag::uniform_complete:
      if (g.family() != Family::complete) {
        throw ConfigError("uniform walk is defined on the complete family only");
      }
      return uniform_complete_kernel(g.order());
    case WalkTag::lazy_simple:
      return lazy_simple_kernel(g);
    case WalkTag::lazy_metropolis:
      return lazy_metropolis_kernel(g);
    case WalkTag::path_chain:
      if (g.family() != Family::path) {
        throw ConfigError("path_chain walk is defined on the path family only");
      }
      return path_chain_kernel(g.order(), walk.p, walk.q);
  }
  throw ConfigError("unknown walk");
}

// ---------------------------------------------------------------------------

double TransitionKernel::pi_min() const {
  return *std::min_element(stationary_.begin(), stationary_.end());
}

double TransitionKernel::entry(Vertex u, Vertex v) const {
  if (u >= order_ || v >= order_) throw RangeError("kernel entry index out of range");
  if (implicit_uniform_) return 1.0 / static_cast<double>(order_);
  const auto first = out_idx_.begin() + static_cast<std::ptrdiff_t>(out_ptr_[u]);
  const auto last = out_idx_.begin() + static_cast<std::ptrdiff_t>(out_ptr_[u + 1]);
  const auto it = std::lower_bound(first, last, v);
  if (it == last || *it != v) return 0.0;
  return out_val_[static_cast<std::size_t>(it - out_idx_.begin())];
}

std::vector<TransitionKernel::Entry> TransitionKernel::row(Vertex u) const {
  if (u >= order_) throw RangeError("kernel row index out of range");
  std::vector<Entry> out;
  if (implicit_uniform_) {
    const double w = 1.0 / static_cast<double>(order_);
    out.reserve(order_);
    for (Vertex v = 0; v < order_; ++v) out.push_back({v, w});
    return out;
  }
  for (std::size_t j = out_ptr_[u]; j < out_ptr_[u + 1]; ++j) {
    out.push_back({out_idx_[j], out_val_[j]});
  }
  return out;
}

std::size_t TransitionKernel::nonzeros() const {
  return implicit_uniform_ ? order_ * order_ : out_val_.size();
}

void TransitionKernel::propagate(std::span<const double> x, std::span<double> y) const {
  if (x.size() != order_ || y.size() != order_) throw RangeError("propagate: size mismatch");
  if (implicit_uniform_) {
    double s = 0.0;
    for (double v : x) s += v;
    std::fill(y.begin(), y.end(), s / static_cast<double>(order_));
    return;
  }
  if (tridiagonal_) {
    const std::size_t n = order_;
    y[0] = diag_[0] * x[0] + from_right_[0] * x[1];
    for (std::size_t v = 1; v + 1 < n; ++v) {
      y[v] = from_left_[v] * x[v - 1] + diag_[v] * x[v] + from_right_[v] * x[v + 1];
    }
    y[n - 1] = from_left_[n - 1] * x[n - 2] + diag_[n - 1] * x[n - 1];
    return;
  }
  for (std::size_t v = 0; v < order_; ++v) {
    double acc = 0.0;
    for (std::size_t j = in_ptr_[v]; j < in_ptr_[v + 1]; ++j) acc += x[in_idx_[j]] * in_val_[j];
    y[v] = acc;
  }
}

void TransitionKernel::apply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != order_ || y.size() != order_) throw RangeError("apply: size mismatch");
  if (implicit_uniform_) {
    double s = 0.0;
    for (double v : x) s += v;
    std::fill(y.begin(), y.end(), s / static_cast<double>(order_));
    return;
  }
  if (tridiagonal_) {
    const std::size_t n = order_;
    y[0] = diag_[0] * x[0] + to_right_[0] * x[1];
    for (std::size_t u = 1; u + 1 < n; ++u) {
      y[u] = to_left_[u] * x[u - 1] + diag_[u] * x[u] + to_right_[u] * x[u + 1];
    }
    y[n - 1] = to_left_[n - 1] * x[n - 2] + diag_[n - 1] * x[n - 1];
    return;
  }
  for (std::size_t u = 0; u < order_; ++u) {
    double acc = 0.0;
    for (std::size_t j = out_ptr_[u]; j < out_ptr_[u + 1]; ++j) acc += out_val_[j] * x[out_idx_[j]];
    y[u] = acc;
  }
}

Eigen::MatrixXd TransitionKernel::dense() const {
  const auto n = static_cast<Eigen::Index>(order_);
  if (implicit_uniform_) return Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t u = 0; u < order_; ++u) {
    for (std::size_t j = out_ptr_[u]; j < out_ptr_[u + 1]; ++j) {
      m(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(out_idx_[j])) = out_val_[j];
    }
  }
  return m;
}

std::vector<std::string> TransitionKernel::verify(double tol) const {
  std::vector<std::string> issues;
  const Eigen::MatrixXd m = dense();
  const auto n = m.rows();
  auto note = [&issues](const std::string& s) {
    if (issues.size() < 32) issues.push_back(s);
  };
  if (m.minCoeff() < 0.0) note("negative entry");
  for (Eigen::Index u = 0; u < n; ++u) {
    const double rs = m.row(u).sum();
    if (std::abs(rs - 1.0) > tol) note("row " + std::to_string(u + 1) + " sums to " + std::to_string(rs));
    if (flags_.lazy && m(u, u) < 0.5 - tol) note("lazy flag but P(" + std::to_string(u + 1) + ",.) holds < 1/2");
  }
  Eigen::VectorXd pi = Eigen::Map<const Eigen::VectorXd>(stationary_.data(), n);
  if (std::abs(pi.sum() - 1.0) > tol) note("stationary vector does not sum to 1");
  if ((pi.transpose() * m - pi.transpose()).cwiseAbs().maxCoeff() > tol) note("pi P != pi");
  if (flags_.reversible || flags_.symmetric) {
    for (Eigen::Index u = 0; u < n; ++u) {
      for (Eigen::Index v = u + 1; v < n; ++v) {
        if (flags_.reversible && std::abs(pi(u) * m(u, v) - pi(v) * m(v, u)) > tol) {
          note("detailed balance fails at (" + std::to_string(u + 1) + "," + std::to_string(v + 1) + ")");
        }
        if (flags_.symmetric && std::abs(m(u, v) - m(v, u)) > tol) {
          note("symmetry fails at (" + std::to_string(u + 1) + "," + std::to_string(v + 1) + ")");
        }
      }
    }
  }
  return issues;
}

void TransitionKernel::write_csv(std::ostream& out) const {
  const Eigen::MatrixXd m = dense();
  char buf[32];
  for (Eigen::Index u = 0; u < m.rows(); ++u) {
    for (Eigen::Index v = 0; v < m.cols(); ++v) {
      std::snprintf(buf, sizeof buf, "%.17g", m(u, v));
      if (v) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace growwalk
