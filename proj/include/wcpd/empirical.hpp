#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wcpd {

/// Constants of the limiting null law of the Wasserstein two-sample
/// statistic (integrated squared Brownian bridge).
struct NullConstants {
  static constexpr double null_mean = 0.166;
  static constexpr double reject_threshold_05 = 0.462;
  static constexpr double alpha = 0.05;
  static_assert(null_mean < reject_threshold_05);
};

/// Weighted one-dimensional point-mass distribution with sorted support.
/// Duplicate atoms are kept, so a sample of n values always has n atoms.
class EmpiricalDist {
 public:
  std::span<const double> support() const { return support_; }
  std::span<const double> weights() const { return weights_; }
  /// Running sum of weights; the last entry is exactly 1.
  std::span<const double> cumulative() const { return cumulative_; }
  std::size_t size() const { return support_.size(); }
  /// True when every atom carries the same weight.
  bool is_uniform() const { return uniform_; }

 private:
  friend EmpiricalDist build_empirical(std::span<const double>,
                                       std::span<const double>);
  EmpiricalDist() = default;

  std::vector<double> support_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
  bool uniform_ = false;
};

/// Builds a distribution from samples. An empty `weights` span means uniform
/// weights; otherwise weights must align with `values`, be nonnegative and
/// not all zero. Support is sorted (stable) with weights permuted alongside.
EmpiricalDist build_empirical(std::span<const double> values,
                              std::span<const double> weights = {});

/// Right-continuous CDF: total weight of atoms <= x.
double ecdf_eval(const EmpiricalDist& dist, double x);

/// Generalized inverse CDF: smallest support value whose cumulative weight is
/// at least u, for u in (0, 1].
double quantile(const EmpiricalDist& dist, double u);

/// Wasserstein two-sample statistic
///   mn/(m+n) * integral_0^1 (P_m(Q_n^{-1}(x)) - x)^2 dx
/// for two uniformly weighted samples, evaluated exactly piece by piece.
double w2t_statistic(const EmpiricalDist& p, const EmpiricalDist& q);

/// Same statistic on raw sorted samples. Both spans must be non-empty and
/// sorted ascending.
///
/// Within a run of values tied between the samples (a p-atoms and b q-atoms at
/// the same value), the r-th tied q-atom counts (#p below) + a*r/b p-atoms.
/// Without ties this is the plain right-continuous ECDF count; with ties it
/// keeps identical windows at the statistic's floor instead of inflating them.
double w2t_sorted(std::span<const double> p, std::span<const double> q);

/// Exact 1-D 2-Wasserstein distance (square root of the optimal quadratic
/// transport cost) via the monotone quantile coupling.
double wasserstein2(const EmpiricalDist& a, const EmpiricalDist& b);

}  // namespace wcpd
