#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wcpd {

/// T samples of a d-dimensional real series, stored one channel per
/// dimension, with optional per-sample labels and ground-truth change points.
///
/// A change point is the index of the first sample of a new segment, so the
/// segments are [0, tau_1), [tau_1, tau_2), ..., [tau_S, T).
class TimeSeries {
 public:
  TimeSeries(std::vector<std::vector<double>> channels,
             std::vector<int> labels = {},
             std::vector<std::size_t> change_points = {});

  /// Builds a series from row-major samples (one d-vector per time index).
  static TimeSeries from_rows(const std::vector<std::vector<double>>& rows,
                              std::vector<int> labels = {},
                              std::vector<std::size_t> change_points = {});

  std::size_t length() const { return channels_.front().size(); }
  std::size_t dimension() const { return channels_.size(); }
  std::span<const double> channel(std::size_t k) const { return channels_.at(k); }
  double at(std::size_t t, std::size_t k) const { return channels_[k][t]; }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<std::size_t>& change_points() const { return change_points_; }

  void set_change_points(std::vector<std::size_t> change_points);

 private:
  std::vector<std::vector<double>> channels_;
  std::vector<int> labels_;
  std::vector<std::size_t> change_points_;
};

/// Backward difference X[t] - X[t-1] for t >= 1. Labels keep their t >= 1
/// entries; change points shift down by one (those that land on 0 are dropped).
TimeSeries first_difference(const TimeSeries& series);

}  // namespace wcpd
