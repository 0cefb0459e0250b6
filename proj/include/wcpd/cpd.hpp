#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "wcpd/empirical.hpp"
#include "wcpd/simgen.hpp"
#include "wcpd/time_series.hpp"

namespace wcpd {

/// Per-index change statistic sigma[t]. Entries outside
/// [valid_begin, valid_end) have insufficient window support and hold NaN.
struct StatTrace {
  std::vector<double> values;
  std::size_t valid_begin = 0;
  std::size_t valid_end = 0;
  std::size_t beta = 1;
  bool filtered = false;

  /// Wraps plain values as a fully valid, unfiltered trace.
  static StatTrace from_values(std::vector<double> values, std::size_t beta = 1);

  std::size_t size() const { return values.size(); }
  bool is_valid(std::size_t t) const { return t >= valid_begin && t < valid_end; }
};

struct ChangePair {
  DistSpec before;
  DistSpec after;
  bool operator==(const ChangePair&) const = default;
};

/// N(0,1) -> N(0.2,1), N(0,1) -> N(0,1.2), N(0,1) -> L(0,1/sqrt(2)).
std::vector<ChangePair> default_change_pairs();

enum class FilterSource { estimated, loaded };

/// Unit-area convolution kernel over offsets [-beta, beta]; taps[i] is the
/// tap at offset i - beta.
struct MatchedFilter {
  std::vector<double> taps;
  std::size_t beta = 0;
  /// Area of the bias-removed, clamped ensemble profile before normalization.
  double gamma = 0.0;
  std::size_t ensemble_size = 0;
  FilterSource source = FilterSource::estimated;
  std::vector<ChangePair> change_pairs;
  std::uint64_t seed = 0;
  /// Taps that fell below the null mean and were clamped to zero.
  std::size_t clamped_taps = 0;

  double tap(std::ptrdiff_t offset) const {
    return taps.at(static_cast<std::size_t>(offset + static_cast<std::ptrdiff_t>(beta)));
  }
  /// Throws DataError unless taps has 2*beta+1 finite entries summing to 1.
  void validate() const;
};

struct DetectorConfig {
  std::size_t beta = 50;
  double lambda = NullConstants::reject_threshold_05;
  std::optional<MatchedFilter> filter;

  void validate() const;
};

/// sigma[t] = W2T(X[t-beta..t-1], X[t+1..t+beta]) averaged over dimensions,
/// valid for t in [beta, T-beta-1]. Windows are kept as sorted multisets and
/// updated incrementally as t advances.
StatTrace sliding_statistic(const TimeSeries& series, std::size_t beta);

/// Ensemble estimate of the change signature of sliding_statistic. Each
/// member is a 4*beta+1 long sequence switching from `before` to `after` at
/// index 2*beta; the statistic on offsets [-beta, beta] around the change is
/// averaged over members and pairs (equal weight), the null mean is
/// subtracted, negatives are clamped to zero and the result is scaled to unit
/// area.
MatchedFilter estimate_matched_filter(std::size_t beta, std::size_t ensemble_size,
                                      const std::vector<ChangePair>& change_pairs,
                                      std::uint64_t seed);

/// Turns an ensemble-mean signature (2*beta+1 values) into unit-area taps:
/// subtract the null mean, clamp negatives to zero, divide by their sum gamma.
/// Throws NumericalError when nothing is left above the null mean.
MatchedFilter normalize_signature(const std::vector<double>& ensemble_mean, std::size_t beta);

/// output[t] = sum_k taps[k] * trace[t-k], k in [-beta, beta], on the valid
/// range of `trace`. Trace entries outside the valid range read as the null
/// mean.
StatTrace apply_filter(const StatTrace& trace, const MatchedFilter& filter);

/// Indices t with both neighbours valid, trace[t] strictly above both, and
/// trace[t] > lambda.
std::vector<std::size_t> detect_peaks(const StatTrace& trace, double lambda);

struct Detection {
  std::vector<std::size_t> change_points;
  StatTrace raw;
  /// Present when the config carries a filter.
  std::optional<StatTrace> filtered;
};

Detection detect(const TimeSeries& series, const DetectorConfig& config);

// Internal kernels shared by the offline and streaming paths so both produce
// bit-identical values.
namespace detail {

/// Sorted multiset of window values.
class SortedWindow {
 public:
  void assign(std::span<const double> values);
  void insert(double v);
  void erase(double v);
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
};

/// Last 2*beta+1 samples of one channel plus the two sorted windows around
/// the centre sample.
struct StreamWindows {
  std::deque<double> recent;
  SortedWindow before;
  SortedWindow after;
};

/// sum_{k=-beta}^{beta} taps[k+beta] * window[beta-k], where window[i] holds
/// trace[t-beta+i].
double convolve_at(std::span<const double> taps, std::span<const double> window);

}  // namespace detail

/// Streaming form of detect(). A change point at t is confirmed when sample
/// t + 2*beta + 1 arrives (t + beta + 1 without a filter): beta samples for the
/// forward window, beta for the filter's forward support and one for the
/// right-hand neighbour of the peak test. Emissions are exactly the offline
/// detections; finish() reports those in the tail that the offline pass
/// resolves by padding.
class OnlineDetector {
 public:
  OnlineDetector(DetectorConfig config, std::size_t dimension);

  /// Feeds sample number samples_seen(); returns a change point index if this
  /// sample confirms one.
  std::optional<std::size_t> push(std::span<const double> sample);

  /// Ends the stream and returns the remaining detections, which depend on
  /// the end-of-series padding.
  std::vector<std::size_t> finish();

  std::size_t samples_seen() const { return seen_; }
  /// Samples between a change point and the sample that confirms it.
  std::size_t confirmation_delay() const;

 private:
  void on_stage_value(std::size_t index, double value, std::vector<std::size_t>& out);
  double raw_or_pad(std::size_t index) const;
  double filtered_at(std::size_t index) const;

  DetectorConfig config_;
  std::size_t dimension_;
  std::size_t seen_ = 0;
  std::vector<detail::StreamWindows> channels_;
  // raw sigma values for indices [raw_first_, raw_first_ + raw_.size())
  std::deque<double> raw_;
  std::size_t raw_first_ = 0;
  std::size_t raw_count_ = 0;
  std::size_t next_filtered_ = 0;
  // last three values of the peak-tested trace as (index, value)
  std::vector<std::pair<std::size_t, double>> recent_;
  bool finished_ = false;
};

}  // namespace wcpd
