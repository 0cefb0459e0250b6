#include "wcpd/cpd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wcpd/error.hpp"
#include "wcpd/random.hpp"

namespace wcpd {

namespace detail {

void SortedWindow::assign(std::span<const double> values) {
  values_.assign(values.begin(), values.end());
  std::sort(values_.begin(), values_.end());
}

void SortedWindow::insert(double v) {
  values_.insert(std::upper_bound(values_.begin(), values_.end(), v), v);
}

void SortedWindow::erase(double v) {
  auto it = std::lower_bound(values_.begin(), values_.end(), v);
  if (it == values_.end() || *it != v) throw std::logic_error("SortedWindow: erasing absent value");
  values_.erase(it);
}

double convolve_at(std::span<const double> taps, std::span<const double> window) {
  const std::size_t width = taps.size();
  const std::size_t beta = width / 2;
  double acc = 0.0;
  for (std::size_t i = 0; i < width; ++i) {
    // i = k + beta, so trace[t-k] sits at window[2*beta - i]
    acc += taps[i] * window[2 * beta - i];
  }
  return acc;
}

}  // namespace detail

StatTrace StatTrace::from_values(std::vector<double> values, std::size_t beta) {
  StatTrace trace;
  trace.valid_end = values.size();
  trace.values = std::move(values);
  trace.beta = beta;
  return trace;
}

std::vector<ChangePair> default_change_pairs() {
  const auto base = DistSpec::normal(0.0, 1.0);
  return {
      {base, DistSpec::normal(0.2, 1.0)},
      {base, DistSpec::normal(0.0, 1.2)},
      {base, DistSpec::laplace(0.0, 1.0 / std::numbers::sqrt2)},
  };
}

void MatchedFilter::validate() const {
  if (beta < 1) throw DataError("filter beta must be at least 1");
  if (taps.size() != 2 * beta + 1) throw DataError("filter must have 2*beta+1 taps");
  double sum = 0.0;
  for (double t : taps) {
    if (!std::isfinite(t)) throw DataError("non-finite filter tap");
    sum += t;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw DataError("filter taps do not sum to 1");
}

void DetectorConfig::validate() const {
  if (beta < 2) throw DataError("beta must be at least 2");
  if (!std::isfinite(lambda)) throw DataError("lambda must be finite");
  if (filter) {
    filter->validate();
    if (filter->beta != beta) throw DataError("filter beta does not match detector beta");
  }
}

StatTrace sliding_statistic(const TimeSeries& series, std::size_t beta) {
  if (beta < 1) throw DataError("beta must be at least 1");
  const std::size_t length = series.length();
  if (length < 2 * beta + 1) throw DataError("series too short for window");

  StatTrace trace;
  trace.beta = beta;
  trace.valid_begin = beta;
  trace.valid_end = length - beta;
  trace.values.assign(length, std::numeric_limits<double>::quiet_NaN());

  std::vector<double> sum(length, 0.0);
  detail::SortedWindow before;
  detail::SortedWindow after;
  for (std::size_t k = 0; k < series.dimension(); ++k) {
    const auto x = series.channel(k);
    before.assign(x.subspan(0, beta));
    after.assign(x.subspan(beta + 1, beta));
    for (std::size_t t = beta; t < trace.valid_end; ++t) {
      sum[t] += w2t_sorted(before.values(), after.values());
      if (t + 1 < trace.valid_end) {
        before.erase(x[t - beta]);
        before.insert(x[t]);
        after.erase(x[t + 1]);
        after.insert(x[t + beta + 1]);
      }
    }
  }
  const auto d = static_cast<double>(series.dimension());
  for (std::size_t t = trace.valid_begin; t < trace.valid_end; ++t) trace.values[t] = sum[t] / d;
  return trace;
}

MatchedFilter estimate_matched_filter(std::size_t beta, std::size_t ensemble_size,
                                      const std::vector<ChangePair>& change_pairs,
                                      std::uint64_t seed) {
  if (beta < 2) throw DataError("beta must be at least 2");
  if (ensemble_size < 1) throw DataError("ensemble size must be at least 1");
  if (change_pairs.empty()) throw DataError("at least one change pair is required");

  const std::size_t width = 2 * beta + 1;
  const std::size_t change_at = 2 * beta;
  std::vector<double> profile(width, 0.0);
  for (std::size_t p = 0; p < change_pairs.size(); ++p) {
    std::vector<double> pair_sum(width, 0.0);
    for (std::size_t e = 0; e < ensemble_size; ++e) {
      SeriesSpec spec;
      spec.segments = {{change_pairs[p].before, change_at}, {change_pairs[p].after, change_at + 1}};
      spec.seed = derive_seed(seed, {p, e});
      const auto trace = sliding_statistic(generate(spec), beta);
      for (std::size_t i = 0; i < width; ++i) pair_sum[i] += trace.values[change_at - beta + i];
    }
    for (std::size_t i = 0; i < width; ++i) {
      profile[i] += pair_sum[i] / static_cast<double>(ensemble_size);
    }
  }

  const auto pairs = static_cast<double>(change_pairs.size());
  for (double& v : profile) v /= pairs;

  MatchedFilter filter = normalize_signature(profile, beta);
  filter.ensemble_size = ensemble_size;
  filter.change_pairs = change_pairs;
  filter.seed = seed;
  return filter;
}

MatchedFilter normalize_signature(const std::vector<double>& ensemble_mean, std::size_t beta) {
  if (ensemble_mean.size() != 2 * beta + 1) throw DataError("signature must have 2*beta+1 entries");
  MatchedFilter filter;
  filter.beta = beta;
  filter.source = FilterSource::estimated;
  filter.taps.resize(ensemble_mean.size());
  for (std::size_t i = 0; i < ensemble_mean.size(); ++i) {
    const double excess = ensemble_mean[i] - NullConstants::null_mean;
    if (excess < 0.0) ++filter.clamped_taps;
    filter.taps[i] = std::max(excess, 0.0);
  }
  double gamma = 0.0;
  for (double t : filter.taps) gamma += t;
  if (!(gamma > 0.0)) throw NumericalError("filter estimation failed: no signal above null mean");
  filter.gamma = gamma;
  for (double& t : filter.taps) t /= gamma;
  return filter;
}

StatTrace apply_filter(const StatTrace& trace, const MatchedFilter& filter) {
  if (trace.filtered) throw DataError("trace is already filtered");
  if (trace.beta != filter.beta) throw DataError("filter beta does not match trace beta");
  filter.validate();

  const std::size_t beta = filter.beta;
  StatTrace out;
  out.beta = trace.beta;
  out.filtered = true;
  out.valid_begin = trace.valid_begin;
  out.valid_end = trace.valid_end;
  out.values.assign(trace.size(), std::numeric_limits<double>::quiet_NaN());

  std::vector<double> window(2 * beta + 1);
  for (std::size_t t = trace.valid_begin; t < trace.valid_end; ++t) {
    for (std::size_t i = 0; i < window.size(); ++i) {
      const auto idx = static_cast<std::ptrdiff_t>(t + i) - static_cast<std::ptrdiff_t>(beta);
      window[i] = idx >= 0 && trace.is_valid(static_cast<std::size_t>(idx))
                      ? trace.values[static_cast<std::size_t>(idx)]
                      : NullConstants::null_mean;
    }
    out.values[t] = detail::convolve_at(filter.taps, window);
  }
  return out;
}

std::vector<std::size_t> detect_peaks(const StatTrace& trace, double lambda) {
  std::vector<std::size_t> peaks;
  if (trace.valid_end < trace.valid_begin + 3) return peaks;
  const auto& f = trace.values;
  for (std::size_t t = trace.valid_begin + 1; t + 1 < trace.valid_end; ++t) {
    if (f[t] > f[t - 1] && f[t] > f[t + 1] && f[t] > lambda) peaks.push_back(t);
  }
  return peaks;
}

Detection detect(const TimeSeries& series, const DetectorConfig& config) {
  config.validate();
  Detection result;
  result.raw = sliding_statistic(series, config.beta);
  if (config.filter) {
    result.filtered = apply_filter(result.raw, *config.filter);
    result.change_points = detect_peaks(*result.filtered, config.lambda);
  } else {
    result.change_points = detect_peaks(result.raw, config.lambda);
  }
  return result;
}

}  // namespace wcpd
