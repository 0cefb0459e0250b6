#include "wcpd/cpd.hpp"

#include <cmath>
#include <stdexcept>

#include "wcpd/error.hpp"

namespace wcpd {

OnlineDetector::OnlineDetector(DetectorConfig config, std::size_t dimension)
    : config_(std::move(config)), dimension_(dimension), channels_(dimension) {
  config_.validate();
  if (dimension_ == 0) throw DataError("stream dimension must be positive");
}

std::size_t OnlineDetector::confirmation_delay() const {
  return config_.filter ? 2 * config_.beta + 1 : config_.beta + 1;
}

std::optional<std::size_t> OnlineDetector::push(std::span<const double> sample) {
  if (finished_) throw std::logic_error("OnlineDetector: push after finish");
  if (sample.size() != dimension_) throw DataError("sample dimension mismatch");
  for (double v : sample) {
    if (!std::isfinite(v)) throw DataError("non-finite sample");
  }

  const std::size_t beta = config_.beta;
  const std::size_t span = 2 * beta + 1;
  const std::size_t n = seen_++;
  if (n + 1 < span) {
    for (std::size_t k = 0; k < dimension_; ++k) channels_[k].recent.push_back(sample[k]);
    return std::nullopt;
  }

  // Window centre s = n - beta; `recent` ends up holding X[s-beta .. s+beta].
  double sum = 0.0;
  for (std::size_t k = 0; k < dimension_; ++k) {
    auto& ch = channels_[k];
    ch.recent.push_back(sample[k]);
    if (ch.recent.size() > span) {
      const double old = ch.recent.front();
      ch.recent.pop_front();
      ch.before.erase(old);
      ch.before.insert(ch.recent[beta - 1]);
      ch.after.erase(ch.recent[beta]);
      ch.after.insert(ch.recent[2 * beta]);
    } else {
      std::vector<double> lo(ch.recent.begin(), ch.recent.begin() + static_cast<std::ptrdiff_t>(beta));
      std::vector<double> hi(ch.recent.begin() + static_cast<std::ptrdiff_t>(beta + 1), ch.recent.end());
      ch.before.assign(lo);
      ch.after.assign(hi);
    }
    sum += w2t_sorted(ch.before.values(), ch.after.values());
  }

  std::vector<std::size_t> out;
  const std::size_t s = beta + raw_count_;
  const double value = sum / static_cast<double>(dimension_);
  raw_.push_back(value);
  ++raw_count_;
  if (raw_.size() > span + 1) {
    raw_.pop_front();
    ++raw_first_;
  }
  if (!config_.filter) {
    on_stage_value(s, value, out);
  } else {
    if (next_filtered_ == 0) next_filtered_ = beta;
    while (next_filtered_ + beta <= s) {
      on_stage_value(next_filtered_, filtered_at(next_filtered_), out);
      ++next_filtered_;
    }
  }
  if (out.empty()) return std::nullopt;
  return out.front();
}

std::vector<std::size_t> OnlineDetector::finish() {
  if (finished_) return {};
  finished_ = true;
  std::vector<std::size_t> out;
  if (raw_count_ == 0 || !config_.filter) return out;
  const std::size_t beta = config_.beta;
  if (next_filtered_ == 0) next_filtered_ = beta;
  const std::size_t valid_end = beta + raw_count_;
  for (; next_filtered_ < valid_end; ++next_filtered_) {
    on_stage_value(next_filtered_, filtered_at(next_filtered_), out);
  }
  return out;
}

double OnlineDetector::raw_or_pad(std::size_t index) const {
  const std::size_t beta = config_.beta;
  if (index < beta || index >= beta + raw_count_) return NullConstants::null_mean;
  return raw_.at(index - beta - raw_first_);
}

double OnlineDetector::filtered_at(std::size_t index) const {
  const std::size_t beta = config_.beta;
  std::vector<double> window(2 * beta + 1);
  for (std::size_t i = 0; i < window.size(); ++i) {
    window[i] = index + i < beta ? NullConstants::null_mean : raw_or_pad(index + i - beta);
  }
  return detail::convolve_at(config_.filter->taps, window);
}

void OnlineDetector::on_stage_value(std::size_t index, double value,
                                    std::vector<std::size_t>& out) {
  recent_.emplace_back(index, value);
  if (recent_.size() > 3) recent_.erase(recent_.begin());
  if (recent_.size() < 3) return;
  const double left = recent_[0].second;
  const auto [mid_index, mid] = recent_[1];
  const double right = recent_[2].second;
  if (mid > left && mid > right && mid > config_.lambda) out.push_back(mid_index);
}

}  // namespace wcpd
