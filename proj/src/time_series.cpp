#include "wcpd/time_series.hpp"

#include <cmath>

#include "wcpd/error.hpp"

namespace wcpd {

namespace {

void check_change_points(const std::vector<std::size_t>& cps, std::size_t length) {
  for (std::size_t i = 0; i < cps.size(); ++i) {
    if (cps[i] == 0 || cps[i] >= length) throw DataError("change point outside (0, T)");
    if (i > 0 && cps[i] <= cps[i - 1]) throw DataError("change points not strictly increasing");
  }
}

}  // namespace

TimeSeries::TimeSeries(std::vector<std::vector<double>> channels,
                       std::vector<int> labels,
                       std::vector<std::size_t> change_points)
    : channels_(std::move(channels)),
      labels_(std::move(labels)),
      change_points_(std::move(change_points)) {
  if (channels_.empty()) throw DataError("series has no dimensions");
  const std::size_t t = channels_.front().size();
  if (t == 0) throw DataError("empty series");
  for (const auto& c : channels_) {
    if (c.size() != t) throw DataError("channels differ in length");
    for (double v : c) {
      if (!std::isfinite(v)) throw DataError("non-finite sample");
    }
  }
  if (!labels_.empty() && labels_.size() != t) throw DataError("labels length differs from series length");
  check_change_points(change_points_, t);
}

TimeSeries TimeSeries::from_rows(const std::vector<std::vector<double>>& rows,
                                 std::vector<int> labels,
                                 std::vector<std::size_t> change_points) {
  if (rows.empty()) throw DataError("empty series");
  const std::size_t d = rows.front().size();
  std::vector<std::vector<double>> channels(d, std::vector<double>(rows.size()));
  for (std::size_t t = 0; t < rows.size(); ++t) {
    if (rows[t].size() != d) throw DataError("rows differ in dimension");
    for (std::size_t k = 0; k < d; ++k) channels[k][t] = rows[t][k];
  }
  return TimeSeries(std::move(channels), std::move(labels), std::move(change_points));
}

void TimeSeries::set_change_points(std::vector<std::size_t> change_points) {
  check_change_points(change_points, length());
  change_points_ = std::move(change_points);
}

TimeSeries first_difference(const TimeSeries& series) {
  const std::size_t t = series.length();
  if (t < 2) throw DataError("differencing needs at least two samples");
  std::vector<std::vector<double>> channels(series.dimension());
  for (std::size_t k = 0; k < series.dimension(); ++k) {
    const auto x = series.channel(k);
    channels[k].resize(t - 1);
    for (std::size_t i = 1; i < t; ++i) channels[k][i - 1] = x[i] - x[i - 1];
  }
  std::vector<int> labels;
  if (series.has_labels()) labels.assign(series.labels().begin() + 1, series.labels().end());
  std::vector<std::size_t> cps;
  for (std::size_t c : series.change_points()) {
    if (c > 1) cps.push_back(c - 1);
  }
  return TimeSeries(std::move(channels), std::move(labels), std::move(cps));
}

}  // namespace wcpd
