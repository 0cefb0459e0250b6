#include "wcpd/tssc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "wcpd/error.hpp"

namespace wcpd {

namespace {

SymmetricMatrix check_affinity(Matrix m) {
  SymmetricMatrix s(std::move(m));
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s(i, i) != 1.0) throw DataError("affinity diagonal must be 1");
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (!(s(i, j) > 0.0 && s(i, j) <= 1.0)) throw DataError("affinity entries must lie in (0, 1]");
    }
  }
  return s;
}

}  // namespace

AffinityMatrix::AffinityMatrix(Matrix m) : m_(check_affinity(std::move(m))) {}

void SegmentLabeling::validate() const {
  if (labels.size() != change_points.size() + 1) throw DataError("need one label per segment");
  for (int l : labels) {
    if (l < 0 || static_cast<std::size_t>(l) >= k) throw DataError("label outside [0, K)");
  }
  for (std::size_t i = 1; i < change_points.size(); ++i) {
    if (change_points[i] <= change_points[i - 1]) throw DataError("change points not strictly increasing");
  }
}

std::vector<int> SegmentLabeling::expand(std::size_t length) const {
  validate();
  if (!change_points.empty() && change_points.back() >= length) {
    throw DataError("change point beyond series length");
  }
  std::vector<int> out(length);
  std::size_t seg = 0;
  for (std::size_t t = 0; t < length; ++t) {
    while (seg < change_points.size() && t >= change_points[seg]) ++seg;
    out[t] = labels[seg];
  }
  return out;
}

std::vector<double> hamming_window(std::size_t beta) {
  if (beta < 1) throw DataError("beta must be at least 1");
  const std::size_t len = 2 * beta;
  std::vector<double> w(len);
  const double denom = static_cast<double>(len - 1);
  for (std::size_t n = 0; n < len; ++n) {
    w[n] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) / denom);
  }
  return w;
}

std::vector<double> boundary_weights(std::size_t length, std::size_t beta) {
  if (length == 0) throw DataError("empty segment");
  const auto window = hamming_window(beta);
  std::vector<double> w(length);
  for (std::size_t i = 0; i < length; ++i) {
    const std::size_t from_end = length - 1 - i;
    const double rise = i < beta ? window[i] : 1.0;
    const double fall = from_end < beta ? window[2 * beta - 1 - from_end] : 1.0;
    w[i] = std::min(rise, fall);
  }
  return w;
}

Segment segment_distribution(const TimeSeries& series, std::size_t start, std::size_t end,
                             std::size_t beta) {
  if (end <= start) throw DataError("empty segment");
  if (end > series.length()) throw DataError("segment extends past series end");
  const auto weights = boundary_weights(end - start, beta);
  Segment seg;
  seg.start = start;
  seg.end = end;
  for (std::size_t k = 0; k < series.dimension(); ++k) {
    seg.dims.push_back(build_empirical(series.channel(k).subspan(start, end - start), weights));
  }
  return seg;
}

AffinityMatrix affinity_matrix(const std::vector<Segment>& segments, double scale) {
  const std::size_t n = segments.size();
  if (n < 2) throw DataError("affinity needs at least two segments");
  if (!(scale > 0.0) || !std::isfinite(scale)) throw DataError("affinity scale must be positive");
  const std::size_t d = segments.front().dims.size();
  for (const auto& s : segments) {
    if (s.dims.size() != d || d == 0) throw DataError("segments differ in dimension");
  }
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      double w2 = 0.0;
      for (std::size_t k = 0; k < d; ++k) w2 += wasserstein2(segments[i].dims[k], segments[j].dims[k]);
      w2 /= static_cast<double>(d);
      const double v = std::exp(-scale * w2);
      // keep entries strictly positive even for distances beyond exp underflow
      a(i, j) = a(j, i) = std::max(v, std::numeric_limits<double>::min());
    }
  }
  return AffinityMatrix(std::move(a));
}

std::vector<int> spectral_cluster(const AffinityMatrix& affinity, std::size_t k, std::uint64_t seed) {
  const std::size_t n = affinity.size();
  if (k < 1) throw DataError("K must be at least 1");
  if (k > n) throw DataError("K exceeds number of segments");
  if (k == 1) return std::vector<int>(n, 0);

  std::vector<double> inv_sqrt_degree(n);
  for (std::size_t i = 0; i < n; ++i) {
    double deg = 0.0;
    for (std::size_t j = 0; j < n; ++j) deg += affinity(i, j);
    inv_sqrt_degree[i] = 1.0 / std::sqrt(deg);
  }
  Matrix lap(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = (i == j ? 1.0 : 0.0) - inv_sqrt_degree[i] * affinity(i, j) * inv_sqrt_degree[j];
      lap(i, j) = lap(j, i) = v;
    }
  }
  const auto eig = eigh_symmetric(SymmetricMatrix(std::move(lap)));

  Matrix embedding(n, k);
  for (std::size_t i = 0; i < n; ++i) {
    double norm = 0.0;
    for (std::size_t c = 0; c < k; ++c) norm += eig.vectors(i, c) * eig.vectors(i, c);
    norm = std::sqrt(norm);
    for (std::size_t c = 0; c < k; ++c) embedding(i, c) = norm > 0.0 ? eig.vectors(i, c) / norm : 0.0;
  }
  return kmeans(embedding, k, seed, 10).labels;
}

SegmentLabeling cluster_segments(const TimeSeries& series, const std::vector<std::size_t>& change_points,
                                 std::size_t k, std::size_t beta, std::uint64_t seed) {
  SegmentLabeling out;
  out.change_points = change_points;
  out.k = k;
  std::vector<std::size_t> bounds{0};
  for (std::size_t c : change_points) {
    if (c <= bounds.back() || c >= series.length()) throw DataError("change points must be increasing and inside (0, T)");
    bounds.push_back(c);
  }
  bounds.push_back(series.length());

  const std::size_t n = bounds.size() - 1;
  if (k < 1) throw DataError("K must be at least 1");
  if (k > n) throw DataError("K exceeds number of segments");
  if (n == 1) {
    out.labels = {0};
    return out;
  }
  std::vector<Segment> segments;
  segments.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    segments.push_back(segment_distribution(series, bounds[i], bounds[i + 1], beta));
  }
  out.labels = spectral_cluster(affinity_matrix(segments), k, seed);
  return out;
}

}  // namespace wcpd
