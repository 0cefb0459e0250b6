#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "wcpd/empirical.hpp"
#include "wcpd/numeric.hpp"
#include "wcpd/time_series.hpp"

namespace wcpd {

/// Samples [start, end) of a series with one weighted distribution per
/// dimension.
struct Segment {
  std::size_t start = 0;
  std::size_t end = 0;
  std::vector<EmpiricalDist> dims;
};

/// Symmetric segment affinity with unit diagonal and entries in (0, 1].
class AffinityMatrix {
 public:
  explicit AffinityMatrix(Matrix m);

  std::size_t size() const { return m_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const SymmetricMatrix& symmetric() const { return m_; }

 private:
  SymmetricMatrix m_;
};

struct SegmentLabeling {
  std::vector<std::size_t> change_points;
  std::vector<int> labels;
  std::size_t k = 0;

  /// Throws DataError unless there is one label per segment, each in [0, k).
  void validate() const;
  /// Per-sample labels over [0, length).
  std::vector<int> expand(std::size_t length) const;
};

/// Symmetric Hamming window w[n] = 0.54 - 0.46 cos(2 pi n / (2 beta - 1)),
/// n = 0 .. 2 beta - 1.
std::vector<double> hamming_window(std::size_t beta);

/// Pre-normalization sample weights for a segment of `length` samples: the
/// rising half of the Hamming window on the first beta samples, the falling
/// half on the last beta, 1 elsewhere, and the pointwise minimum where the
/// two ranges overlap.
std::vector<double> boundary_weights(std::size_t length, std::size_t beta);

Segment segment_distribution(const TimeSeries& series, std::size_t start, std::size_t end,
                             std::size_t beta);

/// A[i,j] = exp(-scale * W2(i,j)), W2 averaged over dimensions.
AffinityMatrix affinity_matrix(const std::vector<Segment>& segments, double scale = 1.0);

/// Normalized spectral clustering: eigenvectors of the K smallest eigenvalues
/// of I - D^{-1/2} A D^{-1/2}, rows scaled to unit length, then k-means with
/// 10 seeded restarts.
std::vector<int> spectral_cluster(const AffinityMatrix& affinity, std::size_t k, std::uint64_t seed);

/// Splits the series at `change_points`, builds the boundary-weighted segment
/// distributions, and clusters them into k classes.
SegmentLabeling cluster_segments(const TimeSeries& series, const std::vector<std::size_t>& change_points,
                                 std::size_t k, std::size_t beta, std::uint64_t seed);

}  // namespace wcpd
