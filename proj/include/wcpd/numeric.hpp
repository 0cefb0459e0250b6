#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace wcpd {

/// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data_).subspan(i * cols_, cols_);
  }
  std::span<double> row(std::size_t i) { return std::span<double>(data_).subspan(i * cols_, cols_); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Square matrix with |M(i,j) - M(j,i)| <= 1e-12, checked on construction.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(Matrix m);

  std::size_t size() const { return m_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

struct EigenDecomposition {
  /// Ascending.
  std::vector<double> values;
  /// Column j is the unit eigenvector for values[j]; its first component of
  /// magnitude above 1e-12 is positive.
  Matrix vectors;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
/// 1e-12 (relative to ||M||_F when that exceeds 1). Throws NumericalError after
/// 100 sweeps without convergence.
EigenDecomposition eigh_symmetric(const SymmetricMatrix& m);

struct KMeansResult {
  /// Cluster ids renumbered in order of first appearance.
  std::vector<int> labels;
  Matrix centroids;
  /// Within-cluster sum of squared distances.
  double inertia = 0.0;
  /// Inertia after each assignment step of the winning restart.
  std::vector<double> inertia_history;
};

/// k-means++ seeding followed by Lloyd iterations (until the assignment stops
/// changing, at most `max_iterations`), best of `restarts` by inertia. Ties go
/// to the lowest restart index.
KMeansResult kmeans(const Matrix& points, std::size_t k, std::uint64_t seed,
                    std::size_t restarts = 10, std::size_t max_iterations = 300);

/// Minimum-cost perfect assignment for a square cost matrix: result[i] is the
/// column given to row i. Among optimal assignments the lexicographically
/// smallest is returned.
std::vector<std::size_t> hungarian(const Matrix& cost);

double assignment_cost(const Matrix& cost, std::span<const std::size_t> assignment);

}  // namespace wcpd
