#include "wcpd/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "wcpd/error.hpp"
#include "wcpd/random.hpp"

namespace wcpd {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

SymmetricMatrix::SymmetricMatrix(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw DataError("matrix is not square");
  for (std::size_t i = 0; i < m_.rows(); ++i) {
    for (std::size_t j = 0; j < m_.cols(); ++j) {
      if (!std::isfinite(m_(i, j))) throw DataError("non-finite matrix entry");
      if (std::abs(m_(i, j) - m_(j, i)) > 1e-12) throw DataError("matrix is not symmetric");
    }
  }
}

// ---------------------------------------------------------------------------
// Jacobi eigensolver

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) s += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(s);
}

void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const double apk = a(p, k);
    const double aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

}  // namespace

EigenDecomposition eigh_symmetric(const SymmetricMatrix& m) {
  constexpr int kMaxSweeps = 100;
  const std::size_t n = m.size();
  Matrix a = m.matrix();
  Matrix v = Matrix::identity(n);

  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) norm += a(i, j) * a(i, j);
  }
  const double tolerance = 1e-12 * std::max(1.0, std::sqrt(norm));

  bool converged = false;
  for (int sweep = 0; sweep <= kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) < tolerance) {
      converged = true;
      break;
    }
    if (sweep == kMaxSweeps) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) != 0.0) rotate(a, v, p, q);
      }
    }
  }
  if (!converged) throw NumericalError("eigensolver did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  EigenDecomposition result;
  result.values.resize(n);
  result.vectors = Matrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t src = order[c];
    result.values[c] = a(src, src);
    double sign = 1.0;
    for (std::size_t r = 0; r < n; ++r) {
      if (std::abs(v(r, src)) > 1e-12) {
        sign = v(r, src) < 0.0 ? -1.0 : 1.0;
        break;
      }
    }
    for (std::size_t r = 0; r < n; ++r) result.vectors(r, c) = sign * v(r, src);
  }
  return result;
}

// ---------------------------------------------------------------------------
// k-means

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

Matrix seed_centroids(const Matrix& points, std::size_t k, Rng& rng) {
  const std::size_t n = points.rows();
  Matrix centroids(k, points.cols());
  std::vector<bool> chosen(n, false);
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());

  std::size_t pick = rng.index(n);
  for (std::size_t c = 0; c < k; ++c) {
    if (c > 0) {
      double total = 0.0;
      for (double d : nearest) total += d;
      if (total > 0.0) {
        const double target = rng.uniform() * total;
        double acc = 0.0;
        pick = n;
        for (std::size_t i = 0; i < n; ++i) {
          if (nearest[i] <= 0.0) continue;
          acc += nearest[i];
          pick = i;
          if (acc > target) break;
        }
      } else {
        // remaining points coincide with centroids; pick an unused one
        std::vector<std::size_t> unused;
        for (std::size_t i = 0; i < n; ++i) {
          if (!chosen[i]) unused.push_back(i);
        }
        pick = unused[rng.index(unused.size())];
      }
    }
    chosen[pick] = true;
    std::copy(points.row(pick).begin(), points.row(pick).end(), centroids.row(c).begin());
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], squared_distance(points.row(i), centroids.row(c)));
    }
  }
  return centroids;
}

KMeansResult lloyd(const Matrix& points, Matrix centroids, std::size_t max_iterations) {
  const std::size_t n = points.rows();
  const std::size_t k = centroids.rows();
  const std::size_t dim = points.cols();
  KMeansResult r;
  r.labels.assign(n, -1);

  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    double inertia = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      int best = 0;
      double best_d = squared_distance(points.row(i), centroids.row(0));
      for (std::size_t c = 1; c < k; ++c) {
        const double d = squared_distance(points.row(i), centroids.row(c));
        if (d < best_d) {
          best_d = d;
          best = static_cast<int>(c);
        }
      }
      if (r.labels[i] != best) changed = true;
      r.labels[i] = best;
      inertia += best_d;
    }
    r.inertia = inertia;
    r.inertia_history.push_back(inertia);
    if (!changed) break;

    Matrix sums(k, dim);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = static_cast<std::size_t>(r.labels[i]);
      ++counts[c];
      for (std::size_t j = 0; j < dim; ++j) sums(c, j) += points(i, j);
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;  // empty cluster keeps its centroid
      for (std::size_t j = 0; j < dim; ++j) centroids(c, j) = sums(c, j) / static_cast<double>(counts[c]);
    }
  }
  r.centroids = std::move(centroids);
  return r;
}

void relabel_by_first_appearance(KMeansResult& r) {
  const std::size_t k = r.centroids.rows();
  std::vector<int> map(k, -1);
  int next = 0;
  for (int& label : r.labels) {
    auto& m = map[static_cast<std::size_t>(label)];
    if (m < 0) m = next++;
    label = m;
  }
  for (auto& m : map) {
    if (m < 0) m = next++;
  }
  Matrix reordered(k, r.centroids.cols());
  for (std::size_t c = 0; c < k; ++c) {
    const auto dst = static_cast<std::size_t>(map[c]);
    std::copy(r.centroids.row(c).begin(), r.centroids.row(c).end(), reordered.row(dst).begin());
  }
  r.centroids = std::move(reordered);
}

}  // namespace

KMeansResult kmeans(const Matrix& points, std::size_t k, std::uint64_t seed,
                    std::size_t restarts, std::size_t max_iterations) {
  const std::size_t n = points.rows();
  if (k == 0) throw DataError("k must be at least 1");
  if (k > n) throw DataError("k exceeds number of points");
  if (restarts == 0) restarts = 1;
  if (max_iterations == 0) max_iterations = 1;

  KMeansResult best;
  bool have_best = false;
  for (std::size_t run = 0; run < restarts; ++run) {
    Rng rng(derive_seed(seed, {run}));
    auto r = lloyd(points, seed_centroids(points, k, rng), max_iterations);
    if (!have_best || r.inertia < best.inertia) {
      best = std::move(r);
      have_best = true;
    }
  }
  relabel_by_first_appearance(best);
  return best;
}

// ---------------------------------------------------------------------------
// Hungarian assignment

namespace {

struct Assignment {
  std::vector<std::size_t> columns;
  double cost = 0.0;
};

// O(n^3) shortest augmenting path with row/column potentials.
Assignment solve_assignment(const Matrix& cost) {
  const std::size_t n = cost.rows();
  Assignment out;
  if (n == 0) return out;
  constexpr double inf = std::numeric_limits<double>::infinity();
  // 1-based indexing; column 0 is the virtual start.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  out.columns.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) out.columns[p[j] - 1] = j - 1;
  for (std::size_t i = 0; i < n; ++i) out.cost += cost(i, out.columns[i]);
  return out;
}

Matrix minor_matrix(const Matrix& cost, std::size_t first_row, const std::vector<std::size_t>& cols) {
  const std::size_t m = cost.rows() - first_row;
  Matrix sub(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) sub(i, j) = cost(first_row + i, cols[j]);
  }
  return sub;
}

}  // namespace

double assignment_cost(const Matrix& cost, std::span<const std::size_t> assignment) {
  double s = 0.0;
  for (std::size_t i = 0; i < assignment.size(); ++i) s += cost(i, assignment[i]);
  return s;
}

std::vector<std::size_t> hungarian(const Matrix& cost) {
  if (cost.rows() != cost.cols()) throw DataError("cost matrix is not square");
  const std::size_t n = cost.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(cost(i, j))) throw DataError("non-finite cost entry");
    }
  }
  double remaining = solve_assignment(cost).cost;

  // Fix rows in order to the smallest column that still admits an optimal
  // completion, which yields the lexicographically smallest optimum.
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(cost(i, j)));
  }
  const double tolerance = 1e-9 * std::max(1.0, scale * static_cast<double>(n));

  std::vector<std::size_t> free_cols(n);
  std::iota(free_cols.begin(), free_cols.end(), std::size_t{0});
  std::vector<std::size_t> result(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t idx = 0; idx < free_cols.size(); ++idx) {
      const std::size_t j = free_cols[idx];
      std::vector<std::size_t> rest = free_cols;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(idx));
      const double tail = rest.empty() ? 0.0 : solve_assignment(minor_matrix(cost, i + 1, rest)).cost;
      if (cost(i, j) + tail <= remaining + tolerance) {
        result[i] = j;
        remaining = tail;
        free_cols = std::move(rest);
        break;
      }
    }
  }
  return result;
}

}  // namespace wcpd
