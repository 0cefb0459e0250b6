#include "wcpd/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wcpd/error.hpp"

namespace wcpd {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DataError(what);
}

}  // namespace

EmpiricalDist build_empirical(std::span<const double> values,
                              std::span<const double> weights) {
  if (values.empty()) throw DataError("empty distribution");
  if (!weights.empty() && weights.size() != values.size()) {
    throw DataError("weights and values differ in length");
  }
  for (double v : values) require_finite(v, "non-finite sample");

  const std::size_t n = values.size();
  std::vector<double> raw(n, 1.0);
  if (!weights.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      require_finite(weights[i], "non-finite weight");
      if (weights[i] < 0.0) throw DataError("negative weight");
      raw[i] = weights[i];
    }
  }
  const double total = std::accumulate(raw.begin(), raw.end(), 0.0);
  if (!(total > 0.0)) throw DataError("weights sum to zero");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });

  EmpiricalDist dist;
  dist.support_.reserve(n);
  dist.weights_.reserve(n);
  for (std::size_t i : order) {
    dist.support_.push_back(values[i]);
    dist.weights_.push_back(weights.empty() ? 1.0 / static_cast<double>(n)
                                            : raw[i] / total);
  }
  dist.cumulative_.resize(n);
  std::partial_sum(dist.weights_.begin(), dist.weights_.end(),
                   dist.cumulative_.begin());
  dist.cumulative_.back() = 1.0;

  const double w0 = dist.weights_.front();
  dist.uniform_ = std::all_of(dist.weights_.begin(), dist.weights_.end(),
                              [w0](double w) { return std::abs(w - w0) <= 1e-12 * w0; });
  return dist;
}

double ecdf_eval(const EmpiricalDist& dist, double x) {
  require_finite(x, "non-finite evaluation point");
  const auto s = dist.support();
  const auto idx = static_cast<std::size_t>(std::upper_bound(s.begin(), s.end(), x) - s.begin());
  return idx == 0 ? 0.0 : dist.cumulative()[idx - 1];
}

double quantile(const EmpiricalDist& dist, double u) {
  if (!(u > 0.0 && u <= 1.0)) throw DataError("quantile level outside (0, 1]");
  const auto c = dist.cumulative();
  auto it = std::lower_bound(c.begin(), c.end(), u);
  if (it == c.end()) --it;
  return dist.support()[static_cast<std::size_t>(it - c.begin())];
}

double w2t_statistic(const EmpiricalDist& p, const EmpiricalDist& q) {
  if (!p.is_uniform() || !q.is_uniform()) {
    throw DataError("two-sample statistic requires uniform samples");
  }
  return w2t_sorted(p.support(), q.support());
}

double w2t_sorted(std::span<const double> p, std::span<const double> q) {
  if (p.empty() || q.empty()) throw DataError("empty distribution");
  const std::size_t m = p.size();
  const std::size_t n = q.size();
  const double dm = static_cast<double>(m);
  const double dn = static_cast<double>(n);
  const double width = 1.0 / dn;

  // On ((j-1)/n, j/n] the integrand is (k - x)^2 with k = P_m(y_j), so the piece
  // integrates to [(k-a)^3 - (k-b)^3] / 3 = (b-a) [(k-a)^2 + (k-a)(k-b) + (k-b)^2] / 3.
  double acc = 0.0;
  std::size_t below = 0;
  std::size_t j = 0;
  while (j < n) {
    const double v = q[j];
    while (below < m && p[below] < v) ++below;
    std::size_t at_or_below = below;
    while (at_or_below < m && p[at_or_below] == v) ++at_or_below;
    std::size_t block_end = j;
    while (block_end < n && q[block_end] == v) ++block_end;

    const double tied_p = static_cast<double>(at_or_below - below);
    const double tied_q = static_cast<double>(block_end - j);
    for (std::size_t r = 1; j < block_end; ++j, ++r) {
      const double count = static_cast<double>(below) + tied_p * static_cast<double>(r) / tied_q;
      const double k = count / dm;
      const double da = k - static_cast<double>(j) / dn;
      const double db = k - static_cast<double>(j + 1) / dn;
      acc += width * (da * da + da * db + db * db);
    }
  }
  return acc / 3.0 * (dm * dn / (dm + dn));
}

double wasserstein2(const EmpiricalDist& a, const EmpiricalDist& b) {
  const auto xa = a.support();
  const auto xb = b.support();
  const auto ca = a.cumulative();
  const auto cb = b.cumulative();

  double cost = 0.0;
  double prev = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < xa.size() && j < xb.size()) {
    const double next = std::min(ca[i], cb[j]);
    const double diff = xa[i] - xb[j];
    cost += (next - prev) * diff * diff;
    prev = next;
    const bool step_a = ca[i] <= next;
    const bool step_b = cb[j] <= next;
    if (step_a) ++i;
    if (step_b) ++j;
  }
  return std::sqrt(std::max(cost, 0.0));
}

}  // namespace wcpd
