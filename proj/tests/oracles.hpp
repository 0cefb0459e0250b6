// Test-only reference implementations. None of these share code with the
// library paths they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

/// W2T by direct evaluation of P_m(Q_n^{-1}(x)) from its definitions and
/// 3-point Gauss-Legendre quadrature on each (j-1)/n..j/n piece (exact for the
/// quadratic integrand). Only valid for tie-free inputs.
inline double w2t_quadrature(std::vector<double> p, std::vector<double> q) {
  const double m = static_cast<double>(p.size());
  const double n = static_cast<double>(q.size());
  std::sort(q.begin(), q.end());
  auto ecdf_p = [&](double x) {
    return static_cast<double>(std::count_if(p.begin(), p.end(), [x](double v) { return v <= x; })) / m;
  };
  auto quantile_q = [&](double u) {
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (static_cast<double>(i + 1) / n >= u) return q[i];
    }
    return q.back();
  };
  const double nodes[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
  const double weights[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
  double total = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) {
    const double a = static_cast<double>(j) / n;
    const double b = static_cast<double>(j + 1) / n;
    for (int g = 0; g < 3; ++g) {
      const double x = 0.5 * (a + b) + 0.5 * (b - a) * nodes[g];
      const double d = ecdf_p(quantile_q(x)) - x;
      total += 0.5 * (b - a) * weights[g] * d * d;
    }
  }
  return m * n / (m + n) * total;
}

/// Optimal quadratic transport cost between two atom sets with positive
/// integer masses, normalized to unit total. Solved as a transportation LP by
/// successive shortest paths (Bellman-Ford on the residual network) with exact
/// integer capacities: supplies are wa[i]*Wb and demands wb[j]*Wa.
/// Returns the cost, not its square root.
inline double transport_cost_lp(const std::vector<double>& xa, const std::vector<long long>& wa,
                                const std::vector<double>& xb, const std::vector<long long>& wb) {
  const std::size_t na = xa.size(), nb = xb.size();
  const std::size_t src = na + nb, sink = src + 1, nodes = sink + 1;
  const long long ta = std::accumulate(wa.begin(), wa.end(), 0LL);
  const long long tb = std::accumulate(wb.begin(), wb.end(), 0LL);
  struct Edge {
    std::size_t to;
    long long cap;
    double cost;
    std::size_t rev;
  };
  std::vector<std::vector<Edge>> g(nodes);
  auto add = [&](std::size_t u, std::size_t v, long long cap, double cost) {
    g[u].push_back({v, cap, cost, g[v].size()});
    g[v].push_back({u, 0, -cost, g[u].size() - 1});
  };
  for (std::size_t i = 0; i < na; ++i) add(src, i, wa[i] * tb, 0.0);
  for (std::size_t j = 0; j < nb; ++j) add(na + j, sink, wb[j] * ta, 0.0);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) add(i, na + j, ta * tb, (xa[i] - xb[j]) * (xa[i] - xb[j]));
  }
  long long remaining = ta * tb;
  double cost = 0.0;
  while (remaining > 0) {
    std::vector<double> dist(nodes, std::numeric_limits<double>::infinity());
    std::vector<std::size_t> pv(nodes, nodes), pe(nodes, 0);
    dist[src] = 0.0;
    for (std::size_t iter = 0; iter < nodes; ++iter) {
      bool changed = false;
      for (std::size_t u = 0; u < nodes; ++u) {
        if (!std::isfinite(dist[u])) continue;
        for (std::size_t e = 0; e < g[u].size(); ++e) {
          const auto& ed = g[u][e];
          const double cand = dist[u] + ed.cost;
          const bool better = !std::isfinite(dist[ed.to]) || cand < dist[ed.to] - 1e-12 * (1.0 + std::abs(dist[ed.to]));
          if (ed.cap > 0 && better) {
            dist[ed.to] = cand;
            pv[ed.to] = u;
            pe[ed.to] = e;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    if (!std::isfinite(dist[sink])) break;
    long long push = remaining;
    std::size_t hops = 0;
    for (std::size_t v = sink; v != src && hops <= nodes; v = pv[v], ++hops) push = std::min(push, g[pv[v]][pe[v]].cap);
    if (hops > nodes) break;  // predecessor cycle from rounding; cannot happen on exact input
    for (std::size_t v = sink; v != src; v = pv[v]) {
      auto& ed = g[pv[v]][pe[v]];
      ed.cap -= push;
      g[v][ed.rev].cap += push;
    }
    cost += static_cast<double>(push) * dist[sink];
    remaining -= push;
  }
  return cost / static_cast<double>(ta * tb);
}

inline double brute_force_assignment(const std::vector<std::vector<double>>& cost) {
  std::vector<std::size_t> perm(cost.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double s = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i) s += cost[i][perm[i]];
    best = std::min(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Hubert-Arabie adjusted Rand index.
inline double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> ca, cb;
  for (std::size_t i = 0; i < a.size(); ++i) {
    joint[{a[i], b[i]}] += 1.0;
    ca[a[i]] += 1.0;
    cb[b[i]] += 1.0;
  }
  auto c2 = [](double x) { return x * (x - 1.0) / 2.0; };
  double sum_joint = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (const auto& [k, v] : joint) sum_joint += c2(v);
  for (const auto& [k, v] : ca) sum_a += c2(v);
  for (const auto& [k, v] : cb) sum_b += c2(v);
  const double total = c2(static_cast<double>(a.size()));
  const double expected = sum_a * sum_b / total;
  const double max_index = 0.5 * (sum_a + sum_b);
  if (max_index == expected) return 1.0;
  return (sum_joint - expected) / (max_index - expected);
}

/// Same partition up to relabeling.
inline bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  std::map<int, int> ab, ba;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab.emplace(a[i], b[i]);
    if (ab[a[i]] != b[i]) return false;
    ba.emplace(b[i], a[i]);
    if (ba[b[i]] != a[i]) return false;
  }
  return true;
}

}  // namespace oracle
