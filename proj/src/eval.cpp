#include "wcpd/eval.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <fmt/format.h>

#include "wcpd/error.hpp"
#include "wcpd/numeric.hpp"

namespace wcpd {

namespace {

std::size_t distance(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

}  // namespace

F1Score cp_f1(std::span<const std::size_t> predicted, std::span<const std::size_t> truth,
              std::size_t delta) {
  std::vector<bool> used(predicted.size(), false);
  F1Score s;
  for (std::size_t tau : truth) {
    std::size_t best = predicted.size();
    for (std::size_t i = 0; i < predicted.size(); ++i) {
      if (used[i] || distance(predicted[i], tau) > delta) continue;
      if (best == predicted.size() || distance(predicted[i], tau) < distance(predicted[best], tau)) best = i;
    }
    if (best < predicted.size()) {
      used[best] = true;
      ++s.matches;
    }
  }
  const auto m = static_cast<double>(s.matches);
  s.precision = predicted.empty() ? 1.0 : m / static_cast<double>(predicted.size());
  s.recall = truth.empty() ? 1.0 : m / static_cast<double>(truth.size());
  s.f1 = s.precision + s.recall > 0.0 ? 2.0 * s.precision * s.recall / (s.precision + s.recall) : 0.0;
  return s;
}

double cp_auc(const StatTrace& trace, std::span<const std::size_t> truth, std::size_t delta) {
  struct Item {
    double value;
    bool positive;
  };
  std::vector<Item> items;
  for (std::size_t t = trace.valid_begin; t < trace.valid_end; ++t) {
    const bool pos = std::any_of(truth.begin(), truth.end(),
                                 [&](std::size_t tau) { return distance(t, tau) <= delta; });
    items.push_back({trace.values[t], pos});
  }
  const auto n_pos = static_cast<double>(
      std::count_if(items.begin(), items.end(), [](const Item& i) { return i.positive; }));
  const auto n_neg = static_cast<double>(items.size()) - n_pos;
  if (n_pos == 0.0 || n_neg == 0.0) throw DataError("degenerate AUC");

  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.value < b.value; });
  // midranks over tie groups
  double rank_sum = 0.0;
  std::size_t i = 0;
  while (i < items.size()) {
    std::size_t j = i;
    while (j < items.size() && items[j].value == items[i].value) ++j;
    const double midrank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t q = i; q < j; ++q) {
      if (items[q].positive) rank_sum += midrank;
    }
    i = j;
  }
  return (rank_sum - n_pos * (n_pos + 1.0) / 2.0) / (n_pos * n_neg);
}

double label_accuracy(const SegmentLabeling& predicted, std::span<const int> truth_labels,
                      std::size_t k) {
  if (truth_labels.empty()) throw DataError("empty truth labels");
  const auto expanded = predicted.expand(truth_labels.size());

  std::map<int, std::size_t> truth_ids;
  for (int l : truth_labels) truth_ids.emplace(l, 0);
  std::size_t next = 0;
  for (auto& [label, id] : truth_ids) id = next++;

  const std::size_t size = std::max({k, predicted.k, truth_ids.size()});
  Matrix counts(size, size);
  for (std::size_t t = 0; t < truth_labels.size(); ++t) {
    counts(static_cast<std::size_t>(expanded[t]), truth_ids[truth_labels[t]]) += 1.0;
  }
  double max_count = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) max_count = std::max(max_count, counts(i, j));
  }
  Matrix cost(size, size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) cost(i, j) = max_count - counts(i, j);
  }
  const auto mapping = hungarian(cost);
  double correct = 0.0;
  for (std::size_t i = 0; i < size; ++i) correct += counts(i, mapping[i]);
  return correct / static_cast<double>(truth_labels.size());
}

std::string EvalReport::to_text() const {
  std::string out;
  auto line = [&](std::string_view key, const auto& value) {
    out += fmt::format("{}={}\n", key, value);
  };
  line("K", k);
  line("beta", beta);
  line("lambda", lambda);
  line("delta", delta);
  line("predicted_count", predicted_count);
  line("truth_count", truth_count);
  line("cp_precision", f1.precision);
  line("cp_recall", f1.recall);
  line("cp_f1", f1.f1);
  if (has_auc) line("cp_auc", cp_auc);
  if (has_label_accuracy) line("label_accuracy", label_accuracy);
  return out;
}

}  // namespace wcpd
