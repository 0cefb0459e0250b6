#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wcpd/cpd.hpp"
#include "wcpd/tssc.hpp"

namespace wcpd {

struct F1Score {
  double precision = 1.0;
  double recall = 1.0;
  double f1 = 1.0;
  std::size_t matches = 0;
};

/// Margin-based change point F1. True change points are visited in increasing
/// order; each takes the nearest still-unmatched prediction within +-delta
/// (the earlier one on a distance tie). An empty prediction set has precision
/// 1, an empty truth set has recall 1, and f1 is 0 when both are 0.
F1Score cp_f1(std::span<const std::size_t> predicted, std::span<const std::size_t> truth,
              std::size_t delta);

/// Index-level ROC area of a trace: valid indices within delta of a true
/// change point are positives, the remaining valid indices negatives. Exact
/// Mann-Whitney statistic with ties counted as one half.
double cp_auc(const StatTrace& trace, std::span<const std::size_t> truth, std::size_t delta);

/// Fraction of samples whose predicted label, after the accuracy-maximizing
/// one-to-one relabeling (Hungarian on max - confusion), equals the truth.
double label_accuracy(const SegmentLabeling& predicted, std::span<const int> truth_labels,
                      std::size_t k);

struct EvalReport {
  std::size_t k = 0;
  std::size_t beta = 0;
  double lambda = 0.0;
  std::size_t delta = 0;
  std::size_t predicted_count = 0;
  std::size_t truth_count = 0;
  F1Score f1;
  bool has_auc = false;
  double cp_auc = 0.0;
  bool has_label_accuracy = false;
  double label_accuracy = 0.0;

  /// key=value lines in a fixed order.
  std::string to_text() const;
};

}  // namespace wcpd
