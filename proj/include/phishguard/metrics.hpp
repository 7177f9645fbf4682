#pragma once

#include "phishguard/types.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace phishguard {

/// Phishing is the positive class.
struct ConfusionMatrix {
  Index tp = 0;
  Index fn = 0;
  Index fp = 0;
  Index tn = 0;

  Index total() const { return tp + fn + fp + tn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

ConfusionMatrix confusion(const LabelVector& y_true, const LabelVector& y_pred);

// Zero denominators yield 0.
double precision(const ConfusionMatrix& cm);
double recall(const ConfusionMatrix& cm);
double f1(const ConfusionMatrix& cm);
/// Percentage in [0, 100].
double accuracy_pct(const ConfusionMatrix& cm);

/// Mann-Whitney AUC with average ranks for tied scores. Throws DataError when
/// only one class is present.
double roc_auc(const Eigen::Ref<const Vector>& scores, const LabelVector& y_true);

struct EvalReport {
  ConfusionMatrix confusion;
  double accuracy_pct = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double auc = 0.0;
};

/// Labels are thresholded scores (score >= threshold is phishing).
EvalReport evaluate(const Eigen::Ref<const Vector>& scores, const LabelVector& y_true,
                    double threshold = 0.5);

struct NamedReport {
  std::string name;
  EvalReport report;
};

/// Aligned table with columns Classifier, Accuracy(%), Precision, Recall,
/// F1-Score, AUC. Accuracy is shown to 0.01, the rest to 3 decimals.
void write_table(std::ostream& out, std::span<const NamedReport> rows);

}  // namespace phishguard
