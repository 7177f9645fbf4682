#include "phishguard/metrics.hpp"

#include "phishguard/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace phishguard {

ConfusionMatrix confusion(const LabelVector& y_true, const LabelVector& y_pred) {
  if (y_true.size() != y_pred.size()) {
    throw DataError("confusion: " + std::to_string(y_true.size()) + " true labels vs " +
                    std::to_string(y_pred.size()) + " predictions");
  }
  if (y_true.size() == 0) throw DataError("confusion: no samples");
  ConfusionMatrix cm;
  for (Index i = 0; i < y_true.size(); ++i) {
    const bool actual = y_true[i] == kPhishing;
    const bool predicted = y_pred[i] == kPhishing;
    if (actual && predicted) ++cm.tp;
    else if (actual) ++cm.fn;
    else if (predicted) ++cm.fp;
    else ++cm.tn;
  }
  return cm;
}

double precision(const ConfusionMatrix& cm) {
  const Index denom = cm.tp + cm.fp;
  return denom == 0 ? 0.0 : static_cast<double>(cm.tp) / static_cast<double>(denom);
}

double recall(const ConfusionMatrix& cm) {
  const Index denom = cm.tp + cm.fn;
  return denom == 0 ? 0.0 : static_cast<double>(cm.tp) / static_cast<double>(denom);
}

double f1(const ConfusionMatrix& cm) {
  const double p = precision(cm);
  const double r = recall(cm);
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

double accuracy_pct(const ConfusionMatrix& cm) {
  if (cm.total() == 0) return 0.0;
  return static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total()) * 100.0;
}

double roc_auc(const Eigen::Ref<const Vector>& scores, const LabelVector& y_true) {
  if (scores.size() != y_true.size()) {
    throw DataError("roc_auc: " + std::to_string(scores.size()) + " scores vs " +
                    std::to_string(y_true.size()) + " labels");
  }
  const auto counts = class_counts(y_true);
  if (counts[0] == 0 || counts[1] == 0) throw DataError("roc_auc needs both classes present");

  const auto n = static_cast<std::size_t>(scores.size());
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return scores[a] < scores[b]; });

  // Sum of 1-based average ranks of the positives.
  double positive_rank_sum = 0.0;
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start + 1;
    while (end < n && scores[order[end]] == scores[order[start]]) ++end;
    const double avg_rank = 0.5 * static_cast<double>(start + 1 + end);
    for (std::size_t k = start; k < end; ++k) {
      if (y_true[order[k]] == kPhishing) positive_rank_sum += avg_rank;
    }
    start = end;
  }
  const auto pos = static_cast<double>(counts[1]);
  const auto neg = static_cast<double>(counts[0]);
  return (positive_rank_sum - pos * (pos + 1.0) / 2.0) / (pos * neg);
}

EvalReport evaluate(const Eigen::Ref<const Vector>& scores, const LabelVector& y_true,
                    double threshold) {
  LabelVector predicted(scores.size());
  for (Index i = 0; i < scores.size(); ++i) predicted[i] = scores[i] >= threshold ? kPhishing : kLegitimate;
  EvalReport report;
  report.confusion = confusion(y_true, predicted);
  report.accuracy_pct = accuracy_pct(report.confusion);
  report.precision = precision(report.confusion);
  report.recall = recall(report.confusion);
  report.f1 = f1(report.confusion);
  const auto counts = class_counts(y_true);
  report.auc = (counts[0] > 0 && counts[1] > 0) ? roc_auc(scores, y_true)
                                                : std::numeric_limits<double>::quiet_NaN();
  return report;
}

void write_table(std::ostream& out, std::span<const NamedReport> rows) {
  std::size_t name_width = std::string_view("Classifier").size();
  for (const auto& row : rows) name_width = std::max(name_width, row.name.size());
  const auto w = static_cast<int>(name_width);

  out << std::left << std::setw(w) << "Classifier" << std::right << "  " << std::setw(11)
      << "Accuracy(%)" << "  " << std::setw(9) << "Precision" << "  " << std::setw(6) << "Recall"
      << "  " << std::setw(8) << "F1-Score" << "  " << std::setw(5) << "AUC" << '\n';
  out << std::string(name_width + 2 + 11 + 2 + 9 + 2 + 6 + 2 + 8 + 2 + 5, '-') << '\n';
  for (const auto& row : rows) {
    const EvalReport& r = row.report;
    std::ostringstream auc;
    if (std::isnan(r.auc)) auc << "n/a";
    else auc << std::fixed << std::setprecision(3) << r.auc;
    out << std::left << std::setw(w) << row.name << std::right << std::fixed << "  "
        << std::setw(11) << std::setprecision(2) << r.accuracy_pct << "  " << std::setw(9)
        << std::setprecision(3) << r.precision << "  " << std::setw(6) << r.recall << "  "
        << std::setw(8) << r.f1 << "  " << std::setw(5) << auc.str() << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

}  // namespace phishguard
