#pragma once

#include "phishguard/dataset.hpp"
#include "phishguard/ensemble.hpp"
#include "phishguard/feature_selection.hpp"
#include "phishguard/metrics.hpp"
#include "phishguard/persistence.hpp"

#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace phishguard {

enum class ReportFormat { Text, Json, Csv };
ReportFormat parse_report_format(std::string_view name);

/// Copies the given columns of X, in order.
Matrix select_columns(const Matrix& X, std::span<const Index> columns);

struct TrainOutcome {
  ModelFile file;
  std::vector<NamedReport> member_test;  // one per base model, kAllClassifierKinds order
  NamedReport ensemble_test;
};

/// Full training run: the pipeline plus held-out evaluation of every member
/// and of the ensemble. `file.created_at` is left empty.
TrainOutcome run_train(const Dataset& data, const PipelineConfig& config);

struct ComparisonOutcome {
  std::vector<NamedReport> before;  // all features, raw values
  std::vector<NamedReport> after;   // top-n features, standardized
  NamedReport ensemble_after;
  std::vector<std::string> selected_names;
  Index train_rows = 0;
  Index test_rows = 0;
};

/// Trains every base model twice on one split: raw and unselected, then
/// selected and standardized.
ComparisonOutcome run_compare(const Dataset& data, const PipelineConfig& config);

/// Scores `data` with `model`, matching the model's selected features to
/// `data` columns by name. Throws DataError listing absent columns.
EvalReport run_evaluate(const EnsembleModel& model, const Dataset& data);

/// Information gain of every feature over the whole dataset.
std::vector<FeatureScore> run_rank(const Dataset& data, const BinningSpec& binning);

// Report writers.
void write_train_report(std::ostream& out, const TrainOutcome& outcome, ReportFormat format);
void write_comparison(std::ostream& out, const ComparisonOutcome& outcome, ReportFormat format);
/// Long form: classifier,condition,accuracy,precision,recall,f1.
void write_comparison_csv(std::ostream& out, const ComparisonOutcome& outcome);
void write_evaluation(std::ostream& out, const EvalReport& report, ReportFormat format);
void write_ranking(std::ostream& out, std::span<const FeatureScore> ranking, ReportFormat format);

}  // namespace phishguard
