#include "phishguard/commands.hpp"

#include <iomanip>
#include <ostream>

namespace phishguard {
namespace {

using nlohmann::json;

EvalReport evaluate_member(const TrainedClassifier& member, const Matrix& X, const LabelVector& y) {
  return evaluate(member.predict_proba_rows(X), y);
}

json named_reports_json(std::span<const NamedReport> rows) {
  json out = json::array();
  for (const auto& r : rows) {
    json entry = to_json(r.report);
    entry["classifier"] = r.name;
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace

ReportFormat parse_report_format(std::string_view name) {
  if (name == "text") return ReportFormat::Text;
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  throw UsageError("unknown report format '" + std::string(name) + "' (expected text, json or csv)");
}

Matrix select_columns(const Matrix& X, std::span<const Index> columns) {
  Matrix out(X.rows(), static_cast<Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) out.col(static_cast<Index>(k)) = X.col(columns[k]);
  return out;
}

TrainOutcome run_train(const Dataset& data, const PipelineConfig& config) {
  TrainedPipeline trained = train_pipeline(data, config);
  const EnsembleModel& model = trained.model;
  const Dataset& test = trained.split.test;
  const Dataset& train = trained.split.train;

  TrainOutcome outcome;
  const Matrix test_scaled = transform(model.scaler, select_columns(test.features, model.selected_features));
  for (const auto& member : model.members) {
    outcome.member_test.push_back(
        {std::string(to_string(member.kind())), evaluate_member(member, test_scaled, test.labels)});
  }
  outcome.ensemble_test = {"Ensemble", evaluate(ensemble_predict_proba_rows(model, test.features), test.labels)};

  outcome.file.config = config;
  outcome.file.model = std::move(trained.model);
  outcome.file.train_metrics = evaluate(ensemble_predict_proba_rows(outcome.file.model, train.features), train.labels);
  outcome.file.test_metrics = outcome.ensemble_test.report;
  return outcome;
}

ComparisonOutcome run_compare(const Dataset& data, const PipelineConfig& config) {
  const TrainedPipeline trained = train_pipeline(data, config);
  const DataSplit& split = trained.split;
  const EnsembleModel& model = trained.model;

  ComparisonOutcome outcome;
  outcome.train_rows = split.train.rows();
  outcome.test_rows = split.test.rows();
  outcome.selected_names = model.selected_names();

  for (std::size_t m = 0; m < kAllClassifierKinds.size(); ++m) {
    const ClassifierKind kind = kAllClassifierKinds[m];
    const TrainedClassifier raw =
        train(kind, config.hyper, split.train.features, split.train.labels, member_seed(config.seed, m));
    outcome.before.push_back({std::string(to_string(kind)), evaluate_member(raw, split.test.features, split.test.labels)});
  }

  const Matrix test_scaled = transform(model.scaler, select_columns(split.test.features, model.selected_features));
  for (const auto& member : model.members) {
    outcome.after.push_back(
        {std::string(to_string(member.kind())), evaluate_member(member, test_scaled, split.test.labels)});
  }
  outcome.ensemble_after = {"Ensemble", evaluate(ensemble_predict_proba_rows(model, split.test.features), split.test.labels)};
  return outcome;
}

EvalReport run_evaluate(const EnsembleModel& model, const Dataset& data) {
  data.validate();
  if (data.rows() == 0) throw DataError("evaluation dataset is empty");
  std::vector<Index> columns;
  std::vector<std::string> missing;
  for (const auto& name : model.selected_names()) {
    if (const auto idx = data.column_index(name)) columns.push_back(*idx);
    else missing.push_back(name);
  }
  if (!missing.empty()) {
    std::string msg = "dataset lacks feature column(s) required by the model: ";
    for (std::size_t i = 0; i < missing.size(); ++i) msg += (i ? ", " : "") + missing[i];
    throw DataError(msg);
  }
  const Matrix selected = select_columns(data.features, columns);
  Vector scores(data.rows());
  Vector row(selected.cols());
  for (Index i = 0; i < data.rows(); ++i) {
    row = selected.row(i).transpose();
    scores[i] = ensemble_predict_proba_selected(model, row);
  }
  return evaluate(scores, data.labels, model.threshold);
}

std::vector<FeatureScore> run_rank(const Dataset& data, const BinningSpec& binning) {
  return rank_features(data, binning);
}

void write_train_report(std::ostream& out, const TrainOutcome& outcome, ReportFormat format) {
  std::vector<NamedReport> rows = outcome.member_test;
  rows.push_back(outcome.ensemble_test);
  const EnsembleModel& model = outcome.file.model;
  if (format == ReportFormat::Json) {
    json j = {{"test", named_reports_json(rows)},
              {"weights", model.weights},
              {"selected_features", model.selected_names()}};
    out << j.dump(2) << '\n';
    return;
  }
  if (format == ReportFormat::Csv) {
    out << "classifier,weight,accuracy,precision,recall,f1,auc\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i].report;
      out << rows[i].name << ',' << (i < model.weights.size() ? model.weights[i] : 0.0) << ','
          << r.accuracy_pct << ',' << r.precision << ',' << r.recall << ',' << r.f1 << ',' << r.auc << '\n';
    }
    return;
  }
  out << "Selected features (" << model.selected_features.size() << "):";
  for (const auto& name : model.selected_names()) out << ' ' << name;
  out << "\nMember weights:";
  for (std::size_t i = 0; i < model.members.size(); ++i) {
    out << ' ' << to_string(model.members[i].kind()) << '=' << std::fixed << std::setprecision(4)
        << model.weights[i];
  }
  out.unsetf(std::ios::floatfield);
  out << "\n\nHeld-out test metrics\n";
  write_table(out, rows);
}

void write_comparison_csv(std::ostream& out, const ComparisonOutcome& outcome) {
  out << "classifier,condition,accuracy,precision,recall,f1\n";
  const auto emit = [&](const std::vector<NamedReport>& rows, const char* condition) {
    for (const auto& r : rows) {
      out << r.name << ',' << condition << ',' << std::setprecision(17) << r.report.accuracy_pct << ','
          << r.report.precision << ',' << r.report.recall << ',' << r.report.f1 << '\n';
    }
  };
  emit(outcome.before, "before");
  emit(outcome.after, "after");
}

void write_comparison(std::ostream& out, const ComparisonOutcome& outcome, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    write_comparison_csv(out, outcome);
    return;
  }
  if (format == ReportFormat::Json) {
    json j = {{"before", named_reports_json(outcome.before)},
              {"after", named_reports_json(outcome.after)},
              {"ensemble_after", named_reports_json(std::span(&outcome.ensemble_after, 1))[0]},
              {"selected_features", outcome.selected_names},
              {"train_rows", outcome.train_rows},
              {"test_rows", outcome.test_rows}};
    out << j.dump(2) << '\n';
    return;
  }
  out << "Split: " << outcome.train_rows << " train rows, " << outcome.test_rows << " test rows\n\n";
  out << "Classification metrics before feature selection and standardization\n";
  write_table(out, outcome.before);
  out << "\nClassification metrics after feature selection and standardization\n";
  std::vector<NamedReport> after = outcome.after;
  after.push_back(outcome.ensemble_after);
  write_table(out, after);
}

void write_evaluation(std::ostream& out, const EvalReport& report, ReportFormat format) {
  if (format == ReportFormat::Json) {
    out << to_json(report).dump(2) << '\n';
    return;
  }
  if (format == ReportFormat::Csv) {
    out << "tp,fn,fp,tn,accuracy,precision,recall,f1,auc\n"
        << report.confusion.tp << ',' << report.confusion.fn << ',' << report.confusion.fp << ','
        << report.confusion.tn << ',' << std::setprecision(17) << report.accuracy_pct << ','
        << report.precision << ',' << report.recall << ',' << report.f1 << ',' << report.auc << '\n';
    return;
  }
  out << "Confusion: TP=" << report.confusion.tp << " FN=" << report.confusion.fn
      << " FP=" << report.confusion.fp << " TN=" << report.confusion.tn << "\n\n";
  const NamedReport row{"Ensemble", report};
  write_table(out, std::span(&row, 1));
}

void write_ranking(std::ostream& out, std::span<const FeatureScore> ranking, ReportFormat format) {
  if (format == ReportFormat::Json) {
    json rows = json::array();
    for (const auto& s : ranking) {
      rows.push_back({{"rank", s.rank}, {"name", s.feature_name}, {"index", s.feature_index}, {"gain", s.gain}});
    }
    out << rows.dump(2) << '\n';
    return;
  }
  if (format == ReportFormat::Csv) {
    out << "name,gain\n";
    for (const auto& s : ranking) out << s.feature_name << ',' << std::setprecision(17) << s.gain << '\n';
    return;
  }
  std::size_t width = 4;
  for (const auto& s : ranking) width = std::max(width, s.feature_name.size());
  out << std::left << std::setw(5) << "Rank" << std::setw(static_cast<int>(width) + 2) << "Name"
      << std::right << "Gain(bits)\n";
  for (const auto& s : ranking) {
    out << std::left << std::setw(5) << s.rank << std::setw(static_cast<int>(width) + 2) << s.feature_name
        << std::right << std::fixed << std::setprecision(6) << s.gain << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

}  // namespace phishguard
