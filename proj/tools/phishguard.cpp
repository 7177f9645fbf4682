// phishguard: train, compare, evaluate, rank and score URLs from the command line.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.

#include "phishguard/commands.hpp"
#include "phishguard/url_features.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

using namespace phishguard;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

constexpr const char* kConfigEnv = "PHISHGUARD_CONFIG";

// Flag values as parsed; only explicitly given flags override the config.
struct Flags {
  std::string config_path;
  std::string input;
  std::string label_column;
  double test_fraction = 0.0;
  std::uint64_t seed = 0;
  int top = 0;
  int bins = 0;
  std::string weighting;
  std::string out;
  std::string report_format = "text";
  std::string model;
  std::string url;
  std::vector<std::string> overrides;

  int rf_trees = 0, rf_max_depth = 0, knn_k = 0, svm_epochs = 0, lr_epochs = 0;
  double svm_lambda = 0, lr_rate = 0, lr_l2 = 0, nb_smoothing = 0;
};

void add_pipeline_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file (default: $PHISHGUARD_CONFIG)");
  cmd->add_option("--input", f.input, "Feature CSV");
  cmd->add_option("--label-column", f.label_column, "Label column name (default status)");
  cmd->add_option("--test-fraction", f.test_fraction, "Held-out fraction (default 0.2)");
  cmd->add_option("--seed", f.seed, "Random seed (default 42)");
  cmd->add_option("--top", f.top, "Number of top information-gain features (default 20)");
  cmd->add_option("--bins", f.bins, "Maximum bins for continuous features (default 10)");
  cmd->add_option("--weighting", f.weighting, "Member weights: auc, accuracy or uniform")
      ->check(CLI::IsMember({"auc", "accuracy", "uniform"}));
  cmd->add_option("--report-format", f.report_format, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("--rf-trees", f.rf_trees, "Random forest size (default 100)");
  cmd->add_option("--rf-max-depth", f.rf_max_depth, "Tree depth limit, 0 = unlimited");
  cmd->add_option("--knn-k", f.knn_k, "Neighbours for KNN (odd, default 5)");
  cmd->add_option("--svm-lambda", f.svm_lambda, "SVM regularization (default 1e-4)");
  cmd->add_option("--svm-epochs", f.svm_epochs, "SVM epochs (default 50)");
  cmd->add_option("--lr-rate", f.lr_rate, "Logistic regression step size (default 0.1)");
  cmd->add_option("--lr-epochs", f.lr_epochs, "Logistic regression epochs (default 300)");
  cmd->add_option("--lr-l2", f.lr_l2, "Logistic regression L2 penalty (default 1e-4)");
  cmd->add_option("--nb-smoothing", f.nb_smoothing, "Naive Bayes variance smoothing (default 1e-9)");
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

PipelineConfig build_config(const CLI::App* cmd, const Flags& f) {
  PipelineConfig config;
  std::string config_path = f.config_path;
  if (config_path.empty()) {
    if (const char* env = std::getenv(kConfigEnv)) config_path = env;
  }
  if (!config_path.empty()) {
    try {
      merge_config(read_json_file(config_path), config);
    } catch (const ModelFormatError& e) {
      throw UsageError(std::string("config file: ") + e.what());
    }
  }
  const auto given = [&](const char* flag) { return cmd->count(flag) > 0; };
  if (given("--input")) config.input = f.input;
  if (given("--label-column")) config.label_column = f.label_column;
  if (given("--test-fraction")) config.test_fraction = f.test_fraction;
  if (given("--seed")) config.seed = f.seed;
  if (given("--top")) config.top_n = f.top;
  if (given("--bins")) config.binning.max_bins = f.bins;
  if (given("--weighting")) config.weighting = parse_weighting_mode(f.weighting);
  if (given("--rf-trees")) config.hyper.rf.n_trees = f.rf_trees;
  if (given("--rf-max-depth")) config.hyper.rf.max_depth = f.rf_max_depth;
  if (given("--knn-k")) config.hyper.knn.k = f.knn_k;
  if (given("--svm-lambda")) config.hyper.svm.lambda = f.svm_lambda;
  if (given("--svm-epochs")) config.hyper.svm.epochs = f.svm_epochs;
  if (given("--lr-rate")) config.hyper.lr.learning_rate = f.lr_rate;
  if (given("--lr-epochs")) config.hyper.lr.epochs = f.lr_epochs;
  if (given("--lr-l2")) config.hyper.lr.l2 = f.lr_l2;
  if (given("--nb-smoothing")) config.hyper.nb.var_smoothing = f.nb_smoothing;
  if (config.input.empty()) throw UsageError("--input is required");
  config.validate();
  return config;
}

FeatureOverrides parse_overrides(const std::vector<std::string>& items) {
  FeatureOverrides out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("override '" + item + "' is not of the form name=value");
    const std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    double parsed = 0.0;
    try {
      parsed = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) throw UsageError("override '" + item + "' has a non-numeric value");
    out[item.substr(0, eq)] = parsed;
  }
  return out;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out || !(out << contents)) throw IoError("cannot write '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phishing website detection: information-gain feature selection and a weighted ensemble"};
  app.require_subcommand(1);
  Flags f;

  auto* train_cmd = app.add_subcommand("train", "Train the ensemble and save a model file");
  add_pipeline_flags(train_cmd, f);
  train_cmd->add_option("--out", f.out, "Model file to write (default model.json)");

  auto* compare_cmd = app.add_subcommand("compare", "Base models before/after feature selection and standardization");
  add_pipeline_flags(compare_cmd, f);
  compare_cmd->add_option("--out", f.out, "Long-form CSV for plotting");

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Evaluate a saved model on a labelled CSV");
  evaluate_cmd->add_option("--model", f.model, "Model file")->required();
  evaluate_cmd->add_option("--input", f.input, "Feature CSV")->required();
  evaluate_cmd->add_option("--label-column", f.label_column, "Label column name (default status)");
  evaluate_cmd->add_option("--report-format", f.report_format, "text, json or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  evaluate_cmd->add_option("--out", f.out, "Also write the JSON report here");

  auto* rank_cmd = app.add_subcommand("rank", "Rank features by information gain");
  add_pipeline_flags(rank_cmd, f);
  rank_cmd->add_option("--out", f.out, "Write the ranking here (.json for JSON, otherwise CSV)");

  auto* predict_cmd = app.add_subcommand("predict", "Score a URL with a saved model");
  predict_cmd->add_option("--model", f.model, "Model file")->required();
  predict_cmd->add_option("--url", f.url, "URL to score")->required();
  predict_cmd->add_option("--override", f.overrides, "Value for a non-lexical feature, name=value");
  predict_cmd->add_option("--report-format", f.report_format, "text or json")
      ->check(CLI::IsMember({"text", "json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const ReportFormat format = parse_report_format(f.report_format);
    if (train_cmd->parsed()) {
      const PipelineConfig config = build_config(train_cmd, f);
      const Dataset data = load_csv(config.input, config.label_column);
      TrainOutcome outcome = run_train(data, config);
      outcome.file.created_at = current_timestamp();
      save_model(outcome.file, f.out.empty() ? "model.json" : f.out);
      write_train_report(std::cout, outcome, format);
    } else if (compare_cmd->parsed()) {
      const PipelineConfig config = build_config(compare_cmd, f);
      const Dataset data = load_csv(config.input, config.label_column);
      const ComparisonOutcome outcome = run_compare(data, config);
      write_comparison(std::cout, outcome, format);
      if (!f.out.empty()) {
        std::ostringstream csv;
        write_comparison_csv(csv, outcome);
        write_file(f.out, csv.str());
      }
    } else if (evaluate_cmd->parsed()) {
      const EnsembleModel model = load_model(f.model);
      const Dataset data = load_csv(f.input, f.label_column.empty() ? kDefaultLabelColumn : f.label_column);
      const EvalReport report = run_evaluate(model, data);
      write_evaluation(std::cout, report, format);
      if (!f.out.empty()) write_file(f.out, to_json(report).dump(2) + "\n");
    } else if (rank_cmd->parsed()) {
      const PipelineConfig defaults;
      PipelineConfig config = build_config(rank_cmd, f);
      const Dataset data = load_csv(config.input, config.label_column);
      auto ranking = run_rank(data, config.binning);
      // Without --top (here or in a config file) the full ranking is printed.
      if (rank_cmd->count("--top") > 0 || config.top_n != defaults.top_n) {
        ranking.resize(select_top_n(ranking, config.top_n).size());
      }
      write_ranking(std::cout, ranking, format);
      if (!f.out.empty()) {
        std::ostringstream out;
        write_ranking(out, ranking, f.out.ends_with(".json") ? ReportFormat::Json : ReportFormat::Csv);
        write_file(f.out, out.str());
      }
    } else if (predict_cmd->parsed()) {
      const EnsembleModel model = load_model(f.model);
      const UrlVerdict verdict = score_url(model, f.url, parse_overrides(f.overrides));
      const char* label = verdict.verdict == kPhishing ? "phishing" : "legitimate";
      if (format == ReportFormat::Json) {
        std::cout << nlohmann::json{{"url", f.url}, {"probability", verdict.probability}, {"verdict", label}}.dump(2)
                  << '\n';
      } else {
        std::cout << std::setprecision(6) << verdict.probability << ' ' << label << '\n';
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const ModelFormatError& e) {
    std::cerr << "model error: " << e.what() << '\n';
    return kExitData;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return 0;
}
