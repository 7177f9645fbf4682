#include "phishguard/persistence.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace phishguard {
namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& field, const std::string& what) {
  throw ModelFormatError("schema error at '" + field + "': " + what);
}

const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) schema_error(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

template <typename T>
T get_as(const json& j, const std::string& key, const std::string& path) {
  const json& v = require(j, key, path);
  try {
    return v.get<T>();
  } catch (const json::exception& e) {
    schema_error(path.empty() ? key : path + "." + key, e.what());
  }
}

// NaN is stored as null.
json number(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

double number_from(const json& v) {
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return v.get<double>();
}

json vector_json(const Eigen::Ref<const Vector>& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vector vector_from(const json& j, const std::string& field) {
  try {
    const auto values = j.get<std::vector<double>>();
    return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
  } catch (const json::exception& e) {
    schema_error(field, e.what());
  }
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) rows.push_back(vector_json(m.row(i).transpose()));
  return rows;
}

Matrix matrix_from(const json& j, const std::string& field, Index cols) {
  if (!j.is_array()) schema_error(field, "expected an array of rows");
  Matrix m(static_cast<Index>(j.size()), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Vector row = vector_from(j[i], field + "[" + std::to_string(i) + "]");
    if (row.size() != cols) schema_error(field + "[" + std::to_string(i) + "]", "wrong row length");
    m.row(static_cast<Index>(i)) = row.transpose();
  }
  return m;
}

json tree_json(const DecisionTree& tree) {
  json feature = json::array(), threshold = json::array(), left = json::array(),
       right = json::array(), fraction = json::array();
  for (const auto& n : tree.nodes) {
    feature.push_back(n.feature);
    threshold.push_back(n.threshold);
    left.push_back(n.left);
    right.push_back(n.right);
    fraction.push_back(n.phishing_fraction);
  }
  return {{"feature", feature}, {"threshold", threshold}, {"left", left}, {"right", right},
          {"phishing_fraction", fraction}};
}

DecisionTree tree_from(const json& j, const std::string& path, Index feature_count) {
  const auto feature = get_as<std::vector<int>>(j, "feature", path);
  const auto threshold = get_as<std::vector<double>>(j, "threshold", path);
  const auto left = get_as<std::vector<int>>(j, "left", path);
  const auto right = get_as<std::vector<int>>(j, "right", path);
  const auto fraction = get_as<std::vector<double>>(j, "phishing_fraction", path);
  const std::size_t n = feature.size();
  if (n == 0 || threshold.size() != n || left.size() != n || right.size() != n || fraction.size() != n) {
    schema_error(path, "node arrays must be nonempty and of equal length");
  }
  DecisionTree tree;
  tree.nodes.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& node = tree.nodes[i];
    node = {feature[i], threshold[i], left[i], right[i], fraction[i]};
    if (node.feature >= 0) {
      // Children follow their parent, which rules out cycles.
      const auto inside = [&](int c) { return c > static_cast<int>(i) && c < static_cast<int>(n); };
      if (node.feature >= feature_count || !inside(node.left) || !inside(node.right)) {
        schema_error(path + ".nodes[" + std::to_string(i) + "]", "invalid split node");
      }
    }
  }
  return tree;
}

json binning_json(const BinningSpec& spec) {
  return {{"max_bins", spec.max_bins}, {"strategy", to_string(spec.strategy)}};
}

}  // namespace

json to_json(const EvalReport& r) {
  return {{"confusion", {{"tp", r.confusion.tp}, {"fn", r.confusion.fn}, {"fp", r.confusion.fp}, {"tn", r.confusion.tn}}},
          {"accuracy_pct", number(r.accuracy_pct)},
          {"precision", number(r.precision)},
          {"recall", number(r.recall)},
          {"f1", number(r.f1)},
          {"auc", number(r.auc)}};
}

EvalReport eval_report_from_json(const json& j) {
  EvalReport r;
  const json& cm = require(j, "confusion", "metrics");
  r.confusion.tp = get_as<Index>(cm, "tp", "metrics.confusion");
  r.confusion.fn = get_as<Index>(cm, "fn", "metrics.confusion");
  r.confusion.fp = get_as<Index>(cm, "fp", "metrics.confusion");
  r.confusion.tn = get_as<Index>(cm, "tn", "metrics.confusion");
  r.accuracy_pct = number_from(require(j, "accuracy_pct", "metrics"));
  r.precision = number_from(require(j, "precision", "metrics"));
  r.recall = number_from(require(j, "recall", "metrics"));
  r.f1 = number_from(require(j, "f1", "metrics"));
  r.auc = number_from(require(j, "auc", "metrics"));
  return r;
}

json to_json(const PipelineConfig& c) {
  const HyperParams& h = c.hyper;
  return {{"input", c.input},
          {"label_column", c.label_column},
          {"test_fraction", c.test_fraction},
          {"seed", c.seed},
          {"top_n", c.top_n},
          {"binning", binning_json(c.binning)},
          {"weighting", to_string(c.weighting)},
          {"threshold", c.threshold},
          {"rf", {{"n_trees", h.rf.n_trees}, {"max_depth", h.rf.max_depth},
                  {"min_samples_split", h.rf.min_samples_split},
                  {"features_per_split", h.rf.features_per_split}, {"bootstrap", h.rf.bootstrap}}},
          {"knn", {{"k", h.knn.k}}},
          {"svm", {{"lambda", h.svm.lambda}, {"epochs", h.svm.epochs}}},
          {"lr", {{"learning_rate", h.lr.learning_rate}, {"epochs", h.lr.epochs}, {"l2", h.lr.l2}}},
          {"nb", {{"var_smoothing", h.nb.var_smoothing}}}};
}

void merge_config(const json& j, PipelineConfig& c) {
  if (!j.is_object()) schema_error("config", "expected an object");
  const auto take = [](const json& obj, const char* key, auto& target, const std::string& path) {
    if (const auto it = obj.find(key); it != obj.end()) {
      try {
        it->get_to(target);
      } catch (const json::exception& e) {
        schema_error(path + "." + key, e.what());
      }
    }
  };
  take(j, "input", c.input, "config");
  take(j, "label_column", c.label_column, "config");
  take(j, "test_fraction", c.test_fraction, "config");
  take(j, "seed", c.seed, "config");
  take(j, "top_n", c.top_n, "config");
  take(j, "threshold", c.threshold, "config");
  take(j, "bins", c.binning.max_bins, "config");
  if (const auto it = j.find("binning"); it != j.end()) {
    take(*it, "max_bins", c.binning.max_bins, "config.binning");
    std::string strategy{to_string(c.binning.strategy)};
    take(*it, "strategy", strategy, "config.binning");
    c.binning.strategy = parse_binning_strategy(strategy);
  }
  if (const auto it = j.find("weighting"); it != j.end()) {
    std::string mode;
    take(j, "weighting", mode, "config");
    c.weighting = parse_weighting_mode(mode);
  }
  HyperParams& h = c.hyper;
  if (const auto it = j.find("rf"); it != j.end()) {
    take(*it, "n_trees", h.rf.n_trees, "config.rf");
    take(*it, "max_depth", h.rf.max_depth, "config.rf");
    take(*it, "min_samples_split", h.rf.min_samples_split, "config.rf");
    take(*it, "features_per_split", h.rf.features_per_split, "config.rf");
    take(*it, "bootstrap", h.rf.bootstrap, "config.rf");
  }
  if (const auto it = j.find("knn"); it != j.end()) take(*it, "k", h.knn.k, "config.knn");
  if (const auto it = j.find("svm"); it != j.end()) {
    take(*it, "lambda", h.svm.lambda, "config.svm");
    take(*it, "epochs", h.svm.epochs, "config.svm");
  }
  if (const auto it = j.find("lr"); it != j.end()) {
    take(*it, "learning_rate", h.lr.learning_rate, "config.lr");
    take(*it, "epochs", h.lr.epochs, "config.lr");
    take(*it, "l2", h.lr.l2, "config.lr");
  }
  if (const auto it = j.find("nb"); it != j.end()) take(*it, "var_smoothing", h.nb.var_smoothing, "config.nb");
}

json to_json(const TrainedClassifier& member) {
  json j = {{"kind", to_string(member.kind())}, {"feature_count", member.feature_count()}};
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, RandomForest>) {
          json trees = json::array();
          for (const auto& t : m.trees) trees.push_back(tree_json(t));
          j["trees"] = std::move(trees);
        } else if constexpr (std::is_same_v<T, KNearestNeighbors>) {
          j["k"] = m.k;
          j["train"] = matrix_json(m.train);
          j["labels"] = std::vector<int>(m.labels.data(), m.labels.data() + m.labels.size());
        } else if constexpr (std::is_same_v<T, LinearSvm>) {
          j["weights"] = vector_json(m.weights);
          j["bias"] = m.bias;
          j["calibration_slope"] = m.calibration_slope;
        } else if constexpr (std::is_same_v<T, LogisticRegression>) {
          j["weights"] = vector_json(m.weights);
          j["bias"] = m.bias;
        } else {
          j["means"] = matrix_json(m.means);
          j["variances"] = matrix_json(m.variances);
          j["priors"] = m.priors;
        }
      },
      member.model());
  return j;
}

TrainedClassifier classifier_from_json(const json& j) {
  const std::string path = "members[" + get_as<std::string>(j, "kind", "members") + "]";
  ClassifierKind kind;
  try {
    kind = parse_classifier_kind(get_as<std::string>(j, "kind", "members"));
  } catch (const UsageError& e) {
    schema_error("members.kind", e.what());
  }
  const auto d = get_as<Index>(j, "feature_count", path);
  if (d < 1) schema_error(path + ".feature_count", "must be positive");
  const auto check_length = [&](const Vector& v, const char* field) {
    if (v.size() != d) schema_error(path + "." + field, "length does not match feature_count");
  };

  switch (kind) {
    case ClassifierKind::RF: {
      const json& trees = require(j, "trees", path);
      if (!trees.is_array() || trees.empty()) schema_error(path + ".trees", "expected a nonempty array");
      RandomForest forest;
      for (std::size_t t = 0; t < trees.size(); ++t) {
        forest.trees.push_back(tree_from(trees[t], path + ".trees[" + std::to_string(t) + "]", d));
      }
      return {std::move(forest), d};
    }
    case ClassifierKind::KNN: {
      KNearestNeighbors knn;
      knn.k = get_as<int>(j, "k", path);
      knn.train = matrix_from(require(j, "train", path), path + ".train", d);
      const auto labels = get_as<std::vector<int>>(j, "labels", path);
      if (static_cast<Index>(labels.size()) != knn.train.rows() || knn.k < 1) {
        schema_error(path + ".labels", "label count must match training rows");
      }
      knn.labels = Eigen::Map<const LabelVector>(labels.data(), static_cast<Index>(labels.size()));
      return {std::move(knn), d};
    }
    case ClassifierKind::SVM: {
      LinearSvm svm;
      svm.weights = vector_from(require(j, "weights", path), path + ".weights");
      check_length(svm.weights, "weights");
      svm.bias = get_as<double>(j, "bias", path);
      svm.calibration_slope = get_as<double>(j, "calibration_slope", path);
      return {std::move(svm), d};
    }
    case ClassifierKind::LR: {
      LogisticRegression lr;
      lr.weights = vector_from(require(j, "weights", path), path + ".weights");
      check_length(lr.weights, "weights");
      lr.bias = get_as<double>(j, "bias", path);
      return {std::move(lr), d};
    }
    case ClassifierKind::NB: {
      GaussianNaiveBayes nb;
      nb.means = matrix_from(require(j, "means", path), path + ".means", d);
      nb.variances = matrix_from(require(j, "variances", path), path + ".variances", d);
      nb.priors = get_as<std::array<double, 2>>(j, "priors", path);
      if (nb.means.rows() != 2 || nb.variances.rows() != 2) schema_error(path, "expected two class rows");
      if ((nb.variances.array() <= 0.0).any()) schema_error(path + ".variances", "must be positive");
      return {std::move(nb), d};
    }
  }
  schema_error(path, "unknown classifier kind");
}

json to_json(const ModelFile& f) {
  const EnsembleModel& m = f.model;
  json members = json::array();
  for (const auto& member : m.members) members.push_back(to_json(member));
  json snapshot = json::object();
  if (f.train_metrics) snapshot["train"] = to_json(*f.train_metrics);
  if (f.test_metrics) snapshot["test"] = to_json(*f.test_metrics);
  return {{"format_version", f.format_version},
          {"created_at", f.created_at},
          {"config", to_json(f.config)},
          {"feature_names", m.feature_names},
          {"selected_features", {{"indices", m.selected_features}, {"names", m.selected_names()}}},
          {"scaler", {{"means", vector_json(m.scaler.means)}, {"stds", vector_json(m.scaler.stds)}}},
          {"threshold", m.threshold},
          {"weights", m.weights},
          {"members", std::move(members)},
          {"metrics_snapshot", std::move(snapshot)}};
}

ModelFile model_file_from_json(const json& j) {
  ModelFile f;
  f.format_version = get_as<int>(j, "format_version", "");
  if (f.format_version != kModelFormatVersion) {
    throw ModelFormatError("unsupported model format_version " + std::to_string(f.format_version) +
                           " (this build reads version " + std::to_string(kModelFormatVersion) + ")");
  }
  f.created_at = get_as<std::string>(j, "created_at", "");
  try {
    merge_config(require(j, "config", ""), f.config);
  } catch (const UsageError& e) {
    schema_error("config", e.what());
  }

  EnsembleModel& m = f.model;
  m.feature_names = get_as<std::vector<std::string>>(j, "feature_names", "");
  const json& selected = require(j, "selected_features", "");
  m.selected_features = get_as<std::vector<Index>>(selected, "indices", "selected_features");
  const auto names = get_as<std::vector<std::string>>(selected, "names", "selected_features");
  if (names.size() != m.selected_features.size()) {
    schema_error("selected_features.names", "length does not match indices");
  }
  for (std::size_t k = 0; k < names.size(); ++k) {
    const Index idx = m.selected_features[k];
    if (idx < 0 || idx >= static_cast<Index>(m.feature_names.size()) ||
        m.feature_names[static_cast<std::size_t>(idx)] != names[k]) {
      schema_error("selected_features", "name '" + names[k] + "' does not match index " + std::to_string(idx));
    }
  }
  const json& scaler = require(j, "scaler", "");
  m.scaler.means = vector_from(require(scaler, "means", "scaler"), "scaler.means");
  m.scaler.stds = vector_from(require(scaler, "stds", "scaler"), "scaler.stds");
  m.threshold = get_as<double>(j, "threshold", "");
  m.weights = get_as<std::vector<double>>(j, "weights", "");
  const json& members = require(j, "members", "");
  if (!members.is_array() || members.size() != kAllClassifierKinds.size()) {
    schema_error("members", "expected exactly 5 members");
  }
  for (const auto& member : members) m.members.push_back(classifier_from_json(member));

  const json& snapshot = require(j, "metrics_snapshot", "");
  if (const auto it = snapshot.find("train"); it != snapshot.end()) f.train_metrics = eval_report_from_json(*it);
  if (const auto it = snapshot.find("test"); it != snapshot.end()) f.test_metrics = eval_report_from_json(*it);

  try {
    m.validate();
  } catch (const DataError& e) {
    throw ModelFormatError(std::string("inconsistent model: ") + e.what());
  }
  return f;
}

std::string current_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::ostringstream out;
  out << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

void save_model(const ModelFile& file, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << to_json(file).dump(2) << '\n';
  out.flush();
  if (!out) throw IoError("failed writing model to '" + path.string() + "'");
}

void save_model(const EnsembleModel& model, const std::filesystem::path& path) {
  ModelFile file;
  file.created_at = current_timestamp();
  file.model = model;
  save_model(file, path);
}

ModelFile load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ModelFormatError("cannot open model file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw ModelFormatError("model file '" + path.string() + "' is not valid JSON (line " +
                           std::to_string(line) + "): " + e.what());
  }
  return model_file_from_json(j);
}

EnsembleModel load_model(const std::filesystem::path& path) { return load_model_file(path).model; }

}  // namespace phishguard
