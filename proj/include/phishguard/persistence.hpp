#pragma once

#include "phishguard/ensemble.hpp"
#include "phishguard/metrics.hpp"

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

namespace phishguard {

inline constexpr int kModelFormatVersion = 1;

/// Everything stored in a model file. The JSON layout is documented in
/// docs/model_format.md.
struct ModelFile {
  int format_version = kModelFormatVersion;
  std::string created_at;  // ISO-8601 UTC
  PipelineConfig config;
  EnsembleModel model;
  std::optional<EvalReport> train_metrics;
  std::optional<EvalReport> test_metrics;
};

nlohmann::json to_json(const EvalReport& report);
EvalReport eval_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PipelineConfig& config);
/// Missing keys keep the values already in `config`.
void merge_config(const nlohmann::json& j, PipelineConfig& config);

nlohmann::json to_json(const TrainedClassifier& member);
TrainedClassifier classifier_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ModelFile& file);
/// Throws ModelFormatError naming the offending field.
ModelFile model_file_from_json(const nlohmann::json& j);

std::string current_timestamp();

/// Writes `file` as indented JSON. Throws std::runtime_error on I/O failure.
void save_model(const ModelFile& file, const std::filesystem::path& path);
/// Wraps `model` in a ModelFile stamped with the current time.
void save_model(const EnsembleModel& model, const std::filesystem::path& path);

ModelFile load_model_file(const std::filesystem::path& path);
EnsembleModel load_model(const std::filesystem::path& path);

}  // namespace phishguard
