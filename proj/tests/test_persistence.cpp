#include "phishguard/persistence.hpp"

#include "support/fixtures.hpp"

#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace phishguard;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("phishguard_persist_" + std::to_string(Rng(std::random_device{}()).next()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

const TrainedPipeline& fixture_pipeline() {
  static const TrainedPipeline pipeline = [] {
    PipelineConfig config;
    config.top_n = 5;
    config.hyper.rf.n_trees = 12;
    return train_pipeline(testing::synthetic_phishing(200, 8, 13, 6), config);
  }();
  return pipeline;
}

std::string read_all(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_all(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

std::string load_error(const fs::path& p) {
  try {
    load_model(p);
  } catch (const ModelFormatError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("persistence") {
  TEST_CASE("round trip yields bit-identical predictions on 1000 random inputs") {
    TempDir dir;
    const EnsembleModel& model = fixture_pipeline().model;
    const fs::path file = dir.path / "model.json";
    save_model(model, file);
    const EnsembleModel loaded = load_model(file);
    CHECK(loaded.selected_features == model.selected_features);
    CHECK(loaded.weights == model.weights);
    CHECK(loaded.feature_names == model.feature_names);
    Rng rng(8);
    for (int q = 0; q < 1000; ++q) {
      Vector x(8);
      for (Index j = 0; j < 8; ++j) x[j] = rng.normal(0.0, std::pow(10.0, rng.uniform(-1, 4)));
      const double a = ensemble_predict_proba(model, x);
      const double b = ensemble_predict_proba(loaded, x);
      REQUIRE(std::memcmp(&a, &b, sizeof a) == 0);
    }
  }

  TEST_CASE("per-member round trip preserves every kind") {
    for (const auto& member : fixture_pipeline().model.members) {
      const auto back = classifier_from_json(to_json(member));
      CHECK(back.kind() == member.kind());
      CHECK(back.feature_count() == member.feature_count());
      CHECK(to_json(back) == to_json(member));
    }
  }

  TEST_CASE("model file carries config and metrics") {
    TempDir dir;
    ModelFile f;
    f.created_at = "2024-01-01T00:00:00Z";
    f.config.seed = 7;
    f.config.hyper.knn.k = 3;
    f.model = fixture_pipeline().model;
    EvalReport r;
    r.accuracy_pct = 91.5;
    r.auc = std::numeric_limits<double>::quiet_NaN();
    f.test_metrics = r;
    save_model(f, dir.path / "m.json");
    const ModelFile back = load_model_file(dir.path / "m.json");
    CHECK(back.created_at == f.created_at);
    CHECK(back.config.seed == 7);
    CHECK(back.config.hyper.knn.k == 3);
    REQUIRE(back.test_metrics.has_value());
    CHECK(back.test_metrics->accuracy_pct == 91.5);
    CHECK(std::isnan(back.test_metrics->auc));
    CHECK_FALSE(back.train_metrics.has_value());
  }

  TEST_CASE("merge_config applies only present keys") {
    PipelineConfig c;
    merge_config(nlohmann::json::parse(R"({"seed": 5, "bins": 4, "svm": {"epochs": 9}, "weighting": "uniform"})"), c);
    CHECK(c.seed == 5);
    CHECK(c.binning.max_bins == 4);
    CHECK(c.hyper.svm.epochs == 9);
    CHECK(c.hyper.svm.lambda == 1e-4);
    CHECK(c.weighting == WeightingMode::Uniform);
    CHECK(c.top_n == 20);
    CHECK_THROWS(merge_config(nlohmann::json::parse(R"({"seed": "x"})"), c));
  }

  TEST_CASE("unwritable path is an I/O error") {
    CHECK_THROWS_AS(save_model(fixture_pipeline().model, "/nonexistent-dir/sub/model.json"), IoError);
  }

  TEST_CASE("version, schema and syntax errors") {
    TempDir dir;
    const fs::path good = dir.path / "good.json";
    save_model(fixture_pipeline().model, good);
    auto j = nlohmann::json::parse(read_all(good));

    auto v99 = j;
    v99["format_version"] = 99;
    write_all(dir.path / "v99.json", v99.dump());
    CHECK(load_error(dir.path / "v99.json").find("format_version 99") != std::string::npos);

    auto no_weights = j;
    no_weights.erase("weights");
    write_all(dir.path / "nw.json", no_weights.dump());
    CHECK(load_error(dir.path / "nw.json").find("'weights'") != std::string::npos);

    auto bad_child = j;
    for (auto& m : bad_child["members"]) {
      if (m["kind"] == "RF") m["trees"][0]["left"][0] = 0;
    }
    write_all(dir.path / "child.json", bad_child.dump());
    CHECK(load_error(dir.path / "child.json").find("schema error") != std::string::npos);

    const std::string text = read_all(good);
    write_all(dir.path / "trunc.json", text.substr(0, text.size() / 2));
    CHECK(load_error(dir.path / "trunc.json").find("line") != std::string::npos);

    CHECK_THROWS(load_model(dir.path / "absent.json"));
  }
}
