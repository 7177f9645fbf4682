// Runs the built phishguard binary end to end.

#include "phishguard/dataset.hpp"

#include "support/fixtures.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace phishguard;
namespace fs = std::filesystem;

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Workspace {
  fs::path dir;
  fs::path data;

  Workspace() {
    dir = fs::temp_directory_path() / ("phishguard_cli_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
    data = dir / "data.csv";
    Dataset d = testing::synthetic_phishing(80, 12, 19, 6);
    d.features.col(11).setConstant(4.0);
    std::ofstream out(data);
    write_csv(d, out);
  }
  ~Workspace() { fs::remove_all(dir); }

  Run run(const std::string& args, const std::string& env = "") const {
    const fs::path out = dir / "stdout.txt";
    const fs::path err = dir / "stderr.txt";
    const std::string cmd = "cd '" + dir.string() + "' && " + env + " '" PHISHGUARD_CLI_PATH "' " + args + " > '" +
                            out.string() + "' 2> '" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    Run r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }
};

const char* kFast = " --rf-trees 10 --svm-epochs 5 --lr-epochs 50";

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors exit with 1") {
    Workspace ws;
    CHECK(ws.run("").exit_code == 1);
    CHECK(ws.run("frobnicate").exit_code == 1);
    CHECK(ws.run("train").exit_code == 1);  // no --input
    CHECK(ws.run("train --input data.csv --weighting median").exit_code == 1);
    CHECK(ws.run("train --input data.csv --test-fraction 1.0").exit_code == 1);
    CHECK(ws.run("train --input data.csv --top 13").exit_code == 1);
    CHECK(ws.run("--help").exit_code == 0);
  }

  TEST_CASE("missing or malformed input exits with 2 and a message") {
    Workspace ws;
    const Run missing = ws.run("train --input nope.csv");
    CHECK(missing.exit_code == 2);
    CHECK(missing.err.find("nope.csv") != std::string::npos);
    std::ofstream(ws.dir / "bad.csv") << "a,status\nabc,phishing\n1,legitimate\n";
    CHECK(ws.run("rank --input bad.csv").exit_code == 2);
    CHECK(ws.run("evaluate --model absent.json --input data.csv").exit_code == 2);
  }

  TEST_CASE("train, evaluate and predict") {
    Workspace ws;
    const Run train = ws.run(std::string("train --input data.csv --top 12 --out m.json") + kFast);
    REQUIRE(train.exit_code == 0);
    CHECK(train.out.find("Ensemble") != std::string::npos);
    const auto model = nlohmann::json::parse(slurp(ws.dir / "m.json"));
    CHECK(model["selected_features"]["indices"].size() == 12);
    CHECK(model["members"].size() == 5);

    const Run eval = ws.run("evaluate --model m.json --input data.csv --report-format json");
    REQUIRE(eval.exit_code == 0);
    const auto report = nlohmann::json::parse(eval.out);
    CHECK(report["accuracy_pct"].get<double>() >= 50.0);

    std::ofstream(ws.dir / "partial.csv") << "f0,status\n1,phishing\n2,legitimate\n";
    const Run missing_col = ws.run("evaluate --model m.json --input partial.csv");
    CHECK(missing_col.exit_code == 2);
    CHECK(missing_col.err.find("f1") != std::string::npos);

    const Run predict = ws.run("predict --model m.json --url http://example.com");
    CHECK(predict.exit_code == 2);
    CHECK(predict.err.find("f0") != std::string::npos);
    CHECK(ws.run("predict --model m.json --url http://example.com --override f0").exit_code == 1);
  }

  TEST_CASE("rank prints all rows or the requested top") {
    Workspace ws;
    const Run all = ws.run("rank --input data.csv --report-format csv");
    REQUIRE(all.exit_code == 0);
    CHECK(count_lines(all.out) == 13);
    // The constant column sinks to the bottom with zero gain.
    CHECK(all.out.substr(all.out.rfind("f11")).starts_with("f11,0"));
    const Run top = ws.run("rank --input data.csv --top 5 --report-format csv --out r.json");
    REQUIRE(top.exit_code == 0);
    CHECK(count_lines(top.out) == 6);
    CHECK(nlohmann::json::parse(slurp(ws.dir / "r.json")).size() == 5);
  }

  TEST_CASE("compare writes the long-form CSV") {
    Workspace ws;
    const Run r = ws.run(std::string("compare --input data.csv --top 6 --out cmp.csv") + kFast);
    REQUIRE(r.exit_code == 0);
    std::istringstream csv(slurp(ws.dir / "cmp.csv"));
    std::string line;
    std::getline(csv, line);
    CHECK(line == "classifier,condition,accuracy,precision,recall,f1");
    int rows = 0, metrics = 0;
    while (std::getline(csv, line)) {
      ++rows;
      std::stringstream fields(line);
      std::string cell;
      int col = 0;
      while (std::getline(fields, cell, ',')) {
        if (col++ >= 2) {
          CHECK(std::isfinite(std::stod(cell)));
          ++metrics;
        }
      }
    }
    CHECK(rows == 10);
    CHECK(metrics == 40);
  }

  TEST_CASE("config file from the environment, flags take precedence") {
    Workspace ws;
    std::ofstream(ws.dir / "cfg.json") << R"({"input": "data.csv", "top_n": 3, "rf": {"n_trees": 5}, "svm": {"epochs": 3}, "lr": {"epochs": 20}})";
    const Run r = ws.run("train --out a.json", "PHISHGUARD_CONFIG=cfg.json");
    REQUIRE(r.exit_code == 0);
    CHECK(nlohmann::json::parse(slurp(ws.dir / "a.json"))["selected_features"]["indices"].size() == 3);
    REQUIRE(ws.run("train --top 4 --out b.json", "PHISHGUARD_CONFIG=cfg.json").exit_code == 0);
    CHECK(nlohmann::json::parse(slurp(ws.dir / "b.json"))["selected_features"]["indices"].size() == 4);
  }
}
