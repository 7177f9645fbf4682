// Acceptance checks on the public 11430-row phishing dataset. The file is
// taken from $PHISHGUARD_DATASET or data/dataset_phishing.csv; without it the
// binary exits with 77, which ctest reports as skipped.

#include "phishguard/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <string>

using namespace phishguard;

namespace {

constexpr int kSkip = 77;
constexpr double kTolerancePts = 3.0;
const std::map<std::string, double> kPublishedAfterSelection = {
    {"RF", 96.11}, {"SVM", 91.64}, {"KNN", 94.93}, {"LR", 93.04}, {"NB", 91.56}};

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  if (!ok) ++failures;
}

double accuracy_of(const std::vector<NamedReport>& rows, const std::string& name) {
  for (const auto& r : rows)
    if (r.name == name) return r.report.accuracy_pct;
  return 0.0;
}

std::filesystem::path dataset_path() {
  if (const char* env = std::getenv("PHISHGUARD_DATASET")) return env;
  return std::filesystem::path(PHISHGUARD_SOURCE_DIR) / "data" / "dataset_phishing.csv";
}

}  // namespace

int main() {
  const auto path = dataset_path();
  if (!std::filesystem::exists(path)) {
    std::printf("[SKIP] criteria 1-4: dataset not found at %s (set PHISHGUARD_DATASET)\n", path.string().c_str());
    return kSkip;
  }
  try {
    const auto start = std::chrono::steady_clock::now();
    const Dataset data = load_csv(path.string());
    PipelineConfig config;
    config.input = path.string();
    const ComparisonOutcome outcome = run_compare(data, config);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    bool within = true;
    std::string detail;
    for (const auto& [name, published] : kPublishedAfterSelection) {
      const double got = accuracy_of(outcome.after, name);
      within = within && std::abs(got - published) <= kTolerancePts;
      char buf[64];
      std::snprintf(buf, sizeof buf, "%s %.2f vs %.2f; ", name.c_str(), got, published);
      detail += buf;
    }
    detail += "runtime " + std::to_string(static_cast<int>(seconds)) + " s";
    report(1, "accuracy after selection within 3 points, runtime under 10 min", within && seconds < 600.0, detail);

    const double svm_gain = accuracy_of(outcome.after, "SVM") - accuracy_of(outcome.before, "SVM");
    const double knn_drop = accuracy_of(outcome.before, "KNN") - accuracy_of(outcome.after, "KNN");
    const double lr_drop = accuracy_of(outcome.before, "LR") - accuracy_of(outcome.after, "LR");
    char buf[160];
    std::snprintf(buf, sizeof buf, "SVM +%.2f, KNN drop %.2f, LR drop %.2f", svm_gain, knn_drop, lr_drop);
    report(2, "standardization effect", svm_gain >= 10.0 && knn_drop <= 1.0 && lr_drop <= 1.0, buf);

    const double rf_raw = accuracy_of(outcome.before, "RF");
    std::snprintf(buf, sizeof buf, "RF on all raw features %.2f%%", rf_raw);
    report(3, "RF robustness", rf_raw >= 93.0, buf);

    std::vector<double> after;
    for (const auto& r : outcome.after) after.push_back(r.report.accuracy_pct);
    std::sort(after.begin(), after.end());
    const double median = after[after.size() / 2];
    const double ens = outcome.ensemble_after.report.accuracy_pct;
    std::snprintf(buf, sizeof buf, "ensemble %.2f%% vs median base %.2f%%", ens, median);
    report(4, "ensemble sanity", ens >= median, buf);
  } catch (const std::exception& e) {
    std::printf("[FAIL] criteria 1-4: %s\n", e.what());
    return 1;
  }
  std::printf("%d failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}
