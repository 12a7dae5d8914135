#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "stabilizer/harness.hpp"
#include "stabilizer/report.hpp"

using namespace stabilizer;

namespace {

// A fast two-qubit experiment used by most harness tests.
ExperimentConfig small_config() {
  ExperimentConfig c;
  c.qubits = 2;
  c.shots = 2000;
  c.runs = 3;
  c.seed = 11;
  c.e0_mean = {0.90, 0.80};
  c.e0_std = {0.09, 0.08};
  c.e1_mean = {0.85, 0.75};
  c.e1_std = {0.085, 0.075};
  c.e2_mean = {0.054, 0.072};
  c.e2_std = {0.0054, 0.0072};
  c.chain_steps = 1500;
  return c;
}

const RunRecord& find_row(const ExperimentResult& result, Arm arm, int run) {
  for (const RunRecord& row : result.rows) {
    if (row.arm == arm && row.run == run) return row;
  }
  throw std::logic_error("row not found");
}

}  // namespace

TEST_CASE("run_experiment emits one ordered row per (arm, run)") {
  const ExperimentConfig config = small_config();
  const ExperimentResult result = run_experiment(config);
  REQUIRE(result.rows.size() == 9);
  std::size_t i = 0;
  for (Arm arm : config.arms) {
    for (int run = 0; run < config.runs; ++run, ++i) {
      CHECK(result.rows[i].arm == arm);
      CHECK(result.rows[i].run == run);
      CHECK(result.rows[i].ok);
      CHECK(result.rows[i].distance >= 0.0);
      CHECK(result.rows[i].distance <= 1.0);
    }
  }
  REQUIRE(result.summaries.size() == 3);
  for (const auto& [arm, report] : result.summaries) {
    CHECK(report.distances.size() == 3);
  }
  // Only adaptive rows carry estimates.
  CHECK_FALSE(find_row(result, Arm::Unmitigated, 0).has_estimate);
  CHECK_FALSE(find_row(result, Arm::Static, 0).has_estimate);
  CHECK(find_row(result, Arm::Adaptive, 0).has_estimate);
  CHECK(find_row(result, Arm::Adaptive, 0).estimate.params.size() == 2);
}

TEST_CASE("all arms of one run share the same drift realization") {
  const ExperimentConfig config = small_config();
  const ExperimentResult result = run_experiment(config);
  for (int run = 0; run < config.runs; ++run) {
    const auto& a = find_row(result, Arm::Unmitigated, run).truth;
    const auto& b = find_row(result, Arm::Static, run).truth;
    const auto& c = find_row(result, Arm::Adaptive, run).truth;
    REQUIRE(a.size() == 2);
    for (std::size_t q = 0; q < a.size(); ++q) {
      CHECK(a[q].e0 == b[q].e0);
      CHECK(a[q].e0 == c[q].e0);
      CHECK(a[q].e1 == b[q].e1);
      CHECK(a[q].e1 == c[q].e1);
      CHECK(a[q].e2 == b[q].e2);
      CHECK(a[q].e2 == c[q].e2);
    }
  }
  // Different runs draw different noise.
  CHECK(find_row(result, Arm::Unmitigated, 0).truth[0].e0 !=
        find_row(result, Arm::Unmitigated, 1).truth[0].e0);
}

TEST_CASE("run_experiment is fully deterministic for a fixed seed") {
  const ExperimentConfig config = small_config();
  const ExperimentResult a = run_experiment(config);
  const ExperimentResult b = run_experiment(config);
  CHECK(results_csv(a, config.qubits) == results_csv(b, config.qubits));
  CHECK(summary_json(a, config) == summary_json(b, config));
}

TEST_CASE("changing the seed changes the outcome") {
  ExperimentConfig config = small_config();
  const ExperimentResult a = run_experiment(config);
  config.seed = 12;
  const ExperimentResult b = run_experiment(config);
  CHECK(results_csv(a, config.qubits) != results_csv(b, config.qubits));
}

TEST_CASE("adding runs never perturbs earlier runs") {
  ExperimentConfig config = small_config();
  const ExperimentResult short_result = run_experiment(config);
  config.runs = 5;
  const ExperimentResult long_result = run_experiment(config);
  for (Arm arm : config.arms) {
    for (int run = 0; run < 3; ++run) {
      const RunRecord& s = find_row(short_result, arm, run);
      const RunRecord& l = find_row(long_result, arm, run);
      CHECK(s.distance == l.distance);
      CHECK(s.truth[0].e0 == l.truth[0].e0);
    }
  }
}

TEST_CASE("adaptive run scored with the true parameters hits the sampling floor") {
  // Overriding the inferred estimate with the exact drifted truth removes
  // all estimation error; what remains is shot noise through the inversion.
  // The drift is kept tight so |1 - e0 - e1| stays large: a near-singular
  // channel amplifies even pure shot noise well above the floor.
  ExperimentConfig config = small_config();
  config.shots = 8192;
  config.e0_std = {0.045, 0.04};
  config.e1_std = {0.0425, 0.0375};
  for (int run = 0; run < 3; ++run) {
    const std::vector<ErrorParams> truth = draw_run_noise(config, run);
    PriorSpec prior = initial_prior(config);
    const RunRecord record = run_adaptive(config, run, prior, &truth);
    REQUIRE(record.ok);
    CHECK(record.distance < 0.03);
    // The override replaces the estimate that gets reported.
    CHECK(record.estimate.params[0].e0 == truth[0].e0);
    CHECK(record.estimate.params[0].e2 == truth[0].e2);
  }
}

TEST_CASE("a singular static channel fails those rows and spares the rest") {
  ExperimentConfig config;
  config.qubits = 1;
  config.shots = 1000;
  config.runs = 2;
  config.seed = 5;
  // e0 + e1 = 1 exactly: the mean confusion matrix is singular, so the
  // static arm cannot invert. The drifting truth keeps other arms healthy.
  config.e0_mean = {0.5};
  config.e0_std = {0.0};
  config.e1_mean = {0.5};
  config.e1_std = {0.0};
  config.e2_mean = {0.05};
  config.e2_std = {0.005};
  config.chain_steps = 800;
  const ExperimentResult result = run_experiment(config);
  REQUIRE(result.rows.size() == 6);
  for (int run = 0; run < 2; ++run) {
    const RunRecord& bad = find_row(result, Arm::Static, run);
    CHECK_FALSE(bad.ok);
    CHECK(bad.error.find("singular") != std::string::npos);
    CHECK(bad.error.find("q1") != std::string::npos);
    CHECK(find_row(result, Arm::Unmitigated, run).ok);
    CHECK(find_row(result, Arm::Adaptive, run).ok);
  }
  // Summaries exist only for arms with completed runs.
  REQUIRE(result.summaries.size() == 2);
  CHECK(result.summaries[0].first == Arm::Unmitigated);
  CHECK(result.summaries[1].first == Arm::Adaptive);
}

TEST_CASE("results_csv lays out the documented columns") {
  const ExperimentConfig config = small_config();
  const ExperimentResult result = run_experiment(config);
  const std::string csv = results_csv(result, config.qubits);
  std::istringstream lines(csv);
  std::string header;
  std::getline(lines, header);
  CHECK(header ==
        "arm,run,hellinger,"
        "e0_true_q1,e0_true_q2,e1_true_q1,e1_true_q2,e2_true_q1,e2_true_q2,"
        "e0_map_q1,e0_map_q2,e1_map_q1,e1_map_q2,e2_map_q1,e2_map_q2,"
        "acceptance_q1,acceptance_q2,error");

  int rows = 0;
  std::string line;
  const auto count_fields = [](const std::string& s) {
    return std::count(s.begin(), s.end(), ',') + 1;
  };
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(count_fields(line) == count_fields(header));
  }
  CHECK(rows == 9);

  // First row: unmitigated run 1, with truth but no estimate columns.
  std::istringstream again(csv);
  std::getline(again, line);
  std::getline(again, line);
  CHECK(line.substr(0, 14) == "unmitigated,1,");
  CHECK(line.find(",,") != std::string::npos);  // empty estimate cells
}

TEST_CASE("results_csv sanitizes error messages") {
  ExperimentResult result;
  RunRecord row;
  row.arm = Arm::Static;
  row.run = 0;
  row.ok = false;
  row.error = "bad, thing\nhere \"quoted\"";
  result.rows.push_back(row);
  const std::string csv = results_csv(result, 1);
  CHECK(csv.find("bad; thing here  quoted ") != std::string::npos);
  CHECK(csv.find('"') == std::string::npos);
}

TEST_CASE("summary_json parses back with the expected fields") {
  const ExperimentConfig config = small_config();
  const ExperimentResult result = run_experiment(config);
  const nlohmann::json j = nlohmann::json::parse(summary_json(result, config));
  CHECK(j["qubits"] == 2);
  CHECK(j["shots"] == 2000);
  CHECK(j["runs"] == 3);
  CHECK(j["seed"] == 11);
  CHECK(j["prior"] == "uniform");
  for (const char* arm : {"unmitigated", "static", "adaptive"}) {
    CHECK(j["arms"][arm]["completed"] == 3);
    CHECK(j["arms"][arm]["failed"] == 0);
    CHECK(j["arms"][arm]["mean_hellinger"].is_number());
    CHECK(j["arms"][arm]["std_hellinger"].is_number());
  }
}

TEST_CASE("comparison_svg draws one bar per summarized arm") {
  const ExperimentConfig config = small_config();
  const ExperimentResult result = run_experiment(config);
  const std::string svg = comparison_svg(result);
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
  std::size_t bars = 0;
  for (std::size_t pos = svg.find("class=\"bar\""); pos != std::string::npos;
       pos = svg.find("class=\"bar\"", pos + 1)) {
    ++bars;
  }
  CHECK(bars == 3);
  CHECK(svg.find(">unmitigated<") != std::string::npos);
  CHECK(svg.find(">static<") != std::string::npos);
  CHECK(svg.find(">adaptive<") != std::string::npos);

  const ExperimentResult empty;
  CHECK(comparison_svg(empty).find("no completed runs") != std::string::npos);
}

TEST_CASE("export_experiment writes all three artifacts") {
  namespace fs = std::filesystem;
  ExperimentConfig config = small_config();
  config.runs = 1;
  config.out_dir = "/tmp/stabilizer_export_test";
  fs::remove_all(config.out_dir);
  const ExperimentResult result = run_experiment(config);
  export_experiment(result, config);
  for (const char* name : {"results.csv", "summary.json", "comparison.svg"}) {
    const fs::path path = fs::path(config.out_dir) / name;
    CHECK(fs::exists(path));
    CHECK(fs::file_size(path) > 100);
  }
  fs::remove_all(config.out_dir);
}
