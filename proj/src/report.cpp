#include "stabilizer/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace stabilizer {

namespace {

std::string fmt(const char* spec, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, value);
  return buf;
}

// Error messages land in a comma-separated cell; strip the characters that
// would break the row structure.
std::string sanitize_csv(std::string text) {
  for (char& c : text) {
    if (c == ',') c = ';';
    if (c == '\n' || c == '\r' || c == '"') c = ' ';
  }
  return text;
}

const StabilityReport* find_summary(const ExperimentResult& result, Arm arm) {
  for (const auto& [summary_arm, report] : result.summaries) {
    if (summary_arm == arm) {
      return &report;
    }
  }
  return nullptr;
}

// Smallest "round" value (1/1.5/2/2.5/3/4/5/6/8 times a power of ten) at or
// above x; keeps the chart's axis labels clean.
double nice_ceiling(double x) {
  if (!(x > 0.0)) {
    return 1.0;
  }
  const double step = std::pow(10.0, std::floor(std::log10(x)));
  for (double mult : {1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0}) {
    if (mult * step >= x * (1.0 - 1e-12)) {
      return mult * step;
    }
  }
  return 10.0 * step;
}

const char* arm_color(Arm arm) {
  switch (arm) {
    case Arm::Unmitigated:
      return "#4878a8";
    case Arm::Static:
      return "#d1605e";
    case Arm::Adaptive:
      return "#59a14f";
  }
  return "#888888";
}

}  // namespace

std::string format_double(double value) { return fmt("%.9g", value); }

std::string results_csv(const ExperimentResult& result, int n) {
  std::ostringstream out;
  out << "arm,run,hellinger";
  const char* families[] = {"e0_true", "e1_true", "e2_true", "e0_map", "e1_map", "e2_map",
                            "acceptance"};
  for (const char* family : families) {
    for (int q = 1; q <= n; ++q) {
      out << ',' << family << "_q" << q;
    }
  }
  out << ",error\n";

  for (const RunRecord& row : result.rows) {
    out << arm_name(row.arm) << ',' << (row.run + 1) << ',';
    if (row.ok) {
      out << format_double(row.distance);
    }
    const bool has_truth = row.truth.size() == static_cast<std::size_t>(n);
    for (int k = 0; k < 3; ++k) {
      for (int q = 0; q < n; ++q) {
        out << ',';
        if (has_truth) {
          const ErrorParams& e = row.truth[static_cast<std::size_t>(q)];
          out << format_double(k == 0 ? e.e0 : k == 1 ? e.e1 : e.e2);
        }
      }
    }
    const bool has_map =
        row.has_estimate && row.estimate.params.size() == static_cast<std::size_t>(n);
    for (int k = 0; k < 3; ++k) {
      for (int q = 0; q < n; ++q) {
        out << ',';
        if (has_map) {
          const ErrorParams& e = row.estimate.params[static_cast<std::size_t>(q)];
          out << format_double(k == 0 ? e.e0 : k == 1 ? e.e1 : e.e2);
        }
      }
    }
    for (int q = 0; q < n; ++q) {
      out << ',';
      if (has_map && row.estimate.acceptance_rate.size() == static_cast<std::size_t>(n)) {
        out << format_double(row.estimate.acceptance_rate[static_cast<std::size_t>(q)]);
      }
    }
    out << ',' << sanitize_csv(row.error) << '\n';
  }
  return out.str();
}

std::string summary_json(const ExperimentResult& result, const ExperimentConfig& config) {
  nlohmann::ordered_json j;
  j["qubits"] = config.qubits;
  j["shots"] = config.shots;
  j["runs"] = config.runs;
  j["seed"] = config.seed;
  j["prior"] = config.prior_mode == PriorMode::Uniform     ? "uniform"
               : config.prior_mode == PriorMode::Configured ? "configured"
                                                            : "sequential";
  nlohmann::ordered_json arms;
  for (Arm arm : config.arms) {
    int completed = 0;
    int failed = 0;
    for (const RunRecord& row : result.rows) {
      if (row.arm != arm) continue;
      (row.ok ? completed : failed) += 1;
    }
    nlohmann::ordered_json entry;
    entry["completed"] = completed;
    entry["failed"] = failed;
    if (const StabilityReport* report = find_summary(result, arm)) {
      entry["mean_hellinger"] = report->mean;
      entry["std_hellinger"] = report->std_dev;
    } else {
      entry["mean_hellinger"] = nullptr;
      entry["std_hellinger"] = nullptr;
    }
    arms[arm_name(arm)] = entry;
  }
  j["arms"] = arms;
  return j.dump(2) + "\n";
}

std::string comparison_svg(const ExperimentResult& result) {
  constexpr double kWidth = 600.0;
  constexpr double kHeight = 400.0;
  constexpr double kLeft = 70.0;
  constexpr double kRight = 24.0;
  constexpr double kTop = 56.0;
  constexpr double kBottom = 64.0;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\" font-family=\"sans-serif\">\n";
  out << "  <rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  out << "  <text x=\"" << kWidth / 2
      << "\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">"
      << "Hellinger distance to the ideal uniform distribution</text>\n";

  if (result.summaries.empty()) {
    out << "  <text x=\"" << kWidth / 2 << "\" y=\"" << kHeight / 2
        << "\" text-anchor=\"middle\" font-size=\"14\" fill=\"#777\">"
        << "no completed runs</text>\n</svg>\n";
    return out.str();
  }

  double raw_max = 0.0;
  for (const auto& [arm, report] : result.summaries) {
    raw_max = std::max(raw_max, report.mean + report.std_dev);
    for (double d : report.distances) {
      raw_max = std::max(raw_max, d);
    }
  }
  const double y_max = nice_ceiling(raw_max * 1.1);
  const auto y_of = [&](double value) { return kTop + plot_h * (1.0 - value / y_max); };

  // Axes and horizontal gridlines.
  out << "  <line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kTop + plot_h << "\" stroke=\"#333\"/>\n";
  out << "  <line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\""
      << kLeft + plot_w << "\" y2=\"" << kTop + plot_h << "\" stroke=\"#333\"/>\n";
  for (int tick = 0; tick <= 5; ++tick) {
    const double value = y_max * tick / 5.0;
    const double y = y_of(value);
    if (tick > 0) {
      out << "  <line x1=\"" << kLeft << "\" y1=\"" << fmt("%.2f", y) << "\" x2=\""
          << kLeft + plot_w << "\" y2=\"" << fmt("%.2f", y)
          << "\" stroke=\"#ddd\" stroke-width=\"0.7\"/>\n";
    }
    out << "  <text x=\"" << kLeft - 8 << "\" y=\"" << fmt("%.2f", y + 4)
        << "\" text-anchor=\"end\" font-size=\"11\">" << fmt("%.3g", value)
        << "</text>\n";
  }
  out << "  <text x=\"18\" y=\"" << kTop + plot_h / 2
      << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 18 "
      << kTop + plot_h / 2 << ")\">Hellinger distance</text>\n";

  const double slot = plot_w / static_cast<double>(result.summaries.size());
  const double bar_w = std::min(92.0, slot * 0.5);
  for (std::size_t i = 0; i < result.summaries.size(); ++i) {
    const auto& [arm, report] = result.summaries[i];
    const double center = kLeft + slot * (static_cast<double>(i) + 0.5);
    const double bar_top = y_of(report.mean);

    out << "  <rect class=\"bar\" x=\"" << fmt("%.2f", center - bar_w / 2) << "\" y=\""
        << fmt("%.2f", bar_top) << "\" width=\"" << fmt("%.2f", bar_w) << "\" height=\""
        << fmt("%.2f", y_of(0.0) - bar_top) << "\" fill=\"" << arm_color(arm)
        << "\" fill-opacity=\"0.85\"/>\n";

    // +/- one standard deviation whisker.
    const double lo = y_of(std::max(0.0, report.mean - report.std_dev));
    const double hi = y_of(std::min(y_max, report.mean + report.std_dev));
    out << "  <line x1=\"" << fmt("%.2f", center) << "\" y1=\"" << fmt("%.2f", hi)
        << "\" x2=\"" << fmt("%.2f", center) << "\" y2=\"" << fmt("%.2f", lo)
        << "\" stroke=\"#222\" stroke-width=\"1.4\"/>\n";
    for (double y : {hi, lo}) {
      out << "  <line x1=\"" << fmt("%.2f", center - 7) << "\" y1=\"" << fmt("%.2f", y)
          << "\" x2=\"" << fmt("%.2f", center + 7) << "\" y2=\"" << fmt("%.2f", y)
          << "\" stroke=\"#222\" stroke-width=\"1.4\"/>\n";
    }

    // Individual runs, deterministically jittered around the bar center.
    for (std::size_t r = 0; r < report.distances.size(); ++r) {
      const double dx = (static_cast<double>(r % 7) - 3.0) * 3.5;
      out << "  <circle cx=\"" << fmt("%.2f", center + dx) << "\" cy=\""
          << fmt("%.2f", y_of(report.distances[r])) << "\" r=\"2.4\" fill=\"#222\""
          << " fill-opacity=\"0.45\"/>\n";
    }

    out << "  <text x=\"" << fmt("%.2f", center) << "\" y=\""
        << fmt("%.2f", std::min(bar_top, hi) - 8)
        << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt("%.4f", report.mean)
        << "</text>\n";
    out << "  <text x=\"" << fmt("%.2f", center) << "\" y=\"" << kTop + plot_h + 22
        << "\" text-anchor=\"middle\" font-size=\"13\">" << arm_name(arm)
        << "</text>\n";
  }

  out << "  <text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 14
      << "\" text-anchor=\"middle\" font-size=\"11\" fill=\"#555\">"
      << "bars: mean over runs; whiskers: +/- 1 std; dots: individual runs"
      << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

void export_experiment(const ExperimentResult& result, const ExperimentConfig& config) {
  namespace fs = std::filesystem;
  const fs::path dir(config.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory '" + config.out_dir +
                             "': " + ec.message());
  }
  const auto write_file = [&dir](const char* name, const std::string& body) {
    const fs::path path = dir / name;
    std::ofstream out(path, std::ios::binary);
    out << body;
    if (!out) {
      throw std::runtime_error("failed to write '" + path.string() + "'");
    }
  };
  write_file("results.csv", results_csv(result, config.qubits));
  write_file("summary.json", summary_json(result, config));
  write_file("comparison.svg", comparison_svg(result));
}

}  // namespace stabilizer
