#include "stabilizer/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace stabilizer {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kDegToRad = std::numbers::pi / 180.0;

const std::set<std::string> kKnownKeys = {
    "qubits",          "shots",
    "runs",            "seed",
    "e0_mean",         "e0_std",
    "e1_mean",         "e1_std",
    "e2_mean",         "e2_std",
    "e2_unit",         "chain_steps",
    "burn_in_fraction", "proposal_scale_e0",
    "proposal_scale_e1", "proposal_scale_e2",
    "prior",           "arms",
    "out_dir",
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double parsed = 0.0;
  try {
    parsed = std::stod(value, &used);
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': cannot parse number from '" + value + "'");
  }
  if (trim(value.substr(used)) != "") {
    throw ConfigError("key '" + key + "': trailing characters in '" + value + "'");
  }
  return parsed;
}

long parse_long(const std::string& key, const std::string& value) {
  const double parsed = parse_double(key, value);
  if (parsed != std::floor(parsed)) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + value + "'");
  }
  return static_cast<long>(parsed);
}

std::uint64_t parse_seed(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const std::uint64_t parsed = std::stoull(value, &used);
    if (trim(value.substr(used)) != "") {
      throw std::invalid_argument("trailing characters");
    }
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': cannot parse seed from '" + value + "'");
  }
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream stream(value);
  std::string item;
  while (std::getline(stream, item, ',')) {
    items.push_back(trim(item));
  }
  return items;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& value) {
  std::vector<double> values;
  for (const std::string& item : split_list(value)) {
    values.push_back(parse_double(key, item));
  }
  if (values.empty()) {
    throw ConfigError("key '" + key + "': empty list");
  }
  return values;
}

PriorMode parse_prior_mode(const std::string& value) {
  const std::string v = lower(value);
  if (v == "uniform") return PriorMode::Uniform;
  if (v == "configured") return PriorMode::Configured;
  if (v == "sequential") return PriorMode::Sequential;
  throw ConfigError("prior mode must be uniform, configured, or sequential; got '" +
                    value + "'");
}

std::vector<Arm> parse_arms(const std::string& value) {
  std::set<Arm> seen;
  for (const std::string& item : split_list(value)) {
    const std::string v = lower(item);
    if (v == "unmitigated") {
      seen.insert(Arm::Unmitigated);
    } else if (v == "static") {
      seen.insert(Arm::Static);
    } else if (v == "adaptive") {
      seen.insert(Arm::Adaptive);
    } else {
      throw ConfigError("unknown arm '" + item +
                        "' (expected unmitigated, static, or adaptive)");
    }
  }
  if (seen.empty()) {
    throw ConfigError("arm list must not be empty");
  }
  // Canonical execution order regardless of how the list was written.
  return {seen.begin(), seen.end()};
}

// Expands a 1-element list to n entries; lists already of length n pass
// through. Anything else is a length error.
std::vector<double> broadcast(const std::string& key, std::vector<double> values, int n) {
  if (values.size() == 1 && n > 1) {
    return std::vector<double>(static_cast<std::size_t>(n), values[0]);
  }
  if (values.size() != static_cast<std::size_t>(n)) {
    throw ConfigError("key '" + key + "': expected 1 or " + std::to_string(n) +
                      " values, got " + std::to_string(values.size()));
  }
  return values;
}

std::vector<double> default_stds(const std::vector<double>& means) {
  std::vector<double> stds;
  stds.reserve(means.size());
  for (double m : means) {
    stds.push_back(m / 10.0);
  }
  return stds;
}

DriftEntry make_entry(const std::string& label, int qubit, double mean, double std_dev) {
  if (std_dev == 0.0) {
    return DriftEntry::fixed_value(mean);
  }
  try {
    return DriftEntry::distributed(beta_from_mean_std(mean, std_dev));
  } catch (const DriftSpecError& e) {
    throw ConfigError(label + " drift for qubit q" + std::to_string(qubit + 1) +
                      ": " + e.what());
  }
}

void check_probability_list(const std::string& key, const std::vector<double>& values) {
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ConfigError("key '" + key + "': value " + std::to_string(v) +
                        " is not a probability");
    }
  }
}

void check_nonnegative_list(const std::string& key, const std::vector<double>& values) {
  for (double v : values) {
    if (!(v >= 0.0)) {
      throw ConfigError("key '" + key + "': value " + std::to_string(v) +
                        " must be nonnegative");
    }
  }
}

}  // namespace

const char* arm_name(Arm arm) {
  switch (arm) {
    case Arm::Unmitigated:
      return "unmitigated";
    case Arm::Static:
      return "static";
    case Arm::Adaptive:
      return "adaptive";
  }
  return "unknown";
}

ExperimentConfig default_config(int qubits) {
  if (qubits < 1) {
    throw ConfigError("qubits must be at least 1");
  }
  constexpr double kE0[] = {0.90, 0.80, 0.85, 0.75};
  constexpr double kE1[] = {0.85, 0.75, 0.80, 0.70};
  constexpr double kE2Degrees[] = {3.1, 4.1, 4.9, 2.9};
  ExperimentConfig config;
  config.qubits = qubits;
  for (int q = 0; q < qubits; ++q) {
    config.e0_mean.push_back(kE0[q % 4]);
    config.e1_mean.push_back(kE1[q % 4]);
    config.e2_mean.push_back(kE2Degrees[q % 4] * kDegToRad);
  }
  config.e0_std = default_stds(config.e0_mean);
  config.e1_std = default_stds(config.e1_mean);
  config.e2_std = default_stds(config.e2_mean);
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open configuration file '" + path + "'");
  }

  std::map<std::string, std::string> raw;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto equals = line.find('=');
    if (equals == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_number) +
                        ": expected 'key = value', got '" + line + "'");
    }
    const std::string key = lower(trim(line.substr(0, equals)));
    const std::string value = trim(line.substr(equals + 1));
    if (kKnownKeys.count(key) == 0) {
      throw ConfigError("line " + std::to_string(line_number) + ": unknown key '" +
                        key + "'");
    }
    if (raw.count(key) != 0) {
      throw ConfigError("line " + std::to_string(line_number) + ": duplicate key '" +
                        key + "'");
    }
    if (value.empty()) {
      throw ConfigError("line " + std::to_string(line_number) + ": key '" + key +
                        "' has no value");
    }
    raw[key] = value;
  }

  const auto has = [&raw](const char* key) { return raw.count(key) != 0; };

  // The register size decides the length of every defaulted per-qubit list,
  // so resolve it before building the default configuration.
  int qubits = 4;
  if (has("qubits")) qubits = static_cast<int>(parse_long("qubits", raw["qubits"]));
  if (qubits < 1) {
    throw ConfigError("qubits must be at least 1");
  }
  ExperimentConfig config = default_config(qubits);

  if (has("shots")) config.shots = parse_long("shots", raw["shots"]);
  if (has("runs")) config.runs = static_cast<int>(parse_long("runs", raw["runs"]));
  if (has("seed")) config.seed = parse_seed("seed", raw["seed"]);
  if (has("chain_steps")) config.chain_steps = parse_long("chain_steps", raw["chain_steps"]);
  if (has("burn_in_fraction"))
    config.burn_in_fraction = parse_double("burn_in_fraction", raw["burn_in_fraction"]);
  if (has("proposal_scale_e0"))
    config.proposal_scales[0] = parse_double("proposal_scale_e0", raw["proposal_scale_e0"]);
  if (has("proposal_scale_e1"))
    config.proposal_scales[1] = parse_double("proposal_scale_e1", raw["proposal_scale_e1"]);
  if (has("proposal_scale_e2"))
    config.proposal_scales[2] = parse_double("proposal_scale_e2", raw["proposal_scale_e2"]);
  if (has("prior")) config.prior_mode = parse_prior_mode(raw["prior"]);
  if (has("arms")) config.arms = parse_arms(raw["arms"]);
  if (has("out_dir")) config.out_dir = raw["out_dir"];

  // Any explicitly configured drift replaces the corresponding default
  // wholesale; omitted std lists derive from the (possibly new) means.
  double angle_factor = kDegToRad;
  if (has("e2_unit")) {
    const std::string unit = lower(raw["e2_unit"]);
    if (unit == "degrees") {
      angle_factor = kDegToRad;
    } else if (unit == "radians") {
      angle_factor = 1.0;
    } else {
      throw ConfigError("e2_unit must be degrees or radians, got '" + raw["e2_unit"] + "'");
    }
  }

  if (has("e0_mean")) {
    config.e0_mean = parse_double_list("e0_mean", raw["e0_mean"]);
    config.e0_std.clear();
  }
  if (has("e1_mean")) {
    config.e1_mean = parse_double_list("e1_mean", raw["e1_mean"]);
    config.e1_std.clear();
  }
  if (has("e2_mean")) {
    config.e2_mean = parse_double_list("e2_mean", raw["e2_mean"]);
    for (double& v : config.e2_mean) v *= angle_factor;
    config.e2_std.clear();
  }
  if (has("e0_std")) config.e0_std = parse_double_list("e0_std", raw["e0_std"]);
  if (has("e1_std")) config.e1_std = parse_double_list("e1_std", raw["e1_std"]);
  if (has("e2_std")) {
    config.e2_std = parse_double_list("e2_std", raw["e2_std"]);
    for (double& v : config.e2_std) v *= angle_factor;
  }

  config.e0_mean = broadcast("e0_mean", config.e0_mean, config.qubits);
  config.e1_mean = broadcast("e1_mean", config.e1_mean, config.qubits);
  config.e2_mean = broadcast("e2_mean", config.e2_mean, config.qubits);
  if (config.e0_std.empty()) config.e0_std = default_stds(config.e0_mean);
  if (config.e1_std.empty()) config.e1_std = default_stds(config.e1_mean);
  if (config.e2_std.empty()) config.e2_std = default_stds(config.e2_mean);
  config.e0_std = broadcast("e0_std", config.e0_std, config.qubits);
  config.e1_std = broadcast("e1_std", config.e1_std, config.qubits);
  config.e2_std = broadcast("e2_std", config.e2_std, config.qubits);

  validate_config(config);
  return config;
}

void validate_config(const ExperimentConfig& config) {
  if (config.qubits < 1 || config.qubits > 12) {
    throw ConfigError("qubits must lie in [1, 12], got " + std::to_string(config.qubits));
  }
  if (config.shots < 1) {
    throw ConfigError("shots must be at least 1");
  }
  if (config.runs < 1) {
    throw ConfigError("runs must be at least 1");
  }
  if (config.chain_steps < 100) {
    throw ConfigError("chain_steps must be at least 100");
  }
  if (!(config.burn_in_fraction >= 0.0 && config.burn_in_fraction <= 0.9)) {
    throw ConfigError("burn_in_fraction must lie in [0, 0.9]");
  }
  for (double s : config.proposal_scales) {
    if (!(s > 0.0)) {
      throw ConfigError("proposal scales must be positive");
    }
  }
  if (config.arms.empty()) {
    throw ConfigError("at least one arm must be selected");
  }

  const auto check_length = [&config](const char* key, const std::vector<double>& v) {
    if (v.size() != static_cast<std::size_t>(config.qubits)) {
      throw ConfigError(std::string(key) + " must list one value per qubit");
    }
  };
  check_length("e0_mean", config.e0_mean);
  check_length("e0_std", config.e0_std);
  check_length("e1_mean", config.e1_mean);
  check_length("e1_std", config.e1_std);
  check_length("e2_mean", config.e2_mean);
  check_length("e2_std", config.e2_std);

  check_probability_list("e0_mean", config.e0_mean);
  check_probability_list("e1_mean", config.e1_mean);
  check_nonnegative_list("e0_std", config.e0_std);
  check_nonnegative_list("e1_std", config.e1_std);
  check_nonnegative_list("e2_std", config.e2_std);
  for (double v : config.e2_mean) {
    if (!(std::abs(v) <= kQuarterPi)) {
      throw ConfigError("e2_mean value " + std::to_string(v) +
                        " rad exceeds the admissible range of +/- pi/4");
    }
  }

  // Building the model exercises every beta variance bound.
  build_drift_model(config);
}

DriftModel build_drift_model(const ExperimentConfig& config) {
  DriftModel model;
  model.n = config.qubits;
  model.entries.reserve(static_cast<std::size_t>(config.qubits));
  for (int q = 0; q < config.qubits; ++q) {
    const auto i = static_cast<std::size_t>(q);
    model.entries.push_back({
        make_entry("e0", q, config.e0_mean[i], config.e0_std[i]),
        make_entry("e1", q, config.e1_mean[i], config.e1_std[i]),
        make_entry("e2", q, config.e2_mean[i], config.e2_std[i]),
    });
  }
  return model;
}

PriorSpec initial_prior(const ExperimentConfig& config) {
  if (config.prior_mode != PriorMode::Configured) {
    PriorSpec prior = PriorSpec::uniform(config.qubits);
    prior.mode = config.prior_mode;
    return prior;
  }
  const DriftModel model = build_drift_model(config);
  PriorSpec prior;
  prior.mode = PriorMode::Configured;
  prior.n = config.qubits;
  prior.shapes.reserve(model.entries.size());
  for (const auto& qubit : model.entries) {
    std::array<BetaSpec, 3> triple;
    for (int k = 0; k < 3; ++k) {
      const DriftEntry& entry = qubit[static_cast<std::size_t>(k)];
      // A held-fixed drift value has no beta density to use as a prior.
      triple[static_cast<std::size_t>(k)] =
          entry.fixed ? BetaSpec{1.0, 1.0} : entry.shape;
    }
    prior.shapes.push_back(triple);
  }
  return prior;
}

}  // namespace stabilizer
