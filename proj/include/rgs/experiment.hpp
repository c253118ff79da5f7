#pragma once

#include "rgs/measures.hpp"
#include "rgs/report.hpp"
#include "rgs/representations.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rgs {

/// Invalid or incomplete experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string command;
  std::string group;
  std::string representation;
  std::string semigroup;
  std::string measure;
  std::string check;
  int dim = 0;
  std::vector<double> times;
  std::size_t budget = 0;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  double t0 = 1e-4;
  bool richardson = false;
  int samples = 0;  // 0 selects the command default
  unsigned threads = 1;
  std::string output;
  std::string csv;
};

/// Keys mirror the field names; unknown keys are rejected.
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);

std::vector<double> parse_times(const std::string& text);
Representation parse_representation(const Group& group, const std::string& text);
ConvolutionSemigroupSpec parse_semigroup(const Group& group, const std::string& text, std::size_t budget = 10000);

struct ExperimentResult {
  Report report;
  nlohmann::json document;
  std::string csv;
};

const std::vector<std::string>& experiment_commands();
/// Relation each command exercises, used in help text.
std::string command_identity(const std::string& command);

/// Runs one experiment. Throws ConfigError for invalid configurations.
ExperimentResult run_experiment(const ExperimentConfig& config);

}  // namespace rgs
