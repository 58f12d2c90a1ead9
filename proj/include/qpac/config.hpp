#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "qpac/complexity.hpp"
#include "qpac/sampling.hpp"

namespace qpac {

enum class Command { Learn, SweepM, SweepErrors, Scaling, BoundCurve };

std::string to_string(Command c);
Command parse_command(const std::string& text);

struct ExperimentConfig {
  Command command = Command::Learn;
  std::size_t n = 4;
  std::size_t n_min = 2;
  std::size_t n_max = 6;
  DistributionLabel dist = DistributionLabel::DI;
  // Empty means GHZ_n; otherwise the generators of a stabilizer target.
  std::vector<std::string> generators;
  std::size_t m = 15;
  std::vector<std::size_t> m_values;
  LearnParams params;
  std::uint64_t seed = 20180101;
  std::size_t repeats = 1;
  std::string sweep_param = "gamma";
  std::vector<double> sweep_values;
  bool cached = true;
  double k_constant = 1.0;

  // Execution settings. They never change results and are not echoed.
  std::size_t threads = 1;
  std::string out;
};

// Configuration with every field preset to the protocol defaults of `c`.
ExperimentConfig default_config(Command c);

// Serialized form used in the CSV header and in config files.
nlohmann::json to_json(const ExperimentConfig& cfg);

// Overlays `patch` on `base` (defaults, then file, then flags). Unknown keys
// and ill-typed values throw ConfigError. `source` and `text` locate the
// offending key in messages ("file.json:7: gamma: ...").
ExperimentConfig apply_json(const ExperimentConfig& base, const nlohmann::json& patch,
                            const std::string& source = "", const std::string& text = "");

// Range and consistency checks; throws ConfigError.
void validate(const ExperimentConfig& cfg);

// Reads a JSON config file, or the "config" object from the `#` header line
// of a CSV produced by this tool. Returns the JSON and the raw text.
std::pair<nlohmann::json, std::string> load_config_document(const std::string& path);

}  // namespace qpac
