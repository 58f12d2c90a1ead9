#include "qpac/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "qpac/errors.hpp"

namespace qpac {
namespace {

using nlohmann::json;

// 1-based line of the first occurrence of "key" in text, 0 when absent.
std::size_t line_of_key(const std::string& text, const std::string& key) {
  const auto pos = text.find("\"" + key + "\"");
  if (pos == std::string::npos) return 0;
  return static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n')) + 1;
}

std::string locate(const std::string& source, const std::string& text, const std::string& key) {
  std::string where = source.empty() ? "config" : source;
  if (const auto line = line_of_key(text, key); line > 0) where += ":" + std::to_string(line);
  return where + ": " + key;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "command",   "n",        "n_min",       "n_max",        "dist",        "generators",
      "m",         "m_values", "epsilon",     "gamma",        "delta",       "imax",
      "kmax",      "m_cap",    "shots",       "gauss_std",    "replacement", "incremental",
      "objective_tol", "seed", "repeats",     "sweep_param",  "sweep_values", "cached",
      "k_constant"};
  return keys;
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::Learn: return "learn";
    case Command::SweepM: return "sweep-m";
    case Command::SweepErrors: return "sweep-errors";
    case Command::Scaling: return "scaling";
    case Command::BoundCurve: return "bound-curve";
  }
  return "?";
}

Command parse_command(const std::string& text) {
  for (Command c : {Command::Learn, Command::SweepM, Command::SweepErrors, Command::Scaling,
                    Command::BoundCurve}) {
    if (to_string(c) == text) return c;
  }
  throw ConfigError("unknown command '" + text + "'");
}

ExperimentConfig default_config(Command c) {
  ExperimentConfig cfg;
  cfg.command = c;
  switch (c) {
    case Command::Learn:
      cfg.n = 4;
      cfg.m = 15;
      cfg.params.gamma = 0.1;
      break;
    case Command::SweepM:
      cfg.n = 4;
      cfg.params.gamma = 0.1;
      cfg.repeats = 20;
      cfg.params.replacement = Replacement::Without;
      break;
    case Command::SweepErrors:
      cfg.n = 4;
      cfg.params.epsilon = 0.05;
      cfg.params.gamma = 0.1;
      cfg.params.delta = 0.1;
      cfg.repeats = 4;
      cfg.sweep_param = "gamma";
      break;
    case Command::Scaling:
      cfg.dist = DistributionLabel::DII;
      cfg.n_min = 2;
      cfg.n_max = 6;
      cfg.repeats = 10;
      break;
    case Command::BoundCurve:
      cfg.n_min = 2;
      cfg.n_max = 10;
      break;
  }
  return cfg;
}

json to_json(const ExperimentConfig& cfg) {
  const auto& p = cfg.params;
  json j;
  j["command"] = to_string(cfg.command);
  j["n"] = cfg.n;
  j["n_min"] = cfg.n_min;
  j["n_max"] = cfg.n_max;
  j["dist"] = to_string(cfg.dist);
  j["generators"] = cfg.generators;
  j["m"] = cfg.m;
  j["m_values"] = cfg.m_values;
  j["epsilon"] = p.epsilon;
  j["gamma"] = p.gamma;
  j["delta"] = p.delta;
  j["imax"] = p.i_max;
  j["kmax"] = p.k_max;
  j["m_cap"] = p.m_cap;
  j["shots"] = p.noise.kind == NoiseModel::Kind::Shots ? p.noise.shots : 0;
  j["gauss_std"] = p.noise.kind == NoiseModel::Kind::Gaussian ? p.noise.stddev : 0.0;
  j["replacement"] = to_string(p.replacement);
  j["incremental"] = p.incremental;
  j["objective_tol"] = p.objective_tolerance ? json(*p.objective_tolerance) : json(nullptr);
  j["seed"] = cfg.seed;
  j["repeats"] = cfg.repeats;
  j["sweep_param"] = cfg.sweep_param;
  j["sweep_values"] = cfg.sweep_values;
  j["cached"] = cfg.cached;
  j["k_constant"] = cfg.k_constant;
  return j;
}

ExperimentConfig apply_json(const ExperimentConfig& base, const json& patch,
                            const std::string& source, const std::string& text) {
  if (!patch.is_object()) throw ConfigError((source.empty() ? "config" : source) + ": expected a JSON object");
  ExperimentConfig cfg = base;
  std::size_t shots = base.params.noise.kind == NoiseModel::Kind::Shots ? base.params.noise.shots : 0;
  double gauss = base.params.noise.kind == NoiseModel::Kind::Gaussian ? base.params.noise.stddev : 0.0;
  bool sweep_values_given = false;

  for (const auto& [key, value] : patch.items()) {
    if (!known_keys().contains(key)) throw ConfigError(locate(source, text, key) + ": unknown key");
    try {
      if (key == "command") cfg.command = parse_command(value.get<std::string>());
      else if (key == "n") cfg.n = value.get<std::size_t>();
      else if (key == "n_min") cfg.n_min = value.get<std::size_t>();
      else if (key == "n_max") cfg.n_max = value.get<std::size_t>();
      else if (key == "dist") cfg.dist = parse_distribution_label(value.get<std::string>());
      else if (key == "generators") cfg.generators = value.get<std::vector<std::string>>();
      else if (key == "m") cfg.m = value.get<std::size_t>();
      else if (key == "m_values") {
        cfg.m_values = value.get<std::vector<std::size_t>>();
      } else if (key == "epsilon") cfg.params.epsilon = value.get<double>();
      else if (key == "gamma") cfg.params.gamma = value.get<double>();
      else if (key == "delta") cfg.params.delta = value.get<double>();
      else if (key == "imax") cfg.params.i_max = value.get<std::size_t>();
      else if (key == "kmax") cfg.params.k_max = value.get<std::size_t>();
      else if (key == "m_cap") cfg.params.m_cap = value.get<std::size_t>();
      else if (key == "shots") shots = value.get<std::size_t>();
      else if (key == "gauss_std") gauss = value.get<double>();
      else if (key == "replacement") cfg.params.replacement = parse_replacement(value.get<std::string>());
      else if (key == "incremental") cfg.params.incremental = value.get<bool>();
      else if (key == "objective_tol") {
        cfg.params.objective_tolerance =
            value.is_null() ? std::nullopt : std::optional<double>(value.get<double>());
      } else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "repeats") cfg.repeats = value.get<std::size_t>();
      else if (key == "sweep_param") cfg.sweep_param = value.get<std::string>();
      else if (key == "sweep_values") {
        cfg.sweep_values = value.get<std::vector<double>>();
        sweep_values_given = true;
      } else if (key == "cached") cfg.cached = value.get<bool>();
      else if (key == "k_constant") cfg.k_constant = value.get<double>();
    } catch (const json::exception& e) {
      throw ConfigError(locate(source, text, key) + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(locate(source, text, key) + ": " + e.what());
    }
  }

  if (shots > 0 && gauss > 0.0) {
    throw ConfigError(locate(source, text, "shots") + ": shots and gauss_std are exclusive");
  }
  if (shots > 0) cfg.params.noise = NoiseModel::with_shots(shots);
  else if (gauss > 0.0) cfg.params.noise = NoiseModel::gaussian(gauss);
  else if (gauss < 0.0) throw ConfigError(locate(source, text, "gauss_std") + ": must be >= 0");
  else cfg.params.noise = NoiseModel::exact();

  // A new sweep parameter without explicit values gets that parameter's grid.
  if (!sweep_values_given && patch.contains("sweep_param")) cfg.sweep_values.clear();
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  const auto& p = cfg.params;
  auto unit = [](double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) throw ConfigError(std::string(name) + " must lie in (0, 1), got " + std::to_string(v));
  };
  unit(p.gamma, "gamma");
  if (cfg.command != Command::Learn && cfg.command != Command::SweepM) {
    unit(p.epsilon, "epsilon");
    unit(p.delta, "delta");
  }
  if (p.k_max < 1) throw ConfigError("kmax must be >= 1");
  if (p.i_max < 1) throw ConfigError("imax must be >= 1");
  if (p.m_cap < 1) throw ConfigError("m_cap must be >= 1");
  if (cfg.repeats < 1) throw ConfigError("repeats must be >= 1");
  if (cfg.threads < 1) throw ConfigError("threads must be >= 1");
  try {
    p.noise.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  const bool ranged = cfg.command == Command::Scaling || cfg.command == Command::BoundCurve;
  if (ranged) {
    if (cfg.n_min > cfg.n_max) throw ConfigError("n_min must not exceed n_max");
    if (cfg.n_min < 2 && cfg.command == Command::Scaling) throw ConfigError("n_min must be >= 2");
    if (cfg.n_max > kDefaultMaxQubits && cfg.command == Command::Scaling) {
      throw ConfigError("n_max must be <= " + std::to_string(kDefaultMaxQubits));
    }
    if (!cfg.generators.empty()) throw ConfigError("generators apply to a fixed n only");
  } else {
    if (cfg.generators.empty() && (cfg.n < 2 || cfg.n > kDefaultMaxQubits)) {
      throw ConfigError("n must lie in [2, " + std::to_string(kDefaultMaxQubits) + "], got " +
                        std::to_string(cfg.n));
    }
    if (!cfg.generators.empty() && cfg.generators.size() > kDefaultMaxQubits) {
      throw ConfigError("too many generators");
    }
  }
  if (cfg.command == Command::Learn && cfg.m < 1) {
    throw ConfigError("m must be >= 1, got " + std::to_string(cfg.m));
  }
  if (cfg.command == Command::SweepErrors) {
    if (cfg.sweep_param != "epsilon" && cfg.sweep_param != "gamma" && cfg.sweep_param != "delta") {
      throw ConfigError("sweep_param must be epsilon, gamma or delta, got '" + cfg.sweep_param + "'");
    }
    for (double v : cfg.sweep_values) unit(v, cfg.sweep_param.c_str());
  }
  if (cfg.command == Command::BoundCurve && !(cfg.k_constant >= 0.0)) {
    throw ConfigError("k_constant must be >= 0");
  }
}

std::pair<json, std::string> load_config_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  if (text.rfind("#", 0) == 0) {
    const auto eol = text.find('\n');
    const std::string header = text.substr(1, eol == std::string::npos ? std::string::npos : eol - 1);
    try {
      json j = json::parse(header);
      if (!j.contains("config")) throw ConfigError(path + ":1: header has no config object");
      return {j.at("config"), header};
    } catch (const json::parse_error& e) {
      throw ConfigError(path + ":1: " + e.what());
    }
  }
  try {
    return {json::parse(text), text};
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}
}  // namespace qpac
