// qpac: PAC-learning experiments on stabilizer states.
//
//   qpac learn --n 4 --m 15
//   qpac scaling --n-max 6 --out scaling.csv
//   qpac sweep-m --config previous_output.csv     (replay)
//   qpac repro fig5

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qpac/config.hpp"
#include "qpac/errors.hpp"
#include "qpac/experiments.hpp"
#include "qpac/parallel.hpp"
#include "qpac/repro.hpp"

namespace {

using nlohmann::json;

struct Flags {
  std::optional<std::size_t> n, n_min, n_max, imax, kmax, m_cap, shots, repeats;
  std::optional<std::string> dist, replacement, param;
  std::vector<std::size_t> m;
  std::optional<double> epsilon, gamma, delta, gauss_std, objective_tol, k_constant;
  std::optional<std::uint64_t> seed;
  std::vector<double> values;
  std::vector<std::string> generators;
  bool incremental = false;
  bool no_cache = false;
  std::string config_path;
  std::string out;
  std::string training_out;
  std::string trace_out;
  std::string trials_out;
  std::size_t threads = qpac::default_thread_count();
};

void add_common(CLI::App* app, Flags& f, qpac::Command c) {
  app->add_option("--config", f.config_path, "JSON config, or a CSV written by qpac (replay)");
  app->add_option("--out", f.out, "output CSV (default $QPAC_OUTPUT_DIR/<command>.csv)");
  app->add_option("--threads", f.threads, "worker threads for trials and repeats");
  app->add_option("--seed", f.seed, "base RNG seed");
  app->add_option("--epsilon", f.epsilon, "accuracy parameter");
  app->add_option("--gamma", f.gamma, "prediction tolerance");
  app->add_option("--delta", f.delta, "confidence parameter");
  if (c == qpac::Command::BoundCurve) {
    app->add_option("--n-min", f.n_min, "first qubit count");
    app->add_option("--n-max", f.n_max, "last qubit count");
    app->add_option("--K", f.k_constant, "constant of the sample bound");
    return;
  }
  app->add_option("--kmax", f.kmax, "Frank-Wolfe iterations");
  app->add_option("--shots", f.shots, "shot-averaged values with S shots");
  app->add_option("--gauss-std", f.gauss_std, "Gaussian value noise std");
  app->add_option("--replacement", f.replacement, "with|without")->check(CLI::IsMember({"with", "without"}));
  app->add_option("--dist", f.dist, "d1|d2")->check(CLI::IsMember({"d1", "d2"}));
  app->add_option("--objective-tol", f.objective_tol, "stop the optimizer once f <= tol");
  if (c == qpac::Command::Scaling) {
    app->add_option("--n-min", f.n_min, "first qubit count");
    app->add_option("--n-max", f.n_max, "last qubit count");
  } else {
    app->add_option("--n", f.n, "qubit count (GHZ_n target)");
    app->add_option("--generators", f.generators, "stabilizer generators of a custom target, e.g. +XX +ZZ")
        ->delimiter(',');
  }
  if (c == qpac::Command::Learn) {
    app->add_option("--m", f.m, "training-set size")->expected(1);
    app->add_option("--training-out", f.training_out, "write the training set CSV");
    app->add_option("--trace-out", f.trace_out, "write the per-iteration optimizer log");
  }
  if (c == qpac::Command::SweepM) {
    app->add_option("--m", f.m, "training-set sizes, comma separated")->delimiter(',');
  }
  if (c == qpac::Command::SweepM || c == qpac::Command::SweepErrors || c == qpac::Command::Scaling) {
    app->add_option("--repeats", f.repeats, "repeats per data point");
  }
  if (c == qpac::Command::SweepErrors || c == qpac::Command::Scaling) {
    app->add_option("--imax", f.imax, "trials per candidate m");
    app->add_option("--mcap", f.m_cap, "largest m tried before giving up");
    app->add_flag("--incremental", f.incremental, "reuse samples across m");
  }
  if (c == qpac::Command::SweepErrors) {
    app->add_option("--param", f.param, "epsilon|gamma|delta")->check(CLI::IsMember({"epsilon", "gamma", "delta"}));
    app->add_option("--values", f.values, "swept values, comma separated")->delimiter(',');
    app->add_flag("--no-cache", f.no_cache, "recompute trials for every swept value");
  }
  if (c == qpac::Command::Scaling) {
    app->add_option("--trials-out", f.trials_out, "write per-trial records");
  }
}

json flags_patch(const Flags& f, qpac::Command c) {
  json j = json::object();
  auto put = [&j](const char* key, const auto& opt) {
    if (opt) j[key] = *opt;
  };
  put("n", f.n);
  put("n_min", f.n_min);
  put("n_max", f.n_max);
  put("imax", f.imax);
  put("kmax", f.kmax);
  put("m_cap", f.m_cap);
  put("shots", f.shots);
  put("repeats", f.repeats);
  put("dist", f.dist);
  put("replacement", f.replacement);
  put("sweep_param", f.param);
  put("epsilon", f.epsilon);
  put("gamma", f.gamma);
  put("delta", f.delta);
  put("gauss_std", f.gauss_std);
  put("objective_tol", f.objective_tol);
  put("k_constant", f.k_constant);
  put("seed", f.seed);
  if (!f.m.empty()) {
    if (c == qpac::Command::Learn) j["m"] = f.m.front();
    else j["m_values"] = f.m;
  }
  if (!f.values.empty()) j["sweep_values"] = f.values;
  if (!f.generators.empty()) j["generators"] = f.generators;
  if (f.incremental) j["incremental"] = true;
  if (f.no_cache) j["cached"] = false;
  return j;
}

qpac::ExperimentConfig build_config(const Flags& f, qpac::Command c) {
  qpac::ExperimentConfig cfg = qpac::default_config(c);
  if (!f.config_path.empty()) {
    auto [doc, text] = qpac::load_config_document(f.config_path);
    if (doc.contains("command") && doc["command"] != qpac::to_string(c)) {
      throw qpac::ConfigError(f.config_path + ": config is for '" + doc["command"].get<std::string>() +
                              "', not '" + qpac::to_string(c) + "'");
    }
    cfg = qpac::apply_json(cfg, doc, f.config_path, text);
  }
  cfg = qpac::apply_json(cfg, flags_patch(f, c), "flags");
  cfg.threads = f.threads;
  cfg.out = f.out;
  return cfg;
}

int run_command(const Flags& f, qpac::Command c) {
  const qpac::ExperimentConfig cfg = build_config(f, c);
  const std::string path = qpac::output_path(cfg);
  if (c == qpac::Command::Learn) {
    const auto outcome = qpac::run_learn_detailed(cfg);
    if (!f.training_out.empty()) qpac::write_file_atomically(f.training_out, outcome.training.to_csv());
    if (!f.trace_out.empty()) qpac::write_file_atomically(f.trace_out, outcome.trace.to_csv());
    qpac::write_file_atomically(path, outcome.summary.to_csv());
  } else if (c == qpac::Command::Scaling && !f.trials_out.empty()) {
    qpac::ResultTable trials;
    const auto table = qpac::run_scaling(cfg, &trials);
    qpac::write_file_atomically(f.trials_out, trials.to_csv());
    qpac::write_file_atomically(path, table.to_csv());
  } else {
    qpac::write_file_atomically(path, qpac::run_experiment(cfg).to_csv());
  }
  std::cout << path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PAC learning of stabilizer states from two-outcome measurements"};
  app.set_version_flag("--version", std::string(QPAC_VERSION));
  app.require_subcommand(1);

  const std::vector<qpac::Command> commands = {qpac::Command::Learn, qpac::Command::SweepM,
                                               qpac::Command::SweepErrors, qpac::Command::Scaling,
                                               qpac::Command::BoundCurve};
  std::map<qpac::Command, Flags> flags;
  std::map<qpac::Command, CLI::App*> subs;
  const std::map<qpac::Command, std::string> help = {
      {qpac::Command::Learn, "learn one hypothesis from one sampled training set"},
      {qpac::Command::SweepM, "prediction error and fidelity versus training-set size"},
      {qpac::Command::SweepErrors, "minimum m versus one of epsilon, gamma, delta"},
      {qpac::Command::Scaling, "minimum m versus qubit count, with a linear fit"},
      {qpac::Command::BoundCurve, "tabulate the theoretical sample bound over n"},
  };
  for (auto c : commands) {
    subs[c] = app.add_subcommand(qpac::to_string(c), help.at(c));
    add_common(subs[c], flags[c], c);
  }

  std::string scenario;
  std::string manifest_path = QPAC_DEFAULT_MANIFEST;
  std::string repro_dir;
  std::string report_json;
  std::size_t repro_threads = qpac::default_thread_count();
  auto* repro = app.add_subcommand("repro", "run a named reproduction scenario and check it");
  repro->add_option("scenario", scenario, "scenario name from the manifest")->required();
  repro->add_option("--manifest", manifest_path, "manifest JSON");
  repro->add_option("--out-dir", repro_dir, "directory for scenario CSVs");
  repro->add_option("--json", report_json, "write the machine-readable report here");
  repro->add_option("--threads", repro_threads, "worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    for (auto c : commands) {
      if (subs[c]->parsed()) return run_command(flags[c], c);
    }
    if (repro->parsed()) {
      const auto manifest = qpac::load_manifest(manifest_path);
      if (repro_dir.empty()) {
        const char* env = std::getenv("QPAC_OUTPUT_DIR");
        repro_dir = (env && *env) ? env : "repro_out";
      }
      const auto report = qpac::run_repro(manifest, scenario, repro_dir, repro_threads);
      std::cout << report.to_text();
      const std::string json_path =
          report_json.empty() ? (std::filesystem::path(repro_dir) / (scenario + ".report.json")).string()
                              : report_json;
      qpac::write_file_atomically(json_path, report.to_json().dump(2) + "\n");
      return report.pass() ? 0 : 1;
    }
  } catch (const qpac::ConfigError& e) {
    std::cerr << "qpac: config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "qpac: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
