#include "qpac/experiments.hpp"

#include <cstdlib>
#include <filesystem>
#include <numeric>

#include "qpac/complexity.hpp"
#include "qpac/errors.hpp"
#include "qpac/learner.hpp"
#include "qpac/parallel.hpp"
#include "qpac/rng.hpp"

namespace qpac {
namespace {

constexpr const char* kFidelityConvention = "uhlmann amplitude F = Tr sqrt(sqrt(a) b sqrt(a)), not squared";

// Stream tags keep the seeds of different protocols apart.
constexpr std::uint64_t kSweepErrorsStream = 0x5e11;

std::vector<double> default_sweep(const std::string& param) {
  if (param == "delta") return {0.02, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5};
  if (param == "epsilon") return {0.02, 0.05, 0.1, 0.2, 0.3, 0.4};
  return {0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.55, 0.7, 0.9};
}

ResultTable make_table(const ExperimentConfig& cfg, std::vector<std::string> columns) {
  ResultTable t;
  t.header = table_header(cfg);
  t.columns = std::move(columns);
  return t;
}

Cell integer(std::size_t v) { return Cell(static_cast<std::int64_t>(v)); }

struct Stats {
  double mean = 0.0;
  double std = 0.0;
};

Stats stats(const std::vector<double>& v) { return {mean(v), sample_stddev(v)}; }

HazanOptions hazan_options(const LearnParams& p) {
  HazanOptions o;
  o.max_iterations = p.k_max;
  o.objective_tolerance = p.objective_tolerance;
  return o;
}

}  // namespace

Target make_target(const ExperimentConfig& cfg) {
  std::vector<PauliString> gens;
  if (cfg.generators.empty()) {
    gens = ghz_generators(cfg.n);
  } else {
    for (const auto& g : cfg.generators) {
      try {
        gens.push_back(PauliString::parse(g));
      } catch (const std::invalid_argument& e) {
        throw ConfigError("generators: " + std::string(e.what()));
      }
    }
  }
  StabilizerGroup group;
  try {
    group = group_closure(gens);
  } catch (const StructureError& e) {
    if (cfg.generators.empty()) throw;
    throw ConfigError("generators: " + std::string(e.what()));
  }
  if (group.size() != (std::size_t{1} << group.num_qubits())) {
    throw ConfigError("generators: need " + std::to_string(group.num_qubits()) +
                      " independent generators for a unique target state");
  }
  DensityMatrix state = cfg.generators.empty() ? ghz_density(cfg.n) : stabilizer_state(group);
  MeasurementDistribution dist = build_distribution(group, cfg.dist);
  return {std::move(group), std::move(state), std::move(dist)};
}

ExperimentConfig resolve(ExperimentConfig cfg) {
  validate(cfg);
  if (!cfg.generators.empty()) {
    try {
      cfg.n = PauliString::parse(cfg.generators.front()).num_qubits();
    } catch (const std::invalid_argument& e) {
      throw ConfigError("generators: " + std::string(e.what()));
    }
  }
  if (cfg.command == Command::SweepM && cfg.m_values.empty()) {
    const Target t = make_target(cfg);
    cfg.m_values.resize(t.dist.size() + 1);
    std::iota(cfg.m_values.begin(), cfg.m_values.end(), std::size_t{0});
  }
  if (cfg.command == Command::SweepErrors && cfg.sweep_values.empty()) {
    cfg.sweep_values = default_sweep(cfg.sweep_param);
  }
  return cfg;
}

nlohmann::json table_header(const ExperimentConfig& resolved) {
  nlohmann::json h;
  h["tool"] = "qpac";
  h["version"] = QPAC_VERSION;
  h["config"] = to_json(resolved);
  h["seed"] = resolved.seed;
  h["fidelity"] = kFidelityConvention;
  return h;
}

LearnOutcome run_learn_detailed(const ExperimentConfig& input) {
  const ExperimentConfig cfg = resolve(input);
  const Target target = make_target(cfg);
  const auto& p = cfg.params;

  TrainingSet training =
      sample_training_set(target.dist, target.state, cfg.m, p.noise, cfg.seed, p.replacement);

  LearnOutcome out;
  out.training = make_table(cfg, {"pauli", "value", "provenance"});
  for (const auto& item : training.items) {
    out.training.add_row({item.effect.pauli().str(), item.value, p.noise.describe()});
  }

  out.trace = make_table(cfg, {"k", "objective", "min_grad_eigenvalue"});
  HazanOptions options = hazan_options(p);
  options.on_iteration = [&out](const IterationRecord& r) {
    out.trace.add_row({integer(r.k), r.objective, r.min_grad_eigenvalue});
  };
  const Objective objective(std::move(training));
  const Hypothesis h = hazan_optimize(objective, target.state.dim(), options);

  const DensityMatrix mixed = maximally_mixed(target.state.num_qubits());
  out.summary = make_table(cfg, {"hypothesis", "m", "final_objective", "iterations", "epsilon_est",
                                 "fidelity_target", "fidelity_mixed"});
  out.summary.add_row({std::string("learned"), integer(cfg.m), h.final_objective,
                       integer(h.iterations_used),
                       evaluate_epsilon(h.sigma, target.state, target.dist, p.gamma),
                       fidelity(h.sigma, target.state), fidelity_general(h.sigma, mixed)});
  out.summary.add_row({std::string("mixed_baseline"), integer(0), objective_value(objective, mixed),
                       integer(0), evaluate_epsilon(mixed, target.state, target.dist, p.gamma),
                       fidelity(mixed, target.state), 1.0});
  return out;
}

ResultTable run_learn(const ExperimentConfig& cfg) { return run_learn_detailed(cfg).summary; }

ResultTable run_sweep_m(const ExperimentConfig& input) {
  const ExperimentConfig cfg = resolve(input);
  const Target target = make_target(cfg);
  const auto& p = cfg.params;
  const DensityMatrix mixed = maximally_mixed(target.state.num_qubits());
  const double baseline = evaluate_epsilon(mixed, target.state, target.dist, p.gamma);

  ResultTable t = make_table(cfg, {"m", "repeats", "epsilon_mean", "epsilon_std",
                                   "fidelity_target_mean", "fidelity_target_std",
                                   "fidelity_mixed_mean", "fidelity_mixed_std", "baseline_epsilon"});
  for (std::size_t m : cfg.m_values) {
    std::vector<double> eps(cfg.repeats), f_target(cfg.repeats), f_mixed(cfg.repeats);
    parallel_for(cfg.repeats, cfg.threads, [&](std::size_t r) {
      if (m == 0) {
        // No data: the hypothesis is the starting guess I/2^n.
        eps[r] = baseline;
        f_target[r] = fidelity(mixed, target.state);
        f_mixed[r] = 1.0;
        return;
      }
      TrainingSet training = sample_training_set(target.dist, target.state, m, p.noise,
                                                 derive_seed(cfg.seed, m, r), p.replacement);
      const Hypothesis h =
          hazan_optimize(Objective(std::move(training)), target.state.dim(), hazan_options(p));
      eps[r] = evaluate_epsilon(h.sigma, target.state, target.dist, p.gamma);
      f_target[r] = fidelity(h.sigma, target.state);
      f_mixed[r] = fidelity_general(h.sigma, mixed);
    });
    const Stats e = stats(eps), ft = stats(f_target), fm = stats(f_mixed);
    t.add_row({integer(m), integer(cfg.repeats), e.mean, e.std, ft.mean, ft.std, fm.mean, fm.std,
               baseline});
  }
  return t;
}

ResultTable run_sweep_errors(const ExperimentConfig& input) {
  const ExperimentConfig cfg = resolve(input);
  const Target target = make_target(cfg);

  std::vector<std::vector<double>> ms(cfg.sweep_values.size());
  for (std::size_t r = 0; r < cfg.repeats; ++r) {
    TrialCache cache;
    const std::uint64_t seed = derive_seed(cfg.seed, kSweepErrorsStream, r);
    for (std::size_t i = 0; i < cfg.sweep_values.size(); ++i) {
      LearnParams p = cfg.params;
      const double v = cfg.sweep_values[i];
      if (cfg.sweep_param == "epsilon") p.epsilon = v;
      else if (cfg.sweep_param == "gamma") p.gamma = v;
      else p.delta = v;
      const MinMResult res = estimate_min_m(target.state, target.dist, p, seed, cfg.threads,
                                            cfg.cached ? &cache : nullptr);
      ms[i].push_back(static_cast<double>(res.m));
    }
  }

  ResultTable t = make_table(cfg, {"parameter", "value", "epsilon", "gamma", "delta", "m_mean",
                                   "m_std", "m_min", "m_max", "repeats"});
  for (std::size_t i = 0; i < cfg.sweep_values.size(); ++i) {
    LearnParams p = cfg.params;
    const double v = cfg.sweep_values[i];
    if (cfg.sweep_param == "epsilon") p.epsilon = v;
    else if (cfg.sweep_param == "gamma") p.gamma = v;
    else p.delta = v;
    const Stats s = stats(ms[i]);
    const auto [lo, hi] = std::minmax_element(ms[i].begin(), ms[i].end());
    t.add_row({cfg.sweep_param, v, p.epsilon, p.gamma, p.delta, s.mean, s.std, *lo, *hi,
               integer(cfg.repeats)});
  }
  return t;
}

ResultTable run_scaling(const ExperimentConfig& input, ResultTable* trials) {
  const ExperimentConfig cfg = resolve(input);
  ResultTable t = make_table(cfg, {"row", "n", "m_mean", "m_std", "repeats", "slope", "intercept",
                                   "r_squared", "m_at_20", "reference_slope",
                                   "reference_intercept", "reference_m_at_20"});
  if (trials) *trials = make_table(cfg, {"n", "run", "m", "trial", "epsilon_est", "pass", "seed"});

  std::vector<std::pair<double, double>> points;
  std::vector<ScalingPoint> scaling;
  for (std::size_t n = cfg.n_min; n <= cfg.n_max; ++n) {
    auto sink = [&](std::size_t run, const MinMResult& res) {
      if (!trials) return;
      for (const auto& tr : res.trials) {
        trials->add_row({integer(n), integer(run), integer(tr.m), integer(tr.trial), tr.epsilon_est,
                         std::string(tr.pass ? "pass" : "fail"), std::to_string(tr.seed)});
      }
    };
    scaling.push_back(
        estimate_scaling_point(n, cfg.dist, cfg.params, cfg.seed, cfg.repeats, cfg.threads, sink));
    points.emplace_back(static_cast<double>(n), scaling.back().m_estimate);
  }
  // Throws for a single n, which fails the whole command.
  const LinearFit fit = linear_fit(points);
  const LinearFit reference{kReferenceSlope, kReferenceIntercept, 1.0};

  for (const auto& sp : scaling) {
    t.add_row({std::string("point"), integer(sp.n), sp.m_estimate, sp.m_std, integer(sp.repeats),
               {}, {}, {}, {}, {}, {}, {}});
  }
  t.add_row({std::string("fit"), {}, {}, {}, {}, fit.slope, fit.intercept, fit.r_squared,
             fit.at(20.0), reference.slope, reference.intercept, reference.at(20.0)});
  return t;
}

ResultTable run_bound_curve(const ExperimentConfig& input) {
  const ExperimentConfig cfg = resolve(input);
  ResultTable t = make_table(cfg, {"n", "bound"});
  for (std::size_t n = cfg.n_min; n <= cfg.n_max; ++n) {
    t.add_row({integer(n), theorem_bound(static_cast<double>(n), cfg.params, cfg.k_constant)});
  }
  return t;
}

ResultTable run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.command) {
    case Command::Learn: return run_learn(cfg);
    case Command::SweepM: return run_sweep_m(cfg);
    case Command::SweepErrors: return run_sweep_errors(cfg);
    case Command::Scaling: return run_scaling(cfg);
    case Command::BoundCurve: return run_bound_curve(cfg);
  }
  throw ConfigError("unknown command");
}

std::string output_path(const ExperimentConfig& cfg) {
  if (!cfg.out.empty()) return cfg.out;
  std::filesystem::path dir = ".";
  if (const char* env = std::getenv("QPAC_OUTPUT_DIR"); env && *env) dir = env;
  return (dir / (to_string(cfg.command) + ".csv")).string();
}

std::string execute(const ExperimentConfig& cfg) {
  const std::string path = output_path(cfg);
  const ResultTable table = run_experiment(cfg);
  write_file_atomically(path, table.to_csv());
  return path;
}

}  // namespace qpac
