#pragma once

#include <string>

#include "qpac/config.hpp"
#include "qpac/pauli.hpp"
#include "qpac/qstate.hpp"
#include "qpac/result_table.hpp"
#include "qpac/sampling.hpp"

namespace qpac {

// Target state and measurement distribution for a fixed-n config: GHZ_n, or
// the state stabilized by the configured generators.
struct Target {
  StabilizerGroup group;
  DensityMatrix state;
  MeasurementDistribution dist;
};

Target make_target(const ExperimentConfig& cfg);

// Validates and fills defaults that depend on other fields (m grid, sweep
// grid). The result is what gets echoed in the output header.
ExperimentConfig resolve(ExperimentConfig cfg);

nlohmann::json table_header(const ExperimentConfig& resolved);

struct LearnOutcome {
  ResultTable summary;
  ResultTable training;  // pauli,value,provenance
  ResultTable trace;     // k,objective,min_grad_eigenvalue
};

LearnOutcome run_learn_detailed(const ExperimentConfig& cfg);
ResultTable run_learn(const ExperimentConfig& cfg);
ResultTable run_sweep_m(const ExperimentConfig& cfg);
ResultTable run_sweep_errors(const ExperimentConfig& cfg);
// trials, when given, receives n,run,m,trial,epsilon_est,pass,seed records.
ResultTable run_scaling(const ExperimentConfig& cfg, ResultTable* trials = nullptr);
ResultTable run_bound_curve(const ExperimentConfig& cfg);

ResultTable run_experiment(const ExperimentConfig& cfg);

// cfg.out, else $QPAC_OUTPUT_DIR/<command>.csv, else ./<command>.csv.
std::string output_path(const ExperimentConfig& cfg);

// Runs and writes the table atomically; returns the path written.
std::string execute(const ExperimentConfig& cfg);

inline constexpr double kReferenceSlope = 1.19;
inline constexpr double kReferenceIntercept = -0.34;

}  // namespace qpac
