#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qpac/errors.hpp"
#include "qpac/qstate.hpp"
#include "qpac/sampling.hpp"

namespace qpac {

struct LearnParams {
  double epsilon = 0.15;
  double gamma = 0.2;
  double delta = 0.2;
  std::size_t i_max = 50;
  std::size_t k_max = 300;
  std::size_t m_cap = 256;
  NoiseModel noise;
  Replacement replacement = Replacement::With;
  // Reuse the first m-1 draws of a trial when moving to m.
  bool incremental = false;
  // Early stop for the optimizer; off keeps the fixed iteration count.
  std::optional<double> objective_tolerance;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

struct TrialRecord {
  std::size_t m = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double epsilon_est = 0.0;
  bool pass = false;
};

struct MinMResult {
  std::size_t m = 0;
  // delta_est for m = 1, 2, ..., result m.
  std::vector<double> delta_trajectory;
  std::vector<TrialRecord> trials;
};

class NonConvergenceError : public ConvergenceError {
 public:
  NonConvergenceError(const std::string& what, std::vector<double> trajectory)
      : ConvergenceError(what), trajectory_(std::move(trajectory)) {}
  const std::vector<double>& trajectory() const { return trajectory_; }

 private:
  std::vector<double> trajectory_;
};

// Per-(m, trial) prediction deviations |Tr(E sigma) - Tr(E rho)| over the
// support. A trial's deviations do not depend on epsilon, gamma, delta or
// i_max, so one cache serves a whole parameter sweep. The cache is bound to
// the first context it sees and refuses any other.
class TrialCache {
 public:
  struct Entry {
    std::uint64_t seed;
    std::vector<double> deviations;
  };

  std::optional<Entry> find(std::uint64_t base_seed, std::size_t m, std::size_t trial) const;
  void store(std::uint64_t base_seed, std::size_t m, std::size_t trial, Entry entry);
  void bind(const std::string& context);
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::optional<std::string> context_;
  std::map<std::tuple<std::uint64_t, std::size_t, std::size_t>, Entry> entries_;
};

// Seed of trial `trial` at training-set size m.
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t m, std::size_t trial,
                         bool incremental);

// Trains one hypothesis on m samples and returns its support deviations.
std::vector<double> run_trial(const DensityMatrix& state, const MeasurementDistribution& dist,
                              const LearnParams& params, std::size_t m, std::uint64_t seed);

// Smallest m whose failure rate over i_max fresh trials is below delta. A
// trial fails when more than an epsilon fraction of the support is predicted
// worse than gamma. Throws NonConvergenceError past m_cap.
MinMResult estimate_min_m(const DensityMatrix& state, const MeasurementDistribution& dist,
                          const LearnParams& params, std::uint64_t seed, std::size_t threads = 1,
                          TrialCache* cache = nullptr);

struct ScalingPoint {
  std::size_t n = 0;
  double m_estimate = 0.0;  // mean over runs
  std::size_t repeats = 0;
  double m_std = 0.0;       // sample standard deviation (0 for one run)
  std::vector<std::size_t> runs;
};

// Repeats estimate_min_m on GHZ_n with independent seeds; on_run sees each
// run's full result.
ScalingPoint estimate_scaling_point(
    std::size_t n, DistributionLabel label, const LearnParams& params, std::uint64_t seed,
    std::size_t repeats, std::size_t threads = 1,
    const std::function<void(std::size_t, const MinMResult&)>& on_run = {});

// Right-hand side of the sample-size bound with natural logarithms.
double theorem_bound(double n, const LearnParams& params, double k_constant);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;

  double at(double x) const { return slope * x + intercept; }
};

// Ordinary least squares of mean y per distinct x. Throws
// std::invalid_argument with fewer than two distinct x values.
LinearFit linear_fit(std::span<const std::pair<double, double>> points);

double mean(std::span<const double> values);
double sample_stddev(std::span<const double> values);

}  // namespace qpac
