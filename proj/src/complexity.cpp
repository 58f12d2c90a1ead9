#include "qpac/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qpac/learner.hpp"
#include "qpac/parallel.hpp"
#include "qpac/rng.hpp"

namespace qpac {
namespace {

void require_open_unit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    throw ConfigError(std::string(name) + " must lie in (0, 1), got " + std::to_string(v));
  }
}

std::string cache_context(const MeasurementDistribution& dist, const LearnParams& p) {
  std::ostringstream os;
  os << "n=" << dist.num_qubits() << ";dist=" << to_string(dist.label())
     << ";support=" << dist.size() << ";kmax=" << p.k_max << ";noise=" << p.noise.describe()
     << ";replacement=" << to_string(p.replacement) << ";incremental=" << p.incremental
     << ";tol=" << (p.objective_tolerance ? std::to_string(*p.objective_tolerance) : "off");
  return os.str();
}

}  // namespace

void LearnParams::validate() const {
  require_open_unit(epsilon, "epsilon");
  require_open_unit(gamma, "gamma");
  require_open_unit(delta, "delta");
  if (i_max < 1) throw ConfigError("imax must be >= 1");
  if (k_max < 1) throw ConfigError("kmax must be >= 1");
  if (m_cap < 1) throw ConfigError("m_cap must be >= 1");
  try {
    noise.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::optional<TrialCache::Entry> TrialCache::find(std::uint64_t base_seed, std::size_t m,
                                                  std::size_t trial) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find({base_seed, m, trial});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void TrialCache::store(std::uint64_t base_seed, std::size_t m, std::size_t trial, Entry entry) {
  std::lock_guard lock(mutex_);
  entries_.insert_or_assign({base_seed, m, trial}, std::move(entry));
}

void TrialCache::bind(const std::string& context) {
  std::lock_guard lock(mutex_);
  if (!context_) {
    context_ = context;
  } else if (*context_ != context) {
    throw std::invalid_argument("TrialCache bound to '" + *context_ + "', reused with '" +
                                context + "'");
  }
}

std::size_t TrialCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t m, std::size_t trial,
                         bool incremental) {
  // Incremental trials share one prefix-consistent stream across all m.
  return derive_seed(base_seed, incremental ? 0 : m, trial);
}

std::vector<double> run_trial(const DensityMatrix& state, const MeasurementDistribution& dist,
                              const LearnParams& params, std::size_t m, std::uint64_t seed) {
  TrainingSet training =
      sample_training_set(dist, state, m, params.noise, seed, params.replacement);
  const Objective objective(std::move(training));
  HazanOptions options;
  options.max_iterations = params.k_max;
  options.objective_tolerance = params.objective_tolerance;
  const Hypothesis h = hazan_optimize(objective, state.dim(), options);
  return prediction_deviations(h.sigma, state, dist);
}

MinMResult estimate_min_m(const DensityMatrix& state, const MeasurementDistribution& dist,
                          const LearnParams& params, std::uint64_t seed, std::size_t threads,
                          TrialCache* cache) {
  params.validate();
  if (dist.num_qubits() != state.num_qubits()) {
    throw std::invalid_argument("estimate_min_m: distribution and state sizes differ");
  }
  if (cache) cache->bind(cache_context(dist, params));

  std::size_t m_limit = params.m_cap;
  if (params.replacement == Replacement::Without) m_limit = std::min(m_limit, dist.size());

  MinMResult result;
  for (std::size_t m = 1; m <= m_limit; ++m) {
    std::vector<TrialRecord> records(params.i_max);
    parallel_for(params.i_max, threads, [&](std::size_t trial) {
      const std::uint64_t s = trial_seed(seed, m, trial, params.incremental);
      std::vector<double> deviations;
      if (auto hit = cache ? cache->find(seed, m, trial) : std::nullopt) {
        deviations = std::move(hit->deviations);
      } else {
        deviations = run_trial(state, dist, params, m, s);
        if (cache) cache->store(seed, m, trial, {s, deviations});
      }
      const double eps_est = epsilon_from_deviations(deviations, params.gamma);
      records[trial] = {m, trial, s, eps_est, !(eps_est > params.epsilon)};
    });

    const auto failures = static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [](const TrialRecord& r) { return !r.pass; }));
    const double delta_est = static_cast<double>(failures) / static_cast<double>(params.i_max);
    result.delta_trajectory.push_back(delta_est);
    result.trials.insert(result.trials.end(), records.begin(), records.end());
    if (delta_est < params.delta) {
      result.m = m;
      return result;
    }
  }
  std::ostringstream os;
  os << "estimate_min_m: delta_est never fell below " << params.delta << " up to m = " << m_limit
     << "; trajectory:";
  for (double d : result.delta_trajectory) os << ' ' << d;
  throw NonConvergenceError(os.str(), result.delta_trajectory);
}

ScalingPoint estimate_scaling_point(std::size_t n, DistributionLabel label,
                                    const LearnParams& params, std::uint64_t seed,
                                    std::size_t repeats, std::size_t threads,
                                    const std::function<void(std::size_t, const MinMResult&)>& on_run) {
  if (repeats < 1) throw ConfigError("repeats must be >= 1");
  const DensityMatrix state = ghz_density(n);
  const MeasurementDistribution dist = build_distribution(n, label);
  ScalingPoint point;
  point.n = n;
  point.repeats = repeats;
  std::vector<double> ms;
  for (std::size_t r = 0; r < repeats; ++r) {
    const auto res = estimate_min_m(state, dist, params, derive_seed(seed, n, r), threads);
    if (on_run) on_run(r, res);
    point.runs.push_back(res.m);
    ms.push_back(static_cast<double>(res.m));
  }
  point.m_estimate = mean(ms);
  point.m_std = sample_stddev(ms);
  return point;
}

double theorem_bound(double n, const LearnParams& params, double k_constant) {
  const double g4e2 = std::pow(params.gamma, 4) * params.epsilon * params.epsilon;
  const double log_term = std::log(1.0 / (params.gamma * params.epsilon));
  return k_constant / g4e2 * (n / g4e2 * log_term * log_term + std::log(1.0 / params.delta));
}

LinearFit linear_fit(std::span<const std::pair<double, double>> points) {
  std::map<double, std::pair<double, std::size_t>> grouped;
  for (const auto& [x, y] : points) {
    if (!std::isfinite(x) || !std::isfinite(y)) throw std::invalid_argument("linear_fit: non-finite point");
    auto& g = grouped[x];
    g.first += y;
    g.second += 1;
  }
  if (grouped.size() < 2) {
    throw std::invalid_argument("linear_fit: need at least two distinct x values");
  }
  std::vector<double> xs, ys;
  for (const auto& [x, g] : grouped) {
    xs.push_back(x);
    ys.push_back(g.first / static_cast<double>(g.second));
  }
  const double mx = mean(xs);
  const double my = mean(ys);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - fit.at(xs[i]);
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

double mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double sample_stddev(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double mu = mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - mu) * (v - mu);
  return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

}  // namespace qpac
