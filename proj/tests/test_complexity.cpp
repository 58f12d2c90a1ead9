#include <gtest/gtest.h>

#include <cmath>

#include "qpac/complexity.hpp"
#include "qpac/learner.hpp"

using namespace qpac;

namespace {

// Exact failure probability at size m by enumerating every ordered training
// sequence drawn with replacement.
double exhaustive_failure(const MeasurementDistribution& dist, const DensityMatrix& rho,
                          const LearnParams& p, std::size_t m) {
  const std::size_t s = dist.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < m; ++i) total *= s;
  std::size_t failures = 0;
  for (std::size_t code = 0; code < total; ++code) {
    TrainingSet t;
    std::size_t c = code;
    for (std::size_t i = 0; i < m; ++i, c /= s) {
      const auto& e = dist.support()[c % s];
      t.items.push_back({e, expectation(e, rho)});
    }
    HazanOptions opts;
    opts.max_iterations = p.k_max;
    const auto h = hazan_optimize(Objective(t), rho.dim(), opts);
    failures += evaluate_epsilon(h.sigma, rho, dist, p.gamma) > p.epsilon ? 1 : 0;
  }
  return static_cast<double>(failures) / static_cast<double>(total);
}

}  // namespace

TEST(MinM, TwoQubitMatchesExhaustiveOracle) {
  const auto dist = build_distribution(2, DistributionLabel::DI);
  const auto rho = ghz_density(2);
  LearnParams p;  // epsilon 0.15, gamma 0.2, delta 0.2
  // Only sets made entirely of XX fail, so the failure rate is 3^-m.
  EXPECT_NEAR(exhaustive_failure(dist, rho, p, 1), 1.0 / 3, 1e-15);
  EXPECT_NEAR(exhaustive_failure(dist, rho, p, 2), 1.0 / 9, 1e-15);
  EXPECT_NEAR(exhaustive_failure(dist, rho, p, 3), 1.0 / 27, 1e-15);
  // first m with failure rate below delta
  const std::size_t m_star = 2;
  const auto r = estimate_min_m(rho, dist, p, 20180101);
  EXPECT_EQ(r.m, m_star);
  EXPECT_LE(r.m, 4u);
  ASSERT_EQ(r.delta_trajectory.size(), r.m);
  EXPECT_GE(r.delta_trajectory.front(), p.delta);
  EXPECT_LT(r.delta_trajectory.back(), p.delta);
}

TEST(MinM, TrajectoryCountsFailures) {
  const auto dist = build_distribution(3, DistributionLabel::DI);
  LearnParams p;
  p.i_max = 20;
  const auto r = estimate_min_m(ghz_density(3), dist, p, 5);
  ASSERT_EQ(r.trials.size(), r.m * 20);
  for (std::size_t m = 1; m <= r.m; ++m) {
    std::size_t fails = 0;
    for (const auto& t : r.trials) {
      if (t.m != m) continue;
      EXPECT_EQ(t.pass, !(t.epsilon_est > p.epsilon));
      fails += t.pass ? 0 : 1;
    }
    EXPECT_EQ(r.delta_trajectory[m - 1], static_cast<double>(fails) / 20.0);
  }
}

TEST(MinM, GammaAboveHalfGivesOne) {
  LearnParams p;
  p.gamma = 0.6;
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto r = estimate_min_m(ghz_density(n), build_distribution(n, DistributionLabel::DI), p, n);
    EXPECT_EQ(r.m, 1u) << n;
  }
}

TEST(MinM, EpsilonNearOneGivesOne) {
  LearnParams p;
  p.epsilon = 0.999;
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto r = estimate_min_m(ghz_density(n), build_distribution(n, DistributionLabel::DI), p, n);
    EXPECT_EQ(r.m, 1u) << n;
  }
}

TEST(MinM, FullSupportWithoutReplacementBoundsM) {
  LearnParams p;
  p.epsilon = 0.01;
  p.gamma = 0.1;
  p.delta = 0.01;
  p.i_max = 10;
  p.replacement = Replacement::Without;
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto dist = build_distribution(n, DistributionLabel::DI);
    const auto r = estimate_min_m(ghz_density(n), dist, p, 3);
    EXPECT_LE(r.m, dist.size()) << n;
  }
}

TEST(MinM, MonotoneUnderRelaxationWithCache) {
  const auto dist = build_distribution(4, DistributionLabel::DI);
  const auto rho = ghz_density(4);
  TrialCache cache;
  LearnParams p;
  p.i_max = 20;
  std::size_t prev = 1000;
  for (double delta : {0.05, 0.1, 0.2, 0.4}) {
    p.delta = delta;
    const auto r = estimate_min_m(rho, dist, p, 11, 1, &cache);
    EXPECT_LE(r.m, prev) << delta;
    prev = r.m;
  }
  prev = 1000;
  p.delta = 0.2;
  for (double eps : {0.05, 0.15, 0.3, 0.5}) {
    p.epsilon = eps;
    const auto r = estimate_min_m(rho, dist, p, 11, 1, &cache);
    EXPECT_LE(r.m, prev) << eps;
    prev = r.m;
  }
  EXPECT_GT(cache.size(), 0u);
  // a different target may not reuse the cache
  EXPECT_ANY_THROW(estimate_min_m(ghz_density(3), build_distribution(3, DistributionLabel::DI), p,
                                  11, 1, &cache));
}

TEST(MinM, CachedEqualsUncached) {
  const auto dist = build_distribution(3, DistributionLabel::DI);
  LearnParams p;
  p.i_max = 15;
  TrialCache cache;
  const auto a = estimate_min_m(ghz_density(3), dist, p, 8, 1, &cache);
  const auto b = estimate_min_m(ghz_density(3), dist, p, 8, 1, &cache);
  const auto c = estimate_min_m(ghz_density(3), dist, p, 8);
  EXPECT_EQ(a.m, c.m);
  EXPECT_EQ(b.delta_trajectory, c.delta_trajectory);
}

TEST(MinM, ThreadsDoNotChangeResults) {
  const auto dist = build_distribution(4, DistributionLabel::DII);
  LearnParams p;
  p.i_max = 12;
  const auto a = estimate_min_m(ghz_density(4), dist, p, 2, 1);
  const auto b = estimate_min_m(ghz_density(4), dist, p, 2, 3);
  EXPECT_EQ(a.m, b.m);
  EXPECT_EQ(a.delta_trajectory, b.delta_trajectory);
}

TEST(MinM, IncrementalMode) {
  const auto dist = build_distribution(3, DistributionLabel::DI);
  LearnParams p;
  p.incremental = true;
  p.i_max = 20;
  const auto r = estimate_min_m(ghz_density(3), dist, p, 4);
  EXPECT_GE(r.m, 1u);
  EXPECT_EQ(trial_seed(4, 1, 3, true), trial_seed(4, 7, 3, true));
  EXPECT_NE(trial_seed(4, 1, 3, false), trial_seed(4, 7, 3, false));
}

TEST(MinM, CapRaisesWithTrajectory) {
  LearnParams p;
  p.epsilon = 0.01;
  p.gamma = 0.05;
  p.delta = 0.01;
  p.i_max = 10;
  p.m_cap = 2;
  try {
    estimate_min_m(ghz_density(4), build_distribution(4, DistributionLabel::DI), p, 1);
    FAIL() << "expected NonConvergenceError";
  } catch (const NonConvergenceError& e) {
    EXPECT_EQ(e.trajectory().size(), 2u);
  }
}

TEST(LearnParams, Validation) {
  LearnParams p;
  EXPECT_NO_THROW(p.validate());
  for (double bad : {0.0, 1.0, -0.1, std::nan("")}) {
    LearnParams q;
    q.gamma = bad;
    EXPECT_THROW(q.validate(), ConfigError);
    q = LearnParams{};
    q.epsilon = bad;
    EXPECT_THROW(q.validate(), ConfigError);
    q = LearnParams{};
    q.delta = bad;
    EXPECT_THROW(q.validate(), ConfigError);
  }
  LearnParams q;
  q.i_max = 0;
  EXPECT_THROW(q.validate(), ConfigError);
  q = LearnParams{};
  q.k_max = 0;
  EXPECT_THROW(q.validate(), ConfigError);
}

TEST(ScalingPoint, DeterministicAndSized) {
  LearnParams p;
  p.i_max = 10;
  std::size_t seen = 0;
  const auto a = estimate_scaling_point(3, DistributionLabel::DII, p, 9, 4, 1,
                                        [&](std::size_t, const MinMResult&) { ++seen; });
  const auto b = estimate_scaling_point(3, DistributionLabel::DII, p, 9, 4, 2);
  EXPECT_EQ(seen, 4u);
  EXPECT_EQ(a.runs, b.runs);
  EXPECT_EQ(a.repeats, 4u);
  std::vector<double> runs(a.runs.begin(), a.runs.end());
  EXPECT_DOUBLE_EQ(a.m_estimate, mean(runs));
  EXPECT_DOUBLE_EQ(a.m_std, sample_stddev(runs));
}

TEST(TheoremBound, Identities) {
  LearnParams p;
  p.epsilon = 0.15;
  p.gamma = 0.2;
  p.delta = 0.2;
  const double a = theorem_bound(2, p, 1), b = theorem_bound(4, p, 1), c = theorem_bound(6, p, 1);
  EXPECT_NEAR(c - b, b - a, 1e-12 * c);
  EXPECT_NEAR(theorem_bound(4, p, 2), 2 * b, 1e-12);
  EXPECT_DOUBLE_EQ(theorem_bound(4, p, 0), 0.0);
  // hand evaluation at n = 2: gamma^4 eps^2 = 3.6e-5, ln(1/(gamma eps)) = ln(33.33..)
  const double c0 = 0.0016 * 0.0225;
  const double l = std::log(1 / 0.03);
  EXPECT_NEAR(a, (2 / c0 * l * l + std::log(5.0)) / c0, 1e-6 * a);
  LearnParams unit;
  unit.gamma = 1;
  unit.epsilon = 1;
  unit.delta = 0.2;
  EXPECT_NEAR(theorem_bound(7, unit, 3), 3 * std::log(5.0), 1e-12);
}

TEST(LinearFit, Examples) {
  std::vector<std::pair<double, double>> pts;
  for (double n = 2; n <= 6; ++n) pts.push_back({n, 1.19 * n - 0.34});
  const auto f = linear_fit(pts);
  EXPECT_NEAR(f.slope, 1.19, 1e-12);
  EXPECT_NEAR(f.intercept, -0.34, 1e-12);
  EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
  EXPECT_NEAR(f.at(20), 23.46, 1e-10);

  const std::vector<std::pair<double, double>> flat{{1, 3}, {2, 3}, {3, 3}};
  EXPECT_DOUBLE_EQ(linear_fit(flat).slope, 0.0);
  EXPECT_DOUBLE_EQ(linear_fit(flat).r_squared, 1.0);

  // repeated x values are averaged first
  const std::vector<std::pair<double, double>> rep{{1, 1}, {1, 3}, {2, 4}, {2, 6}};
  EXPECT_NEAR(linear_fit(rep).slope, 3.0, 1e-12);
  EXPECT_NEAR(linear_fit(rep).intercept, -1.0, 1e-12);

  const std::vector<std::pair<double, double>> one{{2, 1}, {2, 5}};
  EXPECT_THROW(linear_fit(one), std::invalid_argument);
}

TEST(Stats, MeanAndStd) {
  const std::vector<double> v{2, 4, 4, 4, 5, 5, 7, 9};
  EXPECT_DOUBLE_EQ(mean(v), 5.0);
  EXPECT_NEAR(sample_stddev(v), std::sqrt(32.0 / 7), 1e-12);
  const std::vector<double> single{3};
  EXPECT_DOUBLE_EQ(sample_stddev(single), 0.0);
}
