#include "qpac/learner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qpac {
namespace {

void require_size(const Objective& obj, const Matrix& sigma) {
  if (sigma.rows() != sigma.cols() || static_cast<std::size_t>(sigma.rows()) != obj.dim()) {
    throw std::invalid_argument("objective on " + std::to_string(obj.num_qubits()) +
                                " qubits evaluated at a matrix of size " +
                                std::to_string(sigma.rows()));
  }
}

// Adds coeff * (I + P)/2 to g.
void add_effect(Matrix& g, const PauliString& p, double coeff) {
  const double half = 0.5 * coeff;
  g.diagonal().array() += half;
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  static constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex phase = half * static_cast<double>(p.sign()) * kIPowers[p.y_count() % 4];
  const auto dim = static_cast<std::uint64_t>(g.rows());
  for (std::uint64_t col = 0; col < dim; ++col) {
    const double s = (std::popcount(col & z) & 1) ? -1.0 : 1.0;
    g(static_cast<Eigen::Index>(col ^ x), static_cast<Eigen::Index>(col)) += s * phase;
  }
}

}  // namespace

Objective::Objective(TrainingSet training) : training_(std::move(training)) {
  if (training_.items.empty()) throw std::invalid_argument("objective needs a non-empty training set");
  num_qubits_ = training_.items.front().effect.num_qubits();
  for (const auto& item : training_.items) {
    if (item.effect.num_qubits() != num_qubits_) {
      throw std::invalid_argument("training set mixes qubit counts");
    }
  }
}

double objective_value(const Objective& obj, const Matrix& sigma) {
  require_size(obj, sigma);
  double f = 0.0;
  for (const auto& item : obj.training().items) {
    const double r = effect_trace(item.effect, sigma) - item.value;
    f += r * r;
  }
  return f;
}

double objective_value(const Objective& obj, const DensityMatrix& sigma) {
  return objective_value(obj, sigma.matrix());
}

Matrix gradient(const Objective& obj, const Matrix& sigma) {
  require_size(obj, sigma);
  const auto dim = static_cast<Eigen::Index>(obj.dim());
  Matrix g = Matrix::Zero(dim, dim);
  for (const auto& item : obj.training().items) {
    const double r = effect_trace(item.effect, sigma) - item.value;
    if (r != 0.0) add_effect(g, item.effect.pauli(), 2.0 * r);
  }
  return g;
}

Matrix gradient(const Objective& obj, const DensityMatrix& sigma) {
  return gradient(obj, sigma.matrix());
}

Hypothesis hazan_optimize(const Objective& obj, std::size_t dim, const HazanOptions& options) {
  if (options.max_iterations < 1) throw std::invalid_argument("hazan_optimize: k_max must be >= 1");
  if (dim != obj.dim()) {
    throw std::invalid_argument("hazan_optimize: dimension " + std::to_string(dim) +
                                " does not match the training set (" + std::to_string(obj.dim()) +
                                ")");
  }
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix sigma = Matrix::Identity(d, d) / static_cast<double>(dim);

  std::size_t used = 0;
  for (std::size_t k = 1; k <= options.max_iterations; ++k) {
    const double f = objective_value(obj, sigma);
    if (options.objective_tolerance && f <= *options.objective_tolerance) break;
    const Matrix g = gradient(obj, sigma);
    if (g.cwiseAbs().maxCoeff() <= options.zero_gradient) {
      // Stationary point of a convex objective: nothing moves from here on.
      if (options.on_iteration) {
        for (std::size_t j = k; j <= options.max_iterations; ++j) {
          options.on_iteration({j, f, 0.0, &sigma});
        }
      }
      used = options.max_iterations;
      break;
    }
    const EigenPair step = smallest_eigenvector(g, options.eigen);
    if (options.on_iteration) options.on_iteration({k, f, step.value, &sigma});
    const double alpha = 1.0 / static_cast<double>(k);
    sigma *= (1.0 - alpha);
    sigma.noalias() += alpha * (step.vector * step.vector.adjoint());
    used = k;
  }
  Hypothesis out{DensityMatrix::trusted(std::move(sigma)), used, 0.0};
  out.final_objective = objective_value(obj, out.sigma);
  return out;
}

double shot_objective_value(std::span<const ShotRecord> records, const DensityMatrix& sigma) {
  double f = 0.0;
  for (const auto& r : records) {
    const double t = effect_trace(r.effect, sigma.matrix());
    for (std::uint8_t b : r.bits) {
      const double d = t - static_cast<double>(b);
      f += d * d;
    }
  }
  return f;
}

std::vector<double> prediction_deviations(const DensityMatrix& sigma, const DensityMatrix& state,
                                          const MeasurementDistribution& dist) {
  if (sigma.dim() != state.dim() || dist.num_qubits() != state.num_qubits()) {
    throw std::invalid_argument("prediction_deviations: dimension mismatch");
  }
  std::vector<double> out;
  out.reserve(dist.size());
  for (const auto& e : dist.support()) {
    out.push_back(std::abs(effect_trace(e, sigma.matrix()) - effect_trace(e, state.matrix())));
  }
  return out;
}

double epsilon_from_deviations(std::span<const double> deviations, double gamma) {
  if (deviations.empty()) return 0.0;
  std::size_t bad = 0;
  for (double d : deviations) bad += d > gamma ? 1 : 0;
  return static_cast<double>(bad) / static_cast<double>(deviations.size());
}

double evaluate_epsilon(const DensityMatrix& sigma, const DensityMatrix& state,
                        const MeasurementDistribution& dist, double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0, 1)");
  const auto dev = prediction_deviations(sigma, state, dist);
  return epsilon_from_deviations(dev, gamma);
}

}  // namespace qpac
