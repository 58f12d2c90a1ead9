#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qpac/hermitian.hpp"
#include "qpac/qstate.hpp"
#include "qpac/sampling.hpp"

namespace qpac {

// f(sigma) = sum_i (Tr(E_i sigma) - y_i)^2 over a training set.
class Objective {
 public:
  explicit Objective(TrainingSet training);

  const TrainingSet& training() const { return training_; }
  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return std::size_t{1} << num_qubits_; }

 private:
  TrainingSet training_;
  std::size_t num_qubits_ = 0;
};

double objective_value(const Objective& obj, const DensityMatrix& sigma);
// Evaluates the same polynomial on any square matrix (finite differences).
double objective_value(const Objective& obj, const Matrix& sigma);

// 2 sum_i (Tr(E_i sigma) - y_i) E_i as a dense matrix.
Matrix gradient(const Objective& obj, const DensityMatrix& sigma);
Matrix gradient(const Objective& obj, const Matrix& sigma);

struct IterationRecord {
  std::size_t k;
  double objective;             // f(sigma_k)
  double min_grad_eigenvalue;   // smallest eigenvalue of grad f(sigma_k)
  const Matrix* sigma;          // sigma_k, valid during the callback only
};

struct HazanOptions {
  std::size_t max_iterations = 300;
  // Stop once f <= this value. Off by default.
  std::optional<double> objective_tolerance;
  // Gradients with max |entry| at or below this are treated as stationary.
  double zero_gradient = 1e-12;
  EigenOptions eigen;
  std::function<void(const IterationRecord&)> on_iteration;
};

struct Hypothesis {
  DensityMatrix sigma;
  std::size_t iterations_used = 0;
  double final_objective = 0.0;
};

// Frank-Wolfe over unit-trace PSD matrices with step 1/k:
//   sigma_0 = I/N;  v_k = argmin-eigenvector of grad f(sigma_k);
//   sigma_{k+1} = (1 - 1/k) sigma_k + (1/k) v_k v_k^dagger.
// A stationary iterate is kept unchanged; the remaining steps are no-ops and
// are counted as used.
Hypothesis hazan_optimize(const Objective& obj, std::size_t dim, const HazanOptions& options = {});

// f = sum over all individual outcomes (Tr(E_i sigma) - b_ij)^2.
double shot_objective_value(std::span<const ShotRecord> records, const DensityMatrix& sigma);

// |Tr(E sigma) - Tr(E rho)| for every support effect, in support order.
std::vector<double> prediction_deviations(const DensityMatrix& sigma, const DensityMatrix& state,
                                          const MeasurementDistribution& dist);

// Fraction of deviations strictly greater than gamma.
double epsilon_from_deviations(std::span<const double> deviations, double gamma);

// Exact Pr_{E ~ dist}[|Tr(E sigma) - Tr(E rho)| > gamma] over the finite support.
double evaluate_epsilon(const DensityMatrix& sigma, const DensityMatrix& state,
                        const MeasurementDistribution& dist, double gamma);

}  // namespace qpac
