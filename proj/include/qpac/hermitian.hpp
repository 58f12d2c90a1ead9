#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace qpac {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Largest elementwise |A - A^dagger|.
double hermitian_defect(const Matrix& h);

// Max absolute row sum. Bounds the spectral radius of a Hermitian matrix.
double row_sum_norm(const Matrix& h);

// Throws std::invalid_argument unless h is square and
// max|h - h^dagger| <= tol * (1 + max|h|).
void require_hermitian(const Matrix& h, double tol = 1e-10);

struct EigenOptions {
  // Residual target relative to row_sum_norm(h).
  double tolerance = 1e-9;
  // Power-iteration budget is sweeps_per_dim * dim; 0 keeps the default of 10.
  std::size_t sweeps_per_dim = 10;
  // When the power iteration stalls, matrices up to this size fall back to a
  // full decomposition instead of raising ConvergenceError.
  std::size_t fallback_max_dim = 256;
};

struct EigenPair {
  double value = 0.0;
  Vector vector;
  std::size_t iterations = 0;
  bool used_fallback = false;
};

// Minimum eigenvalue and a unit eigenvector, via power iteration on
// (c I - h) with c = row_sum_norm(h). The start vector is fixed (uniform
// amplitudes plus a small seeded perturbation), so the result is a
// deterministic function of h. The returned phase makes the
// largest-magnitude component real and positive.
EigenPair smallest_eigenvector(const Matrix& h, const EigenOptions& options = {});

struct Eigensystem {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // columns are orthonormal eigenvectors
};

Eigensystem eigendecompose(const Matrix& h);

// Principal square root of a PSD matrix. Eigenvalues in [-1e-9, 0) are
// clipped to zero; anything more negative throws PhysicalityError.
Matrix sqrt_psd(const Matrix& h);

// Rotates v so that its largest-magnitude entry (first one on ties) is real
// and positive.
void normalize_phase(Vector& v);

}  // namespace qpac
