#include "qpac/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qpac/errors.hpp"
#include "qpac/rng.hpp"

namespace qpac {
namespace {

constexpr double kPsdClip = 1e-9;
constexpr double kStartJitter = 1e-4;
constexpr std::uint64_t kStartSeed = 0x5eed5eed5eedULL;

Vector start_vector(std::size_t dim) {
  Rng rng(kStartSeed);
  Vector x(static_cast<Eigen::Index>(dim));
  const double base = 1.0 / std::sqrt(static_cast<double>(dim));
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double re = rng.normal();
    const double im = rng.normal();
    x[i] = Complex(base + kStartJitter * base * re, kStartJitter * base * im);
  }
  x.normalize();
  return x;
}

bool is_scaled_identity(const Matrix& h, double c) {
  for (Eigen::Index j = 0; j < h.cols(); ++j) {
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
      const Complex expected = (i == j) ? Complex(c, 0.0) : Complex(0.0, 0.0);
      if (std::abs(h(i, j) - expected) > 1e-14 * (1.0 + c)) return false;
    }
  }
  return true;
}

EigenPair from_full_decomposition(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("smallest_eigenvector: full decomposition failed");
  }
  EigenPair out;
  out.value = solver.eigenvalues()[0];
  out.vector = solver.eigenvectors().col(0);
  out.used_fallback = true;
  return out;
}

}  // namespace

double hermitian_defect(const Matrix& h) {
  if (h.rows() != h.cols()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (Eigen::Index j = 0; j < h.cols(); ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      worst = std::max(worst, std::abs(h(i, j) - std::conj(h(j, i))));
    }
  }
  return worst;
}

double row_sum_norm(const Matrix& h) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < h.rows(); ++i) best = std::max(best, h.row(i).cwiseAbs().sum());
  return best;
}

void require_hermitian(const Matrix& h, double tol) {
  if (h.rows() != h.cols() || h.rows() == 0) {
    throw std::invalid_argument("expected a non-empty square matrix");
  }
  const double scale = 1.0 + h.cwiseAbs().maxCoeff();
  const double defect = hermitian_defect(h);
  if (defect > tol * scale) {
    throw std::invalid_argument("matrix is not Hermitian (defect " + std::to_string(defect) + ")");
  }
}

void normalize_phase(Vector& v) {
  if (v.size() == 0) return;
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    // Treat near-equal magnitudes as ties so rounding noise cannot pick the pivot.
    const double a = std::abs(v[i]);
    if (a > best_abs * (1.0 + 1e-9)) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs <= 0.0) return;
  v *= std::conj(v[best]) / best_abs;
  v[best] = Complex(best_abs, 0.0);
}

EigenPair smallest_eigenvector(const Matrix& h, const EigenOptions& options) {
  require_hermitian(h);
  if (!(options.tolerance > 0.0)) throw std::invalid_argument("eigen tolerance must be positive");
  const std::size_t dim = static_cast<std::size_t>(h.rows());
  const double c = row_sum_norm(h);

  EigenPair out;
  Vector x = start_vector(dim);
  if (c == 0.0) {
    out.value = 0.0;
    out.vector = x;
    normalize_phase(out.vector);
    return out;
  }
  if (is_scaled_identity(h, h(0, 0).real())) {
    out.value = h(0, 0).real();
    out.vector = x;
    normalize_phase(out.vector);
    return out;
  }

  const double target = options.tolerance * c;
  const std::size_t sweeps = options.sweeps_per_dim == 0 ? 10 : options.sweeps_per_dim;
  const std::size_t budget = std::max<std::size_t>(sweeps * dim, 50);
  Vector hx = h * x;
  for (std::size_t it = 1; it <= budget; ++it) {
    Vector y = c * x - hx;
    const double norm = y.norm();
    if (norm <= 1e-300) {
      // x sits in the top eigenspace of h; nudge it off deterministically.
      y = x;
      y[0] += 0.5;
      y.normalize();
    } else {
      y /= norm;
    }
    x = std::move(y);
    hx = h * x;
    const double lambda = x.dot(hx).real();
    const double residual = (hx - lambda * x).norm();
    if (residual <= target) {
      out.value = lambda;
      out.vector = x;
      out.iterations = it;
      normalize_phase(out.vector);
      return out;
    }
  }
  if (dim <= options.fallback_max_dim) {
    out = from_full_decomposition(h);
    out.iterations = budget;
    normalize_phase(out.vector);
    return out;
  }
  throw ConvergenceError("smallest_eigenvector: no convergence after " + std::to_string(budget) +
                         " iterations (dim " + std::to_string(dim) + ")");
}

Eigensystem eigendecompose(const Matrix& h) {
  require_hermitian(h);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) throw ConvergenceError("eigendecompose failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix sqrt_psd(const Matrix& h) {
  const Eigensystem es = eigendecompose(h);
  Eigen::VectorXd roots(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    const double lambda = es.values[i];
    if (lambda < -kPsdClip) {
      throw PhysicalityError("sqrt_psd: eigenvalue " + std::to_string(lambda) + " is negative");
    }
    roots[i] = std::sqrt(std::max(lambda, 0.0));
  }
  return es.vectors * roots.asDiagonal() * es.vectors.adjoint();
}

}  // namespace qpac
