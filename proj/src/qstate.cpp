#include "qpac/qstate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qpac/errors.hpp"

namespace qpac {
namespace {

constexpr double kExpectationSlack = 1e-9;

std::size_t qubits_for_dim(Eigen::Index dim) {
  const auto d = static_cast<std::uint64_t>(dim);
  if (d < 2 || !std::has_single_bit(d)) {
    throw std::invalid_argument("density matrix dimension " + std::to_string(dim) +
                                " is not a power of two >= 2");
  }
  return static_cast<std::size_t>(std::countr_zero(d));
}

// Phase picked up by basis state |col> under P (see PauliString).
Complex base_phase(const PauliString& p) {
  static constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return static_cast<double>(p.sign()) * kIPowers[p.y_count() % 4];
}

inline double parity_sign(std::uint64_t col, std::uint64_t z_mask) {
  return (std::popcount(col & z_mask) & 1) ? -1.0 : 1.0;
}

void require_dim(const PauliString& p, Eigen::Index dim) {
  if (dim != (Eigen::Index{1} << p.num_qubits())) {
    throw std::invalid_argument("dimension mismatch: " + p.str() + " acts on dim " +
                                std::to_string(Eigen::Index{1} << p.num_qubits()) +
                                ", operand has dim " + std::to_string(dim));
  }
}

}  // namespace

DensityMatrix::DensityMatrix(Matrix rho, std::optional<Vector> pure)
    : rho_(std::move(rho)), pure_(std::move(pure)), num_qubits_(qubits_for_dim(rho_.rows())) {}

DensityMatrix DensityMatrix::from_matrix(Matrix rho, const Tolerances& tol) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix must be square");
  qubits_for_dim(rho.rows());
  const double defect = hermitian_defect(rho);
  if (defect > tol.hermitian) {
    throw PhysicalityError("density matrix not Hermitian (defect " + std::to_string(defect) + ")");
  }
  const Complex tr = rho.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol.trace) {
    throw PhysicalityError("density matrix trace " + std::to_string(tr.real()) + " != 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues()[0];
  if (min_eig < tol.min_eigenvalue) {
    throw PhysicalityError("density matrix has eigenvalue " + std::to_string(min_eig));
  }
  return DensityMatrix(std::move(rho), std::nullopt);
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  const double norm = psi.norm();
  if (!(norm > 0.0)) throw std::invalid_argument("pure state vector is zero");
  Vector v = psi / norm;
  Matrix rho = v * v.adjoint();
  return DensityMatrix(std::move(rho), std::move(v));
}

DensityMatrix DensityMatrix::trusted(Matrix rho) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix must be square");
  return DensityMatrix(std::move(rho), std::nullopt);
}

double DensityMatrix::purity() const {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho_.squaredNorm();
}

Complex pauli_trace(const PauliString& p, const Matrix& a) {
  require_dim(p, a.rows());
  if (a.rows() != a.cols()) throw std::invalid_argument("pauli_trace: operand must be square");
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  const auto dim = static_cast<std::uint64_t>(a.rows());
  Complex acc(0.0, 0.0);
  for (std::uint64_t col = 0; col < dim; ++col) {
    acc += parity_sign(col, z) *
           a(static_cast<Eigen::Index>(col), static_cast<Eigen::Index>(col ^ x));
  }
  return base_phase(p) * acc;
}

void apply_pauli_add(const PauliString& p, Complex coeff, const Vector& x, Vector& y) {
  require_dim(p, x.size());
  if (y.size() != x.size()) throw std::invalid_argument("apply_pauli_add: size mismatch");
  const Complex c = coeff * base_phase(p);
  const std::uint64_t xm = p.x_mask();
  const std::uint64_t zm = p.z_mask();
  const auto dim = static_cast<std::uint64_t>(x.size());
  for (std::uint64_t col = 0; col < dim; ++col) {
    y[static_cast<Eigen::Index>(col ^ xm)] +=
        c * parity_sign(col, zm) * x[static_cast<Eigen::Index>(col)];
  }
}

double effect_trace(const MeasurementEffect& effect, const Matrix& a) {
  return 0.5 * (a.trace().real() + pauli_trace(effect.pauli(), a).real());
}

double expectation(const MeasurementEffect& effect, const DensityMatrix& state) {
  if (effect.num_qubits() != state.num_qubits()) {
    throw std::invalid_argument("expectation: effect on " + std::to_string(effect.num_qubits()) +
                                " qubits, state on " + std::to_string(state.num_qubits()));
  }
  const double value = 0.5 * (1.0 + pauli_trace(effect.pauli(), state.matrix()).real());
  if (value < -kExpectationSlack || value > 1.0 + kExpectationSlack) {
    throw PhysicalityError("expectation " + std::to_string(value) + " outside [0,1] for " +
                           effect.pauli().str());
  }
  return std::clamp(value, 0.0, 1.0);
}

Matrix to_dense(const PauliString& p) {
  if (p.num_qubits() > 8) {
    throw std::invalid_argument("to_dense: refusing " + std::to_string(p.num_qubits()) +
                                " qubits (limit 8)");
  }
  const auto dim = Eigen::Index{1} << p.num_qubits();
  Matrix m = Matrix::Zero(dim, dim);
  const Complex phase = base_phase(p);
  for (std::uint64_t col = 0; col < static_cast<std::uint64_t>(dim); ++col) {
    m(static_cast<Eigen::Index>(col ^ p.x_mask()), static_cast<Eigen::Index>(col)) =
        phase * parity_sign(col, p.z_mask());
  }
  return m;
}

Vector ghz_vector(std::size_t n) {
  if (n < 1 || n > PauliString::kMaxQubits) throw std::invalid_argument("ghz_vector: bad n");
  const auto dim = Eigen::Index{1} << n;
  Vector v = Vector::Zero(dim);
  v[0] = v[dim - 1] = Complex(1.0 / std::sqrt(2.0), 0.0);
  return v;
}

DensityMatrix ghz_density(std::size_t n, std::size_t max_qubits) {
  if (n < 2 || n > max_qubits) {
    throw std::invalid_argument("ghz_density: n = " + std::to_string(n) + " outside [2, " +
                                std::to_string(max_qubits) + "]");
  }
  const auto dim = Eigen::Index{1} << n;
  Matrix rho = Matrix::Zero(dim, dim);
  rho(0, 0) = rho(0, dim - 1) = rho(dim - 1, 0) = rho(dim - 1, dim - 1) = Complex(0.5, 0.0);
  return DensityMatrix(std::move(rho), ghz_vector(n));
}

DensityMatrix maximally_mixed(std::size_t n) {
  if (n < 1 || n > 16) throw std::invalid_argument("maximally_mixed: bad n");
  const auto dim = Eigen::Index{1} << n;
  return DensityMatrix::trusted(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix stabilizer_state(const StabilizerGroup& group) {
  const std::size_t n = group.num_qubits();
  if (group.size() != (std::size_t{1} << n)) {
    throw StructureError("stabilizer_state: group of order " + std::to_string(group.size()) +
                         " does not fix a unique state on " + std::to_string(n) + " qubits");
  }
  const auto dim = Eigen::Index{1} << n;
  Matrix rho = Matrix::Zero(dim, dim);
  const double scale = 1.0 / static_cast<double>(dim);
  for (const auto& p : group) {
    const Complex phase = base_phase(p) * scale;
    for (std::uint64_t col = 0; col < static_cast<std::uint64_t>(dim); ++col) {
      rho(static_cast<Eigen::Index>(col ^ p.x_mask()), static_cast<Eigen::Index>(col)) +=
          phase * parity_sign(col, p.z_mask());
    }
  }
  Eigen::Index pivot = 0;
  rho.diagonal().real().maxCoeff(&pivot);
  Vector psi = rho.col(pivot) / std::sqrt(rho(pivot, pivot).real());
  return DensityMatrix::pure(psi);
}

double fidelity_general(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  const Matrix root = sqrt_psd(a.matrix());
  Matrix inner = root * b.matrix() * root;
  inner = 0.5 * (inner + inner.adjoint()).eval();
  const Eigensystem es = eigendecompose(inner);
  // Eigenvalues at rounding level of the largest one are zero; their square
  // roots would otherwise add O(1e-8) per eigenvalue.
  const double floor = 1e-13 * std::max(es.values.maxCoeff(), 0.0);
  double f = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    const double lambda = es.values[i];
    if (lambda < -1e-9) throw PhysicalityError("fidelity: negative eigenvalue in sqrt(a) b sqrt(a)");
    if (lambda > floor) f += std::sqrt(lambda);
  }
  return std::clamp(f, 0.0, 1.0);
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  const DensityMatrix* pure = a.pure_vector() ? &a : (b.pure_vector() ? &b : nullptr);
  if (pure == nullptr) return fidelity_general(a, b);
  const DensityMatrix& other = (pure == &a) ? b : a;
  const Vector& psi = *pure->pure_vector();
  const double overlap = psi.dot(other.matrix() * psi).real();
  return std::clamp(std::sqrt(std::max(overlap, 0.0)), 0.0, 1.0);
}

}  // namespace qpac
