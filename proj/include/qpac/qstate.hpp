#pragma once

#include <cstddef>
#include <optional>

#include "qpac/hermitian.hpp"
#include "qpac/pauli.hpp"

namespace qpac {

inline constexpr std::size_t kDefaultMaxQubits = 10;

// Hermitian, unit-trace, PSD matrix of dimension 2^n.
class DensityMatrix {
 public:
  struct Tolerances {
    double hermitian = 1e-10;
    double trace = 1e-10;
    double min_eigenvalue = -1e-9;
  };

  // Validates all invariants; throws PhysicalityError on violation and
  // std::invalid_argument on a non-power-of-two dimension.
  static DensityMatrix from_matrix(Matrix rho, const Tolerances& tol);
  static DensityMatrix from_matrix(Matrix rho) { return from_matrix(std::move(rho), Tolerances{}); }

  // |psi><psi| for the normalized psi. The vector is retained for the pure
  // fidelity shortcut.
  static DensityMatrix pure(const Vector& psi);

  // Skips the eigenvalue check. For matrices that are PSD and unit trace by
  // construction, such as convex combinations of projectors.
  static DensityMatrix trusted(Matrix rho);

  std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
  std::size_t num_qubits() const { return num_qubits_; }
  const Matrix& matrix() const { return rho_; }
  const std::optional<Vector>& pure_vector() const { return pure_; }
  double trace() const { return rho_.trace().real(); }
  double purity() const;

 private:
  friend DensityMatrix ghz_density(std::size_t n, std::size_t max_qubits);
  DensityMatrix(Matrix rho, std::optional<Vector> pure);

  Matrix rho_;
  std::optional<Vector> pure_;
  std::size_t num_qubits_ = 0;
};

// Two-outcome POVM element E = (I + P)/2.
class MeasurementEffect {
 public:
  explicit MeasurementEffect(PauliString pauli) : pauli_(std::move(pauli)) {}
  const PauliString& pauli() const { return pauli_; }
  std::size_t num_qubits() const { return pauli_.num_qubits(); }
  bool operator==(const MeasurementEffect&) const = default;

 private:
  PauliString pauli_;
};

// Tr(P A) through the signed-permutation action of P; O(dim) work. Any
// square matrix of matching dimension is accepted.
Complex pauli_trace(const PauliString& p, const Matrix& a);

// y += coeff * P x, O(dim).
void apply_pauli_add(const PauliString& p, Complex coeff, const Vector& x, Vector& y);

// Tr(E rho) = (1 + Tr(P rho))/2. Values within 1e-9 outside [0,1] are
// clamped; anything further out throws PhysicalityError.
double expectation(const MeasurementEffect& effect, const DensityMatrix& state);
// Same without clamping or checks; used on arbitrary Hermitian operands.
double effect_trace(const MeasurementEffect& effect, const Matrix& a);

// Dense 2^n x 2^n matrix for n <= 8.
Matrix to_dense(const PauliString& p);

DensityMatrix ghz_density(std::size_t n, std::size_t max_qubits = kDefaultMaxQubits);
Vector ghz_vector(std::size_t n);
DensityMatrix maximally_mixed(std::size_t n);

// The unique state stabilized by a full-rank group: (1/2^n) sum_{P in G} P.
DensityMatrix stabilizer_state(const StabilizerGroup& group);

// Uhlmann fidelity Tr sqrt(sqrt(a) b sqrt(a)) (amplitude convention). Uses
// sqrt(<psi|other|psi>) when either argument carries a pure vector.
double fidelity(const DensityMatrix& a, const DensityMatrix& b);
// Always the eigendecomposition route.
double fidelity_general(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace qpac
