#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qpac {

// Single-qubit Pauli factor. The enumerator order defines the canonical
// lexicographic order of strings (I < X < Y < Z).
enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);

// Signed tensor product of single-qubit Paulis, sign in {+1, -1}.
//
// Factor 0 is the leftmost tensor factor and acts on the most significant bit
// of a computational-basis index, so the dense realization is the Kronecker
// product factors[0] (x) factors[1] (x) ... .
//
// The operator acts as a signed permutation:
//   P |b> = phase(b) |b ^ x_mask()>,
//   phase(b) = sign * i^(#Y) * (-1)^popcount(b & z_mask()).
class PauliString {
 public:
  static constexpr std::size_t kMaxQubits = 30;

  PauliString(std::vector<Pauli> factors, int sign = +1);

  // Accepts "+ZIZ", "-YY" or an unsigned "XX" (taken as +).
  static PauliString parse(std::string_view text);
  static PauliString identity(std::size_t n);

  std::size_t num_qubits() const { return factors_.size(); }
  int sign() const { return sign_; }
  Pauli operator[](std::size_t q) const { return factors_[q]; }
  std::span<const Pauli> factors() const { return factors_; }

  // True when every factor is I (the sign is not inspected).
  bool is_identity() const;
  bool has_y() const;
  std::size_t y_count() const;
  bool commutes_with(const PauliString& other) const;

  std::uint64_t x_mask() const { return x_mask_; }
  std::uint64_t z_mask() const { return z_mask_; }

  PauliString negated() const { return PauliString(factors_, -sign_); }

  // "-YY", "+ZIZ".
  std::string str() const;

  // Factors compared lexicographically first, then sign (- before +).
  std::strong_ordering operator<=>(const PauliString& other) const;
  bool operator==(const PauliString& other) const = default;

 private:
  std::vector<Pauli> factors_;
  int sign_;
  std::uint64_t x_mask_ = 0;
  std::uint64_t z_mask_ = 0;
};

// Product a*b. Throws std::invalid_argument on length mismatch and
// PhysicalityError when the accumulated phase is +-i.
PauliString pauli_multiply(const PauliString& a, const PauliString& b);

// Group generated by commuting independent Pauli strings, stored in canonical
// ascending order (identity first).
class StabilizerGroup {
 public:
  std::size_t num_qubits() const { return num_qubits_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<PauliString>& elements() const { return elements_; }
  const std::vector<PauliString>& generators() const { return generators_; }
  bool contains(const PauliString& p) const;

  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

 private:
  friend StabilizerGroup group_closure(std::span<const PauliString> generators);

  std::size_t num_qubits_ = 0;
  std::vector<PauliString> generators_;
  std::vector<PauliString> elements_;
};

// X^n and Z_i Z_{i+1} for i = 0..n-2, all with sign +1. Requires n >= 2.
std::vector<PauliString> ghz_generators(std::size_t n);

// All 2^k subset products of k generators. Throws StructureError when the
// generators are empty, of unequal length, non-commuting or dependent.
StabilizerGroup group_closure(std::span<const PauliString> generators);

// Non-identity elements without any Y factor, in canonical order.
std::vector<PauliString> xz_subset(const StabilizerGroup& group);

}  // namespace qpac
