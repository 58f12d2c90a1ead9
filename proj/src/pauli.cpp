#include "qpac/pauli.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "qpac/errors.hpp"

namespace qpac {
namespace {

constexpr std::uint8_t x_bit(Pauli p) { return (p == Pauli::X || p == Pauli::Y) ? 1 : 0; }
constexpr std::uint8_t z_bit(Pauli p) { return (p == Pauli::Z || p == Pauli::Y) ? 1 : 0; }

constexpr Pauli from_bits(std::uint8_t x, std::uint8_t z) {
  if (x && z) return Pauli::Y;
  if (x) return Pauli::X;
  if (z) return Pauli::Z;
  return Pauli::I;
}

// Exponent of i picked up by the single-qubit product a*b.
constexpr int product_phase(Pauli a, Pauli b) {
  constexpr int table[4][4] = {
      {0, 0, 0, 0},  // I
      {0, 0, 1, 3},  // X: XY = iZ, XZ = -iY
      {0, 3, 0, 1},  // Y: YX = -iZ, YZ = iX
      {0, 1, 3, 0},  // Z: ZX = iY, ZY = -iX
  };
  return table[static_cast<int>(a)][static_cast<int>(b)];
}

// Symplectic vector (x | z << n) used for the independence check.
std::uint64_t symplectic(const PauliString& p) {
  return p.x_mask() | (p.z_mask() << p.num_qubits());
}

std::size_t gf2_rank(std::vector<std::uint64_t> rows) {
  std::size_t rank = 0;
  for (int bit = 63; bit >= 0; --bit) {
    const std::uint64_t mask = std::uint64_t{1} << bit;
    auto pivot = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(rank), rows.end(),
                              [mask](std::uint64_t r) { return (r & mask) != 0; });
    if (pivot == rows.end()) continue;
    std::iter_swap(rows.begin() + static_cast<std::ptrdiff_t>(rank), pivot);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != rank && (rows[i] & mask)) rows[i] ^= rows[rank];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

char pauli_char(Pauli p) {
  switch (p) {
    case Pauli::I: return 'I';
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
  }
  throw std::logic_error("unreachable Pauli value");
}

PauliString::PauliString(std::vector<Pauli> factors, int sign)
    : factors_(std::move(factors)), sign_(sign) {
  if (factors_.empty()) throw std::invalid_argument("PauliString needs at least one factor");
  if (factors_.size() > kMaxQubits) throw std::invalid_argument("PauliString too long");
  if (sign_ != 1 && sign_ != -1) throw std::invalid_argument("PauliString sign must be +1 or -1");
  const std::size_t n = factors_.size();
  for (std::size_t q = 0; q < n; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
    if (x_bit(factors_[q])) x_mask_ |= bit;
    if (z_bit(factors_[q])) z_mask_ |= bit;
  }
}

PauliString PauliString::parse(std::string_view text) {
  int sign = 1;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    sign = text.front() == '-' ? -1 : 1;
    text.remove_prefix(1);
  }
  std::vector<Pauli> factors;
  factors.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case 'I': factors.push_back(Pauli::I); break;
      case 'X': factors.push_back(Pauli::X); break;
      case 'Y': factors.push_back(Pauli::Y); break;
      case 'Z': factors.push_back(Pauli::Z); break;
      default:
        throw std::invalid_argument("invalid Pauli character '" + std::string(1, c) + "'");
    }
  }
  return PauliString(std::move(factors), sign);
}

PauliString PauliString::identity(std::size_t n) {
  return PauliString(std::vector<Pauli>(n, Pauli::I), +1);
}

bool PauliString::is_identity() const { return x_mask_ == 0 && z_mask_ == 0; }

bool PauliString::has_y() const { return (x_mask_ & z_mask_) != 0; }

std::size_t PauliString::y_count() const {
  return static_cast<std::size_t>(std::popcount(x_mask_ & z_mask_));
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (other.num_qubits() != num_qubits()) {
    throw std::invalid_argument("Pauli length mismatch");
  }
  const std::uint64_t anti = (x_mask_ & other.z_mask_) ^ (z_mask_ & other.x_mask_);
  return std::popcount(anti) % 2 == 0;
}

std::string PauliString::str() const {
  std::string out;
  out.reserve(factors_.size() + 1);
  out.push_back(sign_ < 0 ? '-' : '+');
  for (Pauli p : factors_) out.push_back(pauli_char(p));
  return out;
}

std::strong_ordering PauliString::operator<=>(const PauliString& other) const {
  if (auto c = std::lexicographical_compare_three_way(factors_.begin(), factors_.end(),
                                                      other.factors_.begin(),
                                                      other.factors_.end());
      c != 0) {
    return c;
  }
  return sign_ <=> other.sign_;
}

PauliString pauli_multiply(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("pauli_multiply: length mismatch (" +
                                std::to_string(a.num_qubits()) + " vs " +
                                std::to_string(b.num_qubits()) + ")");
  }
  const std::size_t n = a.num_qubits();
  std::vector<Pauli> factors(n);
  int phase = 0;
  for (std::size_t q = 0; q < n; ++q) {
    phase += product_phase(a[q], b[q]);
    factors[q] = from_bits(x_bit(a[q]) ^ x_bit(b[q]), z_bit(a[q]) ^ z_bit(b[q]));
  }
  phase %= 4;
  if (phase % 2 != 0) {
    throw PhysicalityError("pauli_multiply: " + a.str() + " * " + b.str() +
                           " has an imaginary phase");
  }
  const int sign = a.sign() * b.sign() * (phase == 2 ? -1 : 1);
  return PauliString(std::move(factors), sign);
}

bool StabilizerGroup::contains(const PauliString& p) const {
  return std::binary_search(elements_.begin(), elements_.end(), p);
}

std::vector<PauliString> ghz_generators(std::size_t n) {
  if (n < 2) throw std::invalid_argument("ghz_generators: need n >= 2, got " + std::to_string(n));
  if (n > PauliString::kMaxQubits) throw std::invalid_argument("ghz_generators: n too large");
  std::vector<PauliString> gens;
  gens.reserve(n);
  gens.emplace_back(std::vector<Pauli>(n, Pauli::X));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::vector<Pauli> f(n, Pauli::I);
    f[i] = Pauli::Z;
    f[i + 1] = Pauli::Z;
    gens.emplace_back(std::move(f));
  }
  return gens;
}

StabilizerGroup group_closure(std::span<const PauliString> generators) {
  if (generators.empty()) throw StructureError("group_closure: no generators");
  const std::size_t n = generators.front().num_qubits();
  if (generators.size() > n) {
    throw StructureError("group_closure: more generators than qubits cannot be independent");
  }
  std::vector<std::uint64_t> rows;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const auto& g = generators[i];
    if (g.num_qubits() != n) throw StructureError("group_closure: generator length mismatch");
    if (g.is_identity()) throw StructureError("group_closure: identity is not a generator");
    for (std::size_t j = 0; j < i; ++j) {
      if (!g.commutes_with(generators[j])) {
        throw StructureError("group_closure: " + g.str() + " and " + generators[j].str() +
                             " anticommute");
      }
    }
    rows.push_back(symplectic(g));
  }
  if (gf2_rank(rows) != generators.size()) {
    throw StructureError("group_closure: generators are not independent");
  }

  StabilizerGroup group;
  group.num_qubits_ = n;
  group.generators_.assign(generators.begin(), generators.end());
  // Gray-code walk: each element differs from its predecessor by one generator.
  const std::size_t count = std::size_t{1} << generators.size();
  group.elements_.reserve(count);
  PauliString current = PauliString::identity(n);
  group.elements_.push_back(current);
  for (std::size_t i = 1; i < count; ++i) {
    const auto flip = static_cast<std::size_t>(std::countr_zero(i));
    current = pauli_multiply(current, generators[flip]);
    group.elements_.push_back(current);
  }
  std::sort(group.elements_.begin(), group.elements_.end());
  return group;
}

std::vector<PauliString> xz_subset(const StabilizerGroup& group) {
  std::vector<PauliString> out;
  for (const auto& p : group) {
    if (!p.is_identity() && !p.has_y()) out.push_back(p);
  }
  return out;
}

}  // namespace qpac
