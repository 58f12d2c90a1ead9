#include "qpac/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qpac/rng.hpp"

namespace qpac {

std::string to_string(DistributionLabel label) {
  switch (label) {
    case DistributionLabel::DI: return "d1";
    case DistributionLabel::DII: return "d2";
    case DistributionLabel::Custom: return "custom";
  }
  return "?";
}

DistributionLabel parse_distribution_label(const std::string& text) {
  if (text == "d1" || text == "D_I" || text == "DI") return DistributionLabel::DI;
  if (text == "d2" || text == "D_II" || text == "DII") return DistributionLabel::DII;
  throw std::invalid_argument("unsupported distribution label '" + text + "' (use d1 or d2)");
}

std::string to_string(Replacement r) { return r == Replacement::With ? "with" : "without"; }

Replacement parse_replacement(const std::string& text) {
  if (text == "with") return Replacement::With;
  if (text == "without") return Replacement::Without;
  throw std::invalid_argument("replacement must be 'with' or 'without', got '" + text + "'");
}

MeasurementDistribution::MeasurementDistribution(std::vector<MeasurementEffect> support,
                                                 DistributionLabel label)
    : support_(std::move(support)), label_(label) {
  if (support_.empty()) throw std::invalid_argument("distribution support is empty");
  const std::size_t n = support_.front().num_qubits();
  std::vector<PauliString> seen;
  for (const auto& e : support_) {
    if (e.num_qubits() != n) throw std::invalid_argument("distribution mixes qubit counts");
    if (e.pauli().is_identity()) throw std::invalid_argument("identity effect in support");
    seen.push_back(e.pauli());
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw std::invalid_argument("duplicate effect in support");
  }
}

MeasurementDistribution build_distribution(const StabilizerGroup& group, DistributionLabel label) {
  std::vector<MeasurementEffect> support;
  switch (label) {
    case DistributionLabel::DI:
      for (const auto& p : group) {
        if (!p.is_identity()) support.emplace_back(p);
      }
      break;
    case DistributionLabel::DII:
      for (auto& p : xz_subset(group)) support.emplace_back(std::move(p));
      break;
    case DistributionLabel::Custom:
      throw std::invalid_argument("build_distribution: custom supports are built directly");
  }
  return MeasurementDistribution(std::move(support), label);
}

MeasurementDistribution build_distribution(std::size_t n, DistributionLabel label) {
  const auto gens = ghz_generators(n);
  return build_distribution(group_closure(gens), label);
}

void NoiseModel::validate() const {
  switch (kind) {
    case Kind::Exact: return;
    case Kind::Shots:
      if (shots < 1) throw std::invalid_argument("shot noise needs shots >= 1");
      return;
    case Kind::Gaussian:
      if (!std::isfinite(stddev) || stddev < 0.0) {
        throw std::invalid_argument("gaussian noise needs a finite std >= 0");
      }
      return;
  }
}

std::string NoiseModel::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Exact: os << "exact"; break;
    case Kind::Shots: os << "shots(" << shots << ")"; break;
    case Kind::Gaussian: os << "gaussian(" << stddev << ")"; break;
  }
  return os.str();
}

TrainingSet sample_training_set(const MeasurementDistribution& dist, const DensityMatrix& state,
                                std::size_t m, const NoiseModel& noise, std::uint64_t seed,
                                Replacement replacement) {
  if (m < 1) throw std::invalid_argument("sample_training_set: m must be >= 1");
  noise.validate();
  if (dist.num_qubits() != state.num_qubits()) {
    throw std::invalid_argument("sample_training_set: distribution and state sizes differ");
  }
  const std::size_t support = dist.size();
  if (replacement == Replacement::Without && m > support) {
    throw std::invalid_argument("sample_training_set: m = " + std::to_string(m) +
                                " exceeds the support size " + std::to_string(support) +
                                " without replacement");
  }

  // Effects and noise use separate streams, so every noise model sees the
  // same effect sequence for a given seed.
  Rng rng(seed);
  Rng noise_rng(derive_seed(seed, 1));
  std::vector<std::size_t> order(support);
  std::iota(order.begin(), order.end(), std::size_t{0});

  TrainingSet out;
  out.provenance = noise;
  out.seed = seed;
  out.items.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t pick = 0;
    if (replacement == Replacement::With) {
      pick = static_cast<std::size_t>(rng.uniform_index(support));
    } else {
      // Partial Fisher-Yates; position i is final after this swap.
      const std::size_t j = i + static_cast<std::size_t>(rng.uniform_index(support - i));
      std::swap(order[i], order[j]);
      pick = order[i];
    }
    const MeasurementEffect& effect = dist.support()[pick];
    const double exact = expectation(effect, state);
    double value = exact;
    switch (noise.kind) {
      case NoiseModel::Kind::Exact: break;
      case NoiseModel::Kind::Shots: {
        std::size_t ones = 0;
        for (std::size_t s = 0; s < noise.shots; ++s) ones += noise_rng.bernoulli(exact) ? 1 : 0;
        value = static_cast<double>(ones) / static_cast<double>(noise.shots);
        break;
      }
      case NoiseModel::Kind::Gaussian:
        value = std::clamp(exact + noise.stddev * noise_rng.normal(), 0.0, 1.0);
        break;
    }
    out.items.push_back({effect, value});
  }
  return out;
}

double ShotRecord::mean() const {
  if (bits.empty()) return 0.0;
  const auto ones = std::count(bits.begin(), bits.end(), std::uint8_t{1});
  return static_cast<double>(ones) / static_cast<double>(bits.size());
}

std::vector<ShotRecord> per_shot_outcomes(const MeasurementDistribution& dist,
                                          const DensityMatrix& state, std::size_t m_prime,
                                          std::size_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("per_shot_outcomes: shots must be >= 1");
  if (dist.num_qubits() != state.num_qubits()) {
    throw std::invalid_argument("per_shot_outcomes: distribution and state sizes differ");
  }
  Rng rng(seed);
  std::vector<ShotRecord> out;
  out.reserve(m_prime);
  for (std::size_t i = 0; i < m_prime; ++i) {
    const auto& effect = dist.support()[static_cast<std::size_t>(rng.uniform_index(dist.size()))];
    const double p = expectation(effect, state);
    ShotRecord record{effect, std::vector<std::uint8_t>(shots)};
    for (auto& b : record.bits) b = rng.bernoulli(p) ? 1 : 0;
    out.push_back(std::move(record));
  }
  return out;
}

TrainingSet averaged_training_set(const std::vector<ShotRecord>& records, std::uint64_t seed) {
  TrainingSet out;
  out.seed = seed;
  if (!records.empty()) out.provenance = NoiseModel::with_shots(records.front().bits.size());
  for (const auto& r : records) out.items.push_back({r.effect, r.mean()});
  return out;
}

}  // namespace qpac
