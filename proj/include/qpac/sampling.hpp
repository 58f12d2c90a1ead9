#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qpac/pauli.hpp"
#include "qpac/qstate.hpp"

namespace qpac {

enum class DistributionLabel { DI, DII, Custom };

std::string to_string(DistributionLabel label);
// Accepts "d1"/"D_I" and "d2"/"D_II".
DistributionLabel parse_distribution_label(const std::string& text);

// Uniform distribution over a finite set of effects.
class MeasurementDistribution {
 public:
  // Throws std::invalid_argument for an empty support, duplicates, an
  // identity effect or mixed qubit counts.
  MeasurementDistribution(std::vector<MeasurementEffect> support, DistributionLabel label);

  const std::vector<MeasurementEffect>& support() const { return support_; }
  std::size_t size() const { return support_.size(); }
  std::size_t num_qubits() const { return support_.front().num_qubits(); }
  DistributionLabel label() const { return label_; }

 private:
  std::vector<MeasurementEffect> support_;
  DistributionLabel label_;
};

// D_I: every non-identity element of the group. D_II: the X/Z-only subset.
MeasurementDistribution build_distribution(const StabilizerGroup& group, DistributionLabel label);
// Same on the GHZ_n stabilizer group.
MeasurementDistribution build_distribution(std::size_t n, DistributionLabel label);

struct NoiseModel {
  enum class Kind { Exact, Shots, Gaussian };
  Kind kind = Kind::Exact;
  std::size_t shots = 0;
  double stddev = 0.0;

  static NoiseModel exact() { return {}; }
  static NoiseModel with_shots(std::size_t s) { return {Kind::Shots, s, 0.0}; }
  static NoiseModel gaussian(double sigma) { return {Kind::Gaussian, 0, sigma}; }

  // Throws std::invalid_argument for shots == 0 or a negative/non-finite std.
  void validate() const;
  // "exact", "shots(100)", "gaussian(0.05)".
  std::string describe() const;

  bool operator==(const NoiseModel&) const = default;
};

enum class Replacement { With, Without };

std::string to_string(Replacement r);
Replacement parse_replacement(const std::string& text);

struct TrainingItem {
  MeasurementEffect effect;
  double value;
};

struct TrainingSet {
  std::vector<TrainingItem> items;
  NoiseModel provenance;
  std::uint64_t seed = 0;

  std::size_t size() const { return items.size(); }
};

// m draws from the support (i.i.d. by default). Each observed value is the
// exact expectation, the mean of S Bernoulli outcomes, or the exact value
// plus N(0, std^2) clamped to [0, 1]. Items are generated one after another,
// so a run with a larger m extends the one with a smaller m, and the effect
// sequence does not depend on the noise model.
TrainingSet sample_training_set(const MeasurementDistribution& dist, const DensityMatrix& state,
                                std::size_t m, const NoiseModel& noise, std::uint64_t seed,
                                Replacement replacement = Replacement::With);

struct ShotRecord {
  MeasurementEffect effect;
  std::vector<std::uint8_t> bits;

  double mean() const;
};

// m_prime i.i.d. effects, each measured S times.
std::vector<ShotRecord> per_shot_outcomes(const MeasurementDistribution& dist,
                                          const DensityMatrix& state, std::size_t m_prime,
                                          std::size_t shots, std::uint64_t seed);

// Training set of per-effect shot means, paired with per_shot_outcomes.
TrainingSet averaged_training_set(const std::vector<ShotRecord>& records, std::uint64_t seed);

}  // namespace qpac
