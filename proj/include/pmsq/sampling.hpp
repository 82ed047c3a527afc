#pragma once

// Monte Carlo sampling of hidden states and the induced measurement outcomes.
//
// Randomness comes from SplitMix64. Shot s draws from its own stream, seeded
// with the s-th output of SplitMix64(seed), so shots can be split across
// threads and merged by adding counts without changing the result.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pmsq/hv_models.hpp"
#include "pmsq/qm.hpp"
#include "pmsq/realization.hpp"

namespace pmsq {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Seed of the stream used by shot `shot`.
std::uint64_t shot_seed(std::uint64_t seed, std::uint64_t shot);

struct MeasurementFrequencies {
  std::string measurement;
  std::vector<std::string> outcomes;
  std::vector<std::uint64_t> counts;
  std::vector<double> frequencies;
  std::vector<double> born;
  double total_variation = 0.0;
};

struct SampleResult {
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::vector<MeasurementFrequencies> measurements;
  double max_total_variation = 0.0;
};

/// Draws `shots` hidden states from the model and tallies the outcome of
/// every physical measurement of `realization`. `threads` = 0 picks the
/// hardware concurrency; the result does not depend on it.
SampleResult sample_model(const HVModel& model, const Realization& realization, const Ket& state,
                          std::uint64_t shots, std::uint64_t seed, unsigned threads = 0);

}  // namespace pmsq
