#include "pmsq/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace pmsq {

std::uint64_t shot_seed(std::uint64_t seed, std::uint64_t shot) {
  // s-th output of SplitMix64(seed) without stepping through the sequence.
  SplitMix64 g(seed + 0x9E3779B97F4A7C15ULL * shot);
  return g.next();
}

SampleResult sample_model(const HVModel& model, const Realization& realization, const Ket& state,
                          std::uint64_t shots, std::uint64_t seed, unsigned threads) {
  if (shots == 0) throw std::invalid_argument("shots must be positive");

  const std::size_t num_states = model.states.size();
  std::vector<double> cdf(num_states);
  double acc = 0.0;
  for (std::size_t i = 0; i < num_states; ++i) {
    acc += std::max(0.0, model.states[i].probability);
    cdf[i] = acc;
  }

  // Outcome of each physical measurement in each hidden state.
  const std::size_t num_meas = realization.physicals.size();
  std::vector<std::size_t> offset(num_meas + 1, 0);
  for (std::size_t m = 0; m < num_meas; ++m) offset[m + 1] = offset[m] + realization.physicals[m].size();
  std::vector<int> outcome(num_states * num_meas);
  for (std::size_t i = 0; i < num_states; ++i) {
    for (std::size_t m = 0; m < num_meas; ++m) {
      outcome[i * num_meas + m] = physical_outcome(model, model.states[i].state, realization.physicals[m].id);
    }
  }

  const auto draw = [&](std::uint64_t shot) {
    SplitMix64 g(shot_seed(seed, shot));
    const double u = g.uniform() * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), num_states - 1);
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(std::min(threads, 16u), shots));
  std::vector<std::vector<std::uint64_t>> shard(threads, std::vector<std::uint64_t>(offset.back(), 0));
  {
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&, t] {
        const std::uint64_t begin = shots * t / threads;
        const std::uint64_t end = shots * (t + 1) / threads;
        auto& counts = shard[t];
        for (std::uint64_t s = begin; s < end; ++s) {
          const std::size_t hs = draw(s);
          for (std::size_t m = 0; m < num_meas; ++m) ++counts[offset[m] + outcome[hs * num_meas + m]];
        }
      });
    }
  }

  SampleResult res;
  res.shots = shots;
  res.seed = seed;
  for (std::size_t m = 0; m < num_meas; ++m) {
    const auto& pm = realization.physicals[m];
    MeasurementFrequencies f{pm.id, pm.outcomes, {}, {}, pm.born_distribution(state), 0.0};
    for (std::size_t k = 0; k < pm.size(); ++k) {
      std::uint64_t c = 0;
      for (const auto& counts : shard) c += counts[offset[m] + k];
      f.counts.push_back(c);
      f.frequencies.push_back(static_cast<double>(c) / static_cast<double>(shots));
      f.total_variation += 0.5 * std::abs(f.frequencies.back() - f.born[k]);
    }
    res.max_total_variation = std::max(res.max_total_variation, f.total_variation);
    res.measurements.push_back(std::move(f));
  }
  return res;
}

}  // namespace pmsq
