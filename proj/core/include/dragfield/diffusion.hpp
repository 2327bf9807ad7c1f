#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "dragfield/grid.hpp"

namespace dragfield {

/// Cumulative signal rates alphabar[t], non-increasing in t, each in (0,1],
/// plus the stochasticity knob eta in [0,1].
struct DiffusionSchedule {
  std::vector<double> alphabar;
  double eta = 0.0;

  void validate() const;
};

/// sigma_t = eta * sqrt((1 - ab[t-1]) / (1 - ab[t])) * sqrt(1 - ab[t] / ab[t-1]).
double sigma_schedule(const DiffusionSchedule& schedule, int t);

/// epsilon_theta(z, t); must return a grid shaped like z.
using NoisePredictor = std::function<ChannelGrid(const ChannelGrid&, int)>;

/// Seeded standard-normal source. The same seed always yields the same
/// sequence of grids.
class NoiseSource {
 public:
  explicit NoiseSource(std::uint64_t seed) : engine_(seed) {}

  ChannelGrid normal_grid(int width, int height, int channels);

 private:
  std::mt19937_64 engine_;
};

/// One masked stochastic update:
///   z' = sqrt(ab[t-1]) * z0_hat + sqrt(1 - ab[t-1] - sigma^2 * M) * eps_theta(z, t)
///        + sigma * (eps * M)
/// Outside M the deterministic rule is applied exactly.
ChannelGrid masked_stochastic_step(const ChannelGrid& z, const ChannelGrid& z0_hat,
                                   const NoisePredictor& predictor,
                                   const DiffusionSchedule& schedule, int t, const Mask& region,
                                   NoiseSource& noise);

namespace predictors {

NoisePredictor zero();
NoisePredictor identity();
NoisePredictor seeded_random(std::uint64_t seed);

}  // namespace predictors

}  // namespace dragfield
