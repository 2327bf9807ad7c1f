#include "dragfield/diffusion.hpp"

#include <cmath>
#include <string>

#include "checks.hpp"

namespace dragfield {

void DiffusionSchedule::validate() const {
  if (!std::isfinite(eta) || eta < 0.0 || eta > 1.0) {
    throw ValidationError("eta must lie in [0,1]");
  }
  for (std::size_t t = 0; t < alphabar.size(); ++t) {
    const double a = alphabar[t];
    if (!(a > 0.0 && a <= 1.0)) throw ValidationError("alphabar values must lie in (0,1]");
    if (t > 0 && a > alphabar[t - 1]) throw ValidationError("alphabar must be non-increasing");
  }
}

double sigma_schedule(const DiffusionSchedule& schedule, int t) {
  schedule.validate();
  if (t < 1 || static_cast<std::size_t>(t) >= schedule.alphabar.size()) {
    throw ValidationError("sigma_schedule: timestep " + std::to_string(t) + " out of range");
  }
  const double a_t = schedule.alphabar[static_cast<std::size_t>(t)];
  const double a_prev = schedule.alphabar[static_cast<std::size_t>(t) - 1];
  if (a_t == 1.0) throw ValidationError("sigma_schedule: alphabar_t == 1 leaves sigma undefined");
  return schedule.eta * std::sqrt((1.0 - a_prev) / (1.0 - a_t)) * std::sqrt(1.0 - a_t / a_prev);
}

ChannelGrid NoiseSource::normal_grid(int width, int height, int channels) {
  ChannelGrid out(width, height, channels, 0.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double& v : out.values()) v = normal(engine_);
  return out;
}

ChannelGrid masked_stochastic_step(const ChannelGrid& z, const ChannelGrid& z0_hat,
                                   const NoisePredictor& predictor,
                                   const DiffusionSchedule& schedule, int t, const Mask& region,
                                   NoiseSource& noise) {
  detail::require_same_shape(z, z0_hat, "masked_stochastic_step");
  detail::require_same_shape(z, region, "masked_stochastic_step");
  const double sigma = sigma_schedule(schedule, t);
  const double a_prev = schedule.alphabar[static_cast<std::size_t>(t) - 1];

  const ChannelGrid eps_theta = predictor(z, t);
  if (!eps_theta.same_shape(z)) {
    throw ValidationError("masked_stochastic_step: predictor output shape differs from input");
  }
  const ChannelGrid eps = noise.normal_grid(z.width(), z.height(), z.channels());

  const double signal = std::sqrt(a_prev);
  const double det_noise = std::sqrt(1.0 - a_prev);
  const double masked_var = 1.0 - a_prev - sigma * sigma;
  if (masked_var < -1e-12 && region.any()) {
    throw ValidationError("masked_stochastic_step: sigma^2 exceeds 1 - alphabar_{t-1}");
  }
  const double masked_noise = std::sqrt(std::max(masked_var, 0.0));

  ChannelGrid out(z.width(), z.height(), z.channels(), 0.0);
  for (int y = 0; y < z.height(); ++y) {
    for (int x = 0; x < z.width(); ++x) {
      const bool inside = region.test(x, y);
      for (int c = 0; c < z.channels(); ++c) {
        const double base = signal * z0_hat(x, y, c);
        out(x, y, c) = inside ? base + masked_noise * eps_theta(x, y, c) + sigma * eps(x, y, c)
                              : base + det_noise * eps_theta(x, y, c);
      }
    }
  }
  return out;
}

namespace predictors {

NoisePredictor zero() {
  return [](const ChannelGrid& z, int) {
    return ChannelGrid(z.width(), z.height(), z.channels(), 0.0);
  };
}

NoisePredictor identity() {
  return [](const ChannelGrid& z, int) { return z; };
}

NoisePredictor seeded_random(std::uint64_t seed) {
  return [seed](const ChannelGrid& z, int t) {
    NoiseSource source(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(t + 1)));
    return source.normal_grid(z.width(), z.height(), z.channels());
  };
}

}  // namespace predictors

}  // namespace dragfield
