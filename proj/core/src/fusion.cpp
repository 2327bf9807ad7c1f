#include "dragfield/fusion.hpp"

#include <cmath>

#include "checks.hpp"

namespace dragfield {

void FusionParams::validate() const {
  if (!std::isfinite(gamma_scale) || gamma_scale < 0.0) {
    throw ValidationError("gamma_scale must be >= 0");
  }
}

double fusion_lambda(double distance, double gamma) {
  if (distance == 0.0) return 0.0;
  if (gamma == 0.0) return 1.0;
  return distance / (distance + gamma);
}

FloatGrid fusion_weights(const FloatGrid& distances, const Circle& circle,
                         const FusionParams& params) {
  params.validate();
  const double gamma = params.gamma_for(circle);
  FloatGrid out(distances.width(), distances.height(), 0.0);
  for (std::size_t i = 0; i < distances.size(); ++i) {
    if (distances[i] < 0.0) throw ValidationError("fusion_weights: negative distance");
    out[i] = fusion_lambda(distances[i], gamma);
  }
  return out;
}

DisplacementField fuse_fields(const DisplacementField& plane, const DisplacementField& geometry,
                              const FloatGrid& lambda) {
  detail::require_same_shape(plane, geometry, "fuse_fields");
  detail::require_same_shape(plane, lambda, "fuse_fields");
  DisplacementField out(plane.width(), plane.height());
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    const double l = lambda[i];
    const Displacement p = plane.at(i);
    const Displacement g = geometry.at(i);
    out.set(i, {(1.0 - l) * p.dx + l * g.dx, (1.0 - l) * p.dy + l * g.dy});
  }
  return out;
}

}  // namespace dragfield
