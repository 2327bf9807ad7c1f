#include "dragfield/geometry_field.hpp"

#include <algorithm>
#include <cmath>

#include "checks.hpp"
#include "dragfield/geometry.hpp"

namespace dragfield {

void GeometryParams::validate() const {
  if (!std::isfinite(alpha) || alpha < 0.0) throw ValidationError("alpha must be >= 0");
  if (!std::isfinite(ratio_cap) || ratio_cap <= 1.0) {
    throw ValidationError("ratio_cap must be > 1");
  }
}

double geometry_scale(double handle_depth, double depth, const GeometryParams& params) {
  const double scale = std::pow(handle_depth / depth, params.alpha);
  return std::clamp(scale, 1.0 / params.ratio_cap, params.ratio_cap);
}

DisplacementField geometry_field(const FloatGrid& depth, const Mask& mask, const DragPair& pair,
                                 const GeometryParams& params) {
  params.validate();
  detail::require_same_shape(depth, mask, "geometry_field");
  detail::require_handle_in_mask(mask, pair.handle, "geometry_field");

  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i] && !(depth[i] > 0.0)) {
      throw ValidationError("geometry_field: depth must be positive inside the mask");
    }
  }
  const double handle_depth = sample_bilinear(depth, pair.handle);
  if (!(handle_depth > 0.0)) {
    throw ValidationError("geometry_field: depth sampled at the handle is not positive");
  }

  const Point d = pair.drag();
  DisplacementField out(mask.width(), mask.height());
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) continue;
    const double s = geometry_scale(handle_depth, depth[i], params);
    out.set(i, {s * d.x, s * d.y});
  }
  return out;
}

}  // namespace dragfield
