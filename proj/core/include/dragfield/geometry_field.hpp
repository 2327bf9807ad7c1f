#pragma once

#include "dragfield/drag_pairs.hpp"
#include "dragfield/grid.hpp"

namespace dragfield {

struct GeometryParams {
  double alpha = 1.0;       ///< depth sensitivity exponent, >= 0
  double ratio_cap = 10.0;  ///< scale (zeta_h/zeta)^alpha is clamped to [1/cap, cap]

  void validate() const;
};

/// Depth-ratio scale applied to the drag vector at a cell of depth `depth`
/// when the handle sits at depth `handle_depth`.
double geometry_scale(double handle_depth, double depth, const GeometryParams& params);

/// Geometry-aware field: f_d(q) = clamp((zeta_h / zeta(q))^alpha) * d on the
/// mask, zero elsewhere. zeta_h is the depth bilinearly sampled at the handle.
/// Depth is larger-is-farther and must be positive on the mask.
DisplacementField geometry_field(const FloatGrid& depth, const Mask& mask, const DragPair& pair,
                                 const GeometryParams& params = {});

}  // namespace dragfield
