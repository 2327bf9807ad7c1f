#pragma once

#include "dragfield/drag_pairs.hpp"
#include "dragfield/grid.hpp"

namespace dragfield {

struct PlaneParams {
  double beta = 1.0;  ///< falloff exponent, > 0

  void validate() const;
};

/// Distance from `handle` to `circle` along the unit direction `dir`.
/// Requires the handle strictly inside the circle.
double ray_circle_distance(Point handle, const Circle& circle, Point dir);

/// Extent used at the handle itself, where the ray direction is undefined:
/// the minimum over the eight compass directions.
double handle_extent(Point handle, const Circle& circle);

/// L(q): distance from the handle to the circle along the ray through each
/// cell center. At the handle's own cell (q == handle) the minimum over the
/// eight compass directions is used. Throws if the handle is not strictly
/// inside the circle.
FloatGrid ray_circle_extent(Point handle, const Circle& circle, const Mask& mask);

/// Retained fraction max(0, 1 - (P/L)^beta); exactly 1 at P == 0.
double plane_weight(double distance, double extent, double beta);

/// Plane-aware field f_p(q) = max(0, 1 - (P(q)/L(q))^beta) * d on the mask.
DisplacementField plane_field(const Mask& mask, const DragPair& pair, const PlaneParams& params,
                              const Circle& circle);

}  // namespace dragfield
