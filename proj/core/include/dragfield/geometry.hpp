#pragma once

#include "dragfield/grid.hpp"

namespace dragfield {

/// Smallest radius any enclosing circle reports, so a single-cell mask still
/// yields a non-zero propagation extent.
inline constexpr double kMinCircleRadius = 0.5;

/// Half the diagonal of a unit cell. Padding a circle over cell centers by
/// this amount covers every point of every enclosed cell.
inline constexpr double kCellHalfDiagonal = 0.70710678118654752440;

/// Minimum enclosing circle of the true cell centers (radius floored at
/// kMinCircleRadius). Throws ValidationError for an empty mask.
Circle enclosing_circle(const Mask& mask);

/// Circle bounding the influence of `handle` over `region`: the minimum
/// enclosing circle of the region's cell centers and the handle, padded by
/// kCellHalfDiagonal. Any handle whose cell lies in the region is strictly
/// inside it.
Circle influence_circle(const Mask& region, Point handle);

/// Euclidean distance from every cell center to `p`. The mask only fixes
/// the dimensions.
FloatGrid distance_map(const Mask& mask, Point p);

/// out = 1 / (grid + eps). Adapts disparity-style predictor output to the
/// larger-is-farther depth convention.
FloatGrid invert_disparity(const FloatGrid& grid, double eps);

/// Bilinear sample with clamp-to-edge addressing.
double sample_bilinear(const FloatGrid& grid, Point p);

}  // namespace dragfield
