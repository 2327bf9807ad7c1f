#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "dragfield/grid.hpp"

namespace dragfield {

struct WarpResult {
  ChannelGrid grid;
  /// Cells filled by interpolation (the M of the masked stochastic update).
  Mask interpolated;
  /// Masked cells that received no relocated value and are still unfilled.
  Mask holes;
  std::size_t holes_before_fill = 0;
  std::size_t collisions = 0;
  /// Relocations whose destination fell outside the image.
  std::size_t dropped = 0;
};

/// Forward mapping: each masked source cell (x, y) is written to
/// (x + round(dx), y + round(dy)), rounding half away from zero. On
/// collision the source with the smallest depth wins (ties: lower raster
/// index); without depth every source has equal priority. Out-of-bounds
/// destinations are dropped. Masked cells receiving nothing become holes;
/// other cells keep their input value unless overwritten.
WarpResult forward_warp(const ChannelGrid& grid, const DisplacementField& field, const Mask& mask,
                        const FloatGrid* depth = nullptr);

/// Same as forward_warp but visits masked sources in the given order
/// (raster indices). The result does not depend on the order.
WarpResult forward_warp_ordered(const ChannelGrid& grid, const DisplacementField& field,
                                const Mask& mask, const FloatGrid* depth,
                                std::span<const std::size_t> source_order);

struct HoleFillOptions {
  int neighbors = 4;      ///< K nearest non-hole cells
  double power = 2.0;     ///< weight = 1 / distance^power
};

/// Fills every hole with the inverse-distance-weighted average of its K
/// nearest non-hole cells (ties by raster order). Marks filled cells in
/// `interpolated`. Throws ValidationError if every cell is a hole.
WarpResult fill_holes(WarpResult result, const HoleFillOptions& options = {});

}  // namespace dragfield
