#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "dragfield/grid.hpp"

namespace dragfield {

/// Direction of a displacement as an HSV hue in [0,360): rightward is 0
/// (red), hue grows counter-clockwise on screen (upward is 90).
double displacement_hue(double dx, double dy);

/// Color-wheel encoding of a field. Hue follows direction, saturation is
/// |f| / max_magnitude clamped to 1, value is 1, so zero renders white.
/// When max_magnitude is empty the field's own maximum is used.
ImageGrid visualize_field(const DisplacementField& field,
                          std::optional<double> max_magnitude = std::nullopt);

/// 256-entry warm-to-cool lookup table (index 0 warmest).
const std::array<std::array<std::uint8_t, 3>, 256>& warm_cool_colormap();

/// Min-max normalizes and maps through warm_cool_colormap(): the minimum
/// (closest) is warmest, the maximum coolest. A constant grid maps to the
/// middle entry (128).
ImageGrid visualize_scalar(const FloatGrid& grid);

}  // namespace dragfield
