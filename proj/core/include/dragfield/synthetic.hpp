#pragma once

#include "dragfield/grid.hpp"

namespace dragfield::synthetic {

// Test-scene generators. Depth is larger-is-farther and strictly positive.

FloatGrid uniform_depth(int width, int height, double depth = 1.0);

/// Plane tilted along x: depth = near + (far - near) * x / (width - 1).
FloatGrid ramp_depth(int width, int height, double near, double far);

/// Background plane at `background` with a spherical bump rising toward
/// the camera (smaller depth) centered at `center`.
FloatGrid sphere_depth(int width, int height, Point center, double radius, double background,
                       double bump);

Mask rectangle_mask(int width, int height, int x0, int y0, int x1, int y1);
Mask disk_mask(int width, int height, Point center, double radius);

/// Smooth RGB test pattern with values in [0,1].
ImageGrid gradient_image(int width, int height);

}  // namespace dragfield::synthetic
