#include "dragfield/synthetic.hpp"

#include <algorithm>
#include <cmath>

namespace dragfield::synthetic {

FloatGrid uniform_depth(int width, int height, double depth) {
  return FloatGrid(width, height, depth);
}

FloatGrid ramp_depth(int width, int height, double near, double far) {
  FloatGrid out(width, height, near);
  const double span = width > 1 ? static_cast<double>(width - 1) : 1.0;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) out(x, y) = near + (far - near) * x / span;
  }
  return out;
}

FloatGrid sphere_depth(int width, int height, Point center, double radius, double background,
                       double bump) {
  FloatGrid out(width, height, background);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double r2 = squared_norm(Point{x - center.x, y - center.y}) / (radius * radius);
      if (r2 < 1.0) out(x, y) = background - bump * std::sqrt(1.0 - r2);
    }
  }
  return out;
}

Mask rectangle_mask(int width, int height, int x0, int y0, int x1, int y1) {
  Mask mask(width, height, 0);
  for (int y = std::max(0, y0); y <= std::min(height - 1, y1); ++y) {
    for (int x = std::max(0, x0); x <= std::min(width - 1, x1); ++x) mask.set(x, y);
  }
  return mask;
}

Mask disk_mask(int width, int height, Point center, double radius) {
  Mask mask(width, height, 0);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (norm(Point{x - center.x, y - center.y}) <= radius) mask.set(x, y);
    }
  }
  return mask;
}

ImageGrid gradient_image(int width, int height) {
  ImageGrid out(width, height, 3, 0.0);
  const double sx = width > 1 ? width - 1.0 : 1.0;
  const double sy = height > 1 ? height - 1.0 : 1.0;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double u = x / sx, v = y / sy;
      out(x, y, 0) = u;
      out(x, y, 1) = v;
      out(x, y, 2) = 0.5 + 0.5 * std::sin(6.0 * u + 4.0 * v);
    }
  }
  return out;
}

}  // namespace dragfield::synthetic
