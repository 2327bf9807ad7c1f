#include "dragfield/visualize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dragfield {
namespace {

constexpr std::array<std::array<std::uint8_t, 3>, 256> kWarmCool = {{
#include "colormap_table.inc"
}};

// Standard HSV -> RGB, hue in degrees.
std::array<double, 3> hsv_to_rgb(double hue, double sat, double val) {
  const double h = hue / 60.0;
  const int sector = static_cast<int>(std::floor(h)) % 6;
  const double f = h - std::floor(h);
  const double p = val * (1.0 - sat);
  const double q = val * (1.0 - sat * f);
  const double t = val * (1.0 - sat * (1.0 - f));
  switch (sector) {
    case 0: return {val, t, p};
    case 1: return {q, val, p};
    case 2: return {p, val, t};
    case 3: return {p, q, val};
    case 4: return {t, p, val};
    default: return {val, p, q};
  }
}

}  // namespace

double displacement_hue(double dx, double dy) {
  // Screen "up" is -y. Rotate the vector into the first quadrant with exact
  // swaps/negations so hue is equivariant under quarter turns.
  double u = dx, v = -dy;
  int quarter = 0;
  while (!(u > 0.0 && v >= 0.0)) {
    if (u == 0.0 && v == 0.0) return 0.0;
    const double nu = v, nv = -u;  // rotate by -90 degrees
    u = nu;
    v = nv;
    ++quarter;
  }
  const double base = std::atan2(v, u) * 180.0 / std::numbers::pi;
  return std::fmod(base + 90.0 * quarter, 360.0);
}

ImageGrid visualize_field(const DisplacementField& field, std::optional<double> max_magnitude) {
  if (!field.all_finite()) throw ValidationError("visualize_field: field is not finite");
  double scale = 0.0;
  if (max_magnitude) {
    if (!(*max_magnitude > 0.0)) {
      throw ValidationError("visualize_field: max_magnitude must be positive");
    }
    scale = *max_magnitude;
  } else {
    scale = field.max_magnitude();
  }
  ImageGrid out(field.width(), field.height(), 3, 1.0);
  if (scale == 0.0) return out;
  for (int y = 0; y < field.height(); ++y) {
    for (int x = 0; x < field.width(); ++x) {
      const Displacement d = field.at(x, y);
      const double sat = std::min(std::hypot(d.dx, d.dy) / scale, 1.0);
      if (sat == 0.0) continue;
      const auto rgb = hsv_to_rgb(displacement_hue(d.dx, d.dy), sat, 1.0);
      for (int c = 0; c < 3; ++c) out(x, y, c) = std::clamp(rgb[c], 0.0, 1.0);
    }
  }
  return out;
}

const std::array<std::array<std::uint8_t, 3>, 256>& warm_cool_colormap() { return kWarmCool; }

ImageGrid visualize_scalar(const FloatGrid& grid) {
  const auto [lo_it, hi_it] = std::minmax_element(grid.values().begin(), grid.values().end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  ImageGrid out(grid.width(), grid.height(), 3, 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::size_t idx = 128;
    if (hi > lo) {
      const double t = (grid[i] - lo) / (hi - lo);
      idx = static_cast<std::size_t>(std::lround(std::clamp(t, 0.0, 1.0) * 255.0));
    }
    const auto& rgb = kWarmCool[idx];
    const int x = static_cast<int>(i % static_cast<std::size_t>(grid.width()));
    const int y = static_cast<int>(i / static_cast<std::size_t>(grid.width()));
    for (int c = 0; c < 3; ++c) out(x, y, c) = rgb[c] / 255.0;
  }
  return out;
}

}  // namespace dragfield
