#include "dragfield/plane_field.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "checks.hpp"
#include "dragfield/geometry.hpp"

namespace dragfield {
namespace {

void require_inside(Point handle, const Circle& circle) {
  if (!(circle.radius > 0.0) || !(norm(handle - circle.center) < circle.radius)) {
    throw ValidationError("ray_circle_extent: handle is on or outside the circle");
  }
}

}  // namespace

double handle_extent(Point handle, const Circle& circle) {
  constexpr double k = kCellHalfDiagonal;
  constexpr std::array<Point, 8> dirs = {
      Point{1, 0}, Point{-1, 0}, Point{0, 1}, Point{0, -1},
      Point{k, k}, Point{k, -k}, Point{-k, k}, Point{-k, -k}};
  double best = ray_circle_distance(handle, circle, dirs[0]);
  for (std::size_t i = 1; i < dirs.size(); ++i) {
    best = std::min(best, ray_circle_distance(handle, circle, dirs[i]));
  }
  return best;
}

void PlaneParams::validate() const {
  if (!std::isfinite(beta) || beta <= 0.0) throw ValidationError("beta must be > 0");
}

double ray_circle_distance(Point handle, const Circle& circle, Point dir) {
  // |h + t v - O|^2 = r^2 with c = O - h:  t = v.c + sqrt((v.c)^2 - (|c|^2 - r^2)).
  const Point c = circle.center - handle;
  const double b = dot(dir, c);
  const double disc = b * b - (squared_norm(c) - circle.radius * circle.radius);
  return b + std::sqrt(std::max(disc, 0.0));
}

FloatGrid ray_circle_extent(Point handle, const Circle& circle, const Mask& mask) {
  require_inside(handle, circle);
  FloatGrid out(mask.width(), mask.height(), 0.0);
  const double at_handle = handle_extent(handle, circle);
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      const Point q{static_cast<double>(x), static_cast<double>(y)};
      const Point offset = q - handle;
      const double len = norm(offset);
      out(x, y) = len == 0.0 ? at_handle
                             : ray_circle_distance(handle, circle, (1.0 / len) * offset);
    }
  }
  return out;
}

double plane_weight(double distance, double extent, double beta) {
  if (distance == 0.0) return 1.0;
  return std::max(0.0, 1.0 - std::pow(distance / extent, beta));
}

DisplacementField plane_field(const Mask& mask, const DragPair& pair, const PlaneParams& params,
                              const Circle& circle) {
  params.validate();
  detail::require_handle_in_mask(mask, pair.handle, "plane_field");
  const FloatGrid extent = ray_circle_extent(pair.handle, circle, mask);
  const FloatGrid distance = distance_map(mask, pair.handle);
  const Point d = pair.drag();
  DisplacementField out(mask.width(), mask.height());
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) continue;
    const double w = plane_weight(distance[i], extent[i], params.beta);
    out.set(i, {w * d.x, w * d.y});
  }
  return out;
}

}  // namespace dragfield
