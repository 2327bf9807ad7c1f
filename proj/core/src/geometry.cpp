#include "dragfield/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace dragfield {
namespace {

constexpr double kContainEps = 1e-9;

bool contains(const Circle& c, Point p) {
  return norm(p - c.center) <= c.radius + kContainEps * std::max(1.0, c.radius);
}

Circle circle_from(Point a, Point b) {
  Point center{(a.x + b.x) / 2.0, (a.y + b.y) / 2.0};
  return {center, norm(a - b) / 2.0};
}

Circle circle_from(Point a, Point b, Point c) {
  const double bx = b.x - a.x, by = b.y - a.y;
  const double cx = c.x - a.x, cy = c.y - a.y;
  const double d = 2.0 * (bx * cy - by * cx);
  if (std::abs(d) < 1e-12) {
    // Collinear: the widest pair spans the other point.
    Circle best = circle_from(a, b);
    for (const Circle& cand : {circle_from(a, c), circle_from(b, c)}) {
      if (cand.radius > best.radius) best = cand;
    }
    return best;
  }
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  Point center{a.x + (cy * b2 - by * c2) / d, a.y + (bx * c2 - cx * b2) / d};
  const double r = std::max({norm(a - center), norm(b - center), norm(c - center)});
  return {center, r};
}

// Iterative Welzl; expected linear time on shuffled input.
Circle minimum_enclosing_circle(std::vector<Point> pts) {
  std::mt19937 rng(0x5eed);
  std::shuffle(pts.begin(), pts.end(), rng);
  Circle c{pts.front(), 0.0};
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (contains(c, pts[i])) continue;
    c = {pts[i], 0.0};
    for (std::size_t j = 0; j < i; ++j) {
      if (contains(c, pts[j])) continue;
      c = circle_from(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k) {
        if (!contains(c, pts[k])) c = circle_from(pts[i], pts[j], pts[k]);
      }
    }
  }
  return c;
}

// The hull of the true cell centers is spanned by each row's extreme cells.
std::vector<Point> row_extremes(const Mask& mask) {
  std::vector<Point> pts;
  for (int y = 0; y < mask.height(); ++y) {
    int lo = -1, hi = -1;
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.test(x, y)) {
        if (lo < 0) lo = x;
        hi = x;
      }
    }
    if (lo < 0) continue;
    pts.push_back({static_cast<double>(lo), static_cast<double>(y)});
    if (hi != lo) pts.push_back({static_cast<double>(hi), static_cast<double>(y)});
  }
  return pts;
}

}  // namespace

Circle enclosing_circle(const Mask& mask) {
  std::vector<Point> pts = row_extremes(mask);
  if (pts.empty()) throw ValidationError("enclosing_circle: mask is empty");
  Circle c = minimum_enclosing_circle(std::move(pts));
  c.radius = std::max(c.radius, kMinCircleRadius);
  return c;
}

Circle influence_circle(const Mask& region, Point handle) {
  std::vector<Point> pts = row_extremes(region);
  pts.push_back(handle);
  Circle c = minimum_enclosing_circle(std::move(pts));
  c.radius = std::max(c.radius, kMinCircleRadius) + kCellHalfDiagonal;
  return c;
}

FloatGrid distance_map(const Mask& mask, Point p) {
  FloatGrid out(mask.width(), mask.height(), 0.0);
  for (int y = 0; y < out.height(); ++y) {
    const double ry = static_cast<double>(y) - p.y;
    for (int x = 0; x < out.width(); ++x) {
      out(x, y) = std::hypot(static_cast<double>(x) - p.x, ry);
    }
  }
  return out;
}

FloatGrid invert_disparity(const FloatGrid& grid, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw ValidationError("invert_disparity: eps must be positive");
  }
  FloatGrid out(grid.width(), grid.height(), 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.0) throw ValidationError("invert_disparity: negative input value");
    out[i] = 1.0 / (grid[i] + eps);
  }
  return out;
}

double sample_bilinear(const FloatGrid& grid, Point p) {
  const double max_x = grid.width() - 1;
  const double max_y = grid.height() - 1;
  const double x = std::clamp(p.x, 0.0, max_x);
  const double y = std::clamp(p.y, 0.0, max_y);
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const int x1 = std::min(x0 + 1, grid.width() - 1);
  const int y1 = std::min(y0 + 1, grid.height() - 1);
  const double fx = x - x0;
  const double fy = y - y0;
  if (fx == 0.0 && fy == 0.0) return grid(x0, y0);
  const double top = grid(x0, y0) * (1.0 - fx) + grid(x1, y0) * fx;
  const double bottom = grid(x0, y1) * (1.0 - fx) + grid(x1, y1) * fx;
  return top * (1.0 - fy) + bottom * fy;
}

}  // namespace dragfield
