#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "dragfield/error.hpp"

namespace dragfield {

// Coordinates: x rightward, y downward, cell centers at integer coordinates,
// origin at the center of the top-left cell.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double squared_norm(Point p) { return p.x * p.x + p.y * p.y; }

struct Circle {
  Point center;
  double radius = 0.0;
};

/// Integer cell index of a continuous coordinate (round half away from zero).
struct Cell {
  int x = 0;
  int y = 0;
};

inline Cell cell_of(Point p) {
  return {static_cast<int>(std::lround(p.x)), static_cast<int>(std::lround(p.y))};
}

/// Dense row-major 2-D array. Floating-point grids reject non-finite values
/// when constructed from a value vector.
template <class T>
class Grid {
 public:
  using value_type = T;

  Grid() = default;

  Grid(int width, int height, T fill = T{}) : width_(width), height_(height) {
    check_dims(width, height);
    values_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }

  Grid(int width, int height, std::vector<T> values)
      : width_(width), height_(height), values_(std::move(values)) {
    check_dims(width, height);
    if (values_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
      throw ValidationError("grid value count " + std::to_string(values_.size()) +
                            " does not match " + std::to_string(width) + "x" +
                            std::to_string(height));
    }
    if constexpr (std::is_floating_point_v<T>) {
      for (T v : values_) {
        if (!std::isfinite(v)) throw ValidationError("grid contains a non-finite value");
      }
    }
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }
  bool contains(Cell c) const { return contains(c.x, c.y); }

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  const T& operator()(int x, int y) const { return values_[index(x, y)]; }
  T& operator()(int x, int y) { return values_[index(x, y)]; }
  const T& operator[](std::size_t i) const { return values_[i]; }
  T& operator[](std::size_t i) { return values_[i]; }

  std::span<const T> values() const { return values_; }
  std::span<T> values() { return values_; }

  template <class U>
  bool same_shape(const Grid<U>& other) const {
    return width_ == other.width() && height_ == other.height();
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  static void check_dims(int width, int height) {
    if (width <= 0 || height <= 0) {
      throw ValidationError("grid dimensions must be positive, got " + std::to_string(width) +
                            "x" + std::to_string(height));
    }
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> values_;
};

/// Scalar field: depth maps, distance maps, propagation extents, fusion weights.
using FloatGrid = Grid<double>;

/// Binary cell mask stored as 0/1 bytes.
class Mask : public Grid<std::uint8_t> {
 public:
  using Grid<std::uint8_t>::Grid;
  Mask() = default;

  bool test(int x, int y) const { return (*this)(x, y) != 0; }
  bool test(Cell c) const { return contains(c) && test(c.x, c.y); }
  void set(int x, int y, bool on = true) { (*this)(x, y) = on ? 1 : 0; }
  std::size_t count() const;
  bool any() const;
};

/// Multi-channel raster with interleaved channels. Values are unconstrained
/// (finite); this is the type warping and the stochastic update operate on.
class ChannelGrid {
 public:
  ChannelGrid() = default;
  ChannelGrid(int width, int height, int channels, double fill = 0.0);
  ChannelGrid(int width, int height, int channels, std::vector<double> values);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  std::size_t cell_count() const {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  std::size_t offset(int x, int y) const {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) *
           static_cast<std::size_t>(channels_);
  }
  double operator()(int x, int y, int c) const { return values_[offset(x, y) + c]; }
  double& operator()(int x, int y, int c) { return values_[offset(x, y) + c]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  template <class U>
  bool same_shape(const Grid<U>& other) const {
    return width_ == other.width() && height_ == other.height();
  }
  bool same_shape(const ChannelGrid& other) const {
    return width_ == other.width_ && height_ == other.height_ && channels_ == other.channels_;
  }

  friend bool operator==(const ChannelGrid&, const ChannelGrid&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<double> values_;
};

/// Image content: 1, 3 or 4 channels with every value in [0,1].
class ImageGrid : public ChannelGrid {
 public:
  ImageGrid() = default;
  ImageGrid(int width, int height, int channels, double fill = 0.0);
  ImageGrid(int width, int height, int channels, std::vector<double> values);
  explicit ImageGrid(ChannelGrid raster);

  /// Clamps every value into [0,1].
  static ImageGrid clamped(ChannelGrid raster);

 private:
  void validate() const;
};

struct Displacement {
  double dx = 0.0;
  double dy = 0.0;
};

/// Per-cell shift vectors in cells; dx rightward, dy downward.
class DisplacementField {
 public:
  DisplacementField() = default;
  DisplacementField(int width, int height) : dx_(width, height, 0.0), dy_(width, height, 0.0) {}
  DisplacementField(FloatGrid dx, FloatGrid dy);

  int width() const { return dx_.width(); }
  int height() const { return dx_.height(); }

  Displacement at(int x, int y) const { return {dx_(x, y), dy_(x, y)}; }
  Displacement at(std::size_t i) const { return {dx_[i], dy_[i]}; }
  void set(int x, int y, Displacement d) {
    dx_(x, y) = d.dx;
    dy_(x, y) = d.dy;
  }
  void set(std::size_t i, Displacement d) {
    dx_[i] = d.dx;
    dy_[i] = d.dy;
  }

  const FloatGrid& dx() const { return dx_; }
  const FloatGrid& dy() const { return dy_; }

  template <class U>
  bool same_shape(const Grid<U>& other) const {
    return dx_.same_shape(other);
  }
  bool same_shape(const DisplacementField& other) const { return dx_.same_shape(other.dx_); }

  bool all_finite() const;
  double max_magnitude() const;

  friend bool operator==(const DisplacementField&, const DisplacementField&) = default;

 private:
  FloatGrid dx_;
  FloatGrid dy_;
};

}  // namespace dragfield
