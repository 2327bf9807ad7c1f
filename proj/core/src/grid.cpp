#include "dragfield/grid.hpp"

#include <algorithm>
#include <cmath>

namespace dragfield {

std::size_t Mask::count() const {
  return static_cast<std::size_t>(
      std::count_if(values().begin(), values().end(), [](std::uint8_t v) { return v != 0; }));
}

bool Mask::any() const {
  return std::any_of(values().begin(), values().end(), [](std::uint8_t v) { return v != 0; });
}

namespace {

void check_raster_dims(int width, int height, int channels) {
  if (width <= 0 || height <= 0) throw ValidationError("raster dimensions must be positive");
  if (channels <= 0) throw ValidationError("raster needs at least one channel");
}

}  // namespace

ChannelGrid::ChannelGrid(int width, int height, int channels, double fill)
    : width_(width), height_(height), channels_(channels) {
  check_raster_dims(width, height, channels);
  values_.assign(cell_count() * static_cast<std::size_t>(channels), fill);
}

ChannelGrid::ChannelGrid(int width, int height, int channels, std::vector<double> values)
    : width_(width), height_(height), channels_(channels), values_(std::move(values)) {
  check_raster_dims(width, height, channels);
  if (values_.size() != cell_count() * static_cast<std::size_t>(channels)) {
    throw ValidationError("raster value count does not match its dimensions");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ValidationError("raster contains a non-finite value");
  }
}

ImageGrid::ImageGrid(int width, int height, int channels, double fill)
    : ChannelGrid(width, height, channels, fill) {
  validate();
}

ImageGrid::ImageGrid(int width, int height, int channels, std::vector<double> values)
    : ChannelGrid(width, height, channels, std::move(values)) {
  validate();
}

ImageGrid::ImageGrid(ChannelGrid raster) : ChannelGrid(std::move(raster)) { validate(); }

ImageGrid ImageGrid::clamped(ChannelGrid raster) {
  for (double& v : raster.values()) v = std::clamp(v, 0.0, 1.0);
  return ImageGrid(std::move(raster));
}

void ImageGrid::validate() const {
  if (channels() != 1 && channels() != 3 && channels() != 4) {
    throw ValidationError("image must have 1, 3 or 4 channels");
  }
  for (double v : values()) {
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("image values must lie in [0,1]");
  }
}

DisplacementField::DisplacementField(FloatGrid dx, FloatGrid dy)
    : dx_(std::move(dx)), dy_(std::move(dy)) {
  if (!dx_.same_shape(dy_)) throw ValidationError("field components differ in shape");
}

bool DisplacementField::all_finite() const {
  auto finite = [](double v) { return std::isfinite(v); };
  return std::all_of(dx_.values().begin(), dx_.values().end(), finite) &&
         std::all_of(dy_.values().begin(), dy_.values().end(), finite);
}

double DisplacementField::max_magnitude() const {
  double best = 0.0;
  for (std::size_t i = 0; i < dx_.size(); ++i) best = std::max(best, std::hypot(dx_[i], dy_[i]));
  return best;
}

}  // namespace dragfield
