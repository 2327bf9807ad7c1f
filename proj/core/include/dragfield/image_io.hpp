#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "dragfield/grid.hpp"

namespace dragfield {

/// Decodes an 8- or 16-bit gray, RGB or RGBA PNG; channel values are scaled
/// to [0,1]. Throws IoError on unreadable data or unsupported formats.
ImageGrid load_image(const std::filesystem::path& path);
ImageGrid decode_png(std::span<const std::uint8_t> bytes);

/// Encodes as 8-bit PNG (values rounded to the nearest of 256 levels).
std::string encode_png(const ImageGrid& image);
void save_image(const ImageGrid& image, const std::filesystem::path& path);

/// Masks are gray PNGs thresholded at 128 (on the 8-bit scale). For color
/// inputs the first channel is used.
Mask mask_from_image(const ImageGrid& image);
Mask load_mask(const std::filesystem::path& path);
ImageGrid mask_to_image(const Mask& mask);

}  // namespace dragfield
