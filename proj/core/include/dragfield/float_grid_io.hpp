#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

#include "dragfield/grid.hpp"

namespace dragfield {

// FGRID layout: "FGRD", u32 width, u32 height (little-endian), then
// width*height little-endian IEEE-754 binary32 values, row-major from the
// top-left cell.
inline constexpr char kFloatGridMagic[4] = {'F', 'G', 'R', 'D'};
inline constexpr std::size_t kFloatGridHeaderSize = 12;

std::string encode_float_grid(const FloatGrid& grid);
FloatGrid decode_float_grid(std::span<const std::uint8_t> bytes);

FloatGrid read_float_grid(const std::filesystem::path& path);
void write_float_grid(const FloatGrid& grid, const std::filesystem::path& path);

}  // namespace dragfield
