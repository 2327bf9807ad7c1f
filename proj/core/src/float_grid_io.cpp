#include "dragfield/float_grid_io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <vector>

namespace dragfield {
namespace {

static_assert(std::endian::native == std::endian::little, "FGRID codec assumes little-endian");

void put_u32(std::string& out, std::uint32_t v) {
  char buf[4];
  std::memcpy(buf, &v, 4);
  out.append(buf, 4);
}

std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t at) {
  std::uint32_t v = 0;
  std::memcpy(&v, bytes.data() + at, 4);
  return v;
}

}  // namespace

std::string encode_float_grid(const FloatGrid& grid) {
  std::string out;
  out.reserve(kFloatGridHeaderSize + grid.size() * 4);
  out.append(kFloatGridMagic, 4);
  put_u32(out, static_cast<std::uint32_t>(grid.width()));
  put_u32(out, static_cast<std::uint32_t>(grid.height()));
  for (double v : grid.values()) {
    const float f = static_cast<float>(v);
    if (!std::isfinite(f)) throw ValidationError("value does not fit in a 32-bit float");
    char buf[4];
    std::memcpy(buf, &f, 4);
    out.append(buf, 4);
  }
  return out;
}

FloatGrid decode_float_grid(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kFloatGridHeaderSize ||
      std::memcmp(bytes.data(), kFloatGridMagic, 4) != 0) {
    throw IoError("FGRID: bad magic");
  }
  const std::uint32_t width = get_u32(bytes, 4);
  const std::uint32_t height = get_u32(bytes, 8);
  const std::uint64_t cells = static_cast<std::uint64_t>(width) * height;
  if (width == 0 || height == 0 ||
      width > static_cast<std::uint32_t>(std::numeric_limits<int>::max()) ||
      height > static_cast<std::uint32_t>(std::numeric_limits<int>::max())) {
    throw IoError("FGRID: invalid dimensions");
  }
  if (bytes.size() - kFloatGridHeaderSize != cells * 4) {
    throw IoError("FGRID: header says " + std::to_string(width) + "x" + std::to_string(height) +
                  " but payload holds " +
                  std::to_string((bytes.size() - kFloatGridHeaderSize) / 4.0) + " floats");
  }
  std::vector<double> values(cells);
  for (std::uint64_t i = 0; i < cells; ++i) {
    float f = 0.0f;
    std::memcpy(&f, bytes.data() + kFloatGridHeaderSize + 4 * i, 4);
    if (!std::isfinite(f)) throw IoError("FGRID: non-finite payload value");
    values[i] = f;
  }
  return FloatGrid(static_cast<int>(width), static_cast<int>(height), std::move(values));
}

FloatGrid read_float_grid(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                        std::istreambuf_iterator<char>()};
  try {
    return decode_float_grid(bytes);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_float_grid(const FloatGrid& grid, const std::filesystem::path& path) {
  const std::string bytes = encode_float_grid(grid);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace dragfield
