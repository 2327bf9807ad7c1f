#include "dragfield/image_io.hpp"

#include <png.h>

#include <cmath>
#include <csetjmp>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

namespace dragfield {
namespace {

struct ReadCursor {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;
};

void read_from_memory(png_structp png, png_bytep out, png_size_t length) {
  auto* cur = static_cast<ReadCursor*>(png_get_io_ptr(png));
  if (cur->pos + length > cur->bytes.size()) png_error(png, "truncated PNG data");
  std::copy_n(cur->bytes.data() + cur->pos, length, out);
  cur->pos += length;
}

void write_to_string(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::string*>(png_get_io_ptr(png));
  out->append(reinterpret_cast<const char*>(data), length);
}

void flush_noop(png_structp) {}

struct PngLayout {
  png_uint_32 width;
  png_uint_32 height;
  int color_type;
};

void on_png_error(png_structp png, png_const_charp msg) {
  auto* message = static_cast<std::string*>(png_get_error_ptr(png));
  if (message) *message = msg;
  png_longjmp(png, 1);
}

void on_png_warning(png_structp, png_const_charp) {}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

ImageGrid decode_png(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
    throw IoError("not a PNG file");
  }
  std::string message;
  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, &message, on_png_error, on_png_warning);
  if (!png) throw IoError("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("png_create_info_struct failed");
  }

  ReadCursor cursor{bytes, 0};
  std::vector<png_bytep> rows;
  std::vector<std::uint8_t> pixels;
  png_uint_32 width = 0, height = 0;
  int bit_depth = 0, color_type = 0, channels = 0;
  bool unsupported = false;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("PNG decode failed: " + message);
  }
  png_set_read_fn(png, &cursor, read_from_memory);
  png_read_info(png, info);
  png_get_IHDR(png, info, &width, &height, &bit_depth, &color_type, nullptr, nullptr, nullptr);

  switch (color_type) {
    case PNG_COLOR_TYPE_GRAY: channels = 1; break;
    case PNG_COLOR_TYPE_RGB: channels = 3; break;
    case PNG_COLOR_TYPE_RGB_ALPHA: channels = 4; break;
    default: unsupported = true; break;
  }
  if (bit_depth != 8 && bit_depth != 16) unsupported = true;
  if (unsupported) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw IoError("unsupported PNG: bit depth " + std::to_string(bit_depth) + ", color type " +
                  std::to_string(color_type) + " (need 8/16-bit gray, RGB or RGBA)");
  }
  if (bit_depth == 16) png_set_swap(png);  // host little-endian order for uint16 reads
  png_read_update_info(png, info);

  const std::size_t row_bytes = png_get_rowbytes(png, info);
  pixels.resize(row_bytes * height);
  rows.resize(height);
  for (png_uint_32 y = 0; y < height; ++y) rows[y] = pixels.data() + y * row_bytes;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  const std::size_t count = static_cast<std::size_t>(width) * height * channels;
  std::vector<double> values(count);
  if (bit_depth == 8) {
    for (std::size_t i = 0; i < count; ++i) values[i] = pixels[i] / 255.0;
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      std::uint16_t v = 0;
      std::memcpy(&v, pixels.data() + 2 * i, 2);
      values[i] = v / 65535.0;
    }
  }
  return ImageGrid(static_cast<int>(width), static_cast<int>(height), channels,
                   std::move(values));
}

ImageGrid load_image(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  try {
    return decode_png(bytes);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

std::string encode_png(const ImageGrid& image) {
  PngLayout layout{static_cast<png_uint_32>(image.width()),
                   static_cast<png_uint_32>(image.height()),
                   image.channels() == 4   ? PNG_COLOR_TYPE_RGB_ALPHA
                   : image.channels() == 3 ? PNG_COLOR_TYPE_RGB
                                           : PNG_COLOR_TYPE_GRAY};

  const std::size_t row_bytes =
      static_cast<std::size_t>(image.width()) * static_cast<std::size_t>(image.channels());
  std::vector<std::uint8_t> pixels(row_bytes * image.height());
  auto values = image.values();
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    pixels[i] = static_cast<std::uint8_t>(std::lround(values[i] * 255.0));
  }
  std::vector<png_bytep> rows(image.height());
  for (int y = 0; y < image.height(); ++y) rows[y] = pixels.data() + y * row_bytes;

  std::string out;
  std::string message;
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, &message, on_png_error, on_png_warning);
  if (!png) throw IoError("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("png_create_info_struct failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("PNG encode failed: " + message);
  }
  png_set_write_fn(png, &out, write_to_string, flush_noop);
  png_set_IHDR(png, info, layout.width, layout.height, 8, layout.color_type, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

void save_image(const ImageGrid& image, const std::filesystem::path& path) {
  const std::string bytes = encode_png(image);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

Mask mask_from_image(const ImageGrid& image) {
  Mask mask(image.width(), image.height(), 0);
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      mask.set(x, y, std::lround(image(x, y, 0) * 255.0) >= 128);
    }
  }
  return mask;
}

Mask load_mask(const std::filesystem::path& path) { return mask_from_image(load_image(path)); }

ImageGrid mask_to_image(const Mask& mask) {
  ImageGrid image(mask.width(), mask.height(), 1, 0.0);
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) image(x, y, 0) = mask.test(x, y) ? 1.0 : 0.0;
  }
  return image;
}

}  // namespace dragfield
