#include "mvis/png_io.hpp"

#include <png.h>

#include <cstdio>
#include <memory>

#include "mvis/errors.hpp"

namespace mvis {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

GrayImage read_gray_png(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path))
    throw MissingView("no such file: " + path.string());

  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw MissingView("cannot open: " + path.string());

  png_structp png =
      png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw IoError("png_create_info_struct failed");
  }

  std::vector<png_bytep> row_ptrs;
  std::vector<png_byte> raw;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw EmptyLabelImage("corrupt PNG: " + path.string());
  }

  png_init_io(png, fp.get());
  png_read_info(png, info);

  const int color_type = png_get_color_type(png, info);
  const int bit_depth = png_get_bit_depth(png, info);
  const int width = static_cast<int>(png_get_image_width(png, info));
  const int height = static_cast<int>(png_get_image_height(png, info));

  if (color_type != PNG_COLOR_TYPE_GRAY || (bit_depth != 8 && bit_depth != 16) ||
      width <= 0 || height <= 0) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw EmptyLabelImage("expected an 8- or 16-bit grayscale PNG: " +
                          path.string());
  }

  const std::size_t stride = static_cast<std::size_t>(width) * (bit_depth / 8);
  raw.assign(stride * height, 0);
  row_ptrs.resize(height);
  for (int y = 0; y < height; ++y) row_ptrs[y] = raw.data() + stride * y;
  png_read_image(png, row_ptrs.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  GrayImage img;
  img.width = width;
  img.height = height;
  img.bit_depth = bit_depth;
  img.pixels.resize(static_cast<std::size_t>(width) * height);
  if (bit_depth == 8) {
    for (std::size_t i = 0; i < img.pixels.size(); ++i) img.pixels[i] = raw[i];
  } else {
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
      // PNG stores 16-bit samples big-endian
      img.pixels[i] = static_cast<std::uint16_t>((raw[2 * i] << 8) |
                                                 raw[2 * i + 1]);
    }
  }
  return img;
}

void write_gray_png(const std::filesystem::path& path, const GrayImage& image) {
  if (image.width <= 0 || image.height <= 0 ||
      image.pixels.size() !=
          static_cast<std::size_t>(image.width) * image.height)
    throw IoError("inconsistent image buffer");
  if (image.bit_depth != 8 && image.bit_depth != 16)
    throw IoError("bit_depth must be 8 or 16");

  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw IoError("cannot write: " + path.string());

  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("png_create_info_struct failed");
  }

  std::vector<png_bytep> row_ptrs;
  std::vector<png_byte> raw;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("PNG encode failed: " + path.string());
  }

  png_init_io(png, fp.get());
  png_set_IHDR(png, info, image.width, image.height, image.bit_depth,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  const std::size_t stride =
      static_cast<std::size_t>(image.width) * (image.bit_depth / 8);
  raw.assign(stride * image.height, 0);
  for (std::size_t i = 0; i < image.pixels.size(); ++i) {
    if (image.bit_depth == 8) {
      raw[i] = static_cast<png_byte>(image.pixels[i] & 0xff);
    } else {
      raw[2 * i] = static_cast<png_byte>(image.pixels[i] >> 8);
      raw[2 * i + 1] = static_cast<png_byte>(image.pixels[i] & 0xff);
    }
  }
  row_ptrs.resize(image.height);
  for (int y = 0; y < image.height; ++y) row_ptrs[y] = raw.data() + stride * y;
  png_write_image(png, row_ptrs.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace mvis
