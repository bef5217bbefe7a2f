#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace mvis {

/// Grayscale image buffer, row-major, 16-bit values. 8-bit files are
/// widened on load; `bit_depth` records what was in the file.
struct GrayImage {
  int width = 0;
  int height = 0;
  int bit_depth = 16;
  std::vector<std::uint16_t> pixels;

  std::uint16_t at(int x, int y) const {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }
  std::uint16_t& at(int x, int y) {
    return pixels[static_cast<std::size_t>(y) * width + x];
  }
};

/// Throws MissingView if the file does not exist, EmptyLabelImage if it
/// cannot be decoded as a grayscale PNG.
GrayImage read_gray_png(const std::filesystem::path& path);

/// bit_depth must be 8 or 16; 8-bit writes truncate values to the low byte.
void write_gray_png(const std::filesystem::path& path, const GrayImage& image);

}  // namespace mvis
