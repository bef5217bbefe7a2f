#pragma once

#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include "mvis/errors.hpp"

namespace mvis {

/// A set of integer pixel coordinates inside a [0,width) x [0,height) image,
/// stored as a dense bitmap. Intersection counts and emptiness tests are
/// word-parallel, which is what the band/region overlap math leans on.
class PixelSet {
 public:
  PixelSet() = default;
  PixelSet(int width, int height) : width_(width), height_(height) {
    if (width <= 0 || height <= 0)
      throw DimensionMismatch("PixelSet dimensions must be positive");
    words_.assign((static_cast<std::size_t>(width) * height + 63) / 64, 0);
  }

  int width() const { return width_; }
  int height() const { return height_; }

  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width_ && y >= 0 && y < height_;
  }

  void insert(int x, int y) {
    if (!in_bounds(x, y))
      throw DimensionMismatch("pixel outside image bounds");
    const std::size_t idx = index(x, y);
    words_[idx >> 6] |= std::uint64_t{1} << (idx & 63);
  }

  void erase(int x, int y) {
    if (!in_bounds(x, y)) return;
    const std::size_t idx = index(x, y);
    words_[idx >> 6] &= ~(std::uint64_t{1} << (idx & 63));
  }

  bool contains(int x, int y) const {
    if (!in_bounds(x, y)) return false;
    const std::size_t idx = index(x, y);
    return (words_[idx >> 6] >> (idx & 63)) & 1u;
  }

  bool contains_index(std::size_t idx) const {
    return (words_[idx >> 6] >> (idx & 63)) & 1u;
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += std::popcount(w);
    return n;
  }

  bool empty() const {
    for (std::uint64_t w : words_)
      if (w) return false;
    return true;
  }

  std::size_t intersection_count(const PixelSet& other) const {
    check_same_size(other);
    std::size_t n = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      n += std::popcount(words_[i] & other.words_[i]);
    return n;
  }

  bool intersects(const PixelSet& other) const {
    check_same_size(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & other.words_[i]) return true;
    return false;
  }

  std::size_t union_count(const PixelSet& other) const {
    check_same_size(other);
    std::size_t n = 0;
    for (std::size_t i = 0; i < words_.size(); ++i)
      n += std::popcount(words_[i] | other.words_[i]);
    return n;
  }

  PixelSet& unite(const PixelSet& other) {
    check_same_size(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
      words_[i] |= other.words_[i];
    return *this;
  }

  /// Row-major list of set pixels.
  std::vector<std::pair<int, int>> pixels() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(count());
    for_each([&](int x, int y) { out.emplace_back(x, y); });
    return out;
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        const std::size_t idx = (w << 6) + b;
        fn(static_cast<int>(idx % width_), static_cast<int>(idx / width_));
        bits &= bits - 1;
      }
    }
  }

  bool operator==(const PixelSet& other) const = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  void check_same_size(const PixelSet& other) const {
    if (width_ != other.width_ || height_ != other.height_)
      throw DimensionMismatch("pixel sets have different image sizes");
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace mvis
