#pragma once

#include <cstdint>
#include <initializer_list>

namespace mvis {

// Counter-based RNG. Every stream is a pure function of (key, counter), so
// seeds can be derived per task and the draw order never depends on thread
// scheduling. Mixing is the splitmix64 finalizer.

namespace detail {
inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}
}  // namespace detail

/// Fold a list of integers into a single 64-bit key.
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t key = 0x243f6a8885a308d3ULL;  // arbitrary nonzero start
  for (std::uint64_t p : parts) {
    key = detail::mix64(key + detail::kGolden + p);
  }
  return key;
}

template <class... Ints>
std::uint64_t derive_seed(std::uint64_t first, Ints... rest) {
  return derive_seed({first, static_cast<std::uint64_t>(rest)...});
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64() {
    return detail::mix64(key_ + detail::kGolden * ++counter_);
  }

  /// Uniform double in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in (0, hi].
  double next_open_closed(double hi) { return hi * (1.0 - next_double()); }

  /// Uniform integer in [0, n). Rejection sampling keeps it unbiased.
  std::uint64_t next_below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t r;
    do {
      r = next_u64();
    } while (r >= limit);
    return r % n;
  }

  bool next_bool() { return (next_u64() & 1u) != 0; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// A single keyed draw in [0, 1); used where values must be a pure function
/// of their coordinates (e.g. factorization restarts keyed per matrix cell).
inline double keyed_unit_double(std::uint64_t key) {
  return static_cast<double>(detail::mix64(key) >> 11) * 0x1.0p-53;
}

}  // namespace mvis
