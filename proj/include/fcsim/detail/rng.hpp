#pragma once

#include <cstdint>

namespace fcsim::detail {

// splitmix64 finalizer. Counter-based use (mix(seed, n)) gives each draw an
// independent, platform-stable value; std::uniform_int_distribution is
// implementation-defined and would break byte-identical replays.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t mix(std::uint64_t seed, std::uint64_t counter) {
  return splitmix64(seed ^ splitmix64(counter));
}

// Uniform draw in [0, n) without modulo bias for the n we care about
// (n << 2^64); the bias term is below 2^-50 for n < 2^14.
inline std::uint64_t bounded(std::uint64_t value, std::uint64_t n) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(value) * n) >> 64);
}

// Signed uniform draw in [-magnitude, +magnitude].
inline std::int64_t symmetric(std::uint64_t value, std::uint64_t magnitude) {
  const std::uint64_t span = 2 * magnitude + 1;
  return static_cast<std::int64_t>(bounded(value, span)) -
         static_cast<std::int64_t>(magnitude);
}

} // namespace fcsim::detail
