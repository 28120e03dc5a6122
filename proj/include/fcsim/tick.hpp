#pragma once

#include <cstdint>

namespace fcsim {

// One simulation tick is half a millisecond of simulated time.
inline constexpr double tick_ms = 0.5;
inline constexpr double ticks_per_second = 2000.0;

using tick_t = std::uint64_t;

inline constexpr double ticks_to_ms(tick_t ticks) {
  return static_cast<double>(ticks) * tick_ms;
}

// Counts update cycles; simulated time is tick_index * 0.5 ms exactly.
struct tick_clock {
  tick_t tick_index = 0;

  void advance() { ++tick_index; }
  double time_ms() const { return ticks_to_ms(tick_index); }
};

} // namespace fcsim
