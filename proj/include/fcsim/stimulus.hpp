#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "fcsim/detail/rng.hpp"
#include "fcsim/errors.hpp"
#include "fcsim/tick.hpp"

namespace fcsim {

// A periodic spike train on the tick grid: nominal spike k lands at
// start + phase + round(k / frequency), kept while it falls in
// [start_tick, stop_tick). Optional jitter displaces each spike by a
// seeded uniform offset in [-jitter, +jitter] ticks.
struct train_spec {
  tick_t start_tick = 0;
  tick_t stop_tick = 0; // exclusive
  double frequency_hz = 0.0;
  tick_t phase_ticks = 0;
  tick_t jitter_ticks = 0; // 0 keeps the train exactly periodic
};

// Strictly increasing tick list. Zero frequency or an empty window gives an
// empty train. Jittered spikes falling outside the window are dropped, and
// collisions collapse to one spike.
inline std::vector<tick_t> generate(const train_spec& spec, std::uint64_t seed = 0) {
  if (spec.frequency_hz < 0.0)
    throw config_error("generate", "frequency must be non-negative");
  if (spec.frequency_hz > ticks_per_second)
    throw config_error("generate", "frequency exceeds one spike per tick");

  std::vector<tick_t> ticks;
  if (spec.frequency_hz == 0.0 || spec.stop_tick <= spec.start_tick) return ticks;

  const double period_ticks = ticks_per_second / spec.frequency_hz;
  const tick_t base = spec.start_tick + spec.phase_ticks;
  for (std::uint64_t k = 0;; ++k) {
    const tick_t t =
        base + static_cast<tick_t>(std::llround(static_cast<double>(k) * period_ticks));
    if (t >= spec.stop_tick) break;
    ticks.push_back(t);
  }

  if (spec.jitter_ticks > 0 && !ticks.empty()) {
    std::vector<tick_t> jittered;
    jittered.reserve(ticks.size());
    for (std::size_t k = 0; k < ticks.size(); ++k) {
      const std::int64_t offset =
          detail::symmetric(detail::mix(seed, k), spec.jitter_ticks);
      const std::int64_t t = static_cast<std::int64_t>(ticks[k]) + offset;
      if (t < static_cast<std::int64_t>(spec.start_tick)) continue;
      if (t >= static_cast<std::int64_t>(spec.stop_tick)) continue;
      jittered.push_back(static_cast<tick_t>(t));
    }
    std::sort(jittered.begin(), jittered.end());
    jittered.erase(std::unique(jittered.begin(), jittered.end()), jittered.end());
    ticks = std::move(jittered);
  }
  return ticks;
}

} // namespace fcsim
