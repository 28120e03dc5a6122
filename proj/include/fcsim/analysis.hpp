#pragma once

#include <cstddef>
#include <set>
#include <utility>
#include <vector>

#include "fcsim/errors.hpp"
#include "fcsim/tick.hpp"

namespace fcsim {

// Interspike intervals in ticks. Input must be strictly increasing.
inline std::vector<tick_t> isi(const std::vector<tick_t>& spikes) {
  std::vector<tick_t> out;
  if (spikes.size() < 2) return out;
  out.reserve(spikes.size() - 1);
  for (std::size_t i = 1; i < spikes.size(); ++i) {
    if (spikes[i] <= spikes[i - 1])
      throw config_error("isi", "spike ticks must be strictly increasing");
    out.push_back(spikes[i] - spikes[i - 1]);
  }
  return out;
}

// First-return map over consecutive intervals, in milliseconds. A perfectly
// periodic train collapses to a single point.
inline std::vector<std::pair<double, double>>
return_map(const std::vector<tick_t>& intervals) {
  std::vector<std::pair<double, double>> out;
  if (intervals.size() < 2) return out;
  out.reserve(intervals.size() - 1);
  for (std::size_t i = 1; i < intervals.size(); ++i)
    out.emplace_back(ticks_to_ms(intervals[i - 1]), ticks_to_ms(intervals[i]));
  return out;
}

// Distinct return-map points at tick resolution.
inline std::size_t distinct_return_points(const std::vector<tick_t>& intervals) {
  std::set<std::pair<tick_t, tick_t>> points;
  for (std::size_t i = 1; i < intervals.size(); ++i)
    points.emplace(intervals[i - 1], intervals[i]);
  return points.size();
}

// Firing rate per full window, in Hz. Only complete windows are scored;
// a trailing partial window is ignored.
inline std::vector<double> rate_per_window(const std::vector<tick_t>& spikes,
                                           tick_t total_ticks, tick_t window_ticks) {
  if (window_ticks == 0)
    throw config_error("rate_per_window", "window must be positive");
  const tick_t n_windows = total_ticks / window_ticks;
  std::vector<double> rates(static_cast<std::size_t>(n_windows), 0.0);
  for (tick_t t : spikes) {
    const tick_t w = t / window_ticks;
    if (w < n_windows) rates[static_cast<std::size_t>(w)] += 1.0;
  }
  const double per_count = ticks_per_second / static_cast<double>(window_ticks);
  for (double& r : rates) r *= per_count;
  return rates;
}

// Mean rate over [from, to) in Hz.
inline double mean_rate_hz(const std::vector<tick_t>& spikes, tick_t from, tick_t to) {
  if (to <= from) throw config_error("mean_rate_hz", "window must be non-empty");
  std::size_t count = 0;
  for (tick_t t : spikes)
    if (t >= from && t < to) ++count;
  const double seconds = static_cast<double>(to - from) / ticks_per_second;
  return static_cast<double>(count) / seconds;
}

// Population variance of the intervals, in ms^2. Zero for fewer than two.
inline double interval_variance(const std::vector<tick_t>& intervals) {
  if (intervals.size() < 2) return 0.0;
  double mean = 0.0;
  for (tick_t v : intervals) mean += ticks_to_ms(v);
  mean /= static_cast<double>(intervals.size());
  double acc = 0.0;
  for (tick_t v : intervals) {
    const double d = ticks_to_ms(v) - mean;
    acc += d * d;
  }
  return acc / static_cast<double>(intervals.size());
}

} // namespace fcsim
