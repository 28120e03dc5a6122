#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "fcsim/errors.hpp"
#include "fcsim/shift_register.hpp"

namespace fcsim {

enum class synapse_kind : std::uint8_t { excitatory, inhibitory };

inline const char* to_string(synapse_kind k) {
  return k == synapse_kind::excitatory ? "excitatory" : "inhibitory";
}

// Postsynaptic potential time course, one sample per tick, sample 0 at the
// tick of arrival. Values are mV deviations from rest: non-negative for
// EPSPs, non-positive for IPSPs. Anything past the last sample is zero.
struct psp_kernel {
  synapse_kind kind = synapse_kind::excitatory;
  double amplitude_mv = 0.0; // nominal peak magnitude
  std::vector<double> samples;

  // True when the register window visibly cuts the tail off: the last
  // sample still carries more than `fraction` of the peak.
  bool visibly_truncated(double fraction = 0.01) const {
    if (samples.empty()) return false;
    return std::abs(samples.back()) > fraction * amplitude_mv;
  }
};

// Linear rise from zero to the peak over rise_ticks, then geometric decay
// with the given half-life, cut to the 30-tick register window. The peak
// sample equals the requested amplitude exactly.
inline psp_kernel make_kernel(synapse_kind kind, double amplitude_mv,
                              int rise_ticks, double decay_half_life_ticks) {
  if (!(amplitude_mv > 0.0))
    throw config_error("make_kernel", "amplitude must be positive");
  if (rise_ticks < 1 || rise_ticks > static_cast<int>(register_slots) - 1)
    throw config_error("make_kernel", "rise_ticks must be in [1, 29]");
  if (!(decay_half_life_ticks > 0.0))
    throw config_error("make_kernel", "decay half-life must be positive");

  const double sign = kind == synapse_kind::excitatory ? 1.0 : -1.0;
  psp_kernel k;
  k.kind = kind;
  k.amplitude_mv = amplitude_mv;
  k.samples.resize(register_slots);
  for (std::size_t i = 0; i < register_slots; ++i) {
    const double t = static_cast<double>(i);
    double magnitude;
    if (i <= static_cast<std::size_t>(rise_ticks)) {
      magnitude = amplitude_mv * t / rise_ticks;
    } else {
      magnitude = amplitude_mv * std::exp2(-(t - rise_ticks) / decay_half_life_ticks);
    }
    k.samples[i] = sign * magnitude;
  }
  return k;
}

} // namespace fcsim
