#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "fcsim/shift_register.hpp"

namespace fcsim {

// Long-term potentiation of one excitatory input. Charge admitted while the
// local membrane is depolarised past the gate accumulates into Q; Q sets
// both how strongly the input is scaled and for how long.
struct ltp_config {
  double gate_mv = -70.0;        // local potential needed to admit charge
  double charge_quantum = 1.0;   // charge admitted per gated arrival tick
  double duration_scale = 200.0; // a in duration_ticks = a * Q^b
  double duration_exponent = 1.5;
  double strength_gain = 0.05;   // c in multiplier = 1 + min(c * Q, cap)
  double strength_cap = 2.0;
};

// calcium holds charge still inside the register window; carried holds the
// part that has shifted out but has not expired. Q = calcium.sum() + carried
// is invariant under shifts. timer_ticks > 0 means the input is potentiated.
struct potentiation_state {
  charge_register calcium;
  double carried = 0.0;
  std::uint64_t timer_ticks = 0;

  double charge() const { return calcium.sum() + carried; }

  // The reported long-term memory value: outstanding charge while
  // potentiated, zero otherwise.
  double memory() const { return timer_ticks > 0 ? charge() : 0.0; }
};

inline bool gate_open(const ltp_config& cfg, double local_potential_mv) {
  return local_potential_mv >= cfg.gate_mv;
}

inline double potentiation_multiplier(const ltp_config& cfg,
                                      const potentiation_state& s) {
  if (s.timer_ticks == 0) return 1.0;
  return 1.0 + std::min(cfg.strength_gain * s.charge(), cfg.strength_cap);
}

// Once per tick: charge leaving the register window is carried, not lost.
inline void shift_calcium(potentiation_state& s) {
  s.carried += s.calcium.advance();
}

// Once per tick: the potentiation window counts down; at expiry all
// accumulated charge is cleared together.
inline void potentiation_decay(potentiation_state& s) {
  if (s.timer_ticks == 0) return;
  if (--s.timer_ticks == 0) {
    s.calcium.reset();
    s.carried = 0.0;
  }
}

// A gated arrival adds one quantum and restarts the window from the
// current total charge. A duration that rounds to zero clears instead:
// charge too small to hold the window open does not linger.
inline void deposit_charge(const ltp_config& cfg, potentiation_state& s) {
  s.calcium.add(0, cfg.charge_quantum);
  const double q = s.charge();
  const long long duration =
      std::llround(cfg.duration_scale * std::pow(q, cfg.duration_exponent));
  if (duration <= 0) {
    s.calcium.reset();
    s.carried = 0.0;
    s.timer_ticks = 0;
    return;
  }
  s.timer_ticks = static_cast<std::uint64_t>(duration);
}

} // namespace fcsim
