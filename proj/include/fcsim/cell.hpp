#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "fcsim/errors.hpp"
#include "fcsim/kernel.hpp"
#include "fcsim/ltp.hpp"
#include "fcsim/shift_register.hpp"

namespace fcsim {

struct cell_params {
  double v_rest_mv = -80.0;
  double v_threshold_mv = -50.0;
  double e_k_mv = -90.0; // hard floor for body and local potentials
  int refractory_ticks = 3;
  double neighbor_spread = 0.5; // local-potential attenuation per step of distance
  ltp_config ltp;
};

// Smallest EPSP peak that still lets n simultaneous inputs reach threshold
// from the potassium floor.
inline double min_psp(double v_threshold_mv, double e_k_mv, std::size_t n_inputs) {
  if (n_inputs == 0) throw config_error("min_psp", "n_inputs must be positive");
  return (v_threshold_mv - e_k_mv) / static_cast<double>(n_inputs);
}

inline double effective_epsp_amplitude(double v_threshold_mv, double e_k_mv,
                                       std::size_t n_inputs, double enhancement) {
  if (!(enhancement > 0.0))
    throw config_error("effective_epsp_amplitude", "enhancement must be positive");
  return min_psp(v_threshold_mv, e_k_mv, n_inputs) * enhancement;
}

// One input line: its response shape, its pull on the cell body, its live
// register, and (for excitatory inputs) its potentiation state. The
// neuromodulation register is carried but nothing writes to it yet.
struct compartment {
  psp_kernel kernel;
  double weight = 1.0;
  psp_register psp;
  potentiation_state memory;
  charge_register neuromod;
};

struct arrival {
  std::size_t input = 0;
  double multiplier = 1.0; // presynaptic scale; same-tick arrivals sum
};

struct step_result {
  bool spiked = false;
  double body_mv = 0.0; // pre-reset, so suprathreshold peaks stay visible
};

// Adds one spike's kernel into a register, sample k landing k ticks ahead.
// Each touched slot is floored at floor_deviation_mv (e_k relative to rest):
// inhibition saturates instead of overshooting the reversal.
inline void deposit_spike(psp_register& reg, const psp_kernel& kernel,
                          double multiplier, double floor_deviation_mv) {
  for (std::size_t k = 0; k < register_slots; ++k) {
    const double sample = kernel.samples[k];
    if (sample == 0.0) continue;
    reg.add(k, multiplier * sample);
    if (reg[k] < floor_deviation_mv) reg[k] = floor_deviation_mv;
  }
}

class firing_cell {
 public:
  firing_cell(cell_params params, std::vector<compartment> inputs)
      : params_(params), inputs_(std::move(inputs)) {
    if (inputs_.empty())
      throw config_error("firing_cell", "cell needs at least one input");
    if (!(params_.e_k_mv < params_.v_rest_mv &&
          params_.v_rest_mv < params_.ltp.gate_mv &&
          params_.ltp.gate_mv < params_.v_threshold_mv))
      throw config_error("firing_cell",
                         "potentials must order e_k < rest < gate < threshold");
    if (params_.refractory_ticks < 0)
      throw config_error("firing_cell", "refractory_ticks must be non-negative");
    if (!(params_.neighbor_spread > 0.0 && params_.neighbor_spread < 1.0))
      throw config_error("firing_cell", "neighbor_spread must be in (0, 1)");
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
      const compartment& c = inputs_[i];
      if (c.kernel.samples.size() != register_slots)
        throw config_error("firing_cell", "kernel sample count must match register");
      if (!(c.weight > 0.0 && c.weight <= 1.0))
        throw config_error("firing_cell", "input weight must be in (0, 1]");
      if (i > 0 && c.weight > inputs_[i - 1].weight)
        throw config_error("firing_cell",
                           "weights may not grow with distance from the body");
    }
    coalesced_.resize(inputs_.size());
  }

  std::size_t n_inputs() const { return inputs_.size(); }
  const cell_params& params() const { return params_; }
  const compartment& input(std::size_t i) const { return inputs_[i]; }
  bool refractory() const { return refractory_remaining_ > 0; }

  // Somatic potential: weighted sum of what each register shows now,
  // floored at the potassium reversal.
  double body_potential() const {
    double deviation = 0.0;
    for (const compartment& c : inputs_)
      deviation += c.weight * c.psp.front();
    return std::max(params_.e_k_mv, params_.v_rest_mv + deviation);
  }

  // Dendritic potential at input i: unweighted, neighbors attenuated by
  // spread^distance, same floor. This is what the LTP gate samples.
  double local_potential(std::size_t i) const {
    double deviation = 0.0;
    for (std::size_t j = 0; j < inputs_.size(); ++j) {
      const std::size_t d = i > j ? i - j : j - i;
      deviation += attenuation(d) * inputs_[j].psp.front();
    }
    return std::max(params_.e_k_mv, params_.v_rest_mv + deviation);
  }

  double potentiation_multiplier(std::size_t i) const {
    return fcsim::potentiation_multiplier(params_.ltp, inputs_[i].memory);
  }

  // The long-term memory value reported for input i.
  double memory_value(std::size_t i) const { return inputs_[i].memory.memory(); }

  // One tick. Same-tick arrivals at one input coalesce (multipliers sum)
  // before a single deposit, so the register floor cannot make the result
  // depend on arrival order.
  step_result step(const std::vector<arrival>& arrivals) {
    for (compartment& c : inputs_) {
      c.psp.advance();
      shift_calcium(c.memory);
      potentiation_decay(c.memory);
      c.neuromod.advance();
    }

    if (refractory_remaining_ > 0) {
      --refractory_remaining_;
      return {false, body_potential()}; // arrivals dropped
    }

    const double floor_deviation = params_.e_k_mv - params_.v_rest_mv;
    std::fill(coalesced_.begin(), coalesced_.end(), 0.0);
    for (const arrival& a : arrivals) {
      if (a.input >= inputs_.size())
        throw config_error("firing_cell::step", "arrival names a missing input");
      coalesced_[a.input] += a.multiplier;
    }

    for (std::size_t i = 0; i < inputs_.size(); ++i) {
      if (coalesced_[i] == 0.0) continue;
      compartment& c = inputs_[i];
      double mult = coalesced_[i];
      if (c.kernel.kind == synapse_kind::excitatory)
        mult *= fcsim::potentiation_multiplier(params_.ltp, c.memory);
      deposit_spike(c.psp, c.kernel, mult, floor_deviation);
    }

    // Gate check after deposits; kernels start at zero, so an input's own
    // arrival cannot open its gate, only standing depolarisation can.
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
      if (coalesced_[i] == 0.0) continue;
      if (inputs_[i].kernel.kind != synapse_kind::excitatory) continue;
      if (gate_open(params_.ltp, local_potential(i)))
        deposit_charge(params_.ltp, inputs_[i].memory);
    }

    const double body = body_potential();
    if (body >= params_.v_threshold_mv) {
      for (compartment& c : inputs_)
        c.psp.reset(); // switching signal wipes the registers, not the memory
      refractory_remaining_ = params_.refractory_ticks;
      return {true, body};
    }
    return {false, body};
  }

 private:
  double attenuation(std::size_t distance) const {
    double a = 1.0;
    for (std::size_t k = 0; k < distance; ++k) a *= params_.neighbor_spread;
    return a;
  }

  cell_params params_;
  std::vector<compartment> inputs_;
  int refractory_remaining_ = 0;
  std::vector<double> coalesced_;
};

} // namespace fcsim
