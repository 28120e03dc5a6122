#pragma once

#include <array>
#include <cstddef>

namespace fcsim {

// Fixed-length delay line. Slot 0 is the value in effect right now; slot k
// is the value scheduled k ticks ahead. advance() retires slot 0, promotes
// every remaining slot by one tick and writes `fill` into the far end.
// Implemented as a ring so a shift is O(1).
template <typename T, std::size_t N>
class shift_register {
  static_assert(N > 0);

public:
  static constexpr std::size_t length = N;

  // Retire and return slot 0; everything else moves one slot closer to now.
  T advance(T fill = T{}) {
    T out = slots_[head_];
    slots_[head_] = fill; // old head becomes the new slot N-1
    head_ = (head_ + 1) % N;
    return out;
  }

  T& operator[](std::size_t k) { return slots_[(head_ + k) % N]; }
  const T& operator[](std::size_t k) const { return slots_[(head_ + k) % N]; }

  T front() const { return slots_[head_]; }

  void add(std::size_t k, T value) { (*this)[k] += value; }

  void reset() { slots_.fill(T{}); }

  // Summed in logical slot order so the result is reproducible.
  T sum() const {
    T acc{};
    for (std::size_t k = 0; k < N; ++k) acc += (*this)[k];
    return acc;
  }

  std::array<T, N> snapshot() const {
    std::array<T, N> out{};
    for (std::size_t k = 0; k < N; ++k) out[k] = (*this)[k];
    return out;
  }

private:
  std::array<T, N> slots_{};
  std::size_t head_ = 0;
};

// Registers span 30 ticks = 15 ms of simulated time.
inline constexpr std::size_t register_slots = 30;

using psp_register = shift_register<double, register_slots>;
using charge_register = shift_register<double, register_slots>;

} // namespace fcsim
