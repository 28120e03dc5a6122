#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fcsim/cell.hpp"
#include "fcsim/errors.hpp"
#include "fcsim/tick.hpp"

namespace fcsim {

// Where a spike comes from: another cell's axon or an external stimulus
// line driven by the caller.
struct source_ref {
  enum class origin : std::uint8_t { cell, external };
  origin from = origin::external;
  std::uint32_t id = 0;
};

// A stimulus spike already addressed to its target, delivered on the tick
// it is passed in.
struct external_arrival {
  std::uint32_t cell = 0;
  std::uint32_t input = 0;
};

struct connection {
  source_ref source;
  std::uint32_t target_cell = 0;
  std::uint32_t target_input = 0;
  tick_t delay_ticks = 1; // >= 1, nothing is delivered on the tick it fires
};

struct cell_entry {
  std::uint32_t id;
  synapse_kind kind; // polarity of this cell's own axon
  firing_cell cell;
};

// Steps every cell on a shared clock. Deliveries sit in a delay ring and are
// drained before any cell steps, so results do not depend on the order cells
// were listed in. An axon may only land on an input of its own polarity.
class network {
 public:
  network(std::vector<cell_entry> cells, std::vector<connection> connections)
      : cells_(std::move(cells)), connections_(std::move(connections)) {
    std::sort(cells_.begin(), cells_.end(),
              [](const cell_entry& a, const cell_entry& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < cells_.size(); ++i)
      if (cells_[i].id == cells_[i - 1].id)
        throw config_error("network", "duplicate cell id");

    from_cell_.resize(cells_.size());
    tick_t max_delay = 0;
    for (std::size_t c = 0; c < connections_.size(); ++c) {
      const connection& conn = connections_[c];
      if (conn.delay_ticks < 1)
        throw config_error("network", "connection delay must be at least one tick");
      const std::size_t target = index_of(conn.target_cell);
      const firing_cell& target_cell = cells_[target].cell;
      if (conn.target_input >= target_cell.n_inputs())
        throw config_error("network", "connection targets a missing input");
      const synapse_kind target_kind =
          target_cell.input(conn.target_input).kernel.kind;
      if (conn.source.from == source_ref::origin::cell) {
        const std::size_t src = index_of(conn.source.id);
        if (cells_[src].kind != target_kind)
          throw config_error("network", "axon polarity does not match target input");
        from_cell_[src].push_back(c);
      } else {
        from_external_[conn.source.id].push_back(c);
      }
      max_delay = std::max(max_delay, conn.delay_ticks);
    }

    ring_.resize(static_cast<std::size_t>(max_delay) + 1);
    arrivals_.resize(cells_.size());
    last_body_.resize(cells_.size(), 0.0);
    for (std::size_t i = 0; i < cells_.size(); ++i)
      last_body_[i] = cells_[i].cell.params().v_rest_mv;
  }

  tick_t now() const { return now_; }
  std::size_t n_cells() const { return cells_.size(); }

  bool has_cell(std::uint32_t id) const {
    const auto it = lookup(id);
    return it != cells_.end() && it->id == id;
  }

  const firing_cell& cell(std::uint32_t id) const {
    return cells_[index_of(id)].cell;
  }

  // Body potential the cell reported on the last completed tick; unlike the
  // post-step register state this keeps suprathreshold peaks.
  double last_body_mv(std::uint32_t id) const { return last_body_[index_of(id)]; }

  // Advances one tick. externals are delivered to their targets on this
  // tick; firing_lines names external lines whose connections deliver
  // delay ticks later. Returns the ids of cells that spiked, ascending.
  const std::vector<std::uint32_t>&
  step(const std::vector<external_arrival>& externals = {},
       const std::vector<std::uint32_t>& firing_lines = {}) {
    for (std::uint32_t line : firing_lines) {
      const auto it = from_external_.find(line);
      if (it == from_external_.end()) continue; // a silent line is legal
      for (std::size_t c : it->second) schedule(connections_[c]);
    }

    auto& due = ring_[static_cast<std::size_t>(now_ % ring_.size())];
    for (std::vector<arrival>& a : arrivals_) a.clear();
    for (const delivery& d : due)
      arrivals_[d.cell_index].push_back({d.input, 1.0});
    due.clear();
    for (const external_arrival& e : externals)
      arrivals_[index_of(e.cell)].push_back({e.input, 1.0});

    spiked_.clear();
    for (std::size_t i = 0; i < cells_.size(); ++i) {
      const step_result r = cells_[i].cell.step(arrivals_[i]);
      last_body_[i] = r.body_mv;
      if (r.spiked) {
        spiked_.push_back(cells_[i].id);
        for (std::size_t c : from_cell_[i]) schedule(connections_[c]);
      }
    }
    ++now_;
    return spiked_;
  }

 private:
  struct delivery {
    std::size_t cell_index;
    std::size_t input;
  };

  std::vector<cell_entry>::const_iterator lookup(std::uint32_t id) const {
    return std::lower_bound(
        cells_.begin(), cells_.end(), id,
        [](const cell_entry& e, std::uint32_t v) { return e.id < v; });
  }

  std::size_t index_of(std::uint32_t id) const {
    const auto it = lookup(id);
    if (it == cells_.end() || it->id != id)
      throw config_error("network", "unknown cell id");
    return static_cast<std::size_t>(it - cells_.begin());
  }

  void schedule(const connection& conn) {
    const std::size_t slot =
        static_cast<std::size_t>((now_ + conn.delay_ticks) % ring_.size());
    ring_[slot].push_back({index_of(conn.target_cell), conn.target_input});
  }

  std::vector<cell_entry> cells_;
  std::vector<connection> connections_;
  std::vector<std::vector<std::size_t>> from_cell_; // cell index -> connection indices
  std::unordered_map<std::uint32_t, std::vector<std::size_t>> from_external_;
  std::vector<std::vector<delivery>> ring_;
  std::vector<std::vector<arrival>> arrivals_;
  std::vector<double> last_body_;
  std::vector<std::uint32_t> spiked_;
  tick_t now_ = 0;
};

} // namespace fcsim
