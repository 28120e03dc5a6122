#pragma once

#include <cstdint>
#include <ctime>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "fcsim/analysis.hpp"
#include "fcsim/errors.hpp"
#include "fcsim/network.hpp"
#include "fcsim/record.hpp"
#include "fcsim/scenario.hpp"
#include "fcsim/tick.hpp"
#include "fcsim/version.hpp"

namespace fcsim {

// Everything one run produces. The observed cell (recording.cell) gets a
// full body-potential trace and a per-tick memory value for every input;
// spike ticks are kept for all cells.
struct record_set {
  tick_t total_ticks = 0;
  bool has_observed = false;
  std::uint32_t observed_cell = 0;
  std::size_t n_inputs = 0;
  tick_t rate_window_ticks = 500;
  std::vector<std::pair<tick_t, std::uint32_t>> spikes;
  std::vector<tick_t> observed_spikes;
  std::vector<double> vbody_mv;  // length total_ticks when observed
  std::vector<double> memory;    // tick-major grid, total_ticks x n_inputs

  double memory_at(tick_t tick, std::size_t input) const {
    return memory[static_cast<std::size_t>(tick) * n_inputs + input];
  }
};

inline record_set run(const scenario& sc) {
  network net = build_network(sc);

  std::vector<std::vector<external_arrival>> events(
      static_cast<std::size_t>(sc.total_ticks));
  for (const train_binding& tb : sc.trains) {
    for (tick_t t : generate(tb.spec, tb.seed))
      if (t < sc.total_ticks)
        events[static_cast<std::size_t>(t)].push_back({tb.cell, tb.input});
  }

  record_set rec;
  rec.total_ticks = sc.total_ticks;
  rec.has_observed = sc.has_recording;
  rec.observed_cell = sc.record_cell;
  rec.rate_window_ticks = sc.rate_window_ticks;
  if (rec.has_observed) {
    rec.n_inputs = net.cell(sc.record_cell).n_inputs();
    rec.vbody_mv.reserve(static_cast<std::size_t>(sc.total_ticks));
    rec.memory.reserve(static_cast<std::size_t>(sc.total_ticks) * rec.n_inputs);
  }

  for (tick_t t = 0; t < sc.total_ticks; ++t) {
    const std::vector<std::uint32_t>& spiked =
        net.step(events[static_cast<std::size_t>(t)]);
    for (std::uint32_t id : spiked) {
      rec.spikes.emplace_back(t, id);
      if (rec.has_observed && id == rec.observed_cell)
        rec.observed_spikes.push_back(t);
    }
    if (rec.has_observed) {
      rec.vbody_mv.push_back(net.last_body_mv(rec.observed_cell));
      const firing_cell& cell = net.cell(rec.observed_cell);
      for (std::size_t i = 0; i < rec.n_inputs; ++i)
        rec.memory.push_back(cell.memory_value(i));
    }
  }
  return rec;
}

// Rates and end-of-window memory for two non-overlapping windows, the
// before/after comparison the training experiment reports.
struct window_summary {
  tick_t from = 0;
  tick_t to = 0;
  std::size_t spike_count = 0;
  double rate_hz = 0.0;
  std::vector<double> memory_at_end; // per input of the observed cell
};

struct comparison {
  window_summary pre;
  window_summary post;
};

namespace detail {

inline window_summary summarize_window(const record_set& rec, tick_t from, tick_t to) {
  window_summary w;
  w.from = from;
  w.to = to;
  for (tick_t t : rec.observed_spikes)
    if (t >= from && t < to) ++w.spike_count;
  w.rate_hz = mean_rate_hz(rec.observed_spikes, from, to);
  if (rec.has_observed && to > 0) {
    w.memory_at_end.reserve(rec.n_inputs);
    for (std::size_t i = 0; i < rec.n_inputs; ++i)
      w.memory_at_end.push_back(rec.memory_at(to - 1, i));
  }
  return w;
}

} // namespace detail

inline comparison compare(const record_set& rec, tick_t pre_start, tick_t pre_end,
                          tick_t post_start, tick_t post_end) {
  if (pre_start >= pre_end || post_start >= post_end)
    throw config_error("compare", "windows must be non-empty");
  if (pre_end > post_start && post_end > pre_start)
    throw config_error("compare", "windows must not overlap");
  if (pre_end > rec.total_ticks || post_end > rec.total_ticks)
    throw config_error("compare", "windows must lie within the run");
  comparison c;
  c.pre = detail::summarize_window(rec, pre_start, pre_end);
  c.post = detail::summarize_window(rec, post_start, post_end);
  return c;
}

// Pre window ends where the first episode starts; post begins where the
// last one stops.
inline comparison compare_around_episode(const record_set& rec, const scenario& sc) {
  if (!sc.has_episode)
    throw config_error("compare", "scenario has no episode to compare around");
  return compare(rec, 0, sc.episode_start, sc.episode_end, sc.total_ticks);
}

namespace detail {

inline std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

} // namespace detail

// Writes the full output set of a run: the manifest (resolved config, code
// version, timestamp; the timestamp lives only here) plus every CSV and the
// return-map SVG.
inline void write_outputs(const record_set& rec, const nlohmann::json& resolved,
                          const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);

  nlohmann::json manifest = {{"code_version", version_string},
                             {"created_utc", detail::utc_timestamp()},
                             {"scenario", resolved}};
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");

  write_text_file(dir / "spikes.csv", spikes_csv(rec.spikes));
  write_text_file(dir / "vbody.csv", vbody_csv(rec.vbody_mv));

  std::vector<memory_sample> mem;
  mem.reserve(rec.memory.size());
  for (tick_t t = 0; t < rec.total_ticks && rec.has_observed; ++t)
    for (std::size_t i = 0; i < rec.n_inputs; ++i)
      mem.push_back({t, static_cast<std::uint32_t>(i), rec.memory_at(t, i)});
  write_text_file(dir / "memory.csv", memory_csv(mem));

  const std::vector<tick_t> intervals = isi(rec.observed_spikes);
  const auto points = return_map(intervals);
  write_text_file(dir / "isi.csv", isi_csv(intervals));
  write_text_file(dir / "poincare.csv", poincare_csv(points));
  write_text_file(dir / "rates.csv",
                  rates_csv(rate_per_window(rec.observed_spikes, rec.total_ticks,
                                            rec.rate_window_ticks),
                            rec.rate_window_ticks));
  write_text_file(dir / "poincare.svg", poincare_svg(points));
}

} // namespace fcsim
