#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fcsim/cell.hpp"
#include "fcsim/detail/rng.hpp"
#include "fcsim/errors.hpp"
#include "fcsim/kernel.hpp"
#include "fcsim/network.hpp"
#include "fcsim/stimulus.hpp"
#include "fcsim/tick.hpp"

namespace fcsim {

namespace detail {

using njson = nlohmann::json;

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
  throw config_error(path, what);
}

inline const njson* find_member(const njson& j, const char* key) {
  const auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

inline const njson& require_member(const njson& j, const std::string& path,
                                   const char* key) {
  const njson* v = find_member(j, key);
  if (!v) fail(path, std::string("missing required key '") + key + "'");
  return *v;
}

inline double as_number(const njson& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

inline std::uint64_t as_uint(const njson& v, const std::string& path) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    const std::int64_t s = v.get<std::int64_t>();
    if (s >= 0) return static_cast<std::uint64_t>(s);
  }
  fail(path, "expected a non-negative integer");
}

inline double get_number(const njson& j, const std::string& path, const char* key,
                         double dflt) {
  const njson* v = find_member(j, key);
  return v ? as_number(*v, path + "." + key) : dflt;
}

inline std::uint64_t get_uint(const njson& j, const std::string& path,
                              const char* key, std::uint64_t dflt) {
  const njson* v = find_member(j, key);
  return v ? as_uint(*v, path + "." + key) : dflt;
}

inline std::uint32_t as_id(const njson& v, const std::string& path) {
  const std::uint64_t raw = as_uint(v, path);
  if (raw > std::numeric_limits<std::uint32_t>::max())
    fail(path, "id out of range");
  return static_cast<std::uint32_t>(raw);
}

inline synapse_kind as_kind(const njson& v, const std::string& path) {
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "excitatory") return synapse_kind::excitatory;
    if (s == "inhibitory") return synapse_kind::inhibitory;
  }
  fail(path, "expected \"excitatory\" or \"inhibitory\"");
}

} // namespace detail

// One cell as the config resolves it: input layout, weights, membrane and
// LTP parameters, kernel shape, and the amplitudes derived from them.
struct cell_build {
  std::uint32_t id = 0;
  synapse_kind kind = synapse_kind::excitatory; // polarity of the cell's axon
  std::vector<synapse_kind> input_kinds;
  std::vector<double> weights;
  cell_params params;
  double enhancement = 2.0;
  double ipsp_enhancement = 1.0;
  int rise_ticks = 2;
  double decay_half_life_ticks = 6.0;
  double weight_proximal = 1.0;
  double weight_distal = 0.6;
  double min_psp_mv = 0.0;
  double epsp_amplitude_mv = 0.0;
  double ipsp_amplitude_mv = 0.0;
};

// A spike train bound to its target compartment, with the seed that fixes
// its jitter (unused when jitter is zero).
struct train_binding {
  std::uint32_t cell = 0;
  std::uint32_t input = 0;
  train_spec spec;
  std::uint64_t seed = 0;
  std::string origin; // "train", "baseline", or the episode name
};

struct scenario {
  std::uint64_t seed = 1;
  tick_t total_ticks = 5000;
  std::vector<cell_build> cells;
  std::vector<connection> connections;
  std::vector<train_binding> trains; // fully resolved, canonical order
  bool has_recording = false;
  std::uint32_t record_cell = 0;
  tick_t rate_window_ticks = 500;
  bool has_episode = false;
  tick_t episode_start = 0; // min episode start, when has_episode
  tick_t episode_end = 0;   // max episode stop
  std::vector<std::string> warnings;
  nlohmann::json resolved; // the config with every default filled in
};

inline firing_cell build_cell(const cell_build& cb) {
  std::vector<compartment> inputs;
  inputs.reserve(cb.input_kinds.size());
  for (std::size_t i = 0; i < cb.input_kinds.size(); ++i) {
    const synapse_kind kind = cb.input_kinds[i];
    const double amplitude = kind == synapse_kind::excitatory
                                 ? cb.epsp_amplitude_mv
                                 : cb.ipsp_amplitude_mv;
    compartment c;
    c.kernel = make_kernel(kind, amplitude, cb.rise_ticks, cb.decay_half_life_ticks);
    c.weight = cb.weights[i];
    inputs.push_back(std::move(c));
  }
  return firing_cell(cb.params, std::move(inputs));
}

inline network build_network(const scenario& sc) {
  std::vector<cell_entry> entries;
  entries.reserve(sc.cells.size());
  for (const cell_build& cb : sc.cells)
    entries.push_back({cb.id, cb.kind, build_cell(cb)});
  return network(std::move(entries), sc.connections);
}

namespace detail {

inline cell_build parse_cell(const njson& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  cell_build cb;
  cb.id = as_id(require_member(j, path, "id"), path + ".id");
  if (const njson* v = find_member(j, "kind"))
    cb.kind = as_kind(*v, path + ".kind");

  const njson& inputs = require_member(j, path, "inputs");
  if (!inputs.is_array() || inputs.empty())
    fail(path + ".inputs", "expected a non-empty array of input kinds");
  for (std::size_t i = 0; i < inputs.size(); ++i)
    cb.input_kinds.push_back(
        as_kind(inputs[i], path + ".inputs[" + std::to_string(i) + "]"));

  const njson* params = find_member(j, "params");
  const njson empty_params = njson::object();
  const njson& p = params ? *params : empty_params;
  const std::string ppath = path + ".params";
  if (params && !params->is_object()) fail(ppath, "expected an object");

  cb.params.v_rest_mv = get_number(p, ppath, "v_rest_mv", -80.0);
  cb.params.v_threshold_mv = get_number(p, ppath, "v_threshold_mv", -50.0);
  cb.params.e_k_mv = get_number(p, ppath, "e_k_mv", -90.0);
  cb.params.refractory_ticks =
      static_cast<int>(get_uint(p, ppath, "refractory_ticks", 3));
  cb.params.neighbor_spread = get_number(p, ppath, "neighbor_spread", 0.5);
  cb.enhancement = get_number(p, ppath, "enhancement", 2.0);
  cb.ipsp_enhancement = get_number(p, ppath, "ipsp_enhancement", 1.0);
  cb.rise_ticks = static_cast<int>(get_uint(p, ppath, "rise_ticks", 2));
  cb.decay_half_life_ticks = get_number(p, ppath, "decay_half_life_ticks", 6.0);
  cb.weight_proximal = get_number(p, ppath, "weight_proximal", 1.0);
  cb.weight_distal = get_number(p, ppath, "weight_distal", 0.6);

  const njson* ltp = find_member(p, "ltp");
  const njson empty_ltp = njson::object();
  const njson& l = ltp ? *ltp : empty_ltp;
  const std::string lpath = ppath + ".ltp";
  if (ltp && !ltp->is_object()) fail(lpath, "expected an object");
  cb.params.ltp.gate_mv = get_number(l, lpath, "gate_mv", -70.0);
  cb.params.ltp.charge_quantum = get_number(l, lpath, "charge_quantum", 1.0);
  cb.params.ltp.duration_scale = get_number(l, lpath, "duration_scale", 200.0);
  cb.params.ltp.duration_exponent = get_number(l, lpath, "duration_exponent", 1.5);
  cb.params.ltp.strength_gain = get_number(l, lpath, "strength_gain", 0.05);
  cb.params.ltp.strength_cap = get_number(l, lpath, "strength_cap", 2.0);
  if (!(cb.params.ltp.duration_scale > 0.0))
    fail(lpath + ".duration_scale", "must be positive");
  if (!(cb.params.ltp.duration_exponent >= 1.0))
    fail(lpath + ".duration_exponent", "must be at least 1");
  if (!(cb.params.ltp.strength_gain > 0.0))
    fail(lpath + ".strength_gain", "must be positive");
  if (!(cb.params.ltp.strength_cap >= 0.0))
    fail(lpath + ".strength_cap", "must be non-negative");
  if (!(cb.params.ltp.charge_quantum > 0.0))
    fail(lpath + ".charge_quantum", "must be positive");

  if (!(cb.enhancement >= 1.0))
    fail(ppath + ".enhancement", "must be at least 1");
  if (!(cb.ipsp_enhancement > 0.0))
    fail(ppath + ".ipsp_enhancement", "must be positive");

  const std::size_t n = cb.input_kinds.size();
  if (const njson* w = find_member(j, "weights")) {
    if (!w->is_array() || w->size() != n)
      fail(path + ".weights", "expected one weight per input");
    for (std::size_t i = 0; i < n; ++i)
      cb.weights.push_back(
          as_number((*w)[i], path + ".weights[" + std::to_string(i) + "]"));
  } else {
    // linear ramp, full weight at the body, weight_distal at the far end
    for (std::size_t i = 0; i < n; ++i) {
      const double frac = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
      cb.weights.push_back(cb.weight_proximal +
                           (cb.weight_distal - cb.weight_proximal) * frac);
    }
  }

  if (!(cb.params.v_threshold_mv > cb.params.e_k_mv))
    fail(ppath, "v_threshold_mv must sit above e_k_mv");
  cb.min_psp_mv = min_psp(cb.params.v_threshold_mv, cb.params.e_k_mv, n);
  cb.epsp_amplitude_mv =
      effective_epsp_amplitude(cb.params.v_threshold_mv, cb.params.e_k_mv, n,
                               cb.enhancement);
  cb.ipsp_amplitude_mv = cb.min_psp_mv * cb.ipsp_enhancement;
  return cb;
}

inline njson kind_array(const std::vector<synapse_kind>& kinds) {
  njson a = njson::array();
  for (synapse_kind k : kinds) a.push_back(to_string(k));
  return a;
}

inline njson cell_json(const cell_build& cb) {
  njson ltp = {{"gate_mv", cb.params.ltp.gate_mv},
               {"charge_quantum", cb.params.ltp.charge_quantum},
               {"duration_scale", cb.params.ltp.duration_scale},
               {"duration_exponent", cb.params.ltp.duration_exponent},
               {"strength_gain", cb.params.ltp.strength_gain},
               {"strength_cap", cb.params.ltp.strength_cap}};
  njson params = {{"v_rest_mv", cb.params.v_rest_mv},
                  {"v_threshold_mv", cb.params.v_threshold_mv},
                  {"e_k_mv", cb.params.e_k_mv},
                  {"refractory_ticks", cb.params.refractory_ticks},
                  {"neighbor_spread", cb.params.neighbor_spread},
                  {"enhancement", cb.enhancement},
                  {"ipsp_enhancement", cb.ipsp_enhancement},
                  {"rise_ticks", cb.rise_ticks},
                  {"decay_half_life_ticks", cb.decay_half_life_ticks},
                  {"weight_proximal", cb.weight_proximal},
                  {"weight_distal", cb.weight_distal},
                  {"ltp", std::move(ltp)}};
  njson derived = {{"n_inputs", cb.input_kinds.size()},
                   {"min_psp_mv", cb.min_psp_mv},
                   {"epsp_amplitude_mv", cb.epsp_amplitude_mv},
                   {"ipsp_amplitude_mv", cb.ipsp_amplitude_mv}};
  return {{"id", cb.id},
          {"kind", to_string(cb.kind)},
          {"inputs", kind_array(cb.input_kinds)},
          {"weights", cb.weights},
          {"params", std::move(params)},
          {"derived", std::move(derived)}};
}

} // namespace detail

// Parses and validates a scenario. Accepts either a bare scenario object or
// a run manifest (whose "scenario" member is the resolved config), so a
// finished run can be replayed from its manifest alone. All defaults are
// filled in and echoed into scenario.resolved.
inline scenario load_scenario(const nlohmann::json& input) {
  using detail::as_id;
  using detail::as_kind;
  using detail::as_number;
  using detail::as_uint;
  using detail::fail;
  using detail::find_member;
  using detail::get_number;
  using detail::get_uint;
  using detail::njson;
  using detail::require_member;

  if (!input.is_object()) fail("scenario", "expected a JSON object");
  const njson* wrapped = find_member(input, "scenario");
  const njson& root = wrapped && wrapped->is_object() ? *wrapped : input;

  const std::uint64_t version =
      as_uint(require_member(root, "scenario", "schema_version"), "schema_version");
  if (version != 1) fail("schema_version", "unsupported version (expected 1)");

  scenario sc;
  sc.seed = get_uint(root, "scenario", "seed", 1);
  sc.total_ticks = get_uint(root, "scenario", "total_ticks", 5000);
  if (sc.total_ticks == 0) fail("total_ticks", "must be positive");

  if (const njson* cells = find_member(root, "cells")) {
    if (!cells->is_array()) fail("cells", "expected an array");
    for (std::size_t i = 0; i < cells->size(); ++i) {
      const std::string path = "cells[" + std::to_string(i) + "]";
      cell_build cb = detail::parse_cell((*cells)[i], path);
      try {
        const firing_cell probe = build_cell(cb); // full parameter validation
        if (probe.input(0).kernel.visibly_truncated() ||
            probe.input(probe.n_inputs() - 1).kernel.visibly_truncated())
          sc.warnings.push_back(path + ": kernel tail is visibly truncated at "
                                       "the register boundary");
      } catch (const config_error& e) {
        fail(path, e.what());
      }
      for (const cell_build& other : sc.cells)
        if (other.id == cb.id) fail(path + ".id", "duplicate cell id");
      sc.cells.push_back(std::move(cb));
    }
  }

  const auto cell_of = [&sc](std::uint32_t id) -> const cell_build* {
    for (const cell_build& cb : sc.cells)
      if (cb.id == id) return &cb;
    return nullptr;
  };
  const auto check_target = [&](std::uint32_t cell, std::uint32_t input,
                                const std::string& path) -> const cell_build& {
    const cell_build* cb = cell_of(cell);
    if (!cb) fail(path, "unknown target cell");
    if (input >= cb->input_kinds.size()) fail(path, "target input out of range");
    return *cb;
  };

  if (const njson* conns = find_member(root, "connections")) {
    if (!conns->is_array()) fail("connections", "expected an array");
    for (std::size_t i = 0; i < conns->size(); ++i) {
      const std::string path = "connections[" + std::to_string(i) + "]";
      const njson& cj = (*conns)[i];
      if (!cj.is_object()) fail(path, "expected an object");
      connection conn;

      const njson& source = require_member(cj, path, "source");
      const njson* src_cell = find_member(source, "cell");
      const njson* src_ext = find_member(source, "external");
      if (!!src_cell == !!src_ext)
        fail(path + ".source", "expected exactly one of 'cell' or 'external'");
      if (src_cell) {
        conn.source = {source_ref::origin::cell,
                       as_id(*src_cell, path + ".source.cell")};
      } else {
        conn.source = {source_ref::origin::external,
                       as_id(*src_ext, path + ".source.external")};
      }

      const njson& target = require_member(cj, path, "target");
      conn.target_cell =
          as_id(require_member(target, path + ".target", "cell"), path + ".target.cell");
      conn.target_input =
          as_id(require_member(target, path + ".target", "input"), path + ".target.input");
      conn.delay_ticks = get_uint(cj, path, "delay_ticks", 1);
      if (conn.delay_ticks < 1) fail(path + ".delay_ticks", "must be at least 1");

      const cell_build& tgt = check_target(conn.target_cell, conn.target_input, path);
      if (conn.source.from == source_ref::origin::cell) {
        const cell_build* src = cell_of(conn.source.id);
        if (!src) fail(path + ".source.cell", "unknown source cell");
        if (src->kind != tgt.input_kinds[conn.target_input])
          fail(path, "axon polarity does not match the target input kind");
      }
      sc.connections.push_back(conn);
    }
  }

  // stimulus: explicit trains, then the baseline policy on every input not
  // covered by an explicit train, then episode bursts on top
  double baseline_exc_hz = 25.0;
  double baseline_inh_hz = 10.0;
  tick_t baseline_phase_step = 3;
  tick_t baseline_jitter = 0;
  const njson* stimulus = find_member(root, "stimulus");
  if (stimulus && !stimulus->is_object()) fail("stimulus", "expected an object");
  njson episodes_echo = njson::array();
  njson trains_echo = njson::array();

  if (stimulus) {
    if (const njson* baseline = find_member(*stimulus, "baseline")) {
      if (!baseline->is_object()) fail("stimulus.baseline", "expected an object");
      baseline_exc_hz =
          get_number(*baseline, "stimulus.baseline", "excitatory_hz", 25.0);
      baseline_inh_hz =
          get_number(*baseline, "stimulus.baseline", "inhibitory_hz", 10.0);
      baseline_phase_step =
          get_uint(*baseline, "stimulus.baseline", "phase_step_ticks", 3);
      baseline_jitter =
          get_uint(*baseline, "stimulus.baseline", "jitter_ticks", 0);
    }
    if (baseline_exc_hz < 0.0 || baseline_exc_hz > ticks_per_second)
      fail("stimulus.baseline.excitatory_hz", "must be in [0, 2000]");
    if (baseline_inh_hz < 0.0 || baseline_inh_hz > ticks_per_second)
      fail("stimulus.baseline.inhibitory_hz", "must be in [0, 2000]");
  }

  if (stimulus) {
    if (const njson* trains = find_member(*stimulus, "trains")) {
      if (!trains->is_array()) fail("stimulus.trains", "expected an array");
      for (std::size_t i = 0; i < trains->size(); ++i) {
        const std::string path = "stimulus.trains[" + std::to_string(i) + "]";
        const njson& tj = (*trains)[i];
        if (!tj.is_object()) fail(path, "expected an object");
        train_binding tb;
        tb.origin = "train";
        tb.cell = as_id(require_member(tj, path, "cell"), path + ".cell");
        tb.input = as_id(require_member(tj, path, "input"), path + ".input");
        check_target(tb.cell, tb.input, path);
        tb.spec.frequency_hz =
            as_number(require_member(tj, path, "frequency_hz"), path + ".frequency_hz");
        tb.spec.phase_ticks = get_uint(tj, path, "phase_ticks", 0);
        tb.spec.start_tick = get_uint(tj, path, "start_tick", 0);
        tb.spec.stop_tick = get_uint(tj, path, "stop_tick", sc.total_ticks);
        tb.spec.jitter_ticks = get_uint(tj, path, "jitter_ticks", 0);
        if (tb.spec.frequency_hz < 0.0 || tb.spec.frequency_hz > ticks_per_second)
          fail(path + ".frequency_hz", "must be in [0, 2000]");
        if (tb.spec.stop_tick > sc.total_ticks)
          fail(path + ".stop_tick", "beyond total_ticks");
        sc.trains.push_back(std::move(tb));
      }
    }
  }

  // baseline expansion in declaration order: cells as listed, inputs ascending
  for (const cell_build& cb : sc.cells) {
    for (std::size_t i = 0; i < cb.input_kinds.size(); ++i) {
      const auto covered = std::any_of(
          sc.trains.begin(), sc.trains.end(), [&](const train_binding& tb) {
            return tb.origin == "train" && tb.cell == cb.id && tb.input == i;
          });
      if (covered) continue;
      const double hz = cb.input_kinds[i] == synapse_kind::excitatory
                            ? baseline_exc_hz
                            : baseline_inh_hz;
      if (hz == 0.0) continue;
      train_binding tb;
      tb.origin = "baseline";
      tb.cell = cb.id;
      tb.input = static_cast<std::uint32_t>(i);
      tb.spec.frequency_hz = hz;
      tb.spec.phase_ticks = static_cast<tick_t>(i) * baseline_phase_step;
      tb.spec.start_tick = 0;
      tb.spec.stop_tick = sc.total_ticks;
      tb.spec.jitter_ticks = baseline_jitter;
      sc.trains.push_back(std::move(tb));
    }
  }

  if (stimulus) {
    if (const njson* episodes = find_member(*stimulus, "episodes")) {
      if (!episodes->is_array()) fail("stimulus.episodes", "expected an array");
      for (std::size_t i = 0; i < episodes->size(); ++i) {
        const std::string path = "stimulus.episodes[" + std::to_string(i) + "]";
        const njson& ej = (*episodes)[i];
        if (!ej.is_object()) fail(path, "expected an object");
        std::string name = "episode" + std::to_string(i);
        if (const njson* v = find_member(ej, "name")) {
          if (!v->is_string()) fail(path + ".name", "expected a string");
          name = v->get<std::string>();
        }
        const double hz =
            as_number(require_member(ej, path, "frequency_hz"), path + ".frequency_hz");
        const tick_t start =
            as_uint(require_member(ej, path, "start_tick"), path + ".start_tick");
        const tick_t stop =
            as_uint(require_member(ej, path, "stop_tick"), path + ".stop_tick");
        const tick_t phase = get_uint(ej, path, "phase_ticks", 0);
        const tick_t jitter = get_uint(ej, path, "jitter_ticks", 0);
        if (hz < 0.0 || hz > ticks_per_second)
          fail(path + ".frequency_hz", "must be in [0, 2000]");
        if (start >= stop) fail(path, "start_tick must precede stop_tick");
        if (stop > sc.total_ticks) fail(path + ".stop_tick", "beyond total_ticks");

        const njson& targets = require_member(ej, path, "targets");
        if (!targets.is_array() || targets.empty())
          fail(path + ".targets", "expected a non-empty array");
        njson targets_echo = njson::array();
        for (std::size_t k = 0; k < targets.size(); ++k) {
          const std::string tpath = path + ".targets[" + std::to_string(k) + "]";
          const njson& tj = targets[k];
          if (!tj.is_object()) fail(tpath, "expected an object");
          train_binding tb;
          tb.origin = name;
          tb.cell = as_id(require_member(tj, tpath, "cell"), tpath + ".cell");
          tb.input = as_id(require_member(tj, tpath, "input"), tpath + ".input");
          check_target(tb.cell, tb.input, tpath);
          const tick_t target_phase = get_uint(tj, tpath, "phase_ticks", 0);
          tb.spec.frequency_hz = hz;
          tb.spec.phase_ticks = phase + target_phase;
          tb.spec.start_tick = start;
          tb.spec.stop_tick = stop;
          tb.spec.jitter_ticks = jitter;
          sc.trains.push_back(tb);
          targets_echo.push_back({{"cell", tb.cell},
                                  {"input", tb.input},
                                  {"phase_ticks", target_phase}});
        }
        episodes_echo.push_back({{"name", name},
                                 {"frequency_hz", hz},
                                 {"start_tick", start},
                                 {"stop_tick", stop},
                                 {"phase_ticks", phase},
                                 {"jitter_ticks", jitter},
                                 {"targets", std::move(targets_echo)}});
        if (!sc.has_episode) {
          sc.has_episode = true;
          sc.episode_start = start;
          sc.episode_end = stop;
        } else {
          sc.episode_start = std::min(sc.episode_start, start);
          sc.episode_end = std::max(sc.episode_end, stop);
        }
      }
    }
  }

  // jitter seeds are fixed by position in the resolved list
  for (std::size_t k = 0; k < sc.trains.size(); ++k)
    sc.trains[k].seed = detail::mix(sc.seed, k);

  if (!sc.cells.empty()) {
    sc.has_recording = true;
    sc.record_cell = sc.cells.front().id;
    for (const cell_build& cb : sc.cells)
      sc.record_cell = std::min(sc.record_cell, cb.id);
  }
  if (const njson* recording = find_member(root, "recording")) {
    if (!recording->is_object()) fail("recording", "expected an object");
    if (const njson* v = find_member(*recording, "cell")) {
      const std::uint32_t id = as_id(*v, "recording.cell");
      if (!cell_of(id)) fail("recording.cell", "unknown cell");
      sc.record_cell = id;
      sc.has_recording = true;
    }
    sc.rate_window_ticks =
        get_uint(*recording, "recording", "rate_window_ticks", 500);
    if (sc.rate_window_ticks == 0)
      fail("recording.rate_window_ticks", "must be positive");
  }

  // echo the fully resolved configuration
  njson cells_echo = njson::array();
  for (const cell_build& cb : sc.cells) cells_echo.push_back(detail::cell_json(cb));
  njson conns_echo = njson::array();
  for (const connection& c : sc.connections) {
    njson source = c.source.from == source_ref::origin::cell
                       ? njson{{"cell", c.source.id}}
                       : njson{{"external", c.source.id}};
    conns_echo.push_back({{"source", std::move(source)},
                          {"target", {{"cell", c.target_cell},
                                      {"input", c.target_input}}},
                          {"delay_ticks", c.delay_ticks}});
  }
  njson resolved_trains = njson::array();
  for (const train_binding& tb : sc.trains) {
    if (tb.origin == "train")
      trains_echo.push_back({{"cell", tb.cell},
                             {"input", tb.input},
                             {"frequency_hz", tb.spec.frequency_hz},
                             {"phase_ticks", tb.spec.phase_ticks},
                             {"start_tick", tb.spec.start_tick},
                             {"stop_tick", tb.spec.stop_tick},
                             {"jitter_ticks", tb.spec.jitter_ticks}});
    resolved_trains.push_back({{"origin", tb.origin},
                               {"cell", tb.cell},
                               {"input", tb.input},
                               {"frequency_hz", tb.spec.frequency_hz},
                               {"phase_ticks", tb.spec.phase_ticks},
                               {"start_tick", tb.spec.start_tick},
                               {"stop_tick", tb.spec.stop_tick},
                               {"jitter_ticks", tb.spec.jitter_ticks},
                               {"seed", tb.seed}});
  }

  sc.resolved = {{"schema_version", 1},
                 {"seed", sc.seed},
                 {"total_ticks", sc.total_ticks},
                 {"cells", std::move(cells_echo)},
                 {"connections", std::move(conns_echo)},
                 {"stimulus",
                  {{"baseline",
                    {{"excitatory_hz", baseline_exc_hz},
                     {"inhibitory_hz", baseline_inh_hz},
                     {"phase_step_ticks", baseline_phase_step},
                     {"jitter_ticks", baseline_jitter}}},
                   {"trains", std::move(trains_echo)},
                   {"episodes", std::move(episodes_echo)}}},
                 {"resolved_trains", std::move(resolved_trains)}};
  if (sc.has_recording)
    sc.resolved["recording"] = {{"cell", sc.record_cell},
                                {"rate_window_ticks", sc.rate_window_ticks}};
  return sc;
}

inline nlohmann::json parse_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot read: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw config_error(path.string(), std::string("invalid JSON: ") + e.what());
  }
  return j;
}

inline scenario load_scenario_file(const std::filesystem::path& path) {
  return load_scenario(parse_json_file(path));
}

inline std::vector<std::string_view> preset_names() { return {"epsp5", "epsp7"}; }

// The two built-in replication scenarios: one observed cell with 13
// excitatory and 3 inhibitory inputs, periodic baseline drive, and a
// 400 ms 100 Hz training burst on inputs 7, 8 and 9.
inline nlohmann::json preset_json(std::string_view name) {
  double enhancement = 0.0;
  if (name == "epsp5")
    enhancement = 2.0;
  else if (name == "epsp7")
    enhancement = 2.8;
  else
    throw config_error("preset",
                       "unknown preset '" + std::string(name) +
                           "' (available: epsp5, epsp7)");

  nlohmann::json inputs = nlohmann::json::array();
  for (int i = 0; i < 13; ++i) inputs.push_back("excitatory");
  for (int i = 0; i < 3; ++i) inputs.push_back("inhibitory");

  // Baseline volleys are near-synchronous (1-tick phase step, 2-tick jitter)
  // so threshold crossings are marginal and jitter-driven. Training arrivals
  // land 9..10 ticks into the volley, inside the depolarized window where the
  // potentiation gate can open before an output spike clears the registers.
  return {
      {"schema_version", 1},
      {"seed", 1},
      {"total_ticks", 5000},
      {"cells",
       {{{"id", 0},
         {"kind", "excitatory"},
         {"inputs", std::move(inputs)},
         {"params",
          {{"enhancement", enhancement},
           {"weight_proximal", 0.97},
           {"weight_distal", 0.582},
           {"ltp", {{"charge_quantum", 2.0}}}}}}}},
      {"stimulus",
       {{"baseline",
         {{"excitatory_hz", 25.0},
          {"inhibitory_hz", 10.0},
          {"phase_step_ticks", 1},
          {"jitter_ticks", 2}}},
        {"episodes",
         {{{"name", "training"},
           {"frequency_hz", 100.0},
           {"start_tick", 1600},
           {"stop_tick", 2400},
           {"targets",
            {{{"cell", 0}, {"input", 7}, {"phase_ticks", 9}},
             {{"cell", 0}, {"input", 8}, {"phase_ticks", 9}},
             {{"cell", 0}, {"input", 9}, {"phase_ticks", 10}}}}}}}}},
      {"recording", {{"cell", 0}, {"rate_window_ticks", 500}}}};
}

} // namespace fcsim
