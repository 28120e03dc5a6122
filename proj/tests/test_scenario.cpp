#include <gtest/gtest.h>

#include <fcsim/errors.hpp>
#include <fcsim/record.hpp>
#include <fcsim/scenario.hpp>

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

using fcsim::config_error;
using fcsim::load_scenario;
using fcsim::preset_json;
using fcsim::scenario;
using fcsim::synapse_kind;
using fcsim::train_binding;
using nlohmann::json;

namespace {

json minimal() {
  return json{{"schema_version", 1}};
}

json one_cell() {
  return json::parse(R"({
    "schema_version": 1,
    "total_ticks": 1000,
    "cells": [
      {"id": 0, "inputs": ["excitatory", "excitatory", "inhibitory"]}
    ]
  })");
}

std::size_t count_origin(const scenario& sc, const std::string& origin) {
  std::size_t n = 0;
  for (const train_binding& tb : sc.trains)
    if (tb.origin == origin) ++n;
  return n;
}

} // namespace

TEST(Scenario, MinimalConfigGetsAllDefaults) {
  const scenario sc = load_scenario(minimal());
  EXPECT_EQ(sc.seed, 1u);
  EXPECT_EQ(sc.total_ticks, 5000u);
  EXPECT_TRUE(sc.cells.empty());
  EXPECT_TRUE(sc.trains.empty());
  EXPECT_FALSE(sc.has_recording);
  EXPECT_FALSE(sc.has_episode);
  EXPECT_EQ(sc.rate_window_ticks, 500u);
}

TEST(Scenario, SchemaVersionIsMandatory) {
  EXPECT_THROW(load_scenario(json::object()), config_error);
  EXPECT_THROW(load_scenario(json{{"schema_version", 2}}), config_error);
  EXPECT_THROW(load_scenario(json::array()), config_error);
}

TEST(Scenario, CellDefaultsAndDerivedAmplitudes) {
  const scenario sc = load_scenario(one_cell());
  ASSERT_EQ(sc.cells.size(), 1u);
  const auto& cb = sc.cells[0];
  EXPECT_EQ(cb.input_kinds.size(), 3u);
  EXPECT_EQ(cb.params.v_rest_mv, -80.0);
  EXPECT_EQ(cb.params.v_threshold_mv, -50.0);
  EXPECT_EQ(cb.params.e_k_mv, -90.0);
  EXPECT_EQ(cb.params.refractory_ticks, 3);
  EXPECT_EQ(cb.params.ltp.gate_mv, -70.0);
  // 3 inputs: min PSP (threshold - e_k)/3, EPSP doubled
  EXPECT_DOUBLE_EQ(cb.min_psp_mv, 40.0 / 3.0);
  EXPECT_DOUBLE_EQ(cb.epsp_amplitude_mv, 80.0 / 3.0);
  EXPECT_DOUBLE_EQ(cb.ipsp_amplitude_mv, 40.0 / 3.0);
  // default weight ramp from 1.0 at the body to 0.6 at the far end
  ASSERT_EQ(cb.weights.size(), 3u);
  EXPECT_DOUBLE_EQ(cb.weights[0], 1.0);
  EXPECT_DOUBLE_EQ(cb.weights[1], 0.8);
  EXPECT_DOUBLE_EQ(cb.weights[2], 0.6);
  // one cell means recording defaults onto it
  EXPECT_TRUE(sc.has_recording);
  EXPECT_EQ(sc.record_cell, 0u);
}

TEST(Scenario, BaselineCoversEveryInputWithSteppedPhases) {
  const scenario sc = load_scenario(one_cell());
  ASSERT_EQ(sc.trains.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(sc.trains[i].origin, "baseline");
    EXPECT_EQ(sc.trains[i].cell, 0u);
    EXPECT_EQ(sc.trains[i].input, i);
    EXPECT_EQ(sc.trains[i].spec.phase_ticks, 3 * i);
    EXPECT_EQ(sc.trains[i].spec.start_tick, 0u);
    EXPECT_EQ(sc.trains[i].spec.stop_tick, 1000u);
  }
  EXPECT_EQ(sc.trains[0].spec.frequency_hz, 25.0); // excitatory default
  EXPECT_EQ(sc.trains[2].spec.frequency_hz, 10.0); // inhibitory default
}

TEST(Scenario, ExplicitTrainSuppressesThatBaseline) {
  json j = one_cell();
  j["stimulus"]["trains"] = json::array(
      {{{"cell", 0}, {"input", 1}, {"frequency_hz", 50.0}, {"phase_ticks", 5}}});
  const scenario sc = load_scenario(j);
  ASSERT_EQ(sc.trains.size(), 3u); // 1 explicit + 2 baseline
  EXPECT_EQ(count_origin(sc, "train"), 1u);
  EXPECT_EQ(count_origin(sc, "baseline"), 2u);
  EXPECT_EQ(sc.trains[0].origin, "train");
  EXPECT_EQ(sc.trains[0].input, 1u);
  EXPECT_EQ(sc.trains[0].spec.frequency_hz, 50.0);
  EXPECT_EQ(sc.trains[0].spec.stop_tick, 1000u); // defaults to the whole run
  for (const train_binding& tb : sc.trains)
    if (tb.origin == "baseline") EXPECT_NE(tb.input, 1u);
}

TEST(Scenario, ZeroBaselineRateLeavesInputsSilent) {
  json j = one_cell();
  j["stimulus"]["baseline"] = {{"excitatory_hz", 0.0}, {"inhibitory_hz", 10.0}};
  const scenario sc = load_scenario(j);
  ASSERT_EQ(sc.trains.size(), 1u); // only the inhibitory input is driven
  EXPECT_EQ(sc.trains[0].input, 2u);
}

TEST(Scenario, EpisodesAddBurstsOnTop) {
  json j = one_cell();
  j["stimulus"]["episodes"] = json::array({{{"name", "burst"},
                                            {"frequency_hz", 100.0},
                                            {"start_tick", 200},
                                            {"stop_tick", 600},
                                            {"targets",
                                             {{{"cell", 0}, {"input", 0}},
                                              {{"cell", 0},
                                               {"input", 1},
                                               {"phase_ticks", 2}}}}}});
  const scenario sc = load_scenario(j);
  ASSERT_EQ(sc.trains.size(), 5u); // 3 baseline + 2 episode
  EXPECT_EQ(count_origin(sc, "burst"), 2u);
  EXPECT_TRUE(sc.has_episode);
  EXPECT_EQ(sc.episode_start, 200u);
  EXPECT_EQ(sc.episode_end, 600u);
  const train_binding& second = sc.trains[4];
  EXPECT_EQ(second.spec.phase_ticks, 2u); // per-target stagger
  EXPECT_EQ(second.spec.start_tick, 200u);
  EXPECT_EQ(second.spec.stop_tick, 600u);
}

TEST(Scenario, TrainSeedsAreDistinctAndSeedDependent) {
  const scenario a = load_scenario(one_cell());
  json j = one_cell();
  j["seed"] = 2;
  const scenario b = load_scenario(j);
  EXPECT_NE(a.trains[0].seed, a.trains[1].seed);
  EXPECT_NE(a.trains[0].seed, b.trains[0].seed);
}

TEST(Scenario, PresetEpsp5MatchesThePublishedSetup) {
  const scenario sc = load_scenario(preset_json("epsp5"));
  ASSERT_EQ(sc.cells.size(), 1u);
  const auto& cb = sc.cells[0];
  ASSERT_EQ(cb.input_kinds.size(), 16u);
  for (std::size_t i = 0; i < 13; ++i)
    EXPECT_EQ(cb.input_kinds[i], synapse_kind::excitatory);
  for (std::size_t i = 13; i < 16; ++i)
    EXPECT_EQ(cb.input_kinds[i], synapse_kind::inhibitory);
  EXPECT_EQ(cb.min_psp_mv, 2.5);
  EXPECT_EQ(cb.epsp_amplitude_mv, 5.0);
  EXPECT_EQ(sc.total_ticks, 5000u);
  EXPECT_TRUE(sc.has_episode);
  EXPECT_EQ(sc.episode_start, 1600u);
  EXPECT_EQ(sc.episode_end, 2400u);
  EXPECT_EQ(count_origin(sc, "baseline"), 16u);
  EXPECT_EQ(count_origin(sc, "training"), 3u);
  // the training burst hits inputs 7, 8 and 9
  std::vector<std::uint32_t> trained;
  for (const train_binding& tb : sc.trains)
    if (tb.origin == "training") {
      trained.push_back(tb.input);
      EXPECT_EQ(tb.spec.frequency_hz, 100.0);
      EXPECT_EQ(tb.spec.start_tick, 1600u);
      EXPECT_EQ(tb.spec.stop_tick, 2400u);
    }
  EXPECT_EQ(trained, (std::vector<std::uint32_t>{7, 8, 9}));
  EXPECT_TRUE(sc.has_recording);
  EXPECT_EQ(sc.record_cell, 0u);
}

TEST(Scenario, PresetEpsp7OnlyRaisesTheEpsp) {
  const scenario five = load_scenario(preset_json("epsp5"));
  const scenario seven = load_scenario(preset_json("epsp7"));
  EXPECT_DOUBLE_EQ(seven.cells[0].epsp_amplitude_mv, 7.0);
  EXPECT_EQ(seven.cells[0].ipsp_amplitude_mv, five.cells[0].ipsp_amplitude_mv);
  EXPECT_EQ(seven.trains.size(), five.trains.size());
}

TEST(Scenario, UnknownPresetThrows) {
  EXPECT_THROW(preset_json("epsp9"), config_error);
}

TEST(Scenario, ResolvedEchoRoundTrips) {
  const scenario first = load_scenario(preset_json("epsp5"));
  const scenario second = load_scenario(first.resolved);
  EXPECT_EQ(first.resolved, second.resolved);
  EXPECT_EQ(second.trains.size(), first.trains.size());
  for (std::size_t k = 0; k < first.trains.size(); ++k) {
    EXPECT_EQ(second.trains[k].seed, first.trains[k].seed);
    EXPECT_EQ(second.trains[k].spec.phase_ticks, first.trains[k].spec.phase_ticks);
  }
}

TEST(Scenario, ManifestWrapperIsAccepted) {
  json manifest = {{"code_version", "x"},
                   {"created_utc", "2000-01-01T00:00:00Z"},
                   {"scenario", preset_json("epsp5")}};
  const scenario sc = load_scenario(manifest);
  EXPECT_EQ(sc.cells.size(), 1u);
  EXPECT_EQ(sc.trains.size(), 19u);
}

TEST(Scenario, ConnectionsParseAndValidate) {
  json j = json::parse(R"({
    "schema_version": 1,
    "cells": [
      {"id": 1, "kind": "excitatory", "inputs": ["excitatory", "inhibitory"]},
      {"id": 2, "kind": "inhibitory", "inputs": ["excitatory", "inhibitory"]}
    ],
    "connections": [
      {"source": {"cell": 1}, "target": {"cell": 2, "input": 0}, "delay_ticks": 4},
      {"source": {"cell": 2}, "target": {"cell": 1, "input": 1}},
      {"source": {"external": 9}, "target": {"cell": 1, "input": 0}}
    ]
  })");
  const scenario sc = load_scenario(j);
  ASSERT_EQ(sc.connections.size(), 3u);
  EXPECT_EQ(sc.connections[0].delay_ticks, 4u);
  EXPECT_EQ(sc.connections[1].delay_ticks, 1u); // default
  EXPECT_EQ(sc.connections[2].source.from, fcsim::source_ref::origin::external);

  // wrong polarity: excitatory axon onto the inhibitory input
  j["connections"][0]["target"]["input"] = 1;
  EXPECT_THROW(load_scenario(j), config_error);
}

TEST(Scenario, RejectsBrokenConfigs) {
  const auto expect_bad = [](json j) { EXPECT_THROW(load_scenario(j), config_error); };

  json bad = one_cell();
  bad["cells"][0]["inputs"] = json::array();
  expect_bad(bad);

  bad = one_cell();
  bad["cells"][0]["inputs"][0] = "sideways";
  expect_bad(bad);

  bad = one_cell();
  bad["cells"].push_back(bad["cells"][0]); // duplicate id
  expect_bad(bad);

  bad = one_cell();
  bad["cells"][0]["weights"] = {1.0, 0.9}; // wrong arity
  expect_bad(bad);

  bad = one_cell();
  bad["cells"][0]["weights"] = {0.5, 0.9, 1.0}; // grows with distance
  expect_bad(bad);

  bad = one_cell();
  bad["cells"][0]["params"]["enhancement"] = 0.5;
  expect_bad(bad);

  bad = one_cell();
  bad["cells"][0]["params"]["rise_ticks"] = 0;
  expect_bad(bad);

  bad = one_cell();
  bad["total_ticks"] = 0;
  expect_bad(bad);

  bad = one_cell();
  bad["stimulus"]["trains"] = json::array(
      {{{"cell", 5}, {"input", 0}, {"frequency_hz", 10.0}}}); // unknown cell
  expect_bad(bad);

  bad = one_cell();
  bad["stimulus"]["trains"] = json::array(
      {{{"cell", 0}, {"input", 0}, {"frequency_hz", 2001.0}}});
  expect_bad(bad);

  bad = one_cell();
  bad["stimulus"]["trains"] = json::array(
      {{{"cell", 0}, {"input", 0}, {"frequency_hz", 10.0}, {"stop_tick", 2000}}});
  expect_bad(bad); // beyond total_ticks of 1000

  bad = one_cell();
  bad["stimulus"]["episodes"] = json::array({{{"frequency_hz", 10.0},
                                              {"start_tick", 600},
                                              {"stop_tick", 600},
                                              {"targets", {{{"cell", 0}, {"input", 0}}}}}});
  expect_bad(bad); // empty window

  bad = one_cell();
  bad["stimulus"]["episodes"] = json::array({{{"frequency_hz", 10.0},
                                              {"start_tick", 0},
                                              {"stop_tick", 1500},
                                              {"targets", {{{"cell", 0}, {"input", 0}}}}}});
  expect_bad(bad); // beyond total_ticks

  bad = one_cell();
  bad["recording"] = {{"cell", 3}};
  expect_bad(bad);

  bad = one_cell();
  bad["recording"] = {{"rate_window_ticks", 0}};
  expect_bad(bad);

  bad = one_cell();
  bad["seed"] = -4;
  expect_bad(bad);
}

TEST(Scenario, WarnsWhenTheKernelTailIsVisiblyTruncated) {
  // the default half-life of 6 leaves a visible step at the register edge
  const scenario noisy = load_scenario(one_cell());
  EXPECT_FALSE(noisy.warnings.empty());

  json j = one_cell();
  j["cells"][0]["params"]["decay_half_life_ticks"] = 3.0;
  const scenario quiet = load_scenario(j);
  EXPECT_TRUE(quiet.warnings.empty());
}

TEST(Scenario, BuildNetworkProducesWorkingCells) {
  const scenario sc = load_scenario(preset_json("epsp5"));
  fcsim::network net = fcsim::build_network(sc);
  EXPECT_EQ(net.n_cells(), 1u);
  EXPECT_TRUE(net.has_cell(0));
  EXPECT_EQ(net.cell(0).n_inputs(), 16u);
  EXPECT_EQ(net.cell(0).input(0).kernel.amplitude_mv, 5.0);
  EXPECT_EQ(net.cell(0).input(15).kernel.kind, synapse_kind::inhibitory);
  EXPECT_DOUBLE_EQ(net.cell(0).input(0).weight, 0.97);
  EXPECT_DOUBLE_EQ(net.cell(0).input(15).weight, 0.582);
  net.step();
  EXPECT_EQ(net.last_body_mv(0), -80.0);
}

TEST(Scenario, FileLoaderDistinguishesMissingFromMalformed) {
  EXPECT_THROW(fcsim::load_scenario_file("/no/such/file.json"), fcsim::io_error);
  const auto dir = std::filesystem::path(testing::TempDir());
  const auto path = dir / "broken_scenario.json";
  fcsim::write_text_file(path, "{ not json");
  EXPECT_THROW(fcsim::load_scenario_file(path), config_error);
  std::filesystem::remove(path);
}
