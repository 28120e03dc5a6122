#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <fcsim/fcsim.hpp>

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
  std::string s;
  fcsim::detail::append_number(s, v);
  return s;
}

struct overrides {
  bool has_seed = false;
  std::uint64_t seed = 0;
  bool has_total = false;
  std::uint64_t total_ticks = 0;
};

// Overrides land inside the scenario object itself so the manifest echoes
// what actually ran.
void apply_overrides(nlohmann::json& j, const overrides& ov) {
  nlohmann::json& root =
      j.is_object() && j.contains("scenario") && j["scenario"].is_object()
          ? j["scenario"]
          : j;
  if (ov.has_seed) root["seed"] = ov.seed;
  if (ov.has_total) root["total_ticks"] = ov.total_ticks;
}

void print_warnings(const fcsim::scenario& sc) {
  for (const std::string& w : sc.warnings)
    std::cerr << "warning: " << w << "\n";
}

void print_resolved(const fcsim::scenario& sc) {
  for (const fcsim::cell_build& cb : sc.cells) {
    std::cout << "cell " << cb.id << ": " << cb.input_kinds.size()
              << " inputs, min PSP " << fmt(cb.min_psp_mv) << " mV, EPSP amplitude "
              << fmt(cb.epsp_amplitude_mv) << " mV, IPSP amplitude "
              << fmt(cb.ipsp_amplitude_mv) << " mV\n";
  }
  std::cout << "total_ticks " << sc.total_ticks << ", seed " << sc.seed << ", "
            << sc.trains.size() << " stimulus trains, " << sc.connections.size()
            << " connections\n";
}

int run_scenario(const fcsim::scenario& sc, const fs::path& out) {
  const fcsim::record_set rec = fcsim::run(sc);
  fcsim::write_outputs(rec, sc.resolved, out);

  std::cout << rec.spikes.size() << " spikes total";
  if (rec.has_observed)
    std::cout << ", " << rec.observed_spikes.size() << " from observed cell "
              << rec.observed_cell;
  std::cout << "\n";

  if (rec.has_observed) {
    const std::vector<fcsim::tick_t> intervals = fcsim::isi(rec.observed_spikes);
    std::cout << "return map: " << fcsim::distinct_return_points(intervals)
              << " distinct points, interval variance "
              << fmt(fcsim::interval_variance(intervals)) << " ms^2\n";
    if (sc.has_episode) {
      const fcsim::comparison c = fcsim::compare_around_episode(rec, sc);
      std::cout << "pre  [" << c.pre.from << ", " << c.pre.to << "): "
                << fmt(c.pre.rate_hz) << " Hz (" << c.pre.spike_count << " spikes)\n";
      std::cout << "post [" << c.post.from << ", " << c.post.to << "): "
                << fmt(c.post.rate_hz) << " Hz (" << c.post.spike_count
                << " spikes)\n";
      std::cout << "memory at end:";
      for (double m : c.post.memory_at_end) std::cout << " " << fmt(m);
      std::cout << "\n";
    }
  }
  std::cout << "outputs written to " << out.string() << "\n";
  return 0;
}

// tick,cell rows of the lowest cell id found.
std::vector<fcsim::tick_t> read_spikes_csv(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fcsim::io_error("cannot read: " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("tick,cell", 0) != 0)
    throw fcsim::config_error(path.string(), "expected a tick,cell header");
  std::vector<std::pair<fcsim::tick_t, std::uint32_t>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw fcsim::config_error(path.string(),
                                "line " + std::to_string(line_no) + ": expected tick,cell");
    try {
      rows.emplace_back(std::stoull(line.substr(0, comma)),
                        static_cast<std::uint32_t>(std::stoul(line.substr(comma + 1))));
    } catch (const std::exception&) {
      throw fcsim::config_error(path.string(),
                                "line " + std::to_string(line_no) + ": expected tick,cell");
    }
  }
  std::uint32_t lowest = 0;
  bool any = false;
  for (const auto& [t, c] : rows)
    if (!any || c < lowest) { lowest = c; any = true; }
  std::vector<fcsim::tick_t> ticks;
  for (const auto& [t, c] : rows)
    if (c == lowest) ticks.push_back(t);
  return ticks;
}

int analyze_spikes(const fs::path& input, const fs::path& out,
                   fcsim::tick_t total_ticks) {
  const std::vector<fcsim::tick_t> spikes = read_spikes_csv(input);
  const std::vector<fcsim::tick_t> intervals = fcsim::isi(spikes);
  const auto points = fcsim::return_map(intervals);

  fs::create_directories(out);
  fcsim::write_text_file(out / "isi.csv", fcsim::isi_csv(intervals));
  fcsim::write_text_file(out / "poincare.csv", fcsim::poincare_csv(points));
  fcsim::write_text_file(
      out / "rates.csv",
      fcsim::rates_csv(fcsim::rate_per_window(spikes, total_ticks, 500), 500));
  fcsim::write_text_file(out / "poincare.svg", fcsim::poincare_svg(points));

  std::cout << spikes.size() << " spikes, " << intervals.size() << " intervals, "
            << fcsim::distinct_return_points(intervals)
            << " distinct return points, interval variance "
            << fmt(fcsim::interval_variance(intervals)) << " ms^2\n";
  std::cout << "outputs written to " << out.string() << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"firing-cell simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "fcsim-out";
  std::string preset;
  overrides ov;

  CLI::App* validate = app.add_subcommand(
      "validate", "check a scenario file or preset and print what it resolves to");
  validate->add_option("--config", config_path, "scenario or manifest file");
  validate->add_option("--preset", preset, "built-in scenario (epsp5, epsp7)");

  CLI::App* run = app.add_subcommand("run", "simulate a scenario file");
  run->add_option("--config", config_path, "scenario or manifest file")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--seed", ov.seed, "override the scenario seed");
  run->add_option("--total-ticks", ov.total_ticks, "override the run length");

  CLI::App* replicate =
      app.add_subcommand("replicate", "simulate a built-in preset");
  replicate->add_option("--preset", preset, "built-in scenario (epsp5, epsp7)")
      ->required();
  replicate->add_option("--out", out_dir, "output directory");
  replicate->add_option("--seed", ov.seed, "override the scenario seed");
  replicate->add_option("--total-ticks", ov.total_ticks, "override the run length");

  CLI::App* analyze = app.add_subcommand(
      "analyze", "recompute interval analysis from an existing spikes.csv");
  analyze->add_option("--config", config_path, "spikes.csv to analyze")->required();
  analyze->add_option("--out", out_dir, "output directory (default: beside the input)");
  analyze->add_option("--total-ticks", ov.total_ticks,
                      "run length the rates are computed against");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  }

  ov.has_seed = run->count("--seed") + replicate->count("--seed") > 0;
  ov.has_total = run->count("--total-ticks") + replicate->count("--total-ticks") +
                     analyze->count("--total-ticks") >
                 0;

  try {
    if (validate->parsed()) {
      const bool have_config = validate->count("--config") > 0;
      const bool have_preset = validate->count("--preset") > 0;
      if (have_config == have_preset) {
        std::cerr << "validate needs exactly one of --config or --preset\n";
        return 64;
      }
      const nlohmann::json j = have_preset ? fcsim::preset_json(preset)
                                           : fcsim::parse_json_file(config_path);
      const fcsim::scenario sc = fcsim::load_scenario(j);
      print_warnings(sc);
      print_resolved(sc);
      std::cout << "scenario OK\n";
      return 0;
    }
    if (run->parsed()) {
      nlohmann::json j = fcsim::parse_json_file(config_path);
      apply_overrides(j, ov);
      const fcsim::scenario sc = fcsim::load_scenario(j);
      print_warnings(sc);
      return run_scenario(sc, out_dir);
    }
    if (replicate->parsed()) {
      nlohmann::json j = fcsim::preset_json(preset);
      apply_overrides(j, ov);
      const fcsim::scenario sc = fcsim::load_scenario(j);
      print_warnings(sc);
      return run_scenario(sc, out_dir);
    }
    if (analyze->parsed()) {
      const fs::path input = config_path;
      const fs::path out = analyze->count("--out") > 0
                               ? fs::path(out_dir)
                               : (input.has_parent_path() ? input.parent_path()
                                                          : fs::path("."));
      return analyze_spikes(input, out, ov.has_total ? ov.total_ticks : 5000);
    }
  } catch (const fcsim::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 66;
  } catch (const fcsim::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 65;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 70;
  }
  return 64;
}
