#include "cli_commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "dmfsense/errors.hpp"
#include "dmfsense/render.hpp"
#include "dmfsense/rng.hpp"
#include "dmfsense/scenario.hpp"

namespace dmfsense::cli {
namespace {

// Calibration draws its noise from streams far above any scan index.
constexpr std::uint64_t kCalibrationStreamBase = 1u << 20;

int write_output(const std::string& text, const std::string& out_path,
                 std::ostream& out, std::ostream& diag) {
  if (out_path.empty()) {
    out << text;
    return kExitOk;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    diag << "error: cannot write " << out_path << '\n';
    return kExitFailure;
  }
  file << text;
  return kExitOk;
}

struct ScanResult {
  ScanStream stream;
  HexArray array{8};
};

ScanResult run_scenario(const Scenario& scenario,
                        const Thresholds& thresholds) {
  ScanContext context = make_context(scenario);
  context.thresholds = thresholds;

  const StimulusConfig effective =
      effective_stimulus(scenario.stimulus, scenario.adc);

  ScanResult result;
  result.array = context.array;
  result.stream.array_side = scenario.array_side;
  result.stream.stimulus_frequency_hz = effective.frequency_hz;
  result.stream.bin_index = static_cast<int>(
      std::lround(effective.frequency_hz / scenario.adc.bin_width_hz()));
  result.stream.thresholds = thresholds;
  result.stream.seed = scenario.seed;

  double sim_time = 0.0;
  const int ticks = scenario.tick_count();
  for (int tick = 0; tick < ticks; ++tick) {
    ScanOutcome outcome = step_scenario(context, scenario.script,
                                        scenario.faults, scenario.medium, tick);
    sim_time += outcome.map.scan_elapsed_s;
    if (tick > 0) sim_time += scenario.script.detection_interval_s;
    result.stream.sim_time_s.push_back(sim_time);
    result.stream.maps.push_back(std::move(outcome.map));
  }
  return result;
}

std::string render_per_scan_text(const ScanResult& result, bool csv) {
  std::ostringstream out;
  for (std::size_t i = 0; i < result.stream.maps.size(); ++i) {
    const StatusMap& map = result.stream.maps[i];
    out << "# scan " << map.scan_index << " elapsed_s=" << map.scan_elapsed_s
        << " droplets=" << map.count(ChannelState::connected_droplet) << '\n';
    out << (csv ? render_csv(map, result.array)
                : render_ascii(map, result.array));
    if (i + 1 < result.stream.maps.size()) out << '\n';
  }
  return out.str();
}

int write_svg_scans(const ScanResult& result, const std::string& out_path,
                    std::ostream& out, std::ostream& diag) {
  if (out_path.empty() || result.stream.maps.size() == 1) {
    std::string text;
    for (const StatusMap& map : result.stream.maps)
      text += render_svg(map, result.array);
    return write_output(text, out_path, out, diag);
  }
  // One file per scan: <stem>_NNN.svg next to the requested path.
  const std::filesystem::path base(out_path);
  for (const StatusMap& map : result.stream.maps) {
    char suffix[16];
    std::snprintf(suffix, sizeof(suffix), "_%03d", map.scan_index);
    std::filesystem::path path = base.parent_path() /
        (base.stem().string() + suffix + base.extension().string());
    const int rc = write_output(render_svg(map, result.array), path.string(),
                                out, diag);
    if (rc != kExitOk) return rc;
  }
  return kExitOk;
}

}  // namespace

int cmd_calibrate(const CalibrateOptions& options, std::ostream& out,
                  std::ostream& diag) {
  try {
    Scenario scenario = load_scenario(options.scenario_path);
    if (options.seed) scenario.seed = *options.seed;
    if (scenario.droplet_liquid.empty()) {
      diag << "error: scenario sets no droplet_liquid for the droplet class\n";
      return kExitFailure;
    }

    const ScanContext context = make_context(scenario);
    const StimulusConfig effective =
        effective_stimulus(scenario.stimulus, scenario.adc);

    const auto measure_class =
        [&](const ChannelOccupancy& occupancy,
            std::uint64_t stream) -> std::vector<double> {
      std::vector<double> magnitudes;
      magnitudes.reserve(static_cast<std::size_t>(context.array.size()));
      const double c_dut =
          context.model.dut_capacitance(occupancy, effective.frequency_hz);
      for (int linear = 0; linear < context.array.size(); ++linear) {
        const std::uint64_t seed = derive_seed(
            scenario.seed, stream, static_cast<std::uint64_t>(linear));
        magnitudes.push_back(measure_channel(c_dut, scenario.stimulus,
                                             scenario.frontend, scenario.adc,
                                             seed)
                                 .magnitude.value);
      }
      return magnitudes;
    };

    const std::vector<double> open_m =
        measure_class(ChannelOccupancy::make_open(), kCalibrationStreamBase);
    const std::vector<double> medium_m = measure_class(
        ChannelOccupancy::make_medium(scenario.medium),
        kCalibrationStreamBase + 1);
    const std::vector<double> droplet_m = measure_class(
        ChannelOccupancy::make_droplet(scenario.droplet_liquid),
        kCalibrationStreamBase + 2);

    CalibrationFile calibration;
    calibration.thresholds =
        calibrate(open_m, medium_m, droplet_m, effective.frequency_hz);
    calibration.bin_index = static_cast<int>(
        std::lround(effective.frequency_hz / scenario.adc.bin_width_hz()));
    calibration.seed = scenario.seed;
    calibration.array_side = scenario.array_side;
    calibration.amplitude_v = scenario.stimulus.amplitude_v;
    calibration.sense_resistance_ohm = scenario.frontend.sense_resistance_ohm;
    calibration.medium = scenario.medium;
    calibration.droplet_liquid = scenario.droplet_liquid;

    return write_output(calibration_to_json(calibration), options.out_path,
                        out, diag);
  } catch (const CalibrationOverlapError& error) {
    diag << "calibration failed: " << error.what() << '\n';
    return kExitCalibrationOverlap;
  } catch (const ParseError& error) {
    diag << "parse error: " << error.what() << '\n';
    return kExitParse;
  } catch (const std::exception& error) {
    diag << "error: " << error.what() << '\n';
    return kExitFailure;
  }
}

int cmd_scan(const ScanOptions& options, std::ostream& out,
             std::ostream& diag) {
  try {
    Scenario scenario = load_scenario(options.scenario_path);
    if (options.seed) scenario.seed = *options.seed;

    const CalibrationFile calibration =
        load_calibration(options.calibration_path);
    const StimulusConfig effective =
        effective_stimulus(scenario.stimulus, scenario.adc);
    if (calibration.thresholds.stimulus_frequency_hz != effective.frequency_hz)
      diag << "warning: thresholds calibrated at "
           << calibration.thresholds.stimulus_frequency_hz
           << " Hz but scanning at " << effective.frequency_hz << " Hz\n";

    const ScanResult result = run_scenario(scenario, calibration.thresholds);

    if (options.format == "json")
      return write_output(render_json_stream(result.stream, result.array),
                          options.out_path, out, diag);
    if (options.format == "ascii")
      return write_output(render_per_scan_text(result, false),
                          options.out_path, out, diag);
    if (options.format == "csv")
      return write_output(render_per_scan_text(result, true), options.out_path,
                          out, diag);
    if (options.format == "svg")
      return write_svg_scans(result, options.out_path, out, diag);

    diag << "error: unknown format \"" << options.format << "\"\n";
    return kExitFailure;
  } catch (const ScenarioCollisionError& error) {
    diag << "scenario error: " << error.what() << '\n';
    return kExitScenarioCollision;
  } catch (const ParseError& error) {
    diag << "parse error: " << error.what() << '\n';
    return kExitParse;
  } catch (const std::exception& error) {
    diag << "error: " << error.what() << '\n';
    return kExitFailure;
  }
}

int cmd_track(const TrackOptions& options, std::istream& in, std::ostream& out,
              std::ostream& diag) {
  try {
    std::string text;
    std::string source;
    if (!options.in_path.empty()) {
      std::ifstream file(options.in_path, std::ios::binary);
      if (!file) {
        diag << "parse error: cannot open " << options.in_path << '\n';
        return kExitParse;
      }
      std::ostringstream buffer;
      buffer << file.rdbuf();
      text = buffer.str();
      source = options.in_path;
    } else {
      std::ostringstream buffer;
      buffer << in.rdbuf();
      text = buffer.str();
      source = "<stdin>";
    }

    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
      // Nothing to track; still a well-formed (empty) report.
      const TrackReport empty_report;
      const std::vector<StatusMap> no_maps;
      const HexArray array(8);
      const std::string rendered =
          options.format == "ascii"
              ? render_track_report_text(empty_report, no_maps, array)
              : render_track_report_json(empty_report, no_maps, array);
      return write_output(rendered, options.out_path, out, diag);
    }

    const ScanStream stream = parse_json_stream(text, source);
    const HexArray array(stream.array_side);
    const TrackReport report = track(stream.maps, array);

    const std::string rendered =
        options.format == "ascii"
            ? render_track_report_text(report, stream.maps, array)
            : render_track_report_json(report, stream.maps, array);
    return write_output(rendered, options.out_path, out, diag);
  } catch (const ParseError& error) {
    diag << "parse error: " << error.what() << '\n';
    return kExitParse;
  } catch (const std::exception& error) {
    diag << "error: " << error.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace dmfsense::cli
