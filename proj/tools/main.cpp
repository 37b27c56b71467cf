#include <iostream>

#include <CLI11.hpp>

#include "cli_commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "dmfsense - impedance-sensing simulator for digital-microfluidic "
      "electrode arrays"};
  app.require_subcommand(1);

  dmfsense::cli::CalibrateOptions calibrate_options;
  std::uint64_t calibrate_seed = 0;
  CLI::App* calibrate =
      app.add_subcommand("calibrate",
                         "Simulate labeled open/medium/droplet magnitudes and "
                         "derive the t1/t2 thresholds");
  calibrate->add_option("--scenario", calibrate_options.scenario_path,
                        "Scenario JSON file")
      ->required();
  calibrate->add_option("--out", calibrate_options.out_path,
                        "Calibration output path (default: stdout)");
  CLI::Option* calibrate_seed_option = calibrate->add_option(
      "--seed", calibrate_seed, "Override the scenario seed");

  dmfsense::cli::ScanOptions scan_options;
  std::uint64_t scan_seed = 0;
  CLI::App* scan = app.add_subcommand(
      "scan", "Play the scenario (faults + movement script) and render "
              "every status map");
  scan->add_option("--scenario", scan_options.scenario_path,
                   "Scenario JSON file")
      ->required();
  scan->add_option("--calibration", scan_options.calibration_path,
                   "Calibration JSON file from `calibrate`")
      ->required();
  scan->add_option("--format", scan_options.format,
                   "Output format: ascii|csv|json|svg")
      ->check(CLI::IsMember({"ascii", "csv", "json", "svg"}));
  scan->add_option("--out", scan_options.out_path,
                   "Output path (default: stdout; svg with several scans "
                   "writes numbered siblings)");
  CLI::Option* scan_seed_option =
      scan->add_option("--seed", scan_seed, "Override the scenario seed");

  dmfsense::cli::TrackOptions track_options;
  CLI::App* track = app.add_subcommand(
      "track", "Reconstruct droplet trajectories from scan JSON output");
  track->add_option("--in", track_options.in_path,
                    "Scan stream JSON path (default: stdin)");
  track->add_option("--format", track_options.format,
                    "Report format: json|ascii")
      ->check(CLI::IsMember({"json", "ascii"}));
  track->add_option("--out", track_options.out_path,
                    "Output path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  if (calibrate->parsed()) {
    if (*calibrate_seed_option) calibrate_options.seed = calibrate_seed;
    return dmfsense::cli::cmd_calibrate(calibrate_options, std::cout,
                                        std::cerr);
  }
  if (scan->parsed()) {
    if (*scan_seed_option) scan_options.seed = scan_seed;
    return dmfsense::cli::cmd_scan(scan_options, std::cout, std::cerr);
  }
  return dmfsense::cli::cmd_track(track_options, std::cin, std::cout,
                                  std::cerr);
}
