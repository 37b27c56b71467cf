#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dmfsense/scan.hpp"

namespace dmfsense {

/// Parsed scenario document: device, chain configs, liquid library, array
/// wiring, faults, and the movement script. See the README for the schema.
struct Scenario {
  int version = 1;
  std::uint64_t seed = 0;
  DeviceGeometry geometry;
  StimulusConfig stimulus;
  FrontEndConfig frontend;
  AdcConfig adc;
  LiquidLibrary liquids;
  std::string medium = "air";
  /// Liquid used for the droplet class during calibration.
  std::string droplet_liquid;
  int array_side = 8;
  std::optional<std::vector<ZoneAssignment>> routing;
  FaultSpec faults;
  MovementScript script;
  /// Playback length override; defaults to the script's tick count.
  std::optional<int> ticks;

  int tick_count() const {
    return ticks.value_or(script.tick_count());
  }
};

Scenario parse_scenario(const std::string& json_text,
                        const std::string& source_name);
Scenario load_scenario(const std::filesystem::path& path);

/// Scan context assembled from a scenario (thresholds left uncalibrated).
ScanContext make_context(const Scenario& scenario);

struct CalibrationFile {
  int version = 1;
  Thresholds thresholds;
  int bin_index = 0;
  /// Provenance: inputs that produced the thresholds. Deliberately no
  /// wall-clock field so identical runs serialize identically.
  std::uint64_t seed = 0;
  int array_side = 8;
  double amplitude_v = 0.0;
  double sense_resistance_ohm = 0.0;
  std::string medium;
  std::string droplet_liquid;
};

std::string calibration_to_json(const CalibrationFile& calibration);
CalibrationFile parse_calibration(const std::string& json_text,
                                  const std::string& source_name);
CalibrationFile load_calibration(const std::filesystem::path& path);

}  // namespace dmfsense
