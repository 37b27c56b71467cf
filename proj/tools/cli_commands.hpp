#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace dmfsense::cli {

// Exit codes; distinct values for the failure classes scripts dispatch on.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitCalibrationOverlap = 3;
inline constexpr int kExitScenarioCollision = 4;

struct CalibrateOptions {
  std::string scenario_path;
  std::string out_path;  // empty -> stdout
  std::optional<std::uint64_t> seed;
};

/// Simulates labeled open/medium/droplet magnitudes for every electrode,
/// calibrates thresholds, and writes the calibration document.
int cmd_calibrate(const CalibrateOptions& options, std::ostream& out,
                  std::ostream& diag);

struct ScanOptions {
  std::string scenario_path;
  std::string calibration_path;
  std::string format = "json";  // ascii | csv | json | svg
  std::string out_path;         // empty -> stdout
  std::optional<std::uint64_t> seed;
};

/// Plays the scenario (faults + movement script) and renders every scan.
int cmd_scan(const ScanOptions& options, std::ostream& out, std::ostream& diag);

struct TrackOptions {
  std::string in_path;          // empty -> read the provided stream
  std::string format = "json";  // json | ascii
  std::string out_path;         // empty -> stdout
};

/// Re-ingests a scan JSON stream and reconstructs droplet trajectories.
int cmd_track(const TrackOptions& options, std::istream& in, std::ostream& out,
              std::ostream& diag);

}  // namespace dmfsense::cli
