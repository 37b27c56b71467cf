#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dmfsense/classify.hpp"
#include "dmfsense/device_model.hpp"
#include "dmfsense/dsp.hpp"
#include "dmfsense/hexarray.hpp"

namespace dmfsense {

/// Injected connectivity faults: whole multiplexer zones cut at the
/// connector, or individual channels forced open.
struct FaultSpec {
  std::vector<Zone> zone_cuts;
  std::vector<int> open_channels;  // linear indices

  bool empty() const { return zone_cuts.empty() && open_channels.empty(); }
  bool faulted(const HexArray& array, const ElectrodeAddress& address) const;
};

struct ChannelReading {
  int linear_index = -1;
  ZoneAssignment zone;
  double magnitude = 0.0;
  ChannelState state = ChannelState::bad_connection;
  bool saturated = false;
  double elapsed_s = 0.0;
};

/// One full-array classification snapshot with its simulated timing ledger.
struct StatusMap {
  int scan_index = 0;
  double scan_elapsed_s = 0.0;  // sum of per-channel elapsed
  std::vector<ChannelReading> readings;  // indexed by linear_index

  int count(ChannelState state) const;
};

/// Everything a scan needs besides the occupancy: array, device model,
/// front-end configuration, calibrated thresholds, and the base RNG seed.
struct ScanContext {
  HexArray array{8};
  DeviceModel model;
  StimulusConfig stimulus;
  FrontEndConfig frontend;
  AdcConfig adc;
  Thresholds thresholds;
  std::uint64_t seed = 0;
};

/// Measures every electrode in zone-then-pin order; faulted channels are
/// forced to the open-circuit model regardless of occupancy. Per-channel
/// noise seeds derive from (seed, scan_index, linear_index), so the scan
/// order affects only the timing ledger's interleaving, never a verdict.
StatusMap scan_all(const ScanContext& context,
                   const std::vector<ChannelOccupancy>& occupancies,
                   const FaultSpec& faults, int scan_index);

double per_channel_elapsed(const AdcConfig& adc);
double scan_elapsed_model(const AdcConfig& adc, int channel_count = 169);

/// Scripted waypoints for one droplet; consecutive waypoints must be hex
/// neighbors (or equal, for a hold step).
struct DropletPath {
  int id = 0;
  std::string liquid;
  std::vector<ElectrodeAddress> waypoints;
};

struct MovementScript {
  std::vector<DropletPath> droplets;
  /// Extra simulated wait between movement steps; a scenario parameter
  /// with no fidelity claim.
  double detection_interval_s = 0.0;

  /// Ticks a full playback takes: the longest path, or one scan for an
  /// empty script.
  int tick_count() const;
  void validate(const HexArray& array) const;
};

/// Occupancies at one tick: droplets at their waypoints (paths that ended
/// hold their last electrode), every other electrode covered by the medium.
/// Throws ScenarioCollisionError if two droplets land on one electrode.
std::vector<ChannelOccupancy> occupancies_at_tick(const MovementScript& script,
                                                  int tick,
                                                  const HexArray& array,
                                                  const std::string& medium);

struct ScanOutcome {
  std::vector<ChannelOccupancy> occupancies;
  StatusMap map;
};

/// Advance the script to `tick`, rebuild occupancies, and scan.
ScanOutcome step_scenario(const ScanContext& context,
                          const MovementScript& script, const FaultSpec& faults,
                          const std::string& medium, int tick);

struct TrajectoryPoint {
  int scan_index = 0;
  ElectrodeAddress address;
};

struct Trajectory {
  int id = 0;
  std::vector<TrajectoryPoint> points;
};

struct TrackReport {
  std::vector<Trajectory> trajectories;
  std::vector<std::string> ambiguity_notes;
};

/// Greedy nearest-neighbor association of droplet detections between
/// consecutive scans (hex distance <= 1). Unmatched detections open new
/// trajectories; equidistant candidates resolve to the lowest linear index
/// and are logged.
TrackReport track(const std::vector<StatusMap>& maps, const HexArray& array);

}  // namespace dmfsense
