#include "dmfsense/scan.hpp"

#include <algorithm>
#include <stdexcept>

#include "dmfsense/errors.hpp"
#include "dmfsense/rng.hpp"

namespace dmfsense {

bool FaultSpec::faulted(const HexArray& array,
                        const ElectrodeAddress& address) const {
  for (int channel : open_channels)
    if (channel == address.linear_index) return true;
  if (!zone_cuts.empty()) {
    const Zone zone = array.zone_of(address).zone;
    for (Zone cut : zone_cuts)
      if (cut == zone) return true;
  }
  return false;
}

int StatusMap::count(ChannelState state) const {
  int n = 0;
  for (const ChannelReading& reading : readings)
    if (reading.state == state) ++n;
  return n;
}

StatusMap scan_all(const ScanContext& context,
                   const std::vector<ChannelOccupancy>& occupancies,
                   const FaultSpec& faults, int scan_index) {
  const HexArray& array = context.array;
  if (static_cast<int>(occupancies.size()) != array.size())
    throw std::invalid_argument("occupancy assignment must cover all " +
                                std::to_string(array.size()) + " electrodes");
  context.thresholds.validate();

  const StimulusConfig effective =
      effective_stimulus(context.stimulus, context.adc);

  StatusMap map;
  map.scan_index = scan_index;
  map.readings.resize(occupancies.size());

  for (int linear : array.scan_order()) {
    const ElectrodeAddress& address = array.at(linear);
    const ChannelOccupancy& occupancy =
        occupancies[static_cast<std::size_t>(linear)];

    const bool open = faults.faulted(array, address);
    const double c_dut =
        open ? context.model.dut_capacitance(ChannelOccupancy::make_open(),
                                             effective.frequency_hz)
             : context.model.dut_capacitance(occupancy, effective.frequency_hz);

    const std::uint64_t channel_seed =
        derive_seed(context.seed, static_cast<std::uint64_t>(scan_index),
                    static_cast<std::uint64_t>(linear));
    const ChannelMeasurement measurement = measure_channel(
        c_dut, context.stimulus, context.frontend, context.adc, channel_seed);

    ChannelReading& reading = map.readings[static_cast<std::size_t>(linear)];
    reading.linear_index = linear;
    reading.zone = array.zone_of(address);
    reading.magnitude = measurement.magnitude.value;
    reading.state = classify(measurement.magnitude, context.thresholds);
    reading.saturated = measurement.saturated;
    reading.elapsed_s = measurement.elapsed_s;
    map.scan_elapsed_s += measurement.elapsed_s;
  }
  return map;
}

double per_channel_elapsed(const AdcConfig& adc) {
  adc.validate();
  return static_cast<double>(adc.sample_count) / adc.sampling_rate_hz +
         adc.processing_time_s;
}

double scan_elapsed_model(const AdcConfig& adc, int channel_count) {
  if (channel_count < 0)
    throw std::invalid_argument("channel_count must be >= 0");
  return per_channel_elapsed(adc) * static_cast<double>(channel_count);
}

int MovementScript::tick_count() const {
  std::size_t longest = 0;
  for (const DropletPath& droplet : droplets)
    longest = std::max(longest, droplet.waypoints.size());
  return longest == 0 ? 1 : static_cast<int>(longest);
}

void MovementScript::validate(const HexArray& array) const {
  if (detection_interval_s < 0.0)
    throw std::invalid_argument("detection_interval must be >= 0");
  for (const DropletPath& droplet : droplets) {
    if (droplet.waypoints.empty())
      throw std::invalid_argument("droplet " + std::to_string(droplet.id) +
                                  " has an empty path");
    for (std::size_t i = 0; i < droplet.waypoints.size(); ++i) {
      const ElectrodeAddress& w = droplet.waypoints[i];
      if (!array.contains(w.q, w.r))
        throw std::invalid_argument(
            "droplet " + std::to_string(droplet.id) + " waypoint " +
            std::to_string(i) + " (" + std::to_string(w.q) + ", " +
            std::to_string(w.r) + ") outside array");
      if (i > 0 &&
          HexArray::hex_distance(droplet.waypoints[i - 1], w) > 1)
        throw std::invalid_argument(
            "droplet " + std::to_string(droplet.id) + " waypoints " +
            std::to_string(i - 1) + " -> " + std::to_string(i) +
            " are not hex neighbors");
    }
  }
}

std::vector<ChannelOccupancy> occupancies_at_tick(const MovementScript& script,
                                                  int tick,
                                                  const HexArray& array,
                                                  const std::string& medium) {
  if (tick < 0) throw std::invalid_argument("tick must be >= 0");
  script.validate(array);

  std::vector<ChannelOccupancy> occupancies(
      static_cast<std::size_t>(array.size()),
      ChannelOccupancy::make_medium(medium));

  std::vector<int> occupied_by(static_cast<std::size_t>(array.size()), -1);
  for (const DropletPath& droplet : script.droplets) {
    const std::size_t step =
        std::min(static_cast<std::size_t>(tick), droplet.waypoints.size() - 1);
    const ElectrodeAddress& waypoint = droplet.waypoints[step];
    const int linear = array.at(waypoint.q, waypoint.r).linear_index;
    if (occupied_by[static_cast<std::size_t>(linear)] >= 0)
      throw ScenarioCollisionError(
          tick, "droplets " +
                    std::to_string(occupied_by[static_cast<std::size_t>(linear)]) +
                    " and " + std::to_string(droplet.id) + " both on (" +
                    std::to_string(waypoint.q) + ", " +
                    std::to_string(waypoint.r) + ")");
    occupied_by[static_cast<std::size_t>(linear)] = droplet.id;
    occupancies[static_cast<std::size_t>(linear)] =
        ChannelOccupancy::make_droplet(droplet.liquid);
  }
  return occupancies;
}

ScanOutcome step_scenario(const ScanContext& context,
                          const MovementScript& script, const FaultSpec& faults,
                          const std::string& medium, int tick) {
  ScanOutcome outcome;
  outcome.occupancies = occupancies_at_tick(script, tick, context.array, medium);
  outcome.map = scan_all(context, outcome.occupancies, faults, tick);
  return outcome;
}

TrackReport track(const std::vector<StatusMap>& maps, const HexArray& array) {
  TrackReport report;

  struct Active {
    int trajectory = -1;  // index into report.trajectories
    ElectrodeAddress position;
  };
  std::vector<Active> active;

  for (const StatusMap& map : maps) {
    std::vector<int> detections;
    for (const ChannelReading& reading : map.readings)
      if (reading.state == ChannelState::connected_droplet)
        detections.push_back(reading.linear_index);
    std::sort(detections.begin(), detections.end());

    std::vector<bool> detection_matched(detections.size(), false);
    std::vector<bool> track_matched(active.size(), false);
    std::vector<Active> next_active;

    // Nearest first: exact holds (distance 0), then single steps.
    for (int distance = 0; distance <= 1; ++distance) {
      for (std::size_t d = 0; d < detections.size(); ++d) {
        if (detection_matched[d]) continue;
        const ElectrodeAddress& detected = array.at(detections[d]);

        int chosen = -1;
        int candidates = 0;
        for (std::size_t t = 0; t < active.size(); ++t) {
          if (track_matched[t]) continue;
          if (HexArray::hex_distance(active[t].position, detected) != distance)
            continue;
          ++candidates;
          if (chosen < 0 || active[t].position.linear_index <
                                active[static_cast<std::size_t>(chosen)]
                                    .position.linear_index)
            chosen = static_cast<int>(t);
        }
        if (chosen < 0) continue;
        if (candidates > 1)
          report.ambiguity_notes.push_back(
              "scan " + std::to_string(map.scan_index) + ": detection at index " +
              std::to_string(detections[d]) + " had " +
              std::to_string(candidates) +
              " equidistant candidates; kept lowest linear index");

        detection_matched[d] = true;
        track_matched[static_cast<std::size_t>(chosen)] = true;
        Active& matched = active[static_cast<std::size_t>(chosen)];
        report.trajectories[static_cast<std::size_t>(matched.trajectory)]
            .points.push_back({map.scan_index, detected});
        next_active.push_back({matched.trajectory, detected});
      }
    }

    for (std::size_t d = 0; d < detections.size(); ++d) {
      if (detection_matched[d]) continue;
      const ElectrodeAddress& detected = array.at(detections[d]);
      Trajectory trajectory;
      trajectory.id = static_cast<int>(report.trajectories.size());
      trajectory.points.push_back({map.scan_index, detected});
      report.trajectories.push_back(std::move(trajectory));
      next_active.push_back(
          {static_cast<int>(report.trajectories.size()) - 1, detected});
    }

    active = std::move(next_active);  // unmatched tracks end here
  }
  return report;
}

}  // namespace dmfsense
