#include "dmfsense/render.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "dmfsense/errors.hpp"

namespace dmfsense {
namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string format_double(const char* fmt, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), fmt, value);
  return buffer;
}

ChannelState state_from_name(const std::string& name,
                             const std::string& source) {
  if (name == "bad_connection") return ChannelState::bad_connection;
  if (name == "idle") return ChannelState::connected_idle;
  if (name == "droplet") return ChannelState::connected_droplet;
  throw ParseError("unknown channel state \"" + name + "\"", source);
}

}  // namespace

const char* state_name(ChannelState state) {
  switch (state) {
    case ChannelState::bad_connection: return "bad_connection";
    case ChannelState::connected_idle: return "idle";
    case ChannelState::connected_droplet: return "droplet";
  }
  throw std::invalid_argument("bad channel state");
}

char state_glyph(ChannelState state) {
  switch (state) {
    case ChannelState::bad_connection: return 'B';
    case ChannelState::connected_idle: return '.';
    case ChannelState::connected_droplet: return 'D';
  }
  throw std::invalid_argument("bad channel state");
}

const char* state_color(ChannelState state) {
  switch (state) {
    case ChannelState::bad_connection: return "blue";
    case ChannelState::connected_idle: return "white";
    case ChannelState::connected_droplet: return "red";
  }
  throw std::invalid_argument("bad channel state");
}

std::string render_ascii(const StatusMap& map, const HexArray& array) {
  if (static_cast<int>(map.readings.size()) != array.size())
    throw std::invalid_argument("status map does not cover the array");

  std::ostringstream out;
  const int r_max = array.side() - 1;
  for (int r = -r_max; r <= r_max; ++r) {
    out << std::string(static_cast<std::size_t>(std::abs(r)), ' ');
    bool first = true;
    const int q_lo = std::max(-r_max, -r_max - r);
    const int q_hi = std::min(r_max, r_max - r);
    for (int q = q_lo; q <= q_hi; ++q) {
      if (!first) out << ' ';
      first = false;
      const int index = array.at(q, r).linear_index;
      out << state_glyph(map.readings[static_cast<std::size_t>(index)].state);
    }
    out << '\n';
  }
  return out.str();
}

std::string render_csv(const StatusMap& map, const HexArray& array) {
  if (static_cast<int>(map.readings.size()) != array.size())
    throw std::invalid_argument("status map does not cover the array");

  std::ostringstream out;
  out << "linear_index,q,r,zone,pin,M,state\n";
  for (const ElectrodeAddress& address : array.electrodes()) {
    const ChannelReading& reading =
        map.readings[static_cast<std::size_t>(address.linear_index)];
    const ZoneAssignment zone = array.zone_of(address);
    out << address.linear_index << ',' << address.q << ',' << address.r << ','
        << zone_letter(zone.zone) << ',' << zone.pin << ','
        << format_double("%.10g", reading.magnitude) << ','
        << state_name(reading.state) << '\n';
  }
  return out.str();
}

std::string render_svg(const StatusMap& map, const HexArray& array) {
  if (static_cast<int>(map.readings.size()) != array.size())
    throw std::invalid_argument("status map does not cover the array");

  constexpr double size = 16.0;
  const double sqrt3 = std::numbers::sqrt3;

  double min_x = 1e9, max_x = -1e9, min_y = 1e9, max_y = -1e9;
  for (const ElectrodeAddress& address : array.electrodes()) {
    const double cx = size * sqrt3 * (address.q + address.r / 2.0);
    const double cy = size * 1.5 * address.r;
    min_x = std::min(min_x, cx);
    max_x = std::max(max_x, cx);
    min_y = std::min(min_y, cy);
    max_y = std::max(max_y, cy);
  }
  const double margin = size * 1.2;
  const double width = max_x - min_x + 2 * margin;
  const double height = max_y - min_y + 2 * margin;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
      << format_double("%.1f", width) << "\" height=\""
      << format_double("%.1f", height) << "\" viewBox=\"0 0 "
      << format_double("%.1f", width) << ' ' << format_double("%.1f", height)
      << "\">\n";
  for (const ElectrodeAddress& address : array.electrodes()) {
    const ChannelReading& reading =
        map.readings[static_cast<std::size_t>(address.linear_index)];
    const double cx = size * sqrt3 * (address.q + address.r / 2.0) - min_x + margin;
    const double cy = size * 1.5 * address.r - min_y + margin;
    out << "  <polygon points=\"";
    for (int corner = 0; corner < 6; ++corner) {
      const double angle =
          std::numbers::pi / 180.0 * (60.0 * corner - 30.0);
      if (corner) out << ' ';
      out << format_double("%.2f", cx + size * std::cos(angle)) << ','
          << format_double("%.2f", cy + size * std::sin(angle));
    }
    out << "\" fill=\"" << state_color(reading.state)
        << "\" stroke=\"#666666\" stroke-width=\"1\">"
        << "<title>electrode " << address.linear_index << " (" << address.q
        << "," << address.r << ") M=" << format_double("%.6g", reading.magnitude)
        << "</title></polygon>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_json_stream(const ScanStream& stream, const HexArray& array) {
  ordered_json root;
  root["version"] = 1;
  root["kind"] = "scan_stream";
  root["array_side"] = stream.array_side;
  root["stimulus_frequency_hz"] = stream.stimulus_frequency_hz;
  root["bin_index"] = stream.bin_index;
  root["thresholds"] = {
      {"t1", stream.thresholds.t1},
      {"t2", stream.thresholds.t2},
      {"stimulus_frequency_hz", stream.thresholds.stimulus_frequency_hz}};
  root["seed"] = stream.seed;

  ordered_json scans = ordered_json::array();
  double fallback_time = 0.0;
  for (std::size_t i = 0; i < stream.maps.size(); ++i) {
    const StatusMap& map = stream.maps[i];
    if (static_cast<int>(map.readings.size()) != array.size())
      throw std::invalid_argument("status map does not cover the array");
    fallback_time += map.scan_elapsed_s;
    const double sim_time =
        i < stream.sim_time_s.size() ? stream.sim_time_s[i] : fallback_time;

    ordered_json scan;
    scan["scan_index"] = map.scan_index;
    scan["elapsed_s"] = map.scan_elapsed_s;
    scan["sim_time_s"] = sim_time;
    scan["droplet_count"] = map.count(ChannelState::connected_droplet);
    ordered_json electrodes = ordered_json::array();
    for (const ElectrodeAddress& address : array.electrodes()) {
      const ChannelReading& reading =
          map.readings[static_cast<std::size_t>(address.linear_index)];
      const ZoneAssignment zone = array.zone_of(address);
      ordered_json entry;
      entry["index"] = address.linear_index;
      entry["q"] = address.q;
      entry["r"] = address.r;
      entry["zone"] = std::string(1, zone_letter(zone.zone));
      entry["pin"] = zone.pin;
      entry["magnitude"] = reading.magnitude;
      entry["state"] = state_name(reading.state);
      entry["saturated"] = reading.saturated;
      electrodes.push_back(std::move(entry));
    }
    scan["electrodes"] = std::move(electrodes);
    scans.push_back(std::move(scan));
  }
  root["scans"] = std::move(scans);
  return root.dump(2) + "\n";
}

ScanStream parse_json_stream(const std::string& json_text,
                             const std::string& source_name) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& error) {
    int line = 1;
    for (std::size_t i = 0; i + 1 < error.byte && i < json_text.size(); ++i)
      if (json_text[i] == '\n') ++line;
    throw ParseError(error.what(), source_name, line);
  }

  if (!root.is_object() || root.value("kind", "") != "scan_stream")
    throw ParseError("not a scan stream document (kind != \"scan_stream\")",
                     source_name);

  ScanStream stream;
  try {
    stream.array_side = root.value("array_side", 8);
    stream.stimulus_frequency_hz = root.value("stimulus_frequency_hz", 0.0);
    stream.bin_index = root.value("bin_index", 0);
    if (root.contains("thresholds")) {
      const json& thresholds = root.at("thresholds");
      stream.thresholds.t1 = thresholds.value("t1", 0.0);
      stream.thresholds.t2 = thresholds.value("t2", 0.0);
      stream.thresholds.stimulus_frequency_hz =
          thresholds.value("stimulus_frequency_hz", 0.0);
    }
    stream.seed = root.value("seed", std::uint64_t{0});

    const HexArray array(stream.array_side);
    for (const json& scan : root.at("scans")) {
      StatusMap map;
      map.scan_index = scan.at("scan_index").get<int>();
      map.scan_elapsed_s = scan.value("elapsed_s", 0.0);
      stream.sim_time_s.push_back(scan.value("sim_time_s", 0.0));
      map.readings.resize(static_cast<std::size_t>(array.size()));
      const json& electrodes = scan.at("electrodes");
      if (static_cast<int>(electrodes.size()) != array.size())
        throw ParseError("scan " + std::to_string(map.scan_index) + " lists " +
                             std::to_string(electrodes.size()) +
                             " electrodes, expected " +
                             std::to_string(array.size()),
                         source_name);
      for (const json& entry : electrodes) {
        const int index = entry.at("index").get<int>();
        if (index < 0 || index >= array.size())
          throw ParseError("electrode index " + std::to_string(index) +
                               " outside array",
                           source_name);
        ChannelReading& reading =
            map.readings[static_cast<std::size_t>(index)];
        reading.linear_index = index;
        reading.zone = array.zone_of(array.at(index));
        reading.magnitude = entry.value("magnitude", 0.0);
        reading.state =
            state_from_name(entry.at("state").get<std::string>(), source_name);
        reading.saturated = entry.value("saturated", false);
      }
      stream.maps.push_back(std::move(map));
    }
  } catch (const json::exception& error) {
    throw ParseError(error.what(), source_name);
  }
  return stream;
}

namespace {

ordered_json conservation_json(const TrackReport& report,
                               const std::vector<StatusMap>& maps) {
  ordered_json violations = ordered_json::array();
  if (maps.empty()) return violations;
  const int expected = maps.front().count(ChannelState::connected_droplet);
  for (const StatusMap& map : maps) {
    const int count = map.count(ChannelState::connected_droplet);
    if (count != expected) {
      ordered_json violation;
      violation["scan_index"] = map.scan_index;
      violation["count"] = count;
      violation["expected"] = expected;
      violations.push_back(std::move(violation));
    }
  }
  (void)report;
  return violations;
}

}  // namespace

std::string render_track_report_json(const TrackReport& report,
                                     const std::vector<StatusMap>& maps,
                                     const HexArray& array) {
  ordered_json root;
  root["version"] = 1;
  root["kind"] = "track_report";
  root["scan_count"] = maps.size();

  ordered_json counts = ordered_json::array();
  for (const StatusMap& map : maps)
    counts.push_back(map.count(ChannelState::connected_droplet));
  root["droplet_count_per_scan"] = std::move(counts);

  ordered_json trajectories = ordered_json::array();
  for (const Trajectory& trajectory : report.trajectories) {
    ordered_json entry;
    entry["id"] = trajectory.id;
    ordered_json points = ordered_json::array();
    for (const TrajectoryPoint& point : trajectory.points) {
      const ElectrodeAddress& address =
          array.at(point.address.q, point.address.r);
      ordered_json p;
      p["scan_index"] = point.scan_index;
      p["index"] = address.linear_index;
      p["q"] = address.q;
      p["r"] = address.r;
      points.push_back(std::move(p));
    }
    entry["points"] = std::move(points);
    trajectories.push_back(std::move(entry));
  }
  root["trajectories"] = std::move(trajectories);
  root["conservation_violations"] = conservation_json(report, maps);
  root["ambiguities"] = report.ambiguity_notes;
  return root.dump(2) + "\n";
}

std::string render_track_report_text(const TrackReport& report,
                                     const std::vector<StatusMap>& maps,
                                     const HexArray& array) {
  std::ostringstream out;
  out << "scans: " << maps.size()
      << ", trajectories: " << report.trajectories.size() << '\n';
  for (const Trajectory& trajectory : report.trajectories) {
    out << "droplet " << trajectory.id << ":";
    for (const TrajectoryPoint& point : trajectory.points)
      out << " (" << point.address.q << "," << point.address.r << ")@"
          << point.scan_index;
    out << '\n';
  }
  if (!maps.empty()) {
    const int expected = maps.front().count(ChannelState::connected_droplet);
    for (const StatusMap& map : maps) {
      const int count = map.count(ChannelState::connected_droplet);
      if (count != expected)
        out << "conservation violation at scan " << map.scan_index << ": "
            << count << " droplets, expected " << expected << '\n';
    }
  }
  for (const std::string& note : report.ambiguity_notes)
    out << "ambiguity: " << note << '\n';
  (void)array;
  return out.str();
}

}  // namespace dmfsense
