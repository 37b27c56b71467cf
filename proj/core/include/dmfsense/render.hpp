#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dmfsense/scan.hpp"

namespace dmfsense {

/// Color code shared by every renderer: blue = bad connection, white =
/// idle (connected, medium on top), red = connected with a droplet.
const char* state_name(ChannelState state);   // "bad_connection"/"idle"/"droplet"
char state_glyph(ChannelState state);         // 'B' / '.' / 'D'
const char* state_color(ChannelState state);  // "blue" / "white" / "red"

/// Offset-row approximation of the hex layout, one glyph per electrode.
std::string render_ascii(const StatusMap& map, const HexArray& array);

/// Header plus one row per electrode; column order is fixed:
/// linear_index,q,r,zone,pin,M,state
std::string render_csv(const StatusMap& map, const HexArray& array);

/// Faithful hex-grid rendering with blue/white/red fills.
std::string render_svg(const StatusMap& map, const HexArray& array);

/// Stream-level metadata carried alongside the per-scan maps.
struct ScanStream {
  int array_side = 8;
  double stimulus_frequency_hz = 0.0;
  int bin_index = 0;
  Thresholds thresholds;
  std::uint64_t seed = 0;
  std::vector<StatusMap> maps;
  std::vector<double> sim_time_s;  // cumulative simulated time per scan
};

/// Schema-stable, machine-diffable JSON document for the whole stream.
std::string render_json_stream(const ScanStream& stream, const HexArray& array);

/// Inverse of render_json_stream (accepts exactly that schema).
ScanStream parse_json_stream(const std::string& json_text,
                             const std::string& source_name);

/// Trajectory report emitted by the track command.
std::string render_track_report_json(const TrackReport& report,
                                     const std::vector<StatusMap>& maps,
                                     const HexArray& array);
std::string render_track_report_text(const TrackReport& report,
                                     const std::vector<StatusMap>& maps,
                                     const HexArray& array);

}  // namespace dmfsense
