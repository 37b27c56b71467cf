#include "dmfsense/scenario.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dmfsense/errors.hpp"

namespace dmfsense {
namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

int line_of_offset(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& error) {
    throw ParseError(error.what(), source,
                     line_of_offset(text, error.byte > 0 ? error.byte - 1 : 0));
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("cannot open file", path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

[[noreturn]] void fail(const std::string& source, const std::string& message) {
  throw ParseError(message, source);
}

void require_known_keys(const json& object, const std::string& source,
                        const std::string& where,
                        std::initializer_list<const char*> known) {
  for (const auto& [key, value] : object.items()) {
    bool found = false;
    for (const char* k : known)
      if (key == k) { found = true; break; }
    if (!found) fail(source, where + ": unknown key \"" + key + "\"");
  }
}

template <typename T>
void read_field(const json& object, const char* key, T& target,
                const std::string& source, const std::string& where) {
  if (!object.contains(key)) return;
  try {
    object.at(key).get_to(target);
  } catch (const json::exception& error) {
    fail(source, where + "." + key + ": " + error.what());
  }
}

void parse_geometry(const json& j, DeviceGeometry& geometry,
                    const std::string& source) {
  require_known_keys(j, source, "geometry",
                     {"gap_height_m", "dielectric_thickness_m",
                      "dielectric_rel_permittivity", "electrode_across_flats_m",
                      "stray_capacitance_f"});
  read_field(j, "gap_height_m", geometry.gap_height_m, source, "geometry");
  read_field(j, "dielectric_thickness_m", geometry.dielectric_thickness_m,
             source, "geometry");
  read_field(j, "dielectric_rel_permittivity",
             geometry.dielectric_rel_permittivity, source, "geometry");
  read_field(j, "electrode_across_flats_m", geometry.electrode_across_flats_m,
             source, "geometry");
  read_field(j, "stray_capacitance_f", geometry.stray_capacitance_f, source,
             "geometry");
}

void parse_stimulus(const json& j, StimulusConfig& stimulus,
                    const std::string& source) {
  require_known_keys(j, source, "stimulus",
                     {"amplitude_v", "frequency_hz", "snap_to_bin"});
  read_field(j, "amplitude_v", stimulus.amplitude_v, source, "stimulus");
  read_field(j, "frequency_hz", stimulus.frequency_hz, source, "stimulus");
  read_field(j, "snap_to_bin", stimulus.snap_to_bin, source, "stimulus");
}

void parse_frontend(const json& j, FrontEndConfig& frontend,
                    const std::string& source) {
  require_known_keys(j, source, "frontend",
                     {"sense_resistance_ohm", "summing_offset_v",
                      "divider_ratio", "adc_reference_v"});
  read_field(j, "sense_resistance_ohm", frontend.sense_resistance_ohm, source,
             "frontend");
  read_field(j, "summing_offset_v", frontend.summing_offset_v, source,
             "frontend");
  read_field(j, "divider_ratio", frontend.divider_ratio, source, "frontend");
  read_field(j, "adc_reference_v", frontend.adc_reference_v, source, "frontend");
}

void parse_adc(const json& j, AdcConfig& adc, const std::string& source) {
  require_known_keys(j, source, "adc",
                     {"sampling_rate_hz", "sample_count", "resolution_bits",
                      "noise_sigma_lsb", "window", "processing_time_s"});
  read_field(j, "sampling_rate_hz", adc.sampling_rate_hz, source, "adc");
  read_field(j, "sample_count", adc.sample_count, source, "adc");
  read_field(j, "resolution_bits", adc.resolution_bits, source, "adc");
  read_field(j, "noise_sigma_lsb", adc.noise_sigma_lsb, source, "adc");
  read_field(j, "processing_time_s", adc.processing_time_s, source, "adc");
  if (j.contains("window")) {
    const std::string window = j.at("window").get<std::string>();
    if (window == "rectangular") adc.window = Window::rectangular;
    else if (window == "hann") adc.window = Window::hann;
    else fail(source, "adc.window: expected \"rectangular\" or \"hann\", got \"" +
                          window + "\"");
  }
}

void parse_liquids(const json& j, LiquidLibrary& library,
                   const std::string& source) {
  if (!j.is_object()) fail(source, "liquids must be an object");
  for (const auto& [name, value] : j.items()) {
    try {
      if (value.is_number()) {
        library.add(Liquid::constant(name, value.get<double>()));
      } else if (value.is_object() && value.contains("dispersion")) {
        std::map<double, double> profile;
        for (const auto& entry : value.at("dispersion")) {
          if (!entry.is_array() || entry.size() != 2)
            fail(source, "liquids." + name +
                             ".dispersion entries must be [frequency, eps] pairs");
          profile[entry.at(0).get<double>()] = entry.at(1).get<double>();
        }
        library.add(Liquid::dispersive(name, std::move(profile)));
      } else {
        fail(source, "liquids." + name +
                         " must be a permittivity number or {\"dispersion\": [[f, eps], ...]}");
      }
    } catch (const std::invalid_argument& error) {
      fail(source, std::string("liquids.") + name + ": " + error.what());
    }
  }
}

ElectrodeAddress parse_axial(const json& j, const HexArray& array,
                             const std::string& source,
                             const std::string& where) {
  if (!j.is_array() || j.size() != 2)
    fail(source, where + " must be an axial [q, r] pair");
  const int q = j.at(0).get<int>();
  const int r = j.at(1).get<int>();
  if (!array.contains(q, r))
    fail(source, where + ": electrode (" + std::to_string(q) + ", " +
                     std::to_string(r) + ") outside the side-" +
                     std::to_string(array.side()) + " array");
  return array.at(q, r);
}

void parse_faults(const json& j, FaultSpec& faults, const HexArray& array,
                  const std::string& source) {
  if (!j.is_array()) fail(source, "faults must be an array");
  int index = 0;
  for (const auto& entry : j) {
    const std::string where = "faults[" + std::to_string(index++) + "]";
    if (!entry.is_object()) fail(source, where + " must be an object");
    require_known_keys(entry, source, where, {"zone", "channel"});
    if (entry.contains("zone")) {
      const std::string zone = entry.at("zone").get<std::string>();
      if (zone.size() != 1) fail(source, where + ".zone must be A, B, or C");
      try {
        faults.zone_cuts.push_back(zone_from_letter(zone[0]));
      } catch (const std::invalid_argument& error) {
        fail(source, where + ": " + error.what());
      }
    } else if (entry.contains("channel")) {
      faults.open_channels.push_back(
          parse_axial(entry.at("channel"), array, source, where + ".channel")
              .linear_index);
    } else {
      fail(source, where + " needs a \"zone\" or \"channel\" key");
    }
  }
}

void parse_script(const json& j, MovementScript& script, const HexArray& array,
                  const std::string& source) {
  require_known_keys(j, source, "script", {"detection_interval_s", "droplets"});
  read_field(j, "detection_interval_s", script.detection_interval_s, source,
             "script");
  if (!j.contains("droplets")) return;
  int index = 0;
  for (const auto& entry : j.at("droplets")) {
    const std::string where = "script.droplets[" + std::to_string(index) + "]";
    require_known_keys(entry, source, where, {"id", "liquid", "path"});
    DropletPath droplet;
    droplet.id = entry.value("id", index);
    if (!entry.contains("liquid"))
      fail(source, where + " needs a \"liquid\" name");
    droplet.liquid = entry.at("liquid").get<std::string>();
    if (!entry.contains("path") || !entry.at("path").is_array() ||
        entry.at("path").empty())
      fail(source, where + " needs a non-empty \"path\" of [q, r] waypoints");
    int step = 0;
    for (const auto& waypoint : entry.at("path"))
      droplet.waypoints.push_back(parse_axial(
          waypoint, array, source,
          where + ".path[" + std::to_string(step++) + "]"));
    script.droplets.push_back(std::move(droplet));
    ++index;
  }
}

std::vector<ZoneAssignment> parse_routing(const json& j, int electrode_count,
                                          const std::string& source) {
  if (!j.is_array()) fail(source, "array.routing must be an array");
  std::vector<ZoneAssignment> table;
  table.reserve(j.size());
  int index = 0;
  for (const auto& entry : j) {
    const std::string where = "array.routing[" + std::to_string(index++) + "]";
    if (!entry.is_array() || entry.size() != 2)
      fail(source, where + " must be a [zone, pin] pair");
    const std::string zone = entry.at(0).get<std::string>();
    if (zone.size() != 1) fail(source, where + ": zone must be A, B, or C");
    try {
      table.push_back({zone_from_letter(zone[0]), entry.at(1).get<int>()});
    } catch (const std::invalid_argument& error) {
      fail(source, where + ": " + error.what());
    }
  }
  if (static_cast<int>(table.size()) != electrode_count)
    fail(source, "array.routing must list all " +
                     std::to_string(electrode_count) + " electrodes (got " +
                     std::to_string(table.size()) + ")");
  return table;
}

}  // namespace

Scenario parse_scenario(const std::string& json_text,
                        const std::string& source_name) {
  const json root = parse_json_text(json_text, source_name);
  if (!root.is_object()) fail(source_name, "scenario must be a JSON object");
  require_known_keys(root, source_name, "scenario",
                     {"version", "seed", "geometry", "stimulus", "frontend",
                      "adc", "liquids", "medium", "droplet_liquid", "array",
                      "faults", "script", "ticks"});

  Scenario scenario;
  read_field(root, "version", scenario.version, source_name, "scenario");
  if (scenario.version != 1)
    fail(source_name,
         "unsupported scenario version " + std::to_string(scenario.version));
  read_field(root, "seed", scenario.seed, source_name, "scenario");

  if (root.contains("geometry"))
    parse_geometry(root.at("geometry"), scenario.geometry, source_name);
  if (root.contains("stimulus"))
    parse_stimulus(root.at("stimulus"), scenario.stimulus, source_name);
  if (root.contains("frontend"))
    parse_frontend(root.at("frontend"), scenario.frontend, source_name);
  if (root.contains("adc")) parse_adc(root.at("adc"), scenario.adc, source_name);
  if (root.contains("liquids"))
    parse_liquids(root.at("liquids"), scenario.liquids, source_name);
  read_field(root, "medium", scenario.medium, source_name, "scenario");
  read_field(root, "droplet_liquid", scenario.droplet_liquid, source_name,
             "scenario");

  if (root.contains("array")) {
    const json& array_block = root.at("array");
    require_known_keys(array_block, source_name, "array", {"side", "routing"});
    read_field(array_block, "side", scenario.array_side, source_name, "array");
  }
  if (scenario.array_side < 1)
    fail(source_name, "array.side must be >= 1");

  HexArray array(scenario.array_side);
  if (root.contains("array") && root.at("array").contains("routing"))
    scenario.routing =
        parse_routing(root.at("array").at("routing"), array.size(), source_name);

  if (root.contains("faults"))
    parse_faults(root.at("faults"), scenario.faults, array, source_name);
  if (root.contains("script"))
    parse_script(root.at("script"), scenario.script, array, source_name);
  if (root.contains("ticks")) {
    int ticks = 0;
    read_field(root, "ticks", ticks, source_name, "scenario");
    if (ticks < 1) fail(source_name, "ticks must be >= 1");
    scenario.ticks = ticks;
  }

  // Validate values and cross-references up front so failures carry the
  // file name instead of surfacing mid-scan.
  try {
    scenario.geometry.validate();
    scenario.stimulus.validate();
    scenario.frontend.validate();
    scenario.adc.validate();
    if (scenario.routing) array.set_routing(*scenario.routing);
    scenario.script.validate(array);
  } catch (const std::exception& error) {
    fail(source_name, error.what());
  }

  if (!scenario.liquids.contains(scenario.medium))
    fail(source_name, "unknown liquid \"" + scenario.medium +
                          "\" referenced by medium");
  if (!scenario.droplet_liquid.empty() &&
      !scenario.liquids.contains(scenario.droplet_liquid))
    fail(source_name, "unknown liquid \"" + scenario.droplet_liquid +
                          "\" referenced by droplet_liquid");
  for (const DropletPath& droplet : scenario.script.droplets)
    if (!scenario.liquids.contains(droplet.liquid))
      fail(source_name, "unknown liquid \"" + droplet.liquid +
                            "\" referenced by droplet " +
                            std::to_string(droplet.id));
  return scenario;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_file(path), path.string());
}

ScanContext make_context(const Scenario& scenario) {
  HexArray array(scenario.array_side);
  if (scenario.routing) array.set_routing(*scenario.routing);
  return ScanContext{std::move(array),
                     DeviceModel(scenario.geometry, scenario.liquids),
                     scenario.stimulus,
                     scenario.frontend,
                     scenario.adc,
                     Thresholds{},
                     scenario.seed};
}

std::string calibration_to_json(const CalibrationFile& calibration) {
  ordered_json j;
  j["version"] = calibration.version;
  j["kind"] = "calibration";
  j["t1"] = calibration.thresholds.t1;
  j["t2"] = calibration.thresholds.t2;
  j["stimulus_frequency_hz"] = calibration.thresholds.stimulus_frequency_hz;
  j["bin_index"] = calibration.bin_index;
  ordered_json provenance;
  provenance["seed"] = calibration.seed;
  provenance["array_side"] = calibration.array_side;
  provenance["amplitude_v"] = calibration.amplitude_v;
  provenance["sense_resistance_ohm"] = calibration.sense_resistance_ohm;
  provenance["medium"] = calibration.medium;
  provenance["droplet_liquid"] = calibration.droplet_liquid;
  j["provenance"] = provenance;
  return j.dump(2) + "\n";
}

CalibrationFile parse_calibration(const std::string& json_text,
                                  const std::string& source_name) {
  const json root = parse_json_text(json_text, source_name);
  if (!root.is_object() || root.value("kind", "") != "calibration")
    fail(source_name, "not a calibration document (kind != \"calibration\")");

  CalibrationFile calibration;
  read_field(root, "version", calibration.version, source_name, "calibration");
  if (calibration.version != 1)
    fail(source_name, "unsupported calibration version " +
                          std::to_string(calibration.version));
  read_field(root, "t1", calibration.thresholds.t1, source_name, "calibration");
  read_field(root, "t2", calibration.thresholds.t2, source_name, "calibration");
  read_field(root, "stimulus_frequency_hz",
             calibration.thresholds.stimulus_frequency_hz, source_name,
             "calibration");
  read_field(root, "bin_index", calibration.bin_index, source_name,
             "calibration");
  if (root.contains("provenance")) {
    const json& provenance = root.at("provenance");
    read_field(provenance, "seed", calibration.seed, source_name, "provenance");
    read_field(provenance, "array_side", calibration.array_side, source_name,
               "provenance");
    read_field(provenance, "amplitude_v", calibration.amplitude_v, source_name,
               "provenance");
    read_field(provenance, "sense_resistance_ohm",
               calibration.sense_resistance_ohm, source_name, "provenance");
    read_field(provenance, "medium", calibration.medium, source_name,
               "provenance");
    read_field(provenance, "droplet_liquid", calibration.droplet_liquid,
               source_name, "provenance");
  }
  try {
    calibration.thresholds.validate();
  } catch (const std::exception& error) {
    fail(source_name, error.what());
  }
  return calibration;
}

CalibrationFile load_calibration(const std::filesystem::path& path) {
  return parse_calibration(read_file(path), path.string());
}

}  // namespace dmfsense
