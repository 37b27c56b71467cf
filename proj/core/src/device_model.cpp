#include "dmfsense/device_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace dmfsense {

void DeviceGeometry::validate() const {
  if (gap_height_m <= 0.0) throw std::invalid_argument("gap_height must be > 0");
  if (dielectric_thickness_m <= 0.0)
    throw std::invalid_argument("dielectric_thickness must be > 0");
  if (dielectric_rel_permittivity < 1.0)
    throw std::invalid_argument("dielectric_rel_permittivity must be >= 1");
  if (electrode_across_flats_m <= 0.0)
    throw std::invalid_argument("electrode_across_flats must be > 0");
  if (stray_capacitance_f <= 0.0)
    throw std::invalid_argument("stray_capacitance must be > 0");
}

Liquid Liquid::constant(std::string name, double rel_permittivity) {
  if (name.empty()) throw std::invalid_argument("liquid name must not be empty");
  if (rel_permittivity < 1.0)
    throw std::invalid_argument("liquid \"" + name +
                                "\": rel_permittivity must be >= 1");
  Liquid liquid;
  liquid.name_ = std::move(name);
  liquid.constant_permittivity_ = rel_permittivity;
  return liquid;
}

Liquid Liquid::dispersive(std::string name, std::map<double, double> profile) {
  if (name.empty()) throw std::invalid_argument("liquid name must not be empty");
  if (profile.empty())
    throw std::invalid_argument("liquid \"" + name +
                                "\": dispersion profile must not be empty");
  for (const auto& [frequency, eps] : profile) {
    if (frequency <= 0.0)
      throw std::invalid_argument("liquid \"" + name +
                                  "\": dispersion frequencies must be > 0");
    if (eps < 1.0)
      throw std::invalid_argument("liquid \"" + name +
                                  "\": dispersion permittivities must be >= 1");
  }
  Liquid liquid;
  liquid.name_ = std::move(name);
  liquid.profile_ = std::move(profile);
  return liquid;
}

double Liquid::permittivity_at(double frequency_hz) const {
  if (frequency_hz <= 0.0)
    throw std::invalid_argument("permittivity lookup requires frequency > 0");
  if (profile_.empty()) return constant_permittivity_;

  auto upper = profile_.lower_bound(frequency_hz);
  if (upper == profile_.begin()) return upper->second;
  if (upper == profile_.end()) return std::prev(upper)->second;
  if (upper->first == frequency_hz) return upper->second;

  const auto lower = std::prev(upper);
  const double span = std::log(upper->first) - std::log(lower->first);
  const double frac = (std::log(frequency_hz) - std::log(lower->first)) / span;
  return lower->second + frac * (upper->second - lower->second);
}

LiquidLibrary::LiquidLibrary() {
  Liquid air = Liquid::constant("air", 1.0);
  liquids_.emplace("air", std::move(air));
}

void LiquidLibrary::add(Liquid liquid) {
  const std::string name = liquid.name();
  if (!liquids_.emplace(name, std::move(liquid)).second)
    throw std::invalid_argument("duplicate liquid \"" + name + "\"");
}

bool LiquidLibrary::contains(std::string_view name) const {
  return liquids_.find(name) != liquids_.end();
}

const Liquid& LiquidLibrary::get(std::string_view name) const {
  auto it = liquids_.find(name);
  if (it == liquids_.end())
    throw std::invalid_argument("unknown liquid \"" + std::string(name) + "\"");
  return it->second;
}

double electrode_area(double across_flats_m) {
  if (across_flats_m < 0.0)
    throw std::invalid_argument("across_flats must be >= 0");
  return std::numbers::sqrt3 / 2.0 * across_flats_m * across_flats_m;
}

double plate_capacitance(double rel_permittivity, double area_m2,
                         double thickness_m) {
  if (rel_permittivity < 1.0)
    throw std::invalid_argument("rel_permittivity must be >= 1");
  if (area_m2 <= 0.0) throw std::invalid_argument("area must be > 0");
  if (thickness_m <= 0.0) throw std::invalid_argument("thickness must be > 0");
  return kVacuumPermittivity * rel_permittivity * area_m2 / thickness_m;
}

double series_capacitance(std::span<const double> capacitances_f) {
  if (capacitances_f.empty())
    throw std::invalid_argument("series_capacitance requires >= 1 element");
  double reciprocal_sum = 0.0;
  for (double c : capacitances_f) {
    if (c <= 0.0)
      throw std::invalid_argument("series_capacitance elements must be > 0");
    reciprocal_sum += 1.0 / c;
  }
  return 1.0 / reciprocal_sum;
}

double impedance_magnitude(double capacitance_f, double frequency_hz) {
  if (capacitance_f <= 0.0)
    throw std::invalid_argument("capacitance must be > 0");
  if (frequency_hz <= 0.0) throw std::invalid_argument("frequency must be > 0");
  return 1.0 / (2.0 * std::numbers::pi * frequency_hz * capacitance_f);
}

DeviceModel::DeviceModel(DeviceGeometry geometry, LiquidLibrary liquids)
    : geometry_(geometry), liquids_(std::move(liquids)) {
  geometry_.validate();
  electrode_area_m2_ = electrode_area(geometry_.electrode_across_flats_m);
  dielectric_capacitance_f_ =
      plate_capacitance(geometry_.dielectric_rel_permittivity,
                        electrode_area_m2_, geometry_.dielectric_thickness_m);
}

double DeviceModel::dut_capacitance(const ChannelOccupancy& occupancy,
                                    double frequency_hz) const {
  if (frequency_hz <= 0.0) throw std::invalid_argument("frequency must be > 0");
  if (occupancy.kind == ChannelOccupancy::Kind::open)
    return geometry_.stray_capacitance_f;

  const Liquid& liquid = liquids_.get(occupancy.liquid);
  const double gap_capacitance =
      plate_capacitance(liquid.permittivity_at(frequency_hz),
                        electrode_area_m2_, geometry_.gap_height_m);
  const double caps[] = {dielectric_capacitance_f_, gap_capacitance};
  return series_capacitance(caps);
}

}  // namespace dmfsense
