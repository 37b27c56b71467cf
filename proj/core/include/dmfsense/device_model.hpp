#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>

namespace dmfsense {

inline constexpr double kVacuumPermittivity = 8.854e-12;  // F/m

/// Double-plate device stack: PCB electrodes under a polymer dielectric
/// film, a spacer-defined gap filled by the medium or a droplet, and a
/// grounded top plate. The hydrophobic coating's capacitance is neglected.
struct DeviceGeometry {
  double gap_height_m = 200e-6;
  double dielectric_thickness_m = 50e-6;
  double dielectric_rel_permittivity = 2.25;
  double electrode_across_flats_m = 2e-3;
  /// Residual coupling of a disconnected channel; an open circuit measures
  /// at the front end's noise floor rather than literally zero.
  double stray_capacitance_f = 0.05e-12;

  void validate() const;
};

/// A liquid is either non-dispersive (one relative permittivity) or carries
/// a dispersion profile sampled at a set of frequencies. Between samples the
/// profile is interpolated linearly in log-frequency and clamped beyond the
/// ends.
class Liquid {
 public:
  static Liquid constant(std::string name, double rel_permittivity);
  static Liquid dispersive(std::string name, std::map<double, double> profile);

  const std::string& name() const { return name_; }
  bool is_dispersive() const { return !profile_.empty(); }
  double permittivity_at(double frequency_hz) const;

 private:
  Liquid() = default;

  std::string name_;
  double constant_permittivity_ = 1.0;
  std::map<double, double> profile_;
};

/// Name-keyed liquid registry. "air" (eps_r = 1) is always present.
class LiquidLibrary {
 public:
  LiquidLibrary();

  void add(Liquid liquid);
  bool contains(std::string_view name) const;
  const Liquid& get(std::string_view name) const;
  std::size_t size() const { return liquids_.size(); }

 private:
  std::map<std::string, Liquid, std::less<>> liquids_;
};

/// What physically sits on one electrode.
struct ChannelOccupancy {
  enum class Kind { open, medium, droplet };

  Kind kind = Kind::open;
  std::string liquid;  // empty for open channels

  static ChannelOccupancy make_open() { return {Kind::open, {}}; }
  static ChannelOccupancy make_medium(std::string liquid_name) {
    return {Kind::medium, std::move(liquid_name)};
  }
  static ChannelOccupancy make_droplet(std::string liquid_name) {
    return {Kind::droplet, std::move(liquid_name)};
  }
};

/// Area of a regular hexagon with the given across-flats width.
double electrode_area(double across_flats_m);

/// Parallel-plate capacitance eps0 * eps_r * A / d.
double plate_capacitance(double rel_permittivity, double area_m2,
                         double thickness_m);

/// Series combination 1/C = sum(1/C_i); rejects empty input and
/// non-positive elements.
double series_capacitance(std::span<const double> capacitances_f);

/// |Z| = 1 / (2*pi*f*C) of an ideal capacitor.
double impedance_magnitude(double capacitance_f, double frequency_hz);

/// One device-under-test: geometry plus the liquid registry needed to
/// resolve occupancies into capacitances.
class DeviceModel {
 public:
  DeviceModel(DeviceGeometry geometry, LiquidLibrary liquids);

  /// Open channels return the stray floor verbatim; connected channels are
  /// the dielectric film in series with the gap at the liquid's eps_r(f).
  /// A droplet and a medium differ only through that permittivity.
  double dut_capacitance(const ChannelOccupancy& occupancy,
                         double frequency_hz) const;

  const DeviceGeometry& geometry() const { return geometry_; }
  const LiquidLibrary& liquids() const { return liquids_; }

 private:
  DeviceGeometry geometry_;
  LiquidLibrary liquids_;
  double electrode_area_m2_;
  double dielectric_capacitance_f_;
};

}  // namespace dmfsense
