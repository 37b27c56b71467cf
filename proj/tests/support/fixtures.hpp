#pragma once

#include <cstdint>
#include <vector>

#include "dmfsense/rng.hpp"
#include "dmfsense/scan.hpp"

namespace fixtures {

inline dmfsense::LiquidLibrary default_liquids() {
  dmfsense::LiquidLibrary liquids;
  liquids.add(dmfsense::Liquid::constant("water", 80.0));
  liquids.add(dmfsense::Liquid::constant("silicone_oil", 2.0));
  return liquids;
}

inline dmfsense::DeviceModel default_model() {
  return dmfsense::DeviceModel(dmfsense::DeviceGeometry{}, default_liquids());
}

/// Thresholds calibrated from the default rig the same way the CLI does it:
/// one labeled magnitude per channel and class.
inline dmfsense::Thresholds calibrate_default(std::uint64_t seed,
                                              int channel_count = 169) {
  const dmfsense::DeviceModel model = default_model();
  const dmfsense::StimulusConfig stimulus{};
  const dmfsense::FrontEndConfig frontend{};
  const dmfsense::AdcConfig adc{};
  const dmfsense::StimulusConfig effective =
      dmfsense::effective_stimulus(stimulus, adc);

  const auto measure_class = [&](const dmfsense::ChannelOccupancy& occupancy,
                                 std::uint64_t stream) {
    std::vector<double> magnitudes;
    const double c_dut =
        model.dut_capacitance(occupancy, effective.frequency_hz);
    for (int channel = 0; channel < channel_count; ++channel)
      magnitudes.push_back(
          dmfsense::measure_channel(
              c_dut, stimulus, frontend, adc,
              dmfsense::derive_seed(seed, stream,
                                    static_cast<std::uint64_t>(channel)))
              .magnitude.value);
    return magnitudes;
  };

  const auto open_m =
      measure_class(dmfsense::ChannelOccupancy::make_open(), 900);
  const auto medium_m =
      measure_class(dmfsense::ChannelOccupancy::make_medium("silicone_oil"), 901);
  const auto droplet_m =
      measure_class(dmfsense::ChannelOccupancy::make_droplet("water"), 902);
  return dmfsense::calibrate(open_m, medium_m, droplet_m,
                             effective.frequency_hz);
}

inline dmfsense::ScanContext default_context(std::uint64_t seed) {
  dmfsense::ScanContext context{dmfsense::HexArray(8),
                                default_model(),
                                dmfsense::StimulusConfig{},
                                dmfsense::FrontEndConfig{},
                                dmfsense::AdcConfig{},
                                calibrate_default(seed),
                                seed};
  return context;
}

inline std::vector<dmfsense::ChannelOccupancy> all_medium(
    const dmfsense::HexArray& array) {
  return std::vector<dmfsense::ChannelOccupancy>(
      static_cast<std::size_t>(array.size()),
      dmfsense::ChannelOccupancy::make_medium("silicone_oil"));
}

}  // namespace fixtures
