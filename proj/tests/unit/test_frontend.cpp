#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dmfsense/dsp.hpp"
#include "dmfsense/frontend.hpp"

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

using namespace dmfsense;

namespace {

// Linear-regime chain for oracle comparisons: gentler divider so the
// exponential peaks never reach the rails, and 16-bit codes to keep
// quantization out of the error budget.
FrontEndConfig linear_frontend() {
  FrontEndConfig frontend;
  frontend.divider_ratio = 0.0025;
  frontend.summing_offset_v = 660.0;
  return frontend;
}

AdcConfig quiet_adc(int bits = 16) {
  AdcConfig adc;
  adc.noise_sigma_lsb = 0.0;
  adc.resolution_bits = bits;
  return adc;
}

}  // namespace

TEST_CASE("analytic first-harmonic oracle reproduces the reference points") {
  // (4*180/pi) * |H| at nominal 12 kHz, water and oil DUT capacitances.
  CHECK(oracles::first_harmonic_volts(180.0, 10e6, 1.241e-12, 12e3) ==
        doctest::Approx(156.5866507524028).epsilon(1e-12));
  CHECK(oracles::first_harmonic_volts(180.0, 10e6, 0.251e-12, 12e3) ==
        doctest::Approx(42.61635290147352).epsilon(1e-12));
}

TEST_CASE("config validation") {
  StimulusConfig stimulus;
  CHECK_NOTHROW(stimulus.validate());
  stimulus.amplitude_v = 30.0;
  CHECK_THROWS_AS(stimulus.validate(), std::invalid_argument);
  stimulus.amplitude_v = 400.0;
  CHECK_THROWS_AS(stimulus.validate(), std::invalid_argument);

  FrontEndConfig frontend;
  frontend.divider_ratio = 0.0;
  CHECK_THROWS_AS(frontend.validate(), std::invalid_argument);
  frontend.divider_ratio = 1.5;
  CHECK_THROWS_AS(frontend.validate(), std::invalid_argument);

  AdcConfig adc;
  adc.sample_count = 100;
  CHECK_THROWS_AS(adc.validate(), std::invalid_argument);
  adc = AdcConfig{};
  adc.resolution_bits = 7;
  CHECK_THROWS_AS(adc.validate(), std::invalid_argument);
  adc.resolution_bits = 17;
  CHECK_THROWS_AS(adc.validate(), std::invalid_argument);
}

TEST_CASE("frequency snapping to the analysis grid") {
  const AdcConfig adc{};
  CHECK(snapped_frequency(12e3, adc) == 11718.75);
  CHECK(snapped_frequency(10e3, adc) == 10156.25);
  CHECK(snapped_frequency(30e3, adc) == 29687.5);
  CHECK_THROWS_AS(snapped_frequency(99.9e3, adc), std::invalid_argument);
  CHECK_THROWS_AS(snapped_frequency(100.0, adc), std::invalid_argument);

  StimulusConfig literal;
  literal.snap_to_bin = false;
  CHECK(effective_stimulus(literal, adc).frequency_hz == 12e3);
}

TEST_CASE("vanishing capacitance leaves the output flat at the shifted rail") {
  const StimulusConfig stimulus{};
  const FrontEndConfig frontend{};
  const double quiescent =
      frontend.summing_offset_v * frontend.divider_ratio;  // 1.65 V

  // Between edges the differentiator output has fully decayed; exact edge
  // instants still carry the step and are excluded.
  for (double t : {1e-6, 7e-6, 43e-6, 9.9e-4})
    CHECK(analog_response(1e-18, stimulus, frontend, t) ==
          doctest::Approx(quiescent).epsilon(1e-12));

  AdcConfig adc = quiet_adc(12);
  const WaveformBuffer buffer = adc_sample(1e-18, stimulus, frontend, adc, 9);
  const double offset_code = std::round(
      quiescent / frontend.adc_reference_v * adc.max_code());
  for (double code : buffer.samples) CHECK(code == offset_code);
}

TEST_CASE("adc_sample is deterministic for a fixed seed") {
  const StimulusConfig stimulus{};
  const FrontEndConfig frontend{};
  const AdcConfig adc{};

  const WaveformBuffer a = adc_sample(1.24e-12, stimulus, frontend, adc, 555);
  const WaveformBuffer b = adc_sample(1.24e-12, stimulus, frontend, adc, 555);
  const WaveformBuffer c = adc_sample(1.24e-12, stimulus, frontend, adc, 556);

  CHECK(a.samples == b.samples);
  CHECK(a.samples != c.samples);
}

TEST_CASE("zero-noise coherent buffers are exactly periodic") {
  StimulusConfig stimulus;
  stimulus.frequency_hz = 12.5e3;  // bin 16 -> 16-sample period
  const FrontEndConfig frontend{};
  const AdcConfig adc = quiet_adc(12);

  const WaveformBuffer buffer =
      adc_sample(1.24e-12, stimulus, frontend, adc, 1);
  for (std::size_t k = 0; k + 16 < buffer.samples.size(); ++k)
    CHECK(buffer.samples[k] == buffer.samples[k + 16]);
}

TEST_CASE("water buffer carries a larger fundamental than oil") {
  const DeviceModel model = fixtures::default_model();
  const StimulusConfig stimulus{};
  const FrontEndConfig frontend{};
  const AdcConfig adc{};
  const double f_eff = effective_stimulus(stimulus, adc).frequency_hz;

  const double m_water = measure_channel(
      model.dut_capacitance(ChannelOccupancy::make_droplet("water"), f_eff),
      stimulus, frontend, adc, 77).magnitude.value;
  const double m_oil = measure_channel(
      model.dut_capacitance(ChannelOccupancy::make_medium("silicone_oil"), f_eff),
      stimulus, frontend, adc, 77).magnitude.value;
  CHECK(m_water > m_oil);
}

TEST_CASE("fundamental-bin magnitude matches the transfer-function oracle") {
  // Zero noise, coherent stimulus, linear regime; moderate wRC so the
  // spike aliasing stays inside the 2% oracle budget.
  const StimulusConfig base{};
  const FrontEndConfig frontend = linear_frontend();
  const AdcConfig adc = quiet_adc();
  const double resistance = 10e6;

  for (double target_wrc : {0.3, 0.5, 0.9, 1.5, 2.5}) {
    for (double nominal : {6.25e3, 12e3, 30e3}) {
      StimulusConfig stimulus = base;
      stimulus.frequency_hz = nominal;
      const double f0 = snapped_frequency(nominal, adc);
      const double c_dut =
          target_wrc / (2.0 * std::numbers::pi * f0 * resistance);
      FrontEndConfig fe = frontend;
      fe.sense_resistance_ohm = resistance;

      const double measured =
          measure_channel(c_dut, stimulus, fe, adc, 0).magnitude.value;
      const double expected = oracles::expected_bin_magnitude(
          stimulus.amplitude_v, resistance, c_dut, f0, fe.divider_ratio,
          fe.adc_reference_v, adc.resolution_bits, adc.sample_count);
      CHECK(std::abs(measured - expected) / expected < 0.02);
    }
  }
}

TEST_CASE("magnitude is strictly monotone in the DUT capacitance") {
  const StimulusConfig stimulus{};
  const FrontEndConfig frontend = linear_frontend();
  const AdcConfig adc = quiet_adc();

  double previous = -1.0;
  for (double c = 0.05e-12; c <= 2.0e-12; c *= 1.45) {
    const double m =
        measure_channel(c, stimulus, frontend, adc, 0).magnitude.value;
    CHECK(m > previous);
    previous = m;
  }
}

TEST_CASE("saturation is reported above the 5% clip budget") {
  const DeviceModel model = fixtures::default_model();
  const StimulusConfig stimulus{};
  const FrontEndConfig frontend{};  // default divider clips the water DUT
  const AdcConfig adc = quiet_adc(12);

  const WaveformBuffer water = adc_sample(
      model.dut_capacitance(ChannelOccupancy::make_droplet("water"), 11718.75),
      stimulus, frontend, adc, 3);
  CHECK(water.saturated);
  CHECK(water.saturated_count > 256 / 20);

  const WaveformBuffer open = adc_sample(
      model.dut_capacitance(ChannelOccupancy::make_open(), 11718.75), stimulus,
      frontend, adc, 3);
  CHECK_FALSE(open.saturated);

  const WaveformBuffer linear = adc_sample(
      model.dut_capacitance(ChannelOccupancy::make_droplet("water"), 11718.75),
      stimulus, linear_frontend(), adc, 3);
  CHECK_FALSE(linear.saturated);
  CHECK(linear.saturated_count == 0);
}

TEST_CASE("off-bin stimulus: Hann window beats rectangular on leakage") {
  StimulusConfig stimulus;
  stimulus.snap_to_bin = false;  // literal 12 kHz, 0.36 bins off the grid
  const FrontEndConfig frontend = linear_frontend();
  AdcConfig rect = quiet_adc();
  AdcConfig hann = quiet_adc();
  hann.window = Window::hann;

  const double c_dut = 1.24e-12;
  const double expected = oracles::expected_bin_magnitude(
      stimulus.amplitude_v, frontend.sense_resistance_ohm, c_dut, 12e3,
      frontend.divider_ratio, frontend.adc_reference_v, rect.resolution_bits,
      rect.sample_count);

  const double m_rect =
      measure_channel(c_dut, stimulus, frontend, rect, 0).magnitude.value;
  // Hann coherent gain is 1/2; undo it before comparing.
  const double m_hann =
      2.0 * measure_channel(c_dut, stimulus, frontend, hann, 0).magnitude.value;

  CHECK(std::abs(m_hann - expected) < std::abs(m_rect - expected));
}

TEST_CASE("adc_sample rejects bad inputs") {
  const StimulusConfig stimulus{};
  const FrontEndConfig frontend{};
  AdcConfig adc{};
  CHECK_THROWS_AS(adc_sample(0.0, stimulus, frontend, adc, 0),
                  std::invalid_argument);
  adc.sampling_rate_hz = 20e3;  // 12 kHz no longer fits below Nyquist
  CHECK_THROWS_AS(adc_sample(1e-12, stimulus, frontend, adc, 0),
                  std::invalid_argument);
}
