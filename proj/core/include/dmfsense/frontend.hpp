#pragma once

#include <cstdint>
#include <vector>

namespace dmfsense {

/// Square-wave stimulus from the high-voltage driver. The nominal frequency
/// is snapped to the nearest FFT bin before waveform generation when
/// snap_to_bin is set (the default), so the acquired tone is coherent with
/// the analysis grid; clear it to study spectral leakage at the literal
/// frequency.
struct StimulusConfig {
  double amplitude_v = 180.0;
  double frequency_hz = 12e3;
  bool snap_to_bin = true;

  void validate() const;
};

/// Sense resistor plus the conditioning chain: the DUT capacitance and the
/// resistor form a high-pass differentiator, a summing stage lifts the
/// bipolar exponentials to the ADC's mid-rail, and a divider scales the
/// result into the ADC range. summing_offset is expressed before the
/// divider; the defaults put the quiescent level at 1.65 V.
struct FrontEndConfig {
  double sense_resistance_ohm = 10e6;
  double summing_offset_v = 165.0;
  double divider_ratio = 0.01;
  double adc_reference_v = 3.3;

  void validate() const;
};

enum class Window { rectangular, hann };

struct AdcConfig {
  double sampling_rate_hz = 200e3;
  int sample_count = 256;  // power of two
  int resolution_bits = 12;
  double noise_sigma_lsb = 1.0;
  Window window = Window::rectangular;
  /// Simulated post-acquisition compute budget per channel.
  double processing_time_s = 0.5e-3;

  int max_code() const { return (1 << resolution_bits) - 1; }
  double bin_width_hz() const {
    return sampling_rate_hz / static_cast<double>(sample_count);
  }

  void validate() const;
};

/// One acquisition: quantized ADC codes at the configured rate.
struct WaveformBuffer {
  std::vector<double> samples;
  double sampling_rate_hz = 0.0;
  int saturated_count = 0;
  /// More than 5% of samples pinned at code 0 or full scale.
  bool saturated = false;
};

/// Nearest-bin frequency for the given ADC grid. Rejects frequencies that
/// snap below bin 1 or at/above Nyquist.
double snapped_frequency(double nominal_hz, const AdcConfig& adc);

/// Stimulus with frequency_hz resolved against the ADC grid (snapped when
/// configured, literal otherwise).
StimulusConfig effective_stimulus(const StimulusConfig& stimulus,
                                  const AdcConfig& adc);

/// Steady-state front-end output at time t: alternating-sign exponentials
/// at each square-wave edge, level-shifted, divided, and clipped to the ADC
/// rails. The stimulus frequency is taken literally (snap upstream).
double analog_response(double c_dut_f, const StimulusConfig& stimulus,
                       const FrontEndConfig& frontend, double t_s);

/// Samples analog_response at (k + 1/2)/fs, adds seeded Gaussian noise of
/// noise_sigma_lsb, and quantizes. Deterministic for a fixed seed.
WaveformBuffer adc_sample(double c_dut_f, const StimulusConfig& stimulus,
                          const FrontEndConfig& frontend, const AdcConfig& adc,
                          std::uint64_t rng_seed);

}  // namespace dmfsense
