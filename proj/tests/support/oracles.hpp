#pragma once

// Independent oracles used to check the library. These deliberately avoid
// the implementation paths they verify: the DFT is the O(N^2) definition,
// and the front-end fundamental comes from the transfer function instead of
// the time-domain waveform.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace oracles {

inline std::vector<std::complex<double>> naive_dft(
    const std::vector<std::complex<double>>& input) {
  const std::size_t n = input.size();
  std::vector<std::complex<double>> output(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<double> sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double angle = -2.0 * std::numbers::pi *
                           static_cast<double>(j) * static_cast<double>(k) /
                           static_cast<double>(n);
      sum += input[k] * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    output[j] = sum;
  }
  return output;
}

/// |H(f)| = wRC / sqrt(1 + (wRC)^2) of the RC differentiator.
inline double transfer_magnitude(double frequency_hz, double resistance_ohm,
                                 double capacitance_f) {
  const double wrc =
      2.0 * std::numbers::pi * frequency_hz * resistance_ohm * capacitance_f;
  return wrc / std::sqrt(1.0 + wrc * wrc);
}

/// First-harmonic amplitude of the square-wave response, in volts before
/// the divider: (4 V / pi) |H(f0)|.
inline double first_harmonic_volts(double amplitude_v, double resistance_ohm,
                                   double capacitance_f, double frequency_hz) {
  return 4.0 * amplitude_v / std::numbers::pi *
         transfer_magnitude(frequency_hz, resistance_ohm, capacitance_f);
}

/// The bin magnitude that first harmonic should produce after the divider,
/// ADC code scaling, and the unwindowed N/2 bin gain.
inline double expected_bin_magnitude(double amplitude_v, double resistance_ohm,
                                     double capacitance_f, double frequency_hz,
                                     double divider_ratio, double adc_reference_v,
                                     int resolution_bits, int sample_count) {
  const double volts = first_harmonic_volts(amplitude_v, resistance_ohm,
                                            capacitance_f, frequency_hz);
  const double codes_per_volt =
      static_cast<double>((1 << resolution_bits) - 1) / adc_reference_v;
  return volts * divider_ratio * codes_per_volt *
         static_cast<double>(sample_count) / 2.0;
}

}  // namespace oracles
