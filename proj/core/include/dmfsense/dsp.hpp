#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "dmfsense/frontend.hpp"

namespace dmfsense {

struct Spectrum {
  std::vector<std::complex<double>> bins;
  double bin_width_hz = 0.0;
};

/// Raw bin modulus at (near) the stimulus frequency — the uncalibrated
/// score compared against thresholds. No 2/N normalization.
struct Magnitude {
  double value = 0.0;
  double frequency_hz = 0.0;  // snapped bin frequency
  int bin_index = 0;
};

/// In-place radix-2 decimation-in-time FFT; length must be a power of two.
void fft_in_place(std::vector<std::complex<double>>& data);

/// Inverse transform (unitary up to the usual 1/N).
void ifft_in_place(std::vector<std::complex<double>>& data);

Spectrum fft(const WaveformBuffer& buffer);

/// Magnitude of the bin nearest to the requested frequency. Rejects
/// requests at or above Nyquist.
Magnitude magnitude_at(const Spectrum& spectrum, double stimulus_frequency_hz);

struct ChannelMeasurement {
  Magnitude magnitude;
  double elapsed_s = 0.0;  // simulated acquisition + processing budget
  bool saturated = false;
};

/// Full single-channel measurement: acquire, window if configured,
/// transform, read the stimulus bin. Simulated elapsed time is
/// sample_count / sampling_rate plus the configured processing allowance.
ChannelMeasurement measure_channel(double c_dut_f,
                                   const StimulusConfig& stimulus,
                                   const FrontEndConfig& frontend,
                                   const AdcConfig& adc,
                                   std::uint64_t rng_seed);

}  // namespace dmfsense
