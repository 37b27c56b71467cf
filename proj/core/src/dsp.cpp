#include "dmfsense/dsp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dmfsense {
namespace {

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

void bit_reverse_permute(std::vector<std::complex<double>>& data) {
  const std::size_t n = data.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
}

void transform(std::vector<std::complex<double>>& data, bool inverse) {
  const std::size_t n = data.size();
  if (!is_power_of_two(n))
    throw std::invalid_argument("fft length must be a power of two");

  bit_reverse_permute(data);

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle =
        (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> step(std::cos(angle), std::sin(angle));
    for (std::size_t block = 0; block < n; block += len) {
      std::complex<double> twiddle(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> even = data[block + k];
        const std::complex<double> odd = data[block + k + len / 2] * twiddle;
        data[block + k] = even + odd;
        data[block + k + len / 2] = even - odd;
        twiddle *= step;
      }
    }
  }

  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& value : data) value *= scale;
  }
}

}  // namespace

void fft_in_place(std::vector<std::complex<double>>& data) {
  transform(data, false);
}

void ifft_in_place(std::vector<std::complex<double>>& data) {
  transform(data, true);
}

Spectrum fft(const WaveformBuffer& buffer) {
  if (!is_power_of_two(buffer.samples.size()))
    throw std::invalid_argument("fft length must be a power of two");
  if (buffer.sampling_rate_hz <= 0.0)
    throw std::invalid_argument("buffer sampling_rate must be > 0");

  Spectrum spectrum;
  spectrum.bins.assign(buffer.samples.begin(), buffer.samples.end());
  fft_in_place(spectrum.bins);
  spectrum.bin_width_hz =
      buffer.sampling_rate_hz / static_cast<double>(buffer.samples.size());
  return spectrum;
}

Magnitude magnitude_at(const Spectrum& spectrum,
                       double stimulus_frequency_hz) {
  const std::size_t n = spectrum.bins.size();
  if (n == 0 || spectrum.bin_width_hz <= 0.0)
    throw std::invalid_argument("empty spectrum");
  const double nyquist =
      spectrum.bin_width_hz * static_cast<double>(n) / 2.0;
  if (stimulus_frequency_hz <= 0.0 || stimulus_frequency_hz >= nyquist)
    throw std::invalid_argument("frequency must lie in (0, Nyquist)");

  const long bin = std::lround(stimulus_frequency_hz / spectrum.bin_width_hz);
  if (bin < 0 || bin >= static_cast<long>(n / 2))
    throw std::invalid_argument("frequency snaps outside (0, Nyquist)");

  Magnitude magnitude;
  magnitude.bin_index = static_cast<int>(bin);
  magnitude.frequency_hz = static_cast<double>(bin) * spectrum.bin_width_hz;
  magnitude.value = std::abs(spectrum.bins[static_cast<std::size_t>(bin)]);
  return magnitude;
}

ChannelMeasurement measure_channel(double c_dut_f,
                                   const StimulusConfig& stimulus,
                                   const FrontEndConfig& frontend,
                                   const AdcConfig& adc,
                                   std::uint64_t rng_seed) {
  WaveformBuffer buffer = adc_sample(c_dut_f, stimulus, frontend, adc, rng_seed);

  if (adc.window == Window::hann) {
    const std::size_t n = buffer.samples.size();
    for (std::size_t k = 0; k < n; ++k) {
      const double w =
          0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(k) /
                                static_cast<double>(n)));
      buffer.samples[k] *= w;
    }
  }

  const Spectrum spectrum = fft(buffer);
  const StimulusConfig effective = effective_stimulus(stimulus, adc);

  ChannelMeasurement measurement;
  measurement.magnitude = magnitude_at(spectrum, effective.frequency_hz);
  measurement.elapsed_s =
      static_cast<double>(adc.sample_count) / adc.sampling_rate_hz +
      adc.processing_time_s;
  measurement.saturated = buffer.saturated;
  return measurement;
}

}  // namespace dmfsense
