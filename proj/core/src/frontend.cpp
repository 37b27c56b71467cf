#include "dmfsense/frontend.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dmfsense/rng.hpp"

namespace dmfsense {
namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Periodic steady state of the RC differentiator under a square stimulus:
// each edge couples a 2A step through the DUT capacitance, and the
// pre-edge residual charge shrinks the peak to v_eff = 2A / (1 + a) with
// a = exp(-T / (2 tau)). Within each half-cycle the output is a plain
// exponential decay of that peak.
struct SteadyState {
  double period_s;
  double tau_s;
  double v_eff;

  static SteadyState make(double c_dut_f, const StimulusConfig& stimulus,
                          const FrontEndConfig& frontend) {
    const double period = 1.0 / stimulus.frequency_hz;
    const double tau = frontend.sense_resistance_ohm * c_dut_f;
    const double a = std::exp(-period / (2.0 * tau));
    return {period, tau, 2.0 * stimulus.amplitude_v / (1.0 + a)};
  }

  // u is the position inside one period, in [0, 1).
  double at_period_fraction(double u) const {
    const double half = period_s / 2.0;
    if (u < 0.5) return v_eff * std::exp(-u * period_s / tau_s);
    return -v_eff * std::exp(-(u * period_s - half) / tau_s);
  }
};

double condition(double raw_v, const FrontEndConfig& frontend) {
  const double v = (raw_v + frontend.summing_offset_v) * frontend.divider_ratio;
  return std::clamp(v, 0.0, frontend.adc_reference_v);
}

}  // namespace

void StimulusConfig::validate() const {
  if (amplitude_v < 60.0 || amplitude_v > 300.0)
    throw std::invalid_argument("stimulus amplitude must lie in 60..300 V");
  if (frequency_hz <= 0.0)
    throw std::invalid_argument("stimulus frequency must be > 0");
}

void FrontEndConfig::validate() const {
  if (sense_resistance_ohm <= 0.0)
    throw std::invalid_argument("sense_resistance must be > 0");
  if (summing_offset_v <= 0.0)
    throw std::invalid_argument("summing_offset must be > 0");
  if (divider_ratio <= 0.0 || divider_ratio > 1.0)
    throw std::invalid_argument("divider_ratio must lie in (0, 1]");
  if (adc_reference_v <= 0.0)
    throw std::invalid_argument("adc_reference must be > 0");
}

void AdcConfig::validate() const {
  if (sampling_rate_hz <= 0.0)
    throw std::invalid_argument("sampling_rate must be > 0");
  if (!is_power_of_two(sample_count))
    throw std::invalid_argument("sample_count must be a power of two");
  if (resolution_bits < 8 || resolution_bits > 16)
    throw std::invalid_argument("resolution_bits must lie in 8..16");
  if (noise_sigma_lsb < 0.0)
    throw std::invalid_argument("noise_sigma must be >= 0");
  if (processing_time_s < 0.0)
    throw std::invalid_argument("processing_time must be >= 0");
}

double snapped_frequency(double nominal_hz, const AdcConfig& adc) {
  adc.validate();
  if (nominal_hz <= 0.0) throw std::invalid_argument("frequency must be > 0");
  const double bin_width = adc.bin_width_hz();
  const long bin = std::lround(nominal_hz / bin_width);
  if (bin < 1 || bin >= adc.sample_count / 2)
    throw std::invalid_argument("frequency snaps outside (0, Nyquist)");
  return static_cast<double>(bin) * bin_width;
}

StimulusConfig effective_stimulus(const StimulusConfig& stimulus,
                                  const AdcConfig& adc) {
  stimulus.validate();
  StimulusConfig effective = stimulus;
  if (stimulus.snap_to_bin)
    effective.frequency_hz = snapped_frequency(stimulus.frequency_hz, adc);
  return effective;
}

double analog_response(double c_dut_f, const StimulusConfig& stimulus,
                       const FrontEndConfig& frontend, double t_s) {
  stimulus.validate();
  frontend.validate();
  if (c_dut_f <= 0.0) throw std::invalid_argument("c_dut must be > 0");
  if (t_s < 0.0) throw std::invalid_argument("t must be >= 0");

  const SteadyState steady = SteadyState::make(c_dut_f, stimulus, frontend);
  const double u = t_s * stimulus.frequency_hz -
                   std::floor(t_s * stimulus.frequency_hz);
  return condition(steady.at_period_fraction(u), frontend);
}

WaveformBuffer adc_sample(double c_dut_f, const StimulusConfig& stimulus,
                          const FrontEndConfig& frontend, const AdcConfig& adc,
                          std::uint64_t rng_seed) {
  frontend.validate();
  adc.validate();
  if (c_dut_f <= 0.0) throw std::invalid_argument("c_dut must be > 0");

  const StimulusConfig effective = effective_stimulus(stimulus, adc);
  if (adc.sampling_rate_hz <= 2.0 * effective.frequency_hz)
    throw std::invalid_argument(
        "sampling_rate must exceed twice the stimulus frequency");

  const SteadyState steady = SteadyState::make(c_dut_f, effective, frontend);
  const int n = adc.sample_count;
  const int max_code = adc.max_code();
  const double lsb_v = frontend.adc_reference_v / static_cast<double>(max_code);

  // When the tone is bin-aligned the in-period position of sample k is the
  // exact rational ((2k+1) b mod 2N) / 2N; evaluating it in integers keeps
  // zero-noise buffers bit-exactly periodic.
  const double bin_real =
      effective.frequency_hz * n / adc.sampling_rate_hz;
  const long bin = std::lround(bin_real);
  const bool coherent = std::abs(bin_real - static_cast<double>(bin)) < 1e-9;

  GaussianSampler noise(rng_seed);

  WaveformBuffer buffer;
  buffer.samples.resize(static_cast<std::size_t>(n));
  buffer.sampling_rate_hz = adc.sampling_rate_hz;

  for (int k = 0; k < n; ++k) {
    double u;
    if (coherent) {
      const long long num = (2LL * k + 1) * bin % (2LL * n);
      u = static_cast<double>(num) / static_cast<double>(2LL * n);
    } else {
      const double t = (k + 0.5) / adc.sampling_rate_hz;
      const double periods = t * effective.frequency_hz;
      u = periods - std::floor(periods);
    }
    double v = condition(steady.at_period_fraction(u), frontend);
    if (adc.noise_sigma_lsb > 0.0)
      v += adc.noise_sigma_lsb * lsb_v * noise.next();

    long code = std::lround(v / lsb_v);
    code = std::clamp(code, 0L, static_cast<long>(max_code));
    if (code == 0 || code == max_code) ++buffer.saturated_count;
    buffer.samples[static_cast<std::size_t>(k)] = static_cast<double>(code);
  }

  buffer.saturated = buffer.saturated_count > n / 20;
  return buffer;
}

}  // namespace dmfsense
