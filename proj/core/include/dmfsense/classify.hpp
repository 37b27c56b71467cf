#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dmfsense/dsp.hpp"

namespace dmfsense {

/// Dual magnitude cut points: t1 separates open circuits from connected
/// channels, t2 separates the medium from a droplet. Both are "greater
/// than" thresholds — a magnitude equal to a threshold stays in the lower
/// class.
struct Thresholds {
  double t1 = 0.0;
  double t2 = 0.0;
  double stimulus_frequency_hz = 0.0;

  bool calibrated() const { return t1 > 0.0 && t1 < t2; }
  void validate() const;
};

/// Verdict per channel; rendering contract is blue / white / red.
enum class ChannelState { bad_connection, connected_idle, connected_droplet };

ChannelState classify(const Magnitude& magnitude, const Thresholds& thresholds);

/// Places t1 and t2 at the geometric means of the adjacent class extremes
/// (magnitudes span decades, so the ratio midpoint is the natural cut).
/// Throws CalibrationOverlapError naming the offending pair when the
/// labeled classes are not separable.
Thresholds calibrate(std::span<const double> open_magnitudes,
                     std::span<const double> medium_magnitudes,
                     std::span<const double> droplet_magnitudes,
                     double stimulus_frequency_hz);

/// Expected magnitudes of one liquid across stimulus frequencies.
struct LiquidSignature {
  std::string name;
  std::map<double, double> magnitudes;  // frequency -> expected M
  double best_frequency_hz = 0.0;

  void validate() const;
};

/// Frequency with the largest droplet-vs-medium contrast |M_liquid -
/// M_medium|; ties break toward the lowest frequency.
double best_frequency(
    const std::map<double, std::pair<double, double>>& liquid_and_medium_by_freq);

struct IdentificationResult {
  std::string name;
  double distance = 0.0;
  std::string runner_up;
  double runner_up_distance = 0.0;
  /// Top-2 distances within 5% of each other.
  bool ambiguous = false;
};

/// Nearest signature by RMS log-magnitude distance over the frequencies
/// common to the measurement and each signature. With gain_normalize (the
/// default) the log vectors are mean-centered first, so a uniform
/// per-channel gain cancels.
IdentificationResult identify_liquid(
    const std::map<double, double>& measured_magnitudes,
    const std::vector<LiquidSignature>& library, bool gain_normalize = true);

}  // namespace dmfsense
