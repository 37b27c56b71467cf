#include "dmfsense/classify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dmfsense/errors.hpp"

namespace dmfsense {
namespace {

std::pair<double, double> min_max(std::span<const double> values,
                                  const char* label) {
  if (values.empty())
    throw std::invalid_argument(std::string(label) +
                                " samples must not be empty");
  double lo = values.front(), hi = values.front();
  for (double v : values) {
    if (v < 0.0)
      throw std::invalid_argument(std::string(label) +
                                  " magnitudes must be >= 0");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return {lo, hi};
}

}  // namespace

void Thresholds::validate() const {
  if (!calibrated())
    throw std::invalid_argument("thresholds are not calibrated (need 0 < t1 < t2)");
  if (stimulus_frequency_hz <= 0.0)
    throw std::invalid_argument("threshold stimulus_frequency must be > 0");
}

ChannelState classify(const Magnitude& magnitude, const Thresholds& thresholds) {
  thresholds.validate();
  if (magnitude.value <= thresholds.t1) return ChannelState::bad_connection;
  if (magnitude.value <= thresholds.t2) return ChannelState::connected_idle;
  return ChannelState::connected_droplet;
}

Thresholds calibrate(std::span<const double> open_magnitudes,
                     std::span<const double> medium_magnitudes,
                     std::span<const double> droplet_magnitudes,
                     double stimulus_frequency_hz) {
  if (stimulus_frequency_hz <= 0.0)
    throw std::invalid_argument("stimulus_frequency must be > 0");

  const auto [open_min, open_max] = min_max(open_magnitudes, "open");
  const auto [medium_min, medium_max] = min_max(medium_magnitudes, "medium");
  const auto [droplet_min, droplet_max] = min_max(droplet_magnitudes, "droplet");

  if (open_max >= medium_min)
    throw CalibrationOverlapError("open", "medium", open_max, medium_min);
  if (medium_max >= droplet_min)
    throw CalibrationOverlapError("medium", "droplet", medium_max, droplet_min);

  Thresholds thresholds;
  thresholds.t1 = std::sqrt(open_max * medium_min);
  thresholds.t2 = std::sqrt(medium_max * droplet_min);
  thresholds.stimulus_frequency_hz = stimulus_frequency_hz;

  // Degenerate only if the open class sits at exactly zero magnitude.
  if (!(open_max < thresholds.t1 && thresholds.t1 < medium_min))
    throw std::invalid_argument(
        "calibration degenerate: open-class magnitudes are all zero");
  return thresholds;
}

void LiquidSignature::validate() const {
  if (name.empty())
    throw std::invalid_argument("signature name must not be empty");
  if (magnitudes.empty())
    throw std::invalid_argument("signature \"" + name + "\" has no magnitudes");
  for (const auto& [frequency, m] : magnitudes) {
    if (frequency <= 0.0)
      throw std::invalid_argument("signature \"" + name +
                                  "\": frequencies must be > 0");
    if (m < 0.0)
      throw std::invalid_argument("signature \"" + name +
                                  "\": magnitudes must be >= 0");
  }
  if (!magnitudes.contains(best_frequency_hz))
    throw std::invalid_argument("signature \"" + name +
                                "\": best_frequency must be one of its keys");
}

double best_frequency(
    const std::map<double, std::pair<double, double>>& liquid_and_medium_by_freq) {
  if (liquid_and_medium_by_freq.size() < 2)
    throw std::invalid_argument("best_frequency requires >= 2 frequencies");

  double best_f = 0.0;
  double best_contrast = -1.0;
  for (const auto& [frequency, pair] : liquid_and_medium_by_freq) {
    if (frequency <= 0.0)
      throw std::invalid_argument("frequencies must be > 0");
    const double contrast = std::abs(pair.first - pair.second);
    // Map iteration is ascending, so a strict improvement implements the
    // lowest-frequency tie-break.
    if (contrast > best_contrast) {
      best_contrast = contrast;
      best_f = frequency;
    }
  }
  return best_f;
}

IdentificationResult identify_liquid(
    const std::map<double, double>& measured_magnitudes,
    const std::vector<LiquidSignature>& library, bool gain_normalize) {
  if (library.empty())
    throw std::invalid_argument("signature library must not be empty");
  if (measured_magnitudes.empty())
    throw std::invalid_argument("measurement must not be empty");

  struct Scored {
    const LiquidSignature* signature;
    double distance;
  };
  std::vector<Scored> scored;
  scored.reserve(library.size());

  for (const LiquidSignature& signature : library) {
    signature.validate();
    std::vector<double> diffs;
    double mean_diff = 0.0;
    for (const auto& [frequency, measured] : measured_magnitudes) {
      auto it = signature.magnitudes.find(frequency);
      if (it == signature.magnitudes.end()) continue;
      if (measured <= 0.0 || it->second <= 0.0)
        throw std::invalid_argument(
            "log-distance requires strictly positive magnitudes");
      const double d = std::log(measured) - std::log(it->second);
      diffs.push_back(d);
      mean_diff += d;
    }
    if (diffs.empty())
      throw std::invalid_argument("no common frequency with signature \"" +
                                  signature.name + "\"");
    mean_diff /= static_cast<double>(diffs.size());

    double sum_sq = 0.0;
    for (double d : diffs) {
      const double centered = gain_normalize ? d - mean_diff : d;
      sum_sq += centered * centered;
    }
    scored.push_back(
        {&signature, std::sqrt(sum_sq / static_cast<double>(diffs.size()))});
  }

  std::stable_sort(scored.begin(), scored.end(),
                   [](const Scored& a, const Scored& b) {
                     return a.distance < b.distance;
                   });

  IdentificationResult result;
  result.name = scored[0].signature->name;
  result.distance = scored[0].distance;
  if (scored.size() > 1) {
    result.runner_up = scored[1].signature->name;
    result.runner_up_distance = scored[1].distance;
    result.ambiguous = scored[1].distance < scored[0].distance * 1.05 ||
                       (scored[0].distance == 0.0 && scored[1].distance == 0.0);
  }
  return result;
}

}  // namespace dmfsense
