#pragma once

#include <stdexcept>
#include <string>

namespace dmfsense {

/// Scenario, calibration, or scan-stream input that failed to parse or
/// validate. `source` names the offending file/buffer; `line` is the
/// 1-based text line when known, -1 otherwise.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::string source, int line = -1)
      : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : "") +
                           ": " + message),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const { return source_; }
  int line() const { return line_; }

 private:
  std::string source_;
  int line_;
};

/// Threshold calibration failed because two magnitude classes overlap.
/// Names the offending pair so the operator knows which margin collapsed.
class CalibrationOverlapError : public std::runtime_error {
 public:
  CalibrationOverlapError(std::string lower, std::string upper, double lower_max,
                          double upper_min)
      : std::runtime_error("calibration overlap between classes \"" + lower +
                           "\" and \"" + upper + "\": max(" + lower +
                           ") = " + std::to_string(lower_max) + " >= min(" +
                           upper + ") = " + std::to_string(upper_min)),
        lower_(std::move(lower)),
        upper_(std::move(upper)) {}

  const std::string& lower_class() const { return lower_; }
  const std::string& upper_class() const { return upper_; }

 private:
  std::string lower_;
  std::string upper_;
};

/// Two droplets scripted onto the same electrode at the same tick.
class ScenarioCollisionError : public std::runtime_error {
 public:
  explicit ScenarioCollisionError(int tick, const std::string& detail)
      : std::runtime_error("droplet collision at tick " + std::to_string(tick) +
                           ": " + detail),
        tick_(tick) {}

  int tick() const { return tick_; }

 private:
  int tick_;
};

}  // namespace dmfsense
